#include "schedsim/policies.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace schedsim {

std::string_view to_string(PolicyKind p) noexcept
{
    switch (p) {
    case PolicyKind::fcfs: return "fcfs";
    case PolicyKind::rr_fifo: return "rr-fifo";
    case PolicyKind::rr_cyclic: return "rr-cyclic";
    case PolicyKind::omdrr: return "omdrr";
    }
    return "?";
}

std::string_view to_string(FirstRoundOrder o) noexcept
{
    return o == FirstRoundOrder::arrival ? "arrival" : "sorted";
}

std::optional<PolicyKind> parse_policy(std::string_view s) noexcept
{
    for (auto p : {PolicyKind::fcfs, PolicyKind::rr_fifo, PolicyKind::rr_cyclic, PolicyKind::omdrr})
        if (to_string(p) == s) return p;
    return std::nullopt;
}

std::optional<FirstRoundOrder> parse_first_round_order(std::string_view s) noexcept
{
    if (s == "arrival") return FirstRoundOrder::arrival;
    if (s == "sorted") return FirstRoundOrder::sorted;
    return std::nullopt;
}

void validate_config(const PolicyConfig& config)
{
    if (config.policy == PolicyKind::fcfs) return;
    if (config.initial_quantum < Ticks{1}) throw std::invalid_argument("quantum must be at least 1 tick");
    if (config.quantum_cap < config.initial_quantum) throw std::invalid_argument("quantum cap is below the initial quantum");
}

bool shorter_first(const QueueEntry& a, const QueueEntry& b) noexcept
{
    if (a.remaining != b.remaining) return a.remaining < b.remaining;
    if (a.arrival != b.arrival) return a.arrival < b.arrival;
    return a.process < b.process;
}

std::vector<std::size_t> sort_ready_queue(std::span<const QueueEntry> entries)
{
    std::vector<QueueEntry> sorted(entries.begin(), entries.end());
    std::stable_sort(sorted.begin(), sorted.end(), shorter_first);
    std::vector<std::size_t> out;
    out.reserve(sorted.size());
    for (const auto& e : sorted) out.push_back(e.process);
    return out;
}

OmdrrRoundState OmdrrRoundState::first_round(Ticks initial_quantum, Ticks quantum_cap)
{
    OmdrrRoundState s;
    s.round_index = 1;
    s.initial_quantum = initial_quantum;
    s.quantum_cap = quantum_cap;
    s.current_tq = std::min(initial_quantum, quantum_cap);
    return s;
}

DispatchDecision omdrr_decide(const OmdrrRoundState& state, std::size_t process)
{
    const Ticks tq = state.current_tq;
    return DispatchDecision{process, tq, Ticks{(tq.count() + 1) / 2}};
}

OmdrrRoundState omdrr_advance_round(const OmdrrRoundState& state, std::span<const QueueEntry> newly_arrived)
{
    OmdrrRoundState next;
    next.round_index = state.round_index + 1;
    next.initial_quantum = state.initial_quantum;
    next.quantum_cap = state.quantum_cap;
    next.current_tq = state.current_tq > state.quantum_cap - state.current_tq ? state.quantum_cap
                                                                               : state.current_tq + state.current_tq;

    std::vector<QueueEntry> all(state.survivors.begin(), state.survivors.end());
    all.insert(all.end(), newly_arrived.begin(), newly_arrived.end());
    std::sort(all.begin(), all.end(), shorter_first);
    next.pending.assign(all.begin(), all.end());
    return next;
}

// --- fcfs ---

FcfsPolicy::FcfsPolicy(const WorkloadSpec& workload)
    : workload_(workload)
{
    remaining_.reserve(workload.size());
    for (const auto& p : workload.processes) remaining_.push_back(p.burst);
}

void FcfsPolicy::on_arrival(std::size_t process)
{
    // Arrivals come in (arrival, index) order, so appending keeps ready_ sorted.
    ready_.push_back(process);
}

void FcfsPolicy::on_slice_end(std::size_t process, Ticks remaining, Ticks)
{
    remaining_[process] = remaining;
    if (remaining == Ticks{0}) std::erase(ready_, process);
}

DispatchDecision FcfsPolicy::decide(Ticks)
{
    if (ready_.empty()) throw std::logic_error("fcfs: decide() with an empty ready set");
    const auto head = ready_.front();
    return DispatchDecision{head, remaining_[head], Ticks{0}};
}

// --- rr-fifo ---

RrFifoPolicy::RrFifoPolicy(const WorkloadSpec&, Ticks quantum)
    : quantum_(quantum)
{
}

void RrFifoPolicy::on_arrival(std::size_t process) { queue_.push_back(process); }

void RrFifoPolicy::on_slice_end(std::size_t process, Ticks remaining, Ticks)
{
    if (remaining > Ticks{0}) queue_.push_back(process);
}

DispatchDecision RrFifoPolicy::decide(Ticks)
{
    if (queue_.empty()) throw std::logic_error("rr-fifo: decide() with an empty queue");
    const auto head = queue_.front();
    queue_.pop_front();
    return DispatchDecision{head, quantum_, Ticks{0}};
}

// --- rr-cyclic ---

RrCyclicPolicy::RrCyclicPolicy(const WorkloadSpec& workload, Ticks quantum)
    : quantum_(quantum)
    , order_(workload.size())
    , arrived_(workload.size(), false)
    , finished_(workload.size(), false)
{
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return workload[a].arrival < workload[b].arrival; });
}

void RrCyclicPolicy::on_arrival(std::size_t process) { arrived_[process] = true; }

void RrCyclicPolicy::on_slice_end(std::size_t process, Ticks remaining, Ticks)
{
    if (remaining == Ticks{0}) finished_[process] = true;
}

DispatchDecision RrCyclicPolicy::decide(Ticks)
{
    const std::size_t n = order_.size();
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t pos = (cursor_ + step) % n;
        const std::size_t p = order_[pos];
        if (arrived_[p] && !finished_[p]) {
            cursor_ = (pos + 1) % n;
            return DispatchDecision{p, quantum_, Ticks{0}};
        }
    }
    throw std::logic_error("rr-cyclic: decide() with no ready process");
}

// --- omdrr ---

OmdrrPolicy::OmdrrPolicy(const WorkloadSpec& workload, const PolicyConfig& config)
    : workload_(workload)
    , config_(config)
    , state_(OmdrrRoundState::first_round(config.initial_quantum, config.quantum_cap))
{
}

void OmdrrPolicy::on_arrival(std::size_t process)
{
    const auto& p = workload_[process];
    incoming_.push_back(QueueEntry{process, p.burst, p.arrival});
}

void OmdrrPolicy::join_current_round(const QueueEntry& e)
{
    const bool append = state_.round_index == 1 && config_.first_round_order == FirstRoundOrder::arrival;
    if (append) {
        state_.pending.push_back(e);
        return;
    }
    auto pos = std::upper_bound(state_.pending.begin(), state_.pending.end(), e, shorter_first);
    state_.pending.insert(pos, e);
}

void OmdrrPolicy::on_slice_end(std::size_t process, Ticks remaining, Ticks now)
{
    // Whatever arrived strictly inside the slice belongs to the running round.
    auto during = std::stable_partition(incoming_.begin(), incoming_.end(),
                                        [&](const QueueEntry& e) { return e.arrival < now; });
    for (auto it = incoming_.begin(); it != during; ++it) join_current_round(*it);
    incoming_.erase(incoming_.begin(), during);

    if (remaining > Ticks{0}) state_.survivors.push_back(QueueEntry{process, remaining, workload_[process].arrival});
}

DispatchDecision OmdrrPolicy::decide(Ticks)
{
    if (state_.pending.empty()) {
        if (!state_.survivors.empty()) {
            state_ = omdrr_advance_round(state_, incoming_);
        } else {
            // Nothing was ready: a new busy period starts from the initial quantum.
            state_ = OmdrrRoundState::first_round(config_.initial_quantum, config_.quantum_cap);
            if (config_.first_round_order == FirstRoundOrder::sorted)
                std::stable_sort(incoming_.begin(), incoming_.end(), shorter_first);
            state_.pending.assign(incoming_.begin(), incoming_.end());
        }
    } else {
        for (const auto& e : incoming_) join_current_round(e);
    }
    incoming_.clear();

    if (state_.pending.empty()) throw std::logic_error("omdrr: decide() with no ready process");
    const auto head = state_.pending.front();
    state_.pending.pop_front();
    return omdrr_decide(state_, head.process);
}

void OmdrrPolicy::on_idle()
{
    state_ = OmdrrRoundState::first_round(config_.initial_quantum, config_.quantum_cap);
}

std::unique_ptr<Policy> make_policy(const PolicyConfig& config, const WorkloadSpec& workload)
{
    validate_config(config);
    switch (config.policy) {
    case PolicyKind::fcfs: return std::make_unique<FcfsPolicy>(workload);
    case PolicyKind::rr_fifo: return std::make_unique<RrFifoPolicy>(workload, config.initial_quantum);
    case PolicyKind::rr_cyclic: return std::make_unique<RrCyclicPolicy>(workload, config.initial_quantum);
    case PolicyKind::omdrr: return std::make_unique<OmdrrPolicy>(workload, config);
    }
    throw std::invalid_argument("unknown policy");
}

} // namespace schedsim
