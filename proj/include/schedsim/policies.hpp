#ifndef SCHEDSIM_POLICIES_HPP
#define SCHEDSIM_POLICIES_HPP

#include "schedsim/time.hpp"
#include "schedsim/workload.hpp"

#include <cstddef>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace schedsim {

enum class PolicyKind { fcfs, rr_fifo, rr_cyclic, omdrr };

/// Order of the very first OMDRR round of a busy period.
enum class FirstRoundOrder { arrival, sorted };

std::string_view to_string(PolicyKind p) noexcept;
std::string_view to_string(FirstRoundOrder o) noexcept;
std::optional<PolicyKind> parse_policy(std::string_view s) noexcept;
std::optional<FirstRoundOrder> parse_first_round_order(std::string_view s) noexcept;

struct PolicyConfig {
    static constexpr Ticks default_quantum_cap{Ticks::rep{1} << 40};

    PolicyKind policy = PolicyKind::rr_cyclic;
    Ticks initial_quantum = 1_ms;
    FirstRoundOrder first_round_order = FirstRoundOrder::arrival;
    Ticks quantum_cap = default_quantum_cap;

    friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

/// Throws std::invalid_argument when the quantum is missing or the cap is below it.
void validate_config(const PolicyConfig& config);

/// What the policy tells the engine to run next.
///
/// The engine runs `process` for min(budget, remaining). If work is left
/// afterwards and it is strictly below `continue_if_remaining_below`, the
/// process keeps the CPU until it finishes. A threshold of zero never
/// continues.
struct DispatchDecision {
    std::size_t process = 0;
    Ticks budget{0};
    Ticks continue_if_remaining_below{0};

    friend bool operator==(const DispatchDecision&, const DispatchDecision&) = default;
};

/// A ready-queue candidate. `process` is the input index, which is also the
/// last tie-breaker.
struct QueueEntry {
    std::size_t process = 0;
    Ticks remaining{0};
    Ticks arrival{0};

    friend bool operator==(const QueueEntry&, const QueueEntry&) = default;
};

/// Ascending remaining, then earlier arrival, then lower input index.
bool shorter_first(const QueueEntry& a, const QueueEntry& b) noexcept;

/// Returns the input indices of `entries` in shorter_first order.
std::vector<std::size_t> sort_ready_queue(std::span<const QueueEntry> entries);

struct OmdrrRoundState {
    unsigned round_index = 1;
    Ticks initial_quantum{0};
    Ticks quantum_cap = PolicyConfig::default_quantum_cap;
    Ticks current_tq{0};
    std::deque<QueueEntry> pending;
    std::vector<QueueEntry> survivors;

    static OmdrrRoundState first_round(Ticks initial_quantum, Ticks quantum_cap);
};

/// Budget is the round's quantum; the continuation threshold is ceil(TQ/2),
/// so for integer ticks `remaining < threshold` is exactly `2*remaining < TQ`.
DispatchDecision omdrr_decide(const OmdrrRoundState& state, std::size_t process);

/// Closes a round: doubles the quantum (capped) and builds the next pending
/// list from the survivors plus `newly_arrived`, shortest first.
OmdrrRoundState omdrr_advance_round(const OmdrrRoundState& state, std::span<const QueueEntry> newly_arrived);

/// Dispatch logic consumed by the engine. The engine reports arrivals in
/// (arrival, input index) order. After each slice it first reports the
/// arrivals up to and including the slice end, then the slice end itself.
class Policy {
public:
    virtual ~Policy() = default;

    virtual void on_arrival(std::size_t process) = 0;
    virtual void on_slice_end(std::size_t process, Ticks remaining, Ticks now) = 0;
    /// Only called while at least one arrived process is unfinished.
    virtual DispatchDecision decide(Ticks now) = 0;
    /// The CPU went idle; the next dispatch starts a new busy period.
    virtual void on_idle() {}
};

std::unique_ptr<Policy> make_policy(const PolicyConfig& config, const WorkloadSpec& workload);

/// Run to completion, earliest arrival first.
class FcfsPolicy final : public Policy {
public:
    explicit FcfsPolicy(const WorkloadSpec& workload);

    void on_arrival(std::size_t process) override;
    void on_slice_end(std::size_t process, Ticks remaining, Ticks now) override;
    DispatchDecision decide(Ticks now) override;

private:
    const WorkloadSpec& workload_;
    std::vector<Ticks> remaining_;
    std::vector<std::size_t> ready_;
};

/// Textbook round robin: a preempted process re-enters the FIFO queue behind
/// everything that arrived during (or at the end of) its slice.
class RrFifoPolicy final : public Policy {
public:
    RrFifoPolicy(const WorkloadSpec& workload, Ticks quantum);

    void on_arrival(std::size_t process) override;
    void on_slice_end(std::size_t process, Ticks remaining, Ticks now) override;
    DispatchDecision decide(Ticks now) override;

private:
    Ticks quantum_;
    std::deque<std::size_t> queue_;
};

/// Round robin over a fixed cyclic order of processes sorted by arrival; the
/// cursor skips processes that are finished or have not arrived yet.
class RrCyclicPolicy final : public Policy {
public:
    RrCyclicPolicy(const WorkloadSpec& workload, Ticks quantum);

    void on_arrival(std::size_t process) override;
    void on_slice_end(std::size_t process, Ticks remaining, Ticks now) override;
    DispatchDecision decide(Ticks now) override;

private:
    Ticks quantum_;
    std::vector<std::size_t> order_;
    std::vector<bool> arrived_;
    std::vector<bool> finished_;
    std::size_t cursor_ = 0;
};

/// Multilevel dynamic round robin.
///
/// Each round dispatches every pending process once with the round's
/// quantum. A process left with less than half a quantum after its slice
/// keeps the CPU until it finishes; others survive into the next round,
/// which is sorted shortest-remaining first and has twice the quantum.
///
/// Arrivals during a slice join the current round: appended during the
/// first round (in `arrival` first-round order), inserted by remaining burst
/// otherwise. Arrivals at a round boundary are sorted into the new round.
/// Whenever no process is ready the quantum resets to the initial value.
class OmdrrPolicy final : public Policy {
public:
    OmdrrPolicy(const WorkloadSpec& workload, const PolicyConfig& config);

    void on_arrival(std::size_t process) override;
    void on_slice_end(std::size_t process, Ticks remaining, Ticks now) override;
    DispatchDecision decide(Ticks now) override;
    void on_idle() override;

    const OmdrrRoundState& state() const noexcept { return state_; }

private:
    void join_current_round(const QueueEntry& e);

    const WorkloadSpec& workload_;
    PolicyConfig config_;
    OmdrrRoundState state_;
    std::vector<QueueEntry> incoming_;
};

} // namespace schedsim

#endif // SCHEDSIM_POLICIES_HPP
