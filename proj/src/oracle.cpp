#include "schedsim/oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <tuple>

namespace schedsim {

ScheduleTrace oracle_simulate(const WorkloadSpec& workload, const PolicyConfig& config)
{
    validate_workload(workload);
    validate_config(config);

    ScheduleTrace trace;
    trace.workload = workload;
    trace.policy = config;

    const std::size_t n = workload.size();
    const PolicyKind kind = config.policy;
    const Ticks::rep k = config.initial_quantum.count();
    const Ticks::rep cap = config.quantum_cap.count();

    std::vector<Ticks::rep> arrival(n), rem(n);
    for (std::size_t i = 0; i < n; ++i) {
        arrival[i] = workload[i].arrival.count();
        rem[i] = workload[i].burst.count();
    }

    std::vector<std::size_t> arrival_order(n);
    std::iota(arrival_order.begin(), arrival_order.end(), std::size_t{0});
    std::sort(arrival_order.begin(), arrival_order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(arrival[a], a) < std::tie(arrival[b], b);
    });

    auto shorter = [&](std::size_t a, std::size_t b) {
        return std::tie(rem[a], arrival[a], a) < std::tie(rem[b], arrival[b], b);
    };

    // Per-policy bookkeeping.
    std::vector<bool> arrived(n, false);
    std::deque<std::size_t> fifo;
    std::size_t cursor = 0;
    std::deque<std::size_t> pending;
    std::vector<std::size_t> survivors;
    std::vector<std::size_t> fresh;
    unsigned round = 1;
    Ticks::rep tq = std::min(k, cap);

    auto sorted_insert = [&](std::size_t p) {
        auto it = pending.begin();
        while (it != pending.end() && !shorter(p, *it)) ++it;
        pending.insert(it, p);
    };

    // Running process.
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::size_t running = none;
    Ticks::rep slice_left = 0;
    bool continuing = false;

    std::size_t next = 0;
    std::size_t finished = 0;

    auto close_slice = [&](EndReason r) { trace.slices.back().end_reason = r; };

    auto handle_boundary = [&] {
        if (running == none) return;
        if (rem[running] == 0) {
            close_slice(continuing ? EndReason::continued_to_completion : EndReason::completed);
            ++finished;
            running = none;
        } else if (slice_left == 0) {
            if (kind == PolicyKind::omdrr && 2 * rem[running] < trace.slices.back().quantum.count()) {
                continuing = true;
                slice_left = rem[running];
                return;
            }
            close_slice(EndReason::quantum_expired);
            if (kind == PolicyKind::rr_fifo) fifo.push_back(running);
            if (kind == PolicyKind::omdrr) survivors.push_back(running);
            running = none;
        }
    };

    auto handle_arrivals = [&](Ticks::rep t) {
        while (next < n && arrival[arrival_order[next]] <= t) {
            const std::size_t p = arrival_order[next++];
            arrived[p] = true;
            if (kind == PolicyKind::rr_fifo) fifo.push_back(p);
            if (kind == PolicyKind::omdrr) {
                if (running == none)
                    fresh.push_back(p);
                else if (round == 1 && config.first_round_order == FirstRoundOrder::arrival)
                    pending.push_back(p);
                else
                    sorted_insert(p);
            }
        }
    };

    auto pick = [&]() -> std::pair<std::size_t, Ticks::rep> {
        switch (kind) {
        case PolicyKind::fcfs: {
            std::size_t best = none;
            for (std::size_t p = 0; p < n; ++p) {
                if (!arrived[p] || rem[p] == 0) continue;
                if (best == none || std::tie(arrival[p], p) < std::tie(arrival[best], best)) best = p;
            }
            return {best, best == none ? 0 : rem[best]};
        }
        case PolicyKind::rr_fifo: {
            if (fifo.empty()) return {none, 0};
            const std::size_t p = fifo.front();
            fifo.pop_front();
            return {p, k};
        }
        case PolicyKind::rr_cyclic: {
            for (std::size_t step = 0; step < n; ++step) {
                const std::size_t pos = (cursor + step) % n;
                const std::size_t p = arrival_order[pos];
                if (arrived[p] && rem[p] > 0) {
                    cursor = (pos + 1) % n;
                    return {p, k};
                }
            }
            return {none, 0};
        }
        case PolicyKind::omdrr: {
            if (pending.empty()) {
                if (!survivors.empty()) {
                    ++round;
                    tq = std::min(tq * 2, cap);
                    std::vector<std::size_t> all = survivors;
                    all.insert(all.end(), fresh.begin(), fresh.end());
                    std::sort(all.begin(), all.end(), shorter);
                    pending.assign(all.begin(), all.end());
                    survivors.clear();
                } else {
                    round = 1;
                    tq = std::min(k, cap);
                    if (config.first_round_order == FirstRoundOrder::sorted)
                        std::sort(fresh.begin(), fresh.end(), shorter);
                    pending.assign(fresh.begin(), fresh.end());
                }
            } else {
                for (std::size_t p : fresh) {
                    if (round == 1 && config.first_round_order == FirstRoundOrder::arrival)
                        pending.push_back(p);
                    else
                        sorted_insert(p);
                }
            }
            fresh.clear();
            if (pending.empty()) return {none, 0};
            const std::size_t p = pending.front();
            pending.pop_front();
            return {p, tq};
        }
        }
        return {none, 0};
    };

    for (Ticks::rep t = 0;; ++t) {
        // A process preempted at t queues behind whatever arrives at t.
        if (kind == PolicyKind::rr_fifo) {
            handle_arrivals(t);
            handle_boundary();
        } else {
            handle_boundary();
            handle_arrivals(t);
        }
        if (finished == n) break;

        if (running == none) {
            const auto [p, budget] = pick();
            if (p != none) {
                running = p;
                slice_left = budget;
                continuing = false;
                trace.slices.push_back(Slice{p, Ticks{t}, Ticks{t}, EndReason::completed, Ticks{budget}});
            }
        }

        if (running != none) {
            --rem[running];
            --slice_left;
            trace.slices.back().end = Ticks{t + 1};
        } else if (!trace.idle.empty() && trace.idle.back().end == Ticks{t}) {
            trace.idle.back().end = Ticks{t + 1};
        } else {
            trace.idle.push_back(Interval{Ticks{t}, Ticks{t + 1}});
        }
    }
    return trace;
}

} // namespace schedsim
