#ifndef SCHEDSIM_ENGINE_HPP
#define SCHEDSIM_ENGINE_HPP

#include "schedsim/policies.hpp"
#include "schedsim/time.hpp"
#include "schedsim/workload.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace schedsim {

enum class EndReason { completed, quantum_expired, continued_to_completion };

std::string_view to_string(EndReason r) noexcept;
std::optional<EndReason> parse_end_reason(std::string_view s) noexcept;

/// One contiguous occupancy of the CPU by one process.
struct Slice {
    std::size_t process = 0; ///< input index into the trace's workload
    Ticks start{0};
    Ticks end{0};
    EndReason end_reason = EndReason::completed;
    Ticks quantum{0}; ///< budget granted at dispatch

    Ticks duration() const noexcept { return end - start; }

    friend bool operator==(const Slice&, const Slice&) = default;
};

struct Interval {
    Ticks start{0};
    Ticks end{0};

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct ScheduleTrace {
    std::vector<Slice> slices;
    std::vector<Interval> idle;
    /// Context-switch overhead; always empty unless a switch cost is configured.
    std::vector<Interval> overhead;
    WorkloadSpec workload;
    PolicyConfig policy;

    const std::string& pid(const Slice& s) const { return workload[s.process].pid; }
    Ticks makespan() const noexcept;
    Ticks total_idle() const noexcept;
    Ticks total_overhead() const noexcept;
};

struct SimOptions {
    /// CPU time consumed when the dispatched process differs from the previous one.
    Ticks switch_cost{0};
};

/// A policy broke the dispatch contract, or a trace invariant failed.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// What the engine does with a decision given the process's remaining work.
struct SliceOutcome {
    Ticks run{0};
    EndReason reason = EndReason::completed;
};

SliceOutcome resolve_slice(const DispatchDecision& d, Ticks remaining) noexcept;

/// Event-driven simulation of `config` over `workload`. Deterministic.
ScheduleTrace simulate(const WorkloadSpec& workload, const PolicyConfig& config, const SimOptions& options = {});

/// Drives a caller-supplied policy. `config` is only recorded in the trace.
/// Throws InternalError if the policy dispatches a process that is not ready.
ScheduleTrace simulate_with(const WorkloadSpec& workload, const PolicyConfig& config, Policy& policy,
                            const SimOptions& options = {});

/// Merges adjacent slices of the same process whose endpoints touch. The
/// merged slice takes the end reason and quantum of its last piece.
ScheduleTrace merge_contiguous(const ScheduleTrace& trace);

/// Checks tiling, work conservation, non-clairvoyance and busy-period
/// non-idling. Returns one message per violation; empty means valid.
std::vector<std::string> validate_trace(const ScheduleTrace& trace);

/// Completion time per process (input order); nullopt for unfinished ones.
std::vector<std::optional<Ticks>> completion_times(const ScheduleTrace& trace);

/// `{"slices":[{"pid","start_us","end_us","end_reason"}...],"idle":[{"start_us","end_us"}...]}`
std::string trace_to_json(const ScheduleTrace& trace);

} // namespace schedsim

#endif // SCHEDSIM_ENGINE_HPP
