#ifndef SCHEDSIM_REPRODUCE_HPP
#define SCHEDSIM_REPRODUCE_HPP

#include "schedsim/engine.hpp"
#include "schedsim/metrics.hpp"
#include "schedsim/workload.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace schedsim {

/// The two published five-process experiments: A (no arrival times,
/// quantum 5 ms) and B (staggered arrivals, quantum 3 ms).
enum class Experiment { a, b };

std::string_view to_string(Experiment e) noexcept; // "expA" / "expB"
std::optional<Experiment> parse_experiment(std::string_view s) noexcept;

std::string_view embedded_workload_csv(Experiment e) noexcept;
WorkloadSpec embedded_workload(Experiment e);
Ticks experiment_quantum(Experiment e) noexcept;

struct ReproductionCheck {
    std::string subject;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct ExperimentRun {
    Experiment experiment = Experiment::a;
    WorkloadSpec workload;
    ScheduleTrace rr;
    ScheduleTrace omdrr;
    MetricsReport rr_metrics;
    MetricsReport omdrr_metrics;
    std::vector<ReproductionCheck> checks;
    std::vector<std::string> notes;

    bool passed() const noexcept;
};

/// Runs rr-cyclic and omdrr on the embedded workload in paper metrics mode
/// and checks every published (or, for A/omdrr, derived) value.
ExperimentRun run_experiment(Experiment e, bool use_oracle = false);

std::string render_experiment(const ExperimentRun& run);

/// Pids of the merged slices in order, e.g. {"P1","P2",...}.
std::vector<std::string> merged_pid_sequence(const ScheduleTrace& trace);

/// Merged slice boundaries in ms: start of each cell followed by the final end.
std::vector<std::string> merged_boundaries_ms(const ScheduleTrace& trace);

} // namespace schedsim

#endif // SCHEDSIM_REPRODUCE_HPP
