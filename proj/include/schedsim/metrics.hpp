#ifndef SCHEDSIM_METRICS_HPP
#define SCHEDSIM_METRICS_HPP

#include "schedsim/engine.hpp"
#include "schedsim/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace schedsim {

/// standard: turnaround = completion - arrival, response = first dispatch - arrival.
/// paper:    arrivals are taken as 0, so turnaround = completion and
///           response = first dispatch. Waiting is turnaround - burst in both.
enum class MetricsMode { standard, paper };

std::string_view to_string(MetricsMode m) noexcept;
std::optional<MetricsMode> parse_metrics_mode(std::string_view s) noexcept;

struct ProcessMetrics {
    std::string pid;
    Ticks arrival{0};
    Ticks burst{0};
    Ticks completion{0};
    Ticks turnaround{0};
    Ticks waiting{0};
    Ticks response{0};
};

struct MetricsReport {
    MetricsMode mode = MetricsMode::standard;
    std::vector<ProcessMetrics> per_process; ///< input order

    Rational avg_waiting_ms;
    Rational avg_turnaround_ms;
    Rational avg_response_ms;
    Rational avg_burst_ms;
    std::size_t context_switches = 0;
    Rational throughput_per_ms; ///< jobs per ms
    Rational cpu_utilization;   ///< useful work / makespan
    Ticks makespan{0};
};

class IncompleteTraceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adjacent distinct-pid pairs over the merged slice sequence. Idle gaps
/// between slices do not count by themselves.
std::size_t context_switches(const ScheduleTrace& trace);

/// Throws IncompleteTraceError if some process did not finish.
MetricsReport compute_metrics(const ScheduleTrace& trace, MetricsMode mode);

/// Rational ms from ticks, exact.
Rational ticks_to_ms(Ticks t);

std::string metrics_to_json(const MetricsReport& report);

} // namespace schedsim

#endif // SCHEDSIM_METRICS_HPP
