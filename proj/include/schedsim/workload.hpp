#ifndef SCHEDSIM_WORKLOAD_HPP
#define SCHEDSIM_WORKLOAD_HPP

#include "schedsim/time.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace schedsim {

struct ProcessSpec {
    std::string pid;
    Ticks arrival;
    Ticks burst;

    friend bool operator==(const ProcessSpec&, const ProcessSpec&) = default;
};

/// An ordered set of processes. Input order is significant: it is the
/// submission order used to break ties between equal arrivals.
struct WorkloadSpec {
    std::vector<ProcessSpec> processes;
    std::string label;

    std::size_t size() const noexcept { return processes.size(); }
    const ProcessSpec& operator[](std::size_t i) const { return processes[i]; }

    Ticks total_burst() const noexcept;
    Ticks max_burst() const noexcept;
    bool all_arrivals_zero() const noexcept;

    friend bool operator==(const WorkloadSpec&, const WorkloadSpec&) = default;
};

enum class WorkloadFormat { csv, json };

class WorkloadError : public std::runtime_error {
public:
    enum class Kind {
        malformed_row,
        duplicate_pid,
        nonpositive_burst,
        negative_arrival,
        too_many_fraction_digits,
        empty_workload,
    };

    /// `row` is the 1-based line number (CSV) or 1-based process index (JSON); 0 when not row-specific.
    WorkloadError(Kind kind, std::size_t row, const std::string& detail);

    Kind kind() const noexcept { return kind_; }
    std::size_t row() const noexcept { return row_; }

private:
    Kind kind_;
    std::size_t row_;
};

/// Parses a workload in the CSV or JSON exchange format. Throws WorkloadError.
WorkloadSpec parse_workload(std::string_view text, WorkloadFormat format, std::string label = {});

/// Checks the structural invariants (unique pids, positive bursts, nonempty). Throws WorkloadError.
void validate_workload(const WorkloadSpec& w);

/// Writes the CSV form. The two-column header is used when every arrival is zero.
std::string export_workload_csv(const WorkloadSpec& w);
std::string export_workload_json(const WorkloadSpec& w);

struct GeneratorParams {
    enum class ArrivalMode { all_zero, uniform_window };

    std::size_t count = 1;
    Ticks max_burst{1};
    ArrivalMode arrival_mode = ArrivalMode::all_zero;
    Ticks arrival_window{0};
    std::uint64_t seed = 0;
};

/// Pseudo-random workload: bursts uniform in [1, max_burst] ticks, arrivals
/// uniform in [0, window] ticks (or all zero), pids P1..Pn. The output is a
/// pure function of the params, identical across platforms.
WorkloadSpec generate_random(const GeneratorParams& params);

} // namespace schedsim

#endif // SCHEDSIM_WORKLOAD_HPP
