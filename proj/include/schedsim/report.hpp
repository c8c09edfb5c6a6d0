#ifndef SCHEDSIM_REPORT_HPP
#define SCHEDSIM_REPORT_HPP

#include "schedsim/engine.hpp"
#include "schedsim/metrics.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace schedsim {

enum class ReportFormat { text, csv, json };

std::optional<ReportFormat> parse_report_format(std::string_view s) noexcept;

struct GanttOptions {
    /// Show engine slices unmerged, followed by a per-slice listing with
    /// end reasons and quantum boundaries.
    bool raw = false;
};

/// ASCII Gantt chart, one cell per merged slice (or idle gap) with the cell
/// boundaries in ms underneath. An empty trace renders as "".
std::string render_gantt_text(const ScheduleTrace& trace, const GanttOptions& options = {});

/// Per-process table followed by the aggregates.
std::string render_metrics_text(const MetricsReport& report);

struct ComparisonRow {
    std::string policy;
    MetricsReport report;
};

struct ComparisonTable {
    std::string workload_label;
    MetricsMode mode = MetricsMode::standard;
    std::vector<ComparisonRow> rows;
};

inline constexpr std::string_view comparison_csv_header =
    "policy,context_switches,avg_waiting_ms,avg_turnaround_ms,avg_response_ms,throughput_per_ms,utilization";

/// Throws std::invalid_argument for an empty table.
std::string render_comparison(const ComparisonTable& table, ReportFormat format);

/// The numeric content of one exported comparison row.
struct ComparisonRecord {
    std::string policy;
    std::size_t context_switches = 0;
    Rational avg_waiting_ms;
    Rational avg_turnaround_ms;
    Rational avg_response_ms;
    Rational throughput_per_ms;
    Rational utilization;

    friend bool operator==(const ComparisonRecord&, const ComparisonRecord&) = default;
};

ComparisonRecord to_record(const ComparisonRow& row);

/// Reads back the rows of render_comparison(..., ReportFormat::json).
std::vector<ComparisonRecord> parse_comparison_json(std::string_view text);

/// Exact value when it has a finite decimal form, otherwise "~" and six places.
std::string display(const Rational& r);

} // namespace schedsim

#endif // SCHEDSIM_REPORT_HPP
