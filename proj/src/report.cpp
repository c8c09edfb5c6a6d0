#include "schedsim/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace schedsim {

std::optional<ReportFormat> parse_report_format(std::string_view s) noexcept
{
    if (s == "text") return ReportFormat::text;
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    return std::nullopt;
}

std::string display(const Rational& r)
{
    return r.is_terminating() ? r.to_string() : "~" + r.to_decimal(6);
}

namespace {

std::string pad_right(std::string s, std::size_t width)
{
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string center(const std::string& s, std::size_t width)
{
    const std::size_t left = (width - s.size()) / 2;
    return std::string(left, ' ') + s + std::string(width - s.size() - left, ' ');
}

struct Cell {
    Ticks start, end;
    std::string label;
};

} // namespace

std::string render_gantt_text(const ScheduleTrace& trace, const GanttOptions& options)
{
    const ScheduleTrace shown = options.raw ? trace : merge_contiguous(trace);

    std::vector<Cell> cells;
    for (const auto& s : shown.slices) cells.push_back({s.start, s.end, shown.pid(s)});
    for (const auto& i : shown.idle) cells.push_back({i.start, i.end, "idle"});
    for (const auto& i : shown.overhead) cells.push_back({i.start, i.end, "cs"});
    if (cells.empty()) return {};
    std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.start < b.start; });

    std::string border = "+", body = "|", axis;
    for (const auto& c : cells) {
        const std::string start = format_ms(c.start);
        const std::size_t width = std::max({c.label.size() + 2, start.size() + 1, std::size_t{4}});
        border += std::string(width, '-') + "+";
        body += center(c.label, width) + "|";
        axis += pad_right(start, width + 1);
    }
    axis += format_ms(cells.back().end);

    std::ostringstream out;
    out << border << '\n' << body << '\n' << border << '\n' << axis << '\n';

    if (options.raw) {
        for (const auto& s : shown.slices) {
            out << "  " << pad_right(shown.pid(s), 6) << '[' << format_ms(s.start) << ", " << format_ms(s.end)
                << ") " << to_string(s.end_reason) << " (quantum " << format_ms(s.quantum);
            if (s.end_reason == EndReason::continued_to_completion)
                out << ", continued at " << format_ms(s.start + s.quantum);
            out << ")\n";
        }
    }
    return out.str();
}

std::string render_metrics_text(const MetricsReport& r)
{
    const std::vector<std::string> header = {"pid", "arrival", "burst", "completion", "turnaround", "waiting", "response"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : r.per_process)
        rows.push_back({p.pid, format_ms(p.arrival), format_ms(p.burst), format_ms(p.completion),
                        format_ms(p.turnaround), format_ms(p.waiting), format_ms(p.response)});

    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
    }

    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cols) {
        std::string s;
        for (std::size_t c = 0; c < cols.size(); ++c) s += pad_right(cols[c], width[c] + 2);
        while (!s.empty() && s.back() == ' ') s.pop_back();
        out << s << '\n';
    };
    line(header);
    for (const auto& row : rows) line(row);

    out << '\n'
        << "metrics mode:      " << to_string(r.mode) << '\n'
        << "context switches:  " << r.context_switches << '\n'
        << "avg waiting:       " << display(r.avg_waiting_ms) << " ms\n"
        << "avg turnaround:    " << display(r.avg_turnaround_ms) << " ms\n"
        << "avg response:      " << display(r.avg_response_ms) << " ms\n"
        << "throughput:        " << display(r.throughput_per_ms) << " jobs/ms\n"
        << "cpu utilization:   " << display(r.cpu_utilization) << '\n'
        << "makespan:          " << format_ms(r.makespan) << " ms\n";
    return out.str();
}

ComparisonRecord to_record(const ComparisonRow& row)
{
    const auto& r = row.report;
    return ComparisonRecord{row.policy,           r.context_switches,     r.avg_waiting_ms, r.avg_turnaround_ms,
                            r.avg_response_ms,    r.throughput_per_ms,    r.cpu_utilization};
}

std::string render_comparison(const ComparisonTable& table, ReportFormat format)
{
    if (table.rows.empty()) throw std::invalid_argument("comparison table has no rows");

    std::vector<ComparisonRecord> records;
    for (const auto& row : table.rows) records.push_back(to_record(row));

    std::ostringstream out;
    switch (format) {
    case ReportFormat::csv: {
        out << comparison_csv_header << '\n';
        for (const auto& r : records)
            out << r.policy << ',' << r.context_switches << ',' << r.avg_waiting_ms.to_string() << ','
                << r.avg_turnaround_ms.to_string() << ',' << r.avg_response_ms.to_string() << ','
                << r.throughput_per_ms.to_string() << ',' << r.utilization.to_string() << '\n';
        break;
    }
    case ReportFormat::json: {
        nlohmann::ordered_json doc;
        doc["workload"] = table.workload_label;
        doc["mode"] = to_string(table.mode);
        doc["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : records) {
            nlohmann::ordered_json j;
            j["policy"] = r.policy;
            j["context_switches"] = r.context_switches;
            j["avg_waiting_ms"] = r.avg_waiting_ms.to_string();
            j["avg_turnaround_ms"] = r.avg_turnaround_ms.to_string();
            j["avg_response_ms"] = r.avg_response_ms.to_string();
            j["throughput_per_ms"] = r.throughput_per_ms.to_string();
            j["utilization"] = r.utilization.to_string();
            doc["rows"].push_back(std::move(j));
        }
        out << doc.dump(2) << '\n';
        break;
    }
    case ReportFormat::text: {
        const std::vector<std::string> header = {"policy",          "context_switches",  "avg_waiting_ms",
                                                 "avg_turnaround_ms", "avg_response_ms", "throughput_per_ms",
                                                 "utilization"};
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : records)
            rows.push_back({r.policy, std::to_string(r.context_switches), display(r.avg_waiting_ms),
                            display(r.avg_turnaround_ms), display(r.avg_response_ms), display(r.throughput_per_ms),
                            display(r.utilization)});
        std::vector<std::size_t> width(header.size());
        for (std::size_t c = 0; c < header.size(); ++c) {
            width[c] = header[c].size();
            for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
        }
        out << "workload: " << table.workload_label << " (metrics mode: " << to_string(table.mode) << ")\n";
        auto line = [&](const std::vector<std::string>& cols) {
            std::string s;
            for (std::size_t c = 0; c < cols.size(); ++c) s += pad_right(cols[c], width[c] + 2);
            while (!s.empty() && s.back() == ' ') s.pop_back();
            out << s << '\n';
        };
        line(header);
        for (const auto& row : rows) line(row);
        break;
    }
    }
    return out.str();
}

std::vector<ComparisonRecord> parse_comparison_json(std::string_view text)
{
    const auto doc = nlohmann::json::parse(text);
    auto rational = [](const nlohmann::json& v) {
        auto r = Rational::parse(v.get<std::string>());
        if (!r) throw std::invalid_argument("not an exact decimal: " + v.get<std::string>());
        return *r;
    };
    std::vector<ComparisonRecord> out;
    for (const auto& j : doc.at("rows")) {
        ComparisonRecord r;
        r.policy = j.at("policy").get<std::string>();
        r.context_switches = j.at("context_switches").get<std::size_t>();
        r.avg_waiting_ms = rational(j.at("avg_waiting_ms"));
        r.avg_turnaround_ms = rational(j.at("avg_turnaround_ms"));
        r.avg_response_ms = rational(j.at("avg_response_ms"));
        r.throughput_per_ms = rational(j.at("throughput_per_ms"));
        r.utilization = rational(j.at("utilization"));
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace schedsim
