#include "schedsim/metrics.hpp"

#include <json.hpp>

namespace schedsim {

std::string_view to_string(MetricsMode m) noexcept
{
    return m == MetricsMode::standard ? "standard" : "paper";
}

std::optional<MetricsMode> parse_metrics_mode(std::string_view s) noexcept
{
    if (s == "standard") return MetricsMode::standard;
    if (s == "paper") return MetricsMode::paper;
    return std::nullopt;
}

Rational ticks_to_ms(Ticks t) { return Rational(t.count(), Ticks::per_ms); }

std::size_t context_switches(const ScheduleTrace& trace)
{
    const auto merged = merge_contiguous(trace);
    std::size_t count = 0;
    for (std::size_t i = 1; i < merged.slices.size(); ++i)
        if (merged.slices[i].process != merged.slices[i - 1].process) ++count;
    return count;
}

MetricsReport compute_metrics(const ScheduleTrace& trace, MetricsMode mode)
{
    const auto& w = trace.workload;
    const auto completion = completion_times(trace);

    std::vector<std::optional<Ticks>> first_dispatch(w.size());
    for (const auto& s : trace.slices)
        if (!first_dispatch[s.process]) first_dispatch[s.process] = s.start;

    MetricsReport r;
    r.mode = mode;
    r.makespan = trace.makespan();

    Ticks sum_wait{0}, sum_tat{0}, sum_resp{0};
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!completion[i]) throw IncompleteTraceError("process " + w[i].pid + " did not finish");
        const Ticks origin = mode == MetricsMode::standard ? w[i].arrival : Ticks{0};
        ProcessMetrics pm;
        pm.pid = w[i].pid;
        pm.arrival = w[i].arrival;
        pm.burst = w[i].burst;
        pm.completion = *completion[i];
        pm.turnaround = pm.completion - origin;
        pm.waiting = pm.turnaround - pm.burst;
        pm.response = *first_dispatch[i] - origin;
        sum_wait += pm.waiting;
        sum_tat += pm.turnaround;
        sum_resp += pm.response;
        r.per_process.push_back(std::move(pm));
    }

    const auto n = static_cast<std::int64_t>(w.size());
    const Rational count(n);
    r.avg_waiting_ms = ticks_to_ms(sum_wait) / count;
    r.avg_turnaround_ms = ticks_to_ms(sum_tat) / count;
    r.avg_response_ms = ticks_to_ms(sum_resp) / count;
    r.avg_burst_ms = ticks_to_ms(w.total_burst()) / count;
    r.context_switches = context_switches(trace);
    r.throughput_per_ms = count / ticks_to_ms(r.makespan);
    const Ticks useful = r.makespan - trace.total_idle() - trace.total_overhead();
    r.cpu_utilization = Rational(useful.count(), r.makespan.count());
    return r;
}

std::string metrics_to_json(const MetricsReport& report)
{
    nlohmann::ordered_json doc;
    doc["mode"] = to_string(report.mode);
    auto& per = doc["per_process"] = nlohmann::ordered_json::object();
    for (const auto& p : report.per_process) {
        nlohmann::ordered_json j;
        for (auto [key, value] : {std::pair{"completion", p.completion}, std::pair{"turnaround", p.turnaround},
                                  std::pair{"waiting", p.waiting}, std::pair{"response", p.response}}) {
            j[std::string(key) + "_us"] = value.count();
            j[std::string(key) + "_ms"] = format_ms(value);
        }
        per[p.pid] = std::move(j);
    }
    auto& agg = doc["aggregates"];
    agg["context_switches"] = report.context_switches;
    agg["avg_waiting_ms"] = report.avg_waiting_ms.to_string();
    agg["avg_turnaround_ms"] = report.avg_turnaround_ms.to_string();
    agg["avg_response_ms"] = report.avg_response_ms.to_string();
    agg["throughput_per_ms"] = report.throughput_per_ms.to_string();
    agg["utilization"] = report.cpu_utilization.to_string();
    agg["makespan_us"] = report.makespan.count();
    agg["makespan_ms"] = format_ms(report.makespan);
    return doc.dump(2) + "\n";
}

} // namespace schedsim
