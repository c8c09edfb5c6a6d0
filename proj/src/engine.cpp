#include "schedsim/engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace schedsim {

std::string_view to_string(EndReason r) noexcept
{
    switch (r) {
    case EndReason::completed: return "completed";
    case EndReason::quantum_expired: return "quantum_expired";
    case EndReason::continued_to_completion: return "continued_to_completion";
    }
    return "?";
}

std::optional<EndReason> parse_end_reason(std::string_view s) noexcept
{
    for (auto r : {EndReason::completed, EndReason::quantum_expired, EndReason::continued_to_completion})
        if (to_string(r) == s) return r;
    return std::nullopt;
}

Ticks ScheduleTrace::makespan() const noexcept
{
    Ticks end{0};
    if (!slices.empty()) end = std::max(end, slices.back().end);
    if (!idle.empty()) end = std::max(end, idle.back().end);
    if (!overhead.empty()) end = std::max(end, overhead.back().end);
    return end;
}

namespace {

Ticks sum_of(const std::vector<Interval>& v) noexcept
{
    Ticks sum{0};
    for (const auto& i : v) sum += i.end - i.start;
    return sum;
}

} // namespace

Ticks ScheduleTrace::total_idle() const noexcept { return sum_of(idle); }
Ticks ScheduleTrace::total_overhead() const noexcept { return sum_of(overhead); }

SliceOutcome resolve_slice(const DispatchDecision& d, Ticks remaining) noexcept
{
    if (remaining <= d.budget) return {remaining, EndReason::completed};
    const Ticks left = remaining - d.budget;
    if (left < d.continue_if_remaining_below) return {remaining, EndReason::continued_to_completion};
    return {d.budget, EndReason::quantum_expired};
}

namespace {

void run_loop(ScheduleTrace& trace, Policy& policy, const SimOptions& options)
{
    const WorkloadSpec& w = trace.workload;
    const std::size_t n = w.size();
    const auto name = std::string(to_string(trace.policy.policy));

    std::vector<std::size_t> by_arrival(n);
    std::iota(by_arrival.begin(), by_arrival.end(), std::size_t{0});
    std::stable_sort(by_arrival.begin(), by_arrival.end(),
                     [&](std::size_t a, std::size_t b) { return w[a].arrival < w[b].arrival; });

    std::vector<Ticks> remaining(n);
    std::vector<bool> admitted(n, false);
    for (std::size_t i = 0; i < n; ++i) remaining[i] = w[i].burst;

    std::size_t next_arrival = 0;
    std::size_t ready = 0;
    std::size_t done = 0;
    std::optional<std::size_t> last;
    Ticks now{0};

    auto admit = [&](Ticks t) {
        while (next_arrival < n && w[by_arrival[next_arrival]].arrival <= t) {
            const auto p = by_arrival[next_arrival++];
            admitted[p] = true;
            ++ready;
            policy.on_arrival(p);
        }
    };

    admit(now);
    while (done < n) {
        if (ready == 0) {
            const Ticks until = w[by_arrival[next_arrival]].arrival;
            trace.idle.push_back(Interval{now, until});
            policy.on_idle();
            now = until;
            admit(now);
            continue;
        }

        const DispatchDecision d = policy.decide(now);
        if (d.process >= n || !admitted[d.process] || remaining[d.process] == Ticks{0})
            throw InternalError(name + " dispatched a process that is not ready");
        if (d.budget <= Ticks{0}) throw InternalError(name + " returned a non-positive budget");

        if (options.switch_cost > Ticks{0} && last && *last != d.process) {
            trace.overhead.push_back(Interval{now, now + options.switch_cost});
            now += options.switch_cost;
        }

        const SliceOutcome out = resolve_slice(d, remaining[d.process]);
        trace.slices.push_back(Slice{d.process, now, now + out.run, out.reason, d.budget});
        now += out.run;
        remaining[d.process] -= out.run;
        if (remaining[d.process] == Ticks{0}) {
            --ready;
            ++done;
        }
        last = d.process;

        admit(now);
        policy.on_slice_end(d.process, remaining[d.process], now);
    }
}

} // namespace

ScheduleTrace simulate(const WorkloadSpec& workload, const PolicyConfig& config, const SimOptions& options)
{
    validate_workload(workload);
    ScheduleTrace trace;
    trace.workload = workload;
    trace.policy = config;
    auto policy = make_policy(config, trace.workload);
    run_loop(trace, *policy, options);
    return trace;
}

ScheduleTrace simulate_with(const WorkloadSpec& workload, const PolicyConfig& config, Policy& policy,
                            const SimOptions& options)
{
    validate_workload(workload);
    ScheduleTrace trace;
    trace.workload = workload;
    trace.policy = config;
    run_loop(trace, policy, options);
    return trace;
}

ScheduleTrace merge_contiguous(const ScheduleTrace& trace)
{
    ScheduleTrace out;
    out.idle = trace.idle;
    out.overhead = trace.overhead;
    out.workload = trace.workload;
    out.policy = trace.policy;
    for (const auto& s : trace.slices) {
        if (!out.slices.empty() && out.slices.back().process == s.process && out.slices.back().end == s.start) {
            auto& back = out.slices.back();
            back.end = s.end;
            back.end_reason = s.end_reason;
            back.quantum = s.quantum;
        } else {
            out.slices.push_back(s);
        }
    }
    return out;
}

std::vector<std::optional<Ticks>> completion_times(const ScheduleTrace& trace)
{
    const auto& w = trace.workload;
    std::vector<Ticks> served(w.size(), Ticks{0});
    std::vector<std::optional<Ticks>> out(w.size());
    for (const auto& s : trace.slices) {
        if (s.process >= w.size()) continue;
        served[s.process] += s.duration();
        if (served[s.process] == w[s.process].burst) out[s.process] = s.end;
    }
    return out;
}

std::vector<std::string> validate_trace(const ScheduleTrace& trace)
{
    std::vector<std::string> errors;
    const auto& w = trace.workload;

    struct Piece {
        Ticks start, end;
        std::string what;
    };
    std::vector<Piece> pieces;
    for (const auto& s : trace.slices) {
        if (s.process >= w.size()) {
            errors.push_back("slice refers to unknown process #" + std::to_string(s.process));
            return errors;
        }
        if (!(s.start < s.end))
            errors.push_back("empty or inverted slice of " + w[s.process].pid + " at " + format_ms(s.start) + " ms");
        if (s.start < w[s.process].arrival)
            errors.push_back(w[s.process].pid + " runs at " + format_ms(s.start) + " ms before its arrival at " +
                             format_ms(w[s.process].arrival) + " ms");
        pieces.push_back({s.start, s.end, w[s.process].pid});
    }
    for (const auto& i : trace.idle) {
        if (!(i.start < i.end)) errors.push_back("empty idle gap at " + format_ms(i.start) + " ms");
        pieces.push_back({i.start, i.end, "idle"});
    }
    for (const auto& i : trace.overhead) pieces.push_back({i.start, i.end, "switch"});

    std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.start < b.start; });
    Ticks cursor{0};
    for (const auto& p : pieces) {
        if (p.start != cursor)
            errors.push_back((p.start < cursor ? "overlap at " : "uncovered time before ") + format_ms(p.start) +
                             " ms (" + p.what + ")");
        cursor = std::max(cursor, p.end);
    }

    std::vector<Ticks> served(w.size(), Ticks{0});
    for (const auto& s : trace.slices) served[s.process] += s.duration();
    for (std::size_t i = 0; i < w.size(); ++i)
        if (served[i] != w[i].burst)
            errors.push_back(w[i].pid + " received " + format_ms(served[i]) + " ms of a " + format_ms(w[i].burst) +
                             " ms burst");

    const auto completion = completion_times(trace);
    for (const auto& gap : trace.idle) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            const Ticks done = completion[i].value_or(trace.makespan());
            if (w[i].arrival < gap.end && gap.start < done)
                errors.push_back("CPU idle in [" + format_ms(gap.start) + ", " + format_ms(gap.end) + ") ms while " +
                                 w[i].pid + " is ready");
        }
    }
    return errors;
}

std::string trace_to_json(const ScheduleTrace& trace)
{
    nlohmann::ordered_json doc;
    doc["slices"] = nlohmann::ordered_json::array();
    for (const auto& s : trace.slices) {
        nlohmann::ordered_json j;
        j["pid"] = trace.pid(s);
        j["start_us"] = s.start.count();
        j["end_us"] = s.end.count();
        j["end_reason"] = to_string(s.end_reason);
        doc["slices"].push_back(std::move(j));
    }
    doc["idle"] = nlohmann::ordered_json::array();
    for (const auto& i : trace.idle) {
        nlohmann::ordered_json j;
        j["start_us"] = i.start.count();
        j["end_us"] = i.end.count();
        doc["idle"].push_back(std::move(j));
    }
    return doc.dump();
}

} // namespace schedsim
