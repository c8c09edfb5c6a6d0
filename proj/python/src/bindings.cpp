#include "schedsim/cli.hpp"
#include "schedsim/engine.hpp"
#include "schedsim/metrics.hpp"
#include "schedsim/oracle.hpp"
#include "schedsim/report.hpp"
#include "schedsim/reproduce.hpp"
#include "schedsim/workload.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace schedsim;

namespace {

Ticks ms_arg(const std::string& name, const std::string& text)
{
    const auto t = parse_ms(text);
    if (!t) throw py::value_error(name + ": '" + text + "' " + std::string(describe(t.error)));
    return *t.ticks;
}

template <class Enum, class Parse>
Enum enum_arg(const std::string& name, const std::string& text, Parse parse)
{
    const auto v = parse(text);
    if (!v) throw py::value_error("unknown " + name + " '" + text + "'");
    return *v;
}

py::tuple rational(const Rational& r) { return py::make_tuple(r.num(), r.den()); }

PolicyConfig make_config(const std::string& policy, const std::optional<std::string>& quantum_ms,
                         const std::string& first_round_order)
{
    PolicyConfig c;
    c.policy = enum_arg<PolicyKind>("policy", policy, parse_policy);
    c.first_round_order = enum_arg<FirstRoundOrder>("first round order", first_round_order, parse_first_round_order);
    if (quantum_ms)
        c.initial_quantum = ms_arg("quantum_ms", *quantum_ms);
    else if (c.policy != PolicyKind::fcfs)
        throw py::value_error("quantum_ms is required for policy '" + policy + "'");
    try {
        validate_config(c);
    } catch (const std::invalid_argument& e) {
        throw py::value_error(e.what());
    }
    return c;
}

py::dict metrics_dict(const MetricsReport& m)
{
    py::list per;
    for (const auto& p : m.per_process) {
        py::dict d;
        d["pid"] = p.pid;
        d["arrival_us"] = p.arrival.count();
        d["burst_us"] = p.burst.count();
        d["completion_us"] = p.completion.count();
        d["turnaround_us"] = p.turnaround.count();
        d["waiting_us"] = p.waiting.count();
        d["response_us"] = p.response.count();
        per.append(d);
    }
    py::dict d;
    d["mode"] = std::string(to_string(m.mode));
    d["per_process"] = per;
    d["avg_waiting_ms"] = rational(m.avg_waiting_ms);
    d["avg_turnaround_ms"] = rational(m.avg_turnaround_ms);
    d["avg_response_ms"] = rational(m.avg_response_ms);
    d["avg_burst_ms"] = rational(m.avg_burst_ms);
    d["context_switches"] = m.context_switches;
    d["throughput_per_ms"] = rational(m.throughput_per_ms);
    d["cpu_utilization"] = rational(m.cpu_utilization);
    d["makespan_us"] = m.makespan.count();
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Deterministic CPU scheduling simulator";

    py::register_exception<WorkloadError>(m, "WorkloadError", PyExc_ValueError);
    py::register_exception<IncompleteTraceError>(m, "IncompleteTraceError", PyExc_RuntimeError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

    py::class_<ProcessSpec>(m, "Process")
        .def_readonly("pid", &ProcessSpec::pid)
        .def_property_readonly("arrival_us", [](const ProcessSpec& p) { return p.arrival.count(); })
        .def_property_readonly("burst_us", [](const ProcessSpec& p) { return p.burst.count(); })
        .def("__repr__", [](const ProcessSpec& p) {
            return "Process(" + p.pid + ", arrival=" + format_ms(p.arrival) + "ms, burst=" + format_ms(p.burst) +
                   "ms)";
        });

    py::class_<WorkloadSpec>(m, "Workload")
        .def_readonly("label", &WorkloadSpec::label)
        .def_readonly("processes", &WorkloadSpec::processes)
        .def("__len__", &WorkloadSpec::size)
        .def("__eq__", [](const WorkloadSpec& a, const WorkloadSpec& b) { return a == b; })
        .def("to_csv", &export_workload_csv)
        .def("to_json", &export_workload_json);

    py::class_<Slice>(m, "Slice")
        .def_readonly("process", &Slice::process)
        .def_property_readonly("start_us", [](const Slice& s) { return s.start.count(); })
        .def_property_readonly("end_us", [](const Slice& s) { return s.end.count(); })
        .def_property_readonly("quantum_us", [](const Slice& s) { return s.quantum.count(); })
        .def_property_readonly("end_reason", [](const Slice& s) { return std::string(to_string(s.end_reason)); });

    py::class_<ScheduleTrace>(m, "Trace")
        .def_readonly("slices", &ScheduleTrace::slices)
        .def_readonly("workload", &ScheduleTrace::workload)
        .def_property_readonly("idle",
                               [](const ScheduleTrace& t) {
                                   std::vector<std::pair<Ticks::rep, Ticks::rep>> out;
                                   for (const auto& i : t.idle) out.emplace_back(i.start.count(), i.end.count());
                                   return out;
                               })
        .def_property_readonly("makespan_us", [](const ScheduleTrace& t) { return t.makespan().count(); })
        .def("pid", [](const ScheduleTrace& t, const Slice& s) { return t.pid(s); })
        .def("merged", &merge_contiguous)
        .def("validate", &validate_trace)
        .def("to_json", &trace_to_json)
        .def("gantt", [](const ScheduleTrace& t, bool raw) { return render_gantt_text(t, GanttOptions{raw}); },
             py::arg("raw") = false);

    m.def(
        "parse_workload",
        [](const std::string& text, const std::string& format, const std::string& label) {
            if (format != "csv" && format != "json") throw py::value_error("format must be 'csv' or 'json'");
            return parse_workload(text, format == "csv" ? WorkloadFormat::csv : WorkloadFormat::json, label);
        },
        py::arg("text"), py::arg("format") = "csv", py::arg("label") = "");

    m.def(
        "generate_random",
        [](std::size_t count, const std::string& max_burst_ms, const std::optional<std::string>& arrival_window_ms,
           std::uint64_t seed) {
            GeneratorParams p;
            p.count = count;
            p.max_burst = ms_arg("max_burst_ms", max_burst_ms);
            if (arrival_window_ms) {
                p.arrival_mode = GeneratorParams::ArrivalMode::uniform_window;
                p.arrival_window = ms_arg("arrival_window_ms", *arrival_window_ms);
            }
            p.seed = seed;
            try {
                return generate_random(p);
            } catch (const std::invalid_argument& e) {
                throw py::value_error(e.what());
            }
        },
        py::arg("count"), py::arg("max_burst_ms") = "50", py::arg("arrival_window_ms") = py::none(),
        py::arg("seed") = 0);

    m.def(
        "embedded_workload",
        [](const std::string& name) {
            return embedded_workload(enum_arg<Experiment>("experiment", name, parse_experiment));
        },
        py::arg("experiment"));

    m.def(
        "simulate",
        [](const WorkloadSpec& w, const std::string& policy, const std::optional<std::string>& quantum_ms,
           const std::string& first_round_order, std::int64_t switch_cost_us, bool oracle) {
            const auto config = make_config(policy, quantum_ms, first_round_order);
            if (oracle) {
                if (switch_cost_us != 0) throw py::value_error("the oracle does not model switch cost");
                return oracle_simulate(w, config);
            }
            SimOptions opts;
            opts.switch_cost = Ticks{switch_cost_us};
            return simulate(w, config, opts);
        },
        py::arg("workload"), py::arg("policy"), py::arg("quantum_ms") = py::none(),
        py::arg("first_round_order") = "arrival", py::arg("switch_cost_us") = 0, py::arg("oracle") = false);

    m.def("context_switches", &context_switches, py::arg("trace"));

    m.def(
        "compute_metrics",
        [](const ScheduleTrace& t, const std::string& mode) {
            return metrics_dict(compute_metrics(t, enum_arg<MetricsMode>("metrics mode", mode, parse_metrics_mode)));
        },
        py::arg("trace"), py::arg("mode") = "standard");

    m.def(
        "compare",
        [](const WorkloadSpec& w, const std::vector<std::string>& policies, const std::optional<std::string>& quantum_ms,
           const std::string& mode, const std::string& format) {
            ComparisonTable table;
            table.workload_label = w.label;
            table.mode = enum_arg<MetricsMode>("metrics mode", mode, parse_metrics_mode);
            for (const auto& p : policies)
                table.rows.push_back({p, compute_metrics(simulate(w, make_config(p, quantum_ms, "arrival")), table.mode)});
            if (table.rows.empty()) throw py::value_error("at least one policy is required");
            return render_comparison(table, enum_arg<ReportFormat>("format", format, parse_report_format));
        },
        py::arg("workload"), py::arg("policies"), py::arg("quantum_ms") = py::none(), py::arg("mode") = "standard",
        py::arg("format") = "text");

    m.def(
        "reproduce",
        [](const std::string& name, bool oracle) {
            const auto run = run_experiment(enum_arg<Experiment>("experiment", name, parse_experiment), oracle);
            py::list checks;
            for (const auto& c : run.checks) {
                py::dict d;
                d["subject"] = c.subject;
                d["expected"] = c.expected;
                d["actual"] = c.actual;
                d["passed"] = c.pass;
                checks.append(d);
            }
            py::dict d;
            d["passed"] = run.passed();
            d["checks"] = checks;
            d["notes"] = run.notes;
            d["rr_metrics"] = metrics_dict(run.rr_metrics);
            d["omdrr_metrics"] = metrics_dict(run.omdrr_metrics);
            d["text"] = render_experiment(run);
            return d;
        },
        py::arg("experiment"), py::arg("oracle") = false);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args, const std::string& stdin_text) {
            std::istringstream in(stdin_text);
            std::ostringstream out, err;
            const int code = cli::run(args, in, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), py::arg("stdin") = "");
}
