#include "schedsim/cli.hpp"

#include "schedsim/engine.hpp"
#include "schedsim/metrics.hpp"
#include "schedsim/oracle.hpp"
#include "schedsim/report.hpp"
#include "schedsim/reproduce.hpp"
#include "schedsim/workload.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace schedsim::cli {

namespace {

/// Bad user input; reported with exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::string workload_path;
    std::string policy = "";
    std::string policies;
    std::string quantum;
    std::string mode = "standard";
    std::string format = "text";
    std::string first_round_order = "arrival";
    bool raw = false;
    bool oracle = false;
};

struct GenerateOptions {
    std::size_t count = 0;
    std::string max_burst_ms = "50";
    std::string arrival_window_ms;
    std::uint64_t seed = 0;
};

bool oracle_from_env()
{
    const char* v = std::getenv("SCHEDSIM_ORACLE");
    return v != nullptr && std::string_view(v) == "1";
}

Ticks parse_ms_flag(const std::string& flag, const std::string& text)
{
    const auto t = parse_ms(text);
    if (!t) throw InputError(flag + ": '" + text + "' " + std::string(describe(t.error)));
    return *t.ticks;
}

WorkloadSpec load_workload(const std::string& path, std::istream& in)
{
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw InputError("cannot open workload file '" + path + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    const auto first = text.find_first_not_of(" \t\r\n");
    const auto format = first != std::string::npos && text[first] == '{' ? WorkloadFormat::json : WorkloadFormat::csv;
    const std::string label = path == "-" ? std::string("stdin") : std::filesystem::path(path).stem().string();
    return parse_workload(text, format, label);
}

PolicyConfig make_config(const std::string& policy, const RunOptions& o)
{
    PolicyConfig c;
    const auto kind = parse_policy(policy);
    if (!kind) throw InputError("unknown policy '" + policy + "' (expected fcfs, rr-fifo, rr-cyclic or omdrr)");
    c.policy = *kind;
    const auto order = parse_first_round_order(o.first_round_order);
    if (!order) throw InputError("--first-round-order must be 'arrival' or 'sorted'");
    c.first_round_order = *order;
    if (!o.quantum.empty())
        c.initial_quantum = parse_ms_flag("--quantum", o.quantum);
    else if (c.policy != PolicyKind::fcfs)
        throw InputError("--quantum is required for policy '" + policy + "'");
    try {
        validate_config(c);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    return c;
}

ScheduleTrace checked_simulation(const WorkloadSpec& w, const PolicyConfig& c, bool oracle)
{
    ScheduleTrace trace = oracle ? oracle_simulate(w, c) : simulate(w, c);
    const auto violations = validate_trace(trace);
    if (!violations.empty()) {
        std::string msg = "trace invariant violated:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw InternalError(msg);
    }
    return trace;
}

MetricsMode mode_of(const RunOptions& o)
{
    const auto m = parse_metrics_mode(o.mode);
    if (!m) throw InputError("--mode must be 'standard' or 'paper'");
    return *m;
}

ReportFormat format_of(const RunOptions& o)
{
    const auto f = parse_report_format(o.format);
    if (!f) throw InputError("--format must be 'text', 'csv' or 'json'");
    return *f;
}

int cmd_run(const RunOptions& o, std::istream& in, std::ostream& out)
{
    const auto mode = mode_of(o);
    const auto format = format_of(o);
    const auto workload = load_workload(o.workload_path, in);
    const auto config = make_config(o.policy, o);
    const auto trace = checked_simulation(workload, config, o.oracle || oracle_from_env());
    const auto metrics = compute_metrics(trace, mode);

    switch (format) {
    case ReportFormat::text:
        out << "workload: " << workload.label << "  policy: " << to_string(config.policy);
        if (config.policy != PolicyKind::fcfs) out << "  quantum: " << format_ms(config.initial_quantum) << " ms";
        if (config.policy == PolicyKind::omdrr) out << "  first round: " << to_string(config.first_round_order);
        out << "\n\n" << render_gantt_text(trace, GanttOptions{o.raw}) << '\n' << render_metrics_text(metrics);
        break;
    case ReportFormat::csv: {
        ComparisonTable t{workload.label, mode, {{std::string(to_string(config.policy)), metrics}}};
        out << render_comparison(t, ReportFormat::csv);
        break;
    }
    case ReportFormat::json: {
        nlohmann::ordered_json doc;
        doc["workload"] = workload.label;
        doc["policy"] = to_string(config.policy);
        doc["quantum_ms"] = format_ms(config.initial_quantum);
        doc["trace"] = nlohmann::ordered_json::parse(trace_to_json(o.raw ? trace : merge_contiguous(trace)));
        doc["metrics"] = nlohmann::ordered_json::parse(metrics_to_json(metrics));
        out << doc.dump(2) << '\n';
        break;
    }
    }
    return exit_ok;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_compare(const RunOptions& o, std::istream& in, std::ostream& out)
{
    const auto mode = mode_of(o);
    const auto format = format_of(o);
    const auto workload = load_workload(o.workload_path, in);
    const auto names = split_list(o.policies);
    if (names.empty()) throw InputError("--policies needs at least one policy");

    std::vector<PolicyConfig> configs;
    for (const auto& n : names) configs.push_back(make_config(n, o));

    const bool oracle = o.oracle || oracle_from_env();
    std::vector<std::future<MetricsReport>> jobs;
    for (const auto& c : configs)
        jobs.push_back(std::async(std::launch::async, [&workload, c, oracle, mode] {
            return compute_metrics(checked_simulation(workload, c, oracle), mode);
        }));

    ComparisonTable table{workload.label, mode, {}};
    for (std::size_t i = 0; i < jobs.size(); ++i) table.rows.push_back({names[i], jobs[i].get()});
    out << render_comparison(table, format);
    return exit_ok;
}

int cmd_reproduce(const std::string& which, bool oracle, std::ostream& out)
{
    std::vector<Experiment> experiments;
    if (which == "all")
        experiments = {Experiment::a, Experiment::b};
    else if (auto e = parse_experiment(which))
        experiments = {*e};
    else
        throw InputError("unknown experiment '" + which + "' (expected expA, expB or all)");

    bool ok = true;
    for (std::size_t i = 0; i < experiments.size(); ++i) {
        const auto run = run_experiment(experiments[i], oracle || oracle_from_env());
        if (i) out << '\n';
        out << render_experiment(run);
        ok = ok && run.passed();
    }
    out << '\n' << (ok ? "reproduction: all checks passed" : "reproduction: MISMATCH") << '\n';
    return ok ? exit_ok : exit_mismatch;
}

int cmd_generate(const GenerateOptions& g, std::ostream& out)
{
    if (g.count == 0) throw InputError("--count must be at least 1");
    GeneratorParams p;
    p.count = g.count;
    p.max_burst = parse_ms_flag("--max-burst-ms", g.max_burst_ms);
    if (p.max_burst < Ticks{1}) throw InputError("--max-burst-ms must be at least 0.001");
    if (!g.arrival_window_ms.empty()) {
        p.arrival_mode = GeneratorParams::ArrivalMode::uniform_window;
        p.arrival_window = parse_ms_flag("--arrival-window-ms", g.arrival_window_ms);
    }
    p.seed = g.seed;
    out << export_workload_csv(generate_random(p));
    return exit_ok;
}

void add_policy_flags(CLI::App* sub, RunOptions& o)
{
    sub->add_option("--quantum", o.quantum, "Initial time quantum in ms (decimal, up to 3 fractional digits)");
    sub->add_option("--mode", o.mode, "Metrics mode: standard or paper")->capture_default_str();
    sub->add_option("--format", o.format, "Output format: text, csv or json")->capture_default_str();
    sub->add_option("--first-round-order", o.first_round_order, "omdrr first round order: arrival or sorted")
        ->capture_default_str();
    sub->add_flag("--oracle", o.oracle, "Use the per-tick reference interpreter")->group("");
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Deterministic CPU scheduling simulator (fcfs, round robin, multilevel dynamic round robin)",
                 "schedsim"};
    app.require_subcommand(1);

    RunOptions run_opts;
    auto* run_cmd = app.add_subcommand("run", "Simulate one policy and print the Gantt chart and metrics");
    run_cmd->add_option("workload", run_opts.workload_path, "Workload file (CSV or JSON, '-' for stdin)")->required();
    run_cmd->add_option("--policy", run_opts.policy, "fcfs, rr-fifo, rr-cyclic or omdrr")->required();
    run_cmd->add_flag("--raw", run_opts.raw, "Show unmerged engine slices with end reasons");
    add_policy_flags(run_cmd, run_opts);

    RunOptions cmp_opts;
    auto* cmp_cmd = app.add_subcommand("compare", "Compare several policies on one workload");
    cmp_cmd->add_option("workload", cmp_opts.workload_path, "Workload file (CSV or JSON, '-' for stdin)")->required();
    cmp_cmd->add_option("--policies", cmp_opts.policies, "Comma-separated policy list")->required();
    add_policy_flags(cmp_cmd, cmp_opts);

    std::string experiment = "all";
    bool repro_oracle = false;
    auto* rep_cmd = app.add_subcommand("reproduce", "Re-run the two published experiments and check every value");
    rep_cmd->add_option("experiment", experiment, "expA, expB or all")->capture_default_str();
    rep_cmd->add_flag("--oracle", repro_oracle, "Use the per-tick reference interpreter")->group("");

    GenerateOptions gen;
    auto* gen_cmd = app.add_subcommand("generate", "Write a seeded random workload as CSV to standard output");
    gen_cmd->add_option("--count", gen.count, "Number of processes")->required();
    gen_cmd->add_option("--max-burst-ms", gen.max_burst_ms, "Largest burst in ms")->capture_default_str();
    gen_cmd->add_option("--arrival-window-ms", gen.arrival_window_ms,
                        "Spread arrivals uniformly over [0, window] ms (default: all arrive at 0)");
    gen_cmd->add_option("--seed", gen.seed, "Seed for the pseudo-random stream")->capture_default_str();

    std::vector<const char*> argv{"schedsim"};
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_bad_input;
    }

    try {
        if (*run_cmd) return cmd_run(run_opts, in, out);
        if (*cmp_cmd) return cmd_compare(cmp_opts, in, out);
        if (*rep_cmd) return cmd_reproduce(experiment, repro_oracle, out);
        if (*gen_cmd) return cmd_generate(gen, out);
    } catch (const WorkloadError& e) {
        err << "error: " << e.what() << '\n';
        return exit_bad_input;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_bad_input;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_mismatch;
    }
    return exit_bad_input;
}

} // namespace schedsim::cli
