#include "schedsim/cli.hpp"
#include "schedsim/report.hpp"
#include "schedsim/workload.hpp"

#include <doctest.h>

#include <sstream>

using namespace schedsim;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args, const std::string& stdin_text = {})
{
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

const std::string exp_a = SCHEDSIM_REPO_DATA "/expA.csv";
const std::string exp_b = SCHEDSIM_REPO_DATA "/expB.csv";

bool contains(const std::string& haystack, std::string_view needle)
{
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("run prints the chart and the metrics")
    {
        const auto r = invoke({"run", exp_a, "--policy", "rr-cyclic", "--quantum", "5"});
        CHECK(r.code == cli::exit_ok);
        CHECK(contains(r.out, "workload: expA  policy: rr-cyclic  quantum: 5 ms"));
        CHECK(contains(r.out, "avg waiting:       34 ms"));
        CHECK(contains(r.out, "avg turnaround:    46.8 ms"));
        CHECK(contains(r.out, "context switches:  13"));
    }

    TEST_CASE("run in paper mode reproduces the experiment B omdrr turnaround")
    {
        const auto r = invoke({"run", exp_b, "--policy", "omdrr", "--quantum", "3", "--mode", "paper"});
        CHECK(r.code == cli::exit_ok);
        CHECK(contains(r.out, "avg turnaround:    20.8 ms"));
        CHECK(contains(r.out, "metrics mode:      paper"));
    }

    TEST_CASE("fcfs needs no quantum and a single process is one slice")
    {
        const auto r = invoke({"run", "-", "--policy", "fcfs", "--format", "json"}, "pid,burst_ms\nonly,2.5\n");
        CHECK(r.code == cli::exit_ok);
        CHECK(contains(r.out, R"("slices": [)"));
        CHECK(contains(r.out, R"("end_us": 2500)"));
        CHECK(contains(r.out, R"("context_switches": 0)"));
    }

    TEST_CASE("run accepts JSON workloads on stdin")
    {
        const auto r = invoke({"run", "-", "--policy", "rr-fifo", "--quantum", "1", "--format", "csv"},
                              R"({"processes":[{"pid":"A","burst_ms":"2"},{"pid":"B","burst_ms":"1"}]})");
        CHECK(r.code == cli::exit_ok);
        CHECK(r.out == std::string(comparison_csv_header) + "\nrr-fifo,2,1,2.5,0.5,2/3,1\n");
    }

    TEST_CASE("raw mode exposes end reasons")
    {
        const auto r = invoke({"run", exp_b, "--policy", "omdrr", "--quantum", "3", "--raw"});
        CHECK(r.code == cli::exit_ok);
        CHECK(contains(r.out, "continued_to_completion"));
    }

    TEST_CASE("compare with one and with two policies")
    {
        const auto one = invoke({"compare", exp_a, "--policies", "omdrr", "--quantum", "5", "--format", "csv"});
        CHECK(one.code == cli::exit_ok);
        CHECK(one.out == std::string(comparison_csv_header) + "\nomdrr,8,27,39.8,10,0.078125,1\n");

        const auto two = invoke({"compare", exp_a, "--policies", "rr-cyclic,omdrr", "--quantum", "5"});
        CHECK(two.code == cli::exit_ok);
        CHECK(contains(two.out, "rr-cyclic"));
        CHECK(contains(two.out, "omdrr"));
    }

    TEST_CASE("the two round robin variants differ once arrivals are staggered")
    {
        const auto r = invoke({"compare", exp_b, "--policies", "rr-fifo,rr-cyclic", "--quantum", "3", "--format",
                               "csv", "--mode", "paper"});
        REQUIRE(r.code == cli::exit_ok);
        std::istringstream ss(r.out);
        std::string header, fifo, cyclic;
        std::getline(ss, header);
        std::getline(ss, fifo);
        std::getline(ss, cyclic);
        CHECK(fifo.substr(fifo.find(',')) != cyclic.substr(cyclic.find(',')));
        CHECK(cyclic == "rr-cyclic,12,19,25.6,6,5/33,1");
    }

    TEST_CASE("reproduce exits cleanly for each experiment")
    {
        for (const char* which : {"expA", "expB", "all"}) {
            const auto r = invoke({"reproduce", which});
            CAPTURE(which);
            CHECK(r.code == cli::exit_ok);
            CHECK(contains(r.out, "reproduction: all checks passed"));
            CHECK_FALSE(contains(r.out, "FAIL"));
        }
        const auto oracle = invoke({"reproduce", "--oracle"});
        CHECK(oracle.code == cli::exit_ok);
    }

    TEST_CASE("generate is deterministic for a seed")
    {
        const auto a = invoke({"generate", "--count", "20", "--seed", "42"});
        const auto b = invoke({"generate", "--count", "20", "--seed", "42"});
        const auto c = invoke({"generate", "--count", "20", "--seed", "43"});
        CHECK(a.code == cli::exit_ok);
        CHECK(a.out == b.out);
        CHECK(a.out != c.out);
        CHECK(parse_workload(a.out, WorkloadFormat::csv).size() == 20);

        const auto tiny = invoke({"generate", "--count", "1", "--max-burst-ms", "0.001"});
        CHECK(tiny.out == "pid,burst_ms\nP1,0.001\n");

        const auto window = invoke({"generate", "--count", "5", "--arrival-window-ms", "10", "--seed", "1"});
        CHECK(contains(window.out, "pid,arrival_ms,burst_ms\n"));
    }

    TEST_CASE("bad input exits with code 2 and a message")
    {
        const std::vector<std::vector<std::string>> cases = {
            {"run", exp_a, "--policy", "rr-cyclic"},
            {"run", exp_a, "--policy", "lottery", "--quantum", "5"},
            {"run", exp_a, "--policy", "omdrr", "--quantum", "0"},
            {"run", exp_a, "--policy", "omdrr", "--quantum", "1.0005"},
            {"run", exp_a, "--policy", "omdrr", "--quantum", "5", "--mode", "fancy"},
            {"run", exp_a, "--policy", "omdrr", "--quantum", "5", "--first-round-order", "random"},
            {"run", "/nonexistent/workload.csv", "--policy", "fcfs"},
            {"run", exp_a, "--policy", "fcfs", "--bogus"},
            {"compare", exp_a, "--policies", ",", "--quantum", "5"},
            {"reproduce", "expC"},
            {"generate", "--count", "0"},
            {"generate"},
            {"frobnicate"},
            {},
        };
        for (const auto& args : cases) {
            const auto r = invoke(args);
            std::string joined;
            for (const auto& a : args) joined += a + ' ';
            CAPTURE(joined);
            CHECK(r.code == cli::exit_bad_input);
            CHECK_FALSE(r.err.empty());
        }

        const auto bad_row = invoke({"run", "-", "--policy", "fcfs"}, "pid,arrival_ms,burst_ms\nP1,0,1\nP2,0,0\n");
        CHECK(bad_row.code == cli::exit_bad_input);
        CHECK(contains(bad_row.err, "row 3"));
    }

    TEST_CASE("help exits successfully")
    {
        const auto r = invoke({"--help"});
        CHECK(r.code == cli::exit_ok);
        CHECK(contains(r.out, "reproduce"));
    }
}
