#include "corpus.hpp"

#include "schedsim/metrics.hpp"
#include "schedsim/reproduce.hpp"

#include <doctest.h>

using namespace schedsim;

namespace {

Rational r(std::string_view s) { return *Rational::parse(s); }

} // namespace

TEST_SUITE("metrics")
{
    TEST_CASE("rational basics")
    {
        CHECK(Rational(234, 5).to_string() == "46.8");
        CHECK(Rational(106281, 5000).to_string() == "21.2562");
        CHECK(Rational(170, 5).to_string() == "34");
        CHECK(Rational(5, 33).to_string() == "5/33");
        CHECK(Rational(-3, 4).to_string() == "-0.75");
        CHECK(Rational(5, 33).to_decimal(6) == "0.151515");
        CHECK(Rational(2, 3).to_decimal(2) == "0.67");
        CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
        CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
        CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
        CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
        CHECK(Rational(1, 3) < Rational(1, 2));
        CHECK(Rational(4, -8) == Rational(-1, 2));
        CHECK_THROWS(Rational(1, 0));

        CHECK(Rational::parse("46.8") == Rational(234, 5));
        CHECK(Rational::parse("-0.5") == Rational(-1, 2));
        CHECK(Rational::parse("5/33") == Rational(5, 33));
        CHECK_FALSE(Rational::parse("4.x"));
        CHECK_FALSE(Rational::parse("1/0"));
        CHECK_FALSE(Rational::parse(""));
        for (std::int64_t n = -50; n <= 50; ++n)
            for (std::int64_t d = 1; d <= 40; ++d) CHECK(Rational::parse(Rational(n, d).to_string()) == Rational(n, d));
    }

    TEST_CASE("experiment A round robin: 34 ms waiting, 46.8 ms turnaround, 13 switches")
    {
        const auto t = simulate(embedded_workload(Experiment::a), {PolicyKind::rr_cyclic, 5_ms});
        for (auto mode : {MetricsMode::standard, MetricsMode::paper}) {
            const auto m = compute_metrics(t, mode);
            CHECK(m.avg_waiting_ms == r("34"));
            CHECK(m.avg_turnaround_ms == r("46.8"));
            CHECK(m.context_switches == 13);
            CHECK(m.cpu_utilization == Rational(1));
            CHECK(m.makespan == 64_ms);
        }
    }

    TEST_CASE("experiment B round robin in both metric modes")
    {
        const auto t = simulate(embedded_workload(Experiment::b), {PolicyKind::rr_cyclic, 3_ms});
        const auto paper = compute_metrics(t, MetricsMode::paper);
        CHECK(paper.avg_waiting_ms == r("19"));
        CHECK(paper.avg_turnaround_ms == r("25.6"));
        CHECK(paper.context_switches == 12);

        // Completions 16, 28, 21, 30, 33 minus arrivals 0, 2.4, 5.1, 6.2, 8.019 sum to 106.281.
        const auto standard = compute_metrics(t, MetricsMode::standard);
        CHECK(standard.avg_turnaround_ms == r("21.2562"));
        CHECK(standard.avg_turnaround_ms - standard.avg_waiting_ms == r("6.6"));
        CHECK(standard.per_process[4].turnaround == Ticks{24981});
    }

    TEST_CASE("experiment B omdrr in paper mode")
    {
        const auto m = compute_metrics(simulate(embedded_workload(Experiment::b), {PolicyKind::omdrr, 3_ms}),
                                       MetricsMode::paper);
        CHECK(m.context_switches == 8);
        CHECK(m.avg_waiting_ms == r("14.2"));
        CHECK(m.avg_turnaround_ms == r("20.8"));
    }

    TEST_CASE("single process")
    {
        const auto w = parse_workload("pid,burst_ms\nP1,4\n", WorkloadFormat::csv);
        const auto m = compute_metrics(simulate(w, {PolicyKind::fcfs}), MetricsMode::standard);
        CHECK(m.per_process[0].waiting == 0_ms);
        CHECK(m.per_process[0].turnaround == 4_ms);
        CHECK(m.per_process[0].response == 0_ms);
        CHECK(m.cpu_utilization == Rational(1));
        CHECK(m.throughput_per_ms == Rational(1, 4));
        CHECK(m.context_switches == 0);
    }

    TEST_CASE("response time and utilization with idle time")
    {
        const auto w = parse_workload("pid,arrival_ms,burst_ms\nA,0,2\nB,4,2\n", WorkloadFormat::csv);
        const auto t = simulate(w, {PolicyKind::fcfs});
        const auto std_m = compute_metrics(t, MetricsMode::standard);
        CHECK(std_m.per_process[1].response == 0_ms);
        CHECK(std_m.cpu_utilization == Rational(4, 6));
        CHECK(std_m.context_switches == 1);
        const auto paper_m = compute_metrics(t, MetricsMode::paper);
        CHECK(paper_m.per_process[1].response == 4_ms);
        CHECK(paper_m.per_process[1].turnaround == 6_ms);
    }

    TEST_CASE("context switches ignore pre-merging and count across idle gaps only when pids differ")
    {
        const auto t = simulate(embedded_workload(Experiment::a), {PolicyKind::omdrr, 5_ms});
        CHECK(context_switches(t) == 8);
        CHECK(context_switches(merge_contiguous(t)) == 8);

        const auto same = simulate(parse_workload("pid,arrival_ms,burst_ms\nA,0,1\nB,3,1\n", WorkloadFormat::csv),
                                   {PolicyKind::fcfs});
        CHECK(context_switches(same) == 1);

        ScheduleTrace gap;
        gap.workload = parse_workload("pid,burst_ms\nA,2\n", WorkloadFormat::csv);
        gap.slices = {{0, 0_ms, 1_ms, EndReason::quantum_expired, 1_ms}, {0, 2_ms, 3_ms, EndReason::completed, 1_ms}};
        gap.idle = {{1_ms, 2_ms}};
        CHECK(context_switches(gap) == 0);
    }

    TEST_CASE("incomplete traces are rejected")
    {
        auto t = simulate(embedded_workload(Experiment::a), {PolicyKind::fcfs});
        t.slices.pop_back();
        CHECK_THROWS_AS(compute_metrics(t, MetricsMode::standard), IncompleteTraceError);
    }

    TEST_CASE("turnaround minus waiting is the average burst; modes coincide without arrivals")
    {
        for (std::uint64_t i = 0; i < 200; ++i) {
            const auto c = testing::corpus_case(i);
            for (const auto& cfg : testing::corpus_configs(c.quantum)) {
                const auto t = simulate(c.workload, cfg);
                const auto s = compute_metrics(t, MetricsMode::standard);
                const auto p = compute_metrics(t, MetricsMode::paper);
                const Rational avg_burst = ticks_to_ms(c.workload.total_burst()) / Rational(c.workload.size());
                CHECK(s.avg_turnaround_ms - s.avg_waiting_ms == avg_burst);
                CHECK(p.avg_turnaround_ms - p.avg_waiting_ms == avg_burst);
                CHECK(s.throughput_per_ms * ticks_to_ms(s.makespan) == Rational(c.workload.size()));
                if (c.workload.all_arrivals_zero()) {
                    CHECK(s.avg_turnaround_ms == p.avg_turnaround_ms);
                    CHECK(s.avg_waiting_ms == p.avg_waiting_ms);
                    CHECK(s.avg_response_ms == p.avg_response_ms);
                }
            }
        }
    }

    TEST_CASE("metrics JSON carries ticks and exact decimal strings")
    {
        const auto m = compute_metrics(simulate(embedded_workload(Experiment::b), {PolicyKind::rr_cyclic, 3_ms}),
                                       MetricsMode::standard);
        const auto json = metrics_to_json(m);
        CHECK(json.find(R"("avg_turnaround_ms": "21.2562")") != std::string::npos);
        CHECK(json.find(R"("turnaround_us": 24981)") != std::string::npos);
        CHECK(json.find(R"("turnaround_ms": "24.981")") != std::string::npos);
        CHECK(json.find(R"("throughput_per_ms": "5/33")") != std::string::npos);
    }
}
