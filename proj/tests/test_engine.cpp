#include "corpus.hpp"

#include "schedsim/engine.hpp"
#include "schedsim/reproduce.hpp"

#include <doctest.h>

using namespace schedsim;

namespace {

using Names = std::vector<std::string>;

class RogueFcfs final : public Policy {
public:
    explicit RogueFcfs(std::size_t target) : target_(target) {}
    void on_arrival(std::size_t) override {}
    void on_slice_end(std::size_t, Ticks, Ticks) override {}
    DispatchDecision decide(Ticks) override { return {target_, 1_ms, 0_us}; }

private:
    std::size_t target_;
};

} // namespace

TEST_SUITE("engine")
{
    TEST_CASE("experiment B under omdrr follows the published chart")
    {
        const auto t = simulate(embedded_workload(Experiment::b), {PolicyKind::omdrr, 3_ms});
        CHECK(merged_pid_sequence(t) == Names{"P1", "P2", "P3", "P4", "P5", "P3", "P2", "P4", "P5"});
        CHECK(merged_boundaries_ms(t) == Names{"0", "4", "7", "10", "13", "16", "18", "22", "27", "33"});
        CHECK(validate_trace(t).empty());
        // P1 gets 3 ms, has 1 ms left (2 < 3) and finishes in the same slice.
        CHECK(t.slices[0].end_reason == EndReason::continued_to_completion);
        CHECK(t.slices[0].quantum == 3_ms);
    }

    TEST_CASE("experiment A under omdrr: shortest remaining first from round 2")
    {
        const auto t = simulate(embedded_workload(Experiment::a), {PolicyKind::omdrr, 5_ms});
        CHECK(merged_pid_sequence(t) == Names{"P1", "P2", "P3", "P4", "P5", "P3", "P4", "P2", "P1"});
        const auto done = completion_times(t);
        CHECK(done[0] == 64_ms);
        CHECK(done[1] == 47_ms);
        CHECK(done[2] == 29_ms);
        CHECK(done[3] == 34_ms);
        CHECK(done[4] == 25_ms);
        CHECK(validate_trace(t).empty());
    }

    TEST_CASE("a single process is one completed slice under every policy")
    {
        const auto w = parse_workload("pid,arrival_ms,burst_ms\nP1,0,7.5\n", WorkloadFormat::csv);
        for (auto kind : {PolicyKind::fcfs, PolicyKind::rr_fifo, PolicyKind::rr_cyclic, PolicyKind::omdrr}) {
            CAPTURE(to_string(kind));
            const auto m = merge_contiguous(simulate(w, {kind, 10_ms}));
            REQUIRE(m.slices.size() == 1);
            CHECK(m.slices[0].start == 0_ms);
            CHECK(m.slices[0].end == Ticks{7500});
            CHECK(m.slices[0].end_reason == EndReason::completed);
            CHECK(m.idle.empty());
        }
    }

    TEST_CASE("idle gaps tile the timeline up to the next arrival")
    {
        const auto w = parse_workload("pid,arrival_ms,burst_ms\nA,2,1\nB,10,2\n", WorkloadFormat::csv);
        const auto t = simulate(w, {PolicyKind::omdrr, 1_ms});
        REQUIRE(t.idle.size() == 2);
        CHECK(t.idle[0] == Interval{0_ms, 2_ms});
        CHECK(t.idle[1] == Interval{3_ms, 10_ms});
        CHECK(t.makespan() == 12_ms);
        CHECK(validate_trace(t).empty());
    }

    TEST_CASE("an arrival exactly at a decision instant is admitted before the decision")
    {
        // A finishes at 3; B arrives at 3 and must run immediately with no idle gap.
        const auto w = parse_workload("pid,arrival_ms,burst_ms\nA,0,3\nB,3,1\n", WorkloadFormat::csv);
        for (auto kind : {PolicyKind::fcfs, PolicyKind::rr_fifo, PolicyKind::rr_cyclic, PolicyKind::omdrr}) {
            const auto t = simulate(w, {kind, 5_ms});
            CHECK(t.idle.empty());
            CHECK(t.slices.back().start == 3_ms);
        }
    }

    TEST_CASE("merge_contiguous")
    {
        const auto w = embedded_workload(Experiment::a);
        const auto t = simulate(w, {PolicyKind::omdrr, 5_ms});
        // P1: [47,57) quantum_expired then [57,64) completed.
        REQUIRE(t.slices.size() == 10);
        CHECK(t.slices[8] == Slice{0, 47_ms, 57_ms, EndReason::quantum_expired, 10_ms});
        CHECK(t.slices[9] == Slice{0, 57_ms, 64_ms, EndReason::completed, 20_ms});
        const auto m = merge_contiguous(t);
        REQUIRE(m.slices.size() == 9);
        CHECK(m.slices.back() == Slice{0, 47_ms, 64_ms, EndReason::completed, 20_ms});

        const auto fcfs = simulate(w, {PolicyKind::fcfs});
        CHECK(merge_contiguous(fcfs).slices == fcfs.slices);

        ScheduleTrace empty;
        CHECK(merge_contiguous(empty).slices.empty());
    }

    TEST_CASE("merge_contiguous does not join slices separated by idle time")
    {
        ScheduleTrace t;
        t.workload = parse_workload("pid,arrival_ms,burst_ms\nA,0,2\n", WorkloadFormat::csv);
        t.slices = {{0, 0_ms, 1_ms, EndReason::quantum_expired, 1_ms}, {0, 2_ms, 3_ms, EndReason::completed, 1_ms}};
        t.idle = {{1_ms, 2_ms}};
        CHECK(merge_contiguous(t).slices.size() == 2);
    }

    TEST_CASE("validate_trace reports each broken invariant")
    {
        const auto w = parse_workload("pid,arrival_ms,burst_ms\nA,0,2\nB,1,2\n", WorkloadFormat::csv);
        const auto good = simulate(w, {PolicyKind::fcfs});
        REQUIRE(validate_trace(good).empty());

        auto overlap = good;
        overlap.slices[1].start = 1_ms;
        overlap.slices[1].end = 3_ms;
        CHECK_FALSE(validate_trace(overlap).empty());

        auto short_work = good;
        short_work.slices[1].end = 3_ms;
        CHECK_FALSE(validate_trace(short_work).empty());

        ScheduleTrace early;
        early.workload = w;
        early.slices = {{1, 0_ms, 2_ms, EndReason::completed, 2_ms}, {0, 2_ms, 4_ms, EndReason::completed, 2_ms}};
        const auto early_errors = validate_trace(early);
        REQUIRE_FALSE(early_errors.empty());
        CHECK(early_errors[0].find("before its arrival") != std::string::npos);

        ScheduleTrace lazy;
        lazy.workload = w;
        lazy.idle = {{0_ms, 1_ms}};
        lazy.slices = {{0, 1_ms, 3_ms, EndReason::completed, 2_ms}, {1, 3_ms, 5_ms, EndReason::completed, 2_ms}};
        const auto lazy_errors = validate_trace(lazy);
        REQUIRE(lazy_errors.size() == 1);
        CHECK(lazy_errors[0].find("idle") != std::string::npos);
    }

    TEST_CASE("a policy that dispatches a non-ready process is an internal error")
    {
        const auto w = parse_workload("pid,arrival_ms,burst_ms\nA,0,2\nB,5,2\n", WorkloadFormat::csv);
        RogueFcfs not_arrived(1);
        CHECK_THROWS_AS(simulate_with(w, {PolicyKind::fcfs}, not_arrived), InternalError);
        RogueFcfs unknown(7);
        CHECK_THROWS_AS(simulate_with(w, {PolicyKind::fcfs}, unknown), InternalError);
    }

    TEST_CASE("context-switch cost adds overhead between different processes only")
    {
        const auto w = embedded_workload(Experiment::b);
        SimOptions opts;
        opts.switch_cost = Ticks{100};
        const auto t = simulate(w, {PolicyKind::rr_cyclic, 3_ms}, opts);
        CHECK(t.overhead.size() == 12);
        CHECK(validate_trace(t).empty());
        CHECK(t.makespan() == 33_ms + Ticks{1200});

        const auto single = simulate(parse_workload("pid,burst_ms\nP1,9\n", WorkloadFormat::csv),
                                     {PolicyKind::rr_cyclic, 3_ms}, opts);
        CHECK(single.overhead.empty());
    }

    TEST_CASE("trace JSON has the exchange layout")
    {
        const auto w = parse_workload("pid,arrival_ms,burst_ms\nA,1,2\n", WorkloadFormat::csv);
        const auto t = simulate(w, {PolicyKind::fcfs});
        CHECK(trace_to_json(t) ==
              R"({"slices":[{"pid":"A","start_us":1000,"end_us":3000,"end_reason":"completed"}],"idle":[{"start_us":0,"end_us":1000}]})");
    }

    TEST_CASE("simulation is deterministic")
    {
        for (std::uint64_t i = 0; i < 50; ++i) {
            const auto c = testing::corpus_case(i);
            for (const auto& cfg : testing::corpus_configs(c.quantum))
                CHECK(trace_to_json(simulate(c.workload, cfg)) == trace_to_json(simulate(c.workload, cfg)));
        }
    }

    TEST_CASE("invariants hold on a random corpus")
    {
        for (std::uint64_t i = 0; i < 200; ++i) {
            const auto c = testing::corpus_case(i);
            for (const auto& cfg : testing::corpus_configs(c.quantum)) {
                const auto t = simulate(c.workload, cfg);
                const auto errors = validate_trace(t);
                CAPTURE(i);
                CAPTURE(to_string(cfg.policy));
                CHECK(errors.empty());
            }
        }
    }
}
