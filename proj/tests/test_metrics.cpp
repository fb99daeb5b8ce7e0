#include "leachsim/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <stdexcept>

using namespace leachsim;

namespace {

SimulationTrace synthetic_trace(int num_nodes, const std::vector<int>& dead_per_round,
                                std::uint64_t seed = 1) {
    SimulationTrace trace;
    trace.config.num_nodes = num_nodes;
    trace.config.rounds_max = 10000;
    trace.config.seed = seed;
    std::uint64_t pkts = 0;
    for (std::size_t r = 0; r < dead_per_round.size(); ++r) {
        RoundReport report;
        report.round = static_cast<long>(r);
        report.dead = dead_per_round[r];
        report.alive = num_nodes - report.dead;
        pkts += static_cast<std::uint64_t>(report.alive);
        report.pkts_to_ch = pkts;
        report.pkts_to_bs = pkts / 10;
        report.energy_dissipated_j = 0.001 * static_cast<double>(r);
        trace.rounds.push_back(report);
    }
    trace.summary = summarize(trace);
    return trace;
}

} // namespace

TEST_CASE("summarize death milestones") {
    SUBCASE("everyone dies in round one") {
        const SimulationTrace trace = synthetic_trace(100, {0, 100});
        CHECK(trace.summary.first_node_death == 1);
        CHECK(trace.summary.half_nodes_death == 1);
        CHECK(trace.summary.last_node_death == 1);
    }

    SUBCASE("no deaths means sentinel milestones") {
        const SimulationTrace trace = synthetic_trace(100, {0, 0, 0});
        CHECK(trace.summary.first_node_death == trace.config.rounds_max);
        CHECK(trace.summary.half_nodes_death == trace.config.rounds_max);
        CHECK(trace.summary.last_node_death == trace.config.rounds_max);
    }

    SUBCASE("one death per round") {
        std::vector<int> dead(101);
        for (int r = 0; r <= 100; ++r) {
            dead[r] = r;
        }
        const SimulationTrace trace = synthetic_trace(100, dead);
        CHECK(trace.summary.first_node_death == 1);
        CHECK(trace.summary.half_nodes_death == 50);
        CHECK(trace.summary.last_node_death == 100);
    }

    SUBCASE("empty trace is rejected") {
        SimulationTrace empty;
        CHECK_THROWS_AS(summarize(empty), std::invalid_argument);
    }
}

TEST_CASE("percent improvement") {
    LifetimeSummary base;
    base.last_node_death = 1000;
    LifetimeSummary other = base;
    other.last_node_death = 4000;
    CHECK(percent_improvement(base, other) == doctest::Approx(300.0));
    CHECK(percent_improvement(base, base) == 0.0);
    other.last_node_death = 1900;
    CHECK(percent_improvement(base, other) == doctest::Approx(90.0));

    LifetimeSummary zero;
    zero.last_node_death = 0;
    CHECK_THROWS_AS(percent_improvement(zero, base), std::invalid_argument);
}

TEST_CASE("aggregate_seeds") {
    SUBCASE("a single trace aggregates to itself") {
        const SimulationTrace trace = synthetic_trace(10, {0, 2, 5, 10});
        const AggregateTrace agg = aggregate_seeds({trace});
        REQUIRE(agg.rounds.size() == trace.rounds.size());
        for (std::size_t r = 0; r < agg.rounds.size(); ++r) {
            CHECK(agg.rounds[r].alive_median == trace.rounds[r].alive);
            CHECK(agg.rounds[r].alive_mean == trace.rounds[r].alive);
            CHECK(agg.rounds[r].pkts_to_ch_median == trace.rounds[r].pkts_to_ch);
        }
        CHECK(agg.median_summary.last_node_death == trace.summary.last_node_death);
    }

    SUBCASE("identical traces aggregate to the same values") {
        const SimulationTrace trace = synthetic_trace(10, {0, 2, 5, 10}, 1);
        const SimulationTrace twin = synthetic_trace(10, {0, 2, 5, 10}, 2);
        const AggregateTrace agg = aggregate_seeds({trace, twin});
        for (std::size_t r = 0; r < agg.rounds.size(); ++r) {
            CHECK(agg.rounds[r].alive_median == trace.rounds[r].alive);
            CHECK(agg.rounds[r].alive_mean == trace.rounds[r].alive);
        }
    }

    SUBCASE("median of last deaths over three seeds") {
        std::vector<SimulationTrace> traces;
        int seed = 1;
        for (int last : {900, 1000, 1100}) {
            std::vector<int> dead(last + 1, 0);
            dead[last] = 10;
            traces.push_back(synthetic_trace(10, dead, seed++));
        }
        const AggregateTrace agg = aggregate_seeds(traces);
        CHECK(agg.median_summary.last_node_death == 1000.0);

        // Permutation invariance.
        std::vector<SimulationTrace> shuffled = {traces[2], traces[0], traces[1]};
        const AggregateTrace again = aggregate_seeds(shuffled);
        CHECK(again.median_summary.last_node_death == 1000.0);
        REQUIRE(again.rounds.size() == agg.rounds.size());
        for (std::size_t r = 0; r < agg.rounds.size(); ++r) {
            CHECK(again.rounds[r].alive_mean == agg.rounds[r].alive_mean);
            CHECK(again.rounds[r].alive_median == agg.rounds[r].alive_median);
        }
    }

    SUBCASE("shorter traces are padded with their terminal state") {
        const SimulationTrace lasting = synthetic_trace(10, {0, 0, 0, 0, 0}, 1);
        const SimulationTrace finished = synthetic_trace(10, {0, 10}, 2);
        const AggregateTrace agg = aggregate_seeds({lasting, finished});
        REQUIRE(agg.rounds.size() == 5);
        CHECK(agg.rounds[4].alive_mean == doctest::Approx(5.0)); // (10 + 0) / 2
    }

    SUBCASE("mismatched configs are rejected") {
        SimulationTrace a = synthetic_trace(10, {0, 10}, 1);
        SimulationTrace b = synthetic_trace(12, {0, 12}, 2);
        CHECK_THROWS_AS(aggregate_seeds({a, b}), std::invalid_argument);
        CHECK_THROWS_AS(aggregate_seeds({}), std::invalid_argument);
    }
}
