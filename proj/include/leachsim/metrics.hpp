#pragma once

#include "leachsim/config.hpp"

#include <cstdint>
#include <vector>

namespace leachsim {

/// One row of the per-round trace. Packet and energy fields are cumulative
/// from round 0; the rest are snapshots of the round.
struct RoundReport {
    long round = 0;
    int alive = 0;
    int dead = 0;
    int chs_elected = 0;
    std::uint64_t pkts_to_ch = 0;
    std::uint64_t pkts_to_bs = 0;
    double energy_dissipated_j = 0.0;
    double energy_harvested_j = 0.0;
};

/// Death milestones (round indices) and packet totals. Milestones that
/// never happen within the run are reported as rounds_max.
struct LifetimeSummary {
    long first_node_death = 0;
    long half_nodes_death = 0;
    long last_node_death = 0;
    std::uint64_t total_pkts_to_bs = 0;
    std::uint64_t total_pkts_to_ch = 0;
};

struct SimulationTrace {
    ScenarioConfig config;
    std::vector<RoundReport> rounds;
    LifetimeSummary summary;
};

LifetimeSummary summarize(const SimulationTrace& trace);

/// 100 * (other - base) / base on last-node-death rounds.
double percent_improvement(const LifetimeSummary& base, const LifetimeSummary& other);

struct AggregateRound {
    long round = 0;
    double alive_median = 0, alive_mean = 0;
    double dead_median = 0, dead_mean = 0;
    double chs_elected_median = 0, chs_elected_mean = 0;
    double pkts_to_ch_median = 0, pkts_to_ch_mean = 0;
    double pkts_to_bs_median = 0, pkts_to_bs_mean = 0;
    double energy_dissipated_median = 0, energy_dissipated_mean = 0;
    double energy_harvested_median = 0, energy_harvested_mean = 0;
};

struct AggregateSummary {
    double first_node_death = 0;
    double half_nodes_death = 0;
    double last_node_death = 0;
    double total_pkts_to_bs = 0;
    double total_pkts_to_ch = 0;
};

/// Element-wise per-round median/mean across seeds, plus the median of the
/// per-seed summaries. Shorter traces are padded with their final row, so a
/// finished network keeps contributing its terminal state.
struct AggregateTrace {
    std::size_t trace_count = 0;
    std::vector<AggregateRound> rounds;
    AggregateSummary median_summary;
};

AggregateTrace aggregate_seeds(const std::vector<SimulationTrace>& traces);

} // namespace leachsim
