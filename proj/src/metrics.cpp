#include "leachsim/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace leachsim {

LifetimeSummary summarize(const SimulationTrace& trace) {
    if (trace.rounds.empty()) {
        throw std::invalid_argument("summarize: trace has no rounds");
    }
    const long sentinel = trace.config.rounds_max;
    const int n = trace.config.num_nodes;
    LifetimeSummary summary;
    summary.first_node_death = sentinel;
    summary.half_nodes_death = sentinel;
    summary.last_node_death = sentinel;
    for (const RoundReport& report : trace.rounds) {
        if (summary.first_node_death == sentinel && report.dead >= 1) {
            summary.first_node_death = report.round;
        }
        if (summary.half_nodes_death == sentinel && report.dead * 2 >= n) {
            summary.half_nodes_death = report.round;
        }
        if (summary.last_node_death == sentinel && report.dead == n) {
            summary.last_node_death = report.round;
            break;
        }
    }
    const RoundReport& last = trace.rounds.back();
    summary.total_pkts_to_bs = last.pkts_to_bs;
    summary.total_pkts_to_ch = last.pkts_to_ch;
    return summary;
}

double percent_improvement(const LifetimeSummary& base, const LifetimeSummary& other) {
    if (base.last_node_death <= 0) {
        throw std::invalid_argument("percent_improvement: baseline lifetime must be positive");
    }
    return 100.0 *
           static_cast<double>(other.last_node_death - base.last_node_death) /
           static_cast<double>(base.last_node_death);
}

namespace {

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double mean_of(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

} // namespace

AggregateTrace aggregate_seeds(const std::vector<SimulationTrace>& traces) {
    if (traces.empty()) {
        throw std::invalid_argument("aggregate_seeds: no traces given");
    }
    for (const SimulationTrace& trace : traces) {
        if (!equal_ignoring_seed(trace.config, traces.front().config)) {
            throw std::invalid_argument("aggregate_seeds: traces come from different configs");
        }
    }

    std::size_t max_len = 0;
    for (const SimulationTrace& trace : traces) {
        max_len = std::max(max_len, trace.rounds.size());
    }

    AggregateTrace result;
    result.trace_count = traces.size();
    result.rounds.resize(max_len);
    std::vector<double> column(traces.size());
    const auto fill = [&](std::size_t round_idx, auto field) {
        for (std::size_t t = 0; t < traces.size(); ++t) {
            const auto& rounds = traces[t].rounds;
            const RoundReport& report =
                round_idx < rounds.size() ? rounds[round_idx] : rounds.back();
            column[t] = static_cast<double>(field(report));
        }
    };
    for (std::size_t i = 0; i < max_len; ++i) {
        AggregateRound& agg = result.rounds[i];
        agg.round = static_cast<long>(i);
        fill(i, [](const RoundReport& r) { return r.alive; });
        agg.alive_median = median_of(column);
        agg.alive_mean = mean_of(column);
        fill(i, [](const RoundReport& r) { return r.dead; });
        agg.dead_median = median_of(column);
        agg.dead_mean = mean_of(column);
        fill(i, [](const RoundReport& r) { return r.chs_elected; });
        agg.chs_elected_median = median_of(column);
        agg.chs_elected_mean = mean_of(column);
        fill(i, [](const RoundReport& r) { return r.pkts_to_ch; });
        agg.pkts_to_ch_median = median_of(column);
        agg.pkts_to_ch_mean = mean_of(column);
        fill(i, [](const RoundReport& r) { return r.pkts_to_bs; });
        agg.pkts_to_bs_median = median_of(column);
        agg.pkts_to_bs_mean = mean_of(column);
        fill(i, [](const RoundReport& r) { return r.energy_dissipated_j; });
        agg.energy_dissipated_median = median_of(column);
        agg.energy_dissipated_mean = mean_of(column);
        fill(i, [](const RoundReport& r) { return r.energy_harvested_j; });
        agg.energy_harvested_median = median_of(column);
        agg.energy_harvested_mean = mean_of(column);
    }

    const auto summary_median = [&](auto field) {
        std::vector<double> values(traces.size());
        for (std::size_t t = 0; t < traces.size(); ++t) {
            values[t] = static_cast<double>(field(traces[t].summary));
        }
        return median_of(std::move(values));
    };
    result.median_summary.first_node_death =
        summary_median([](const LifetimeSummary& s) { return s.first_node_death; });
    result.median_summary.half_nodes_death =
        summary_median([](const LifetimeSummary& s) { return s.half_nodes_death; });
    result.median_summary.last_node_death =
        summary_median([](const LifetimeSummary& s) { return s.last_node_death; });
    result.median_summary.total_pkts_to_bs =
        summary_median([](const LifetimeSummary& s) { return s.total_pkts_to_bs; });
    result.median_summary.total_pkts_to_ch =
        summary_median([](const LifetimeSummary& s) { return s.total_pkts_to_ch; });
    return result;
}

} // namespace leachsim
