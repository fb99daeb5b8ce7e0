#pragma once

#include "leachsim/cluster.hpp"
#include "leachsim/config.hpp"
#include "leachsim/metrics.hpp"
#include "leachsim/node.hpp"
#include "leachsim/protocol.hpp"
#include "leachsim/rng.hpp"

#include <functional>

namespace leachsim {

/// Compensated accumulator for the energy ledger, so conservation holds to
/// well under a nanojoule over full runs.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

struct NetworkState {
    std::vector<Node> nodes;
    EpochState epoch;
    ClusterAssignment assignment;
    std::uint64_t pkts_to_ch = 0;
    std::uint64_t pkts_to_bs = 0;
    KahanSum dissipated;
    KahanSum harvested;

    int alive_count() const;
    double residual_total() const;
    double initial_total() const;
};

/// Single-threaded round-based simulation. One instance owns its state and
/// RNG substreams; distinct instances never share anything, so batches may
/// run instances on separate threads.
class Simulation {
  public:
    explicit Simulation(ScenarioConfig config);

    /// Scatter nodes uniformly over the field, flag the first
    /// floor(solar_fraction * n) ids as solar-equipped, fill batteries.
    /// Consumes only the deployment substream, so deployments agree across
    /// protocol variants for the same seed.
    static NetworkState deploy(const ScenarioConfig& config, Rng& rng);

    /// Sun is up during the leading sun_fraction of each cycle; alive solar
    /// nodes then recover harvest_j_per_round up to their battery capacity.
    /// Only the solar-aware protocols carry the harvesting hardware.
    void solar_step();

    /// Random-waypoint motion for the mobile variant; a no-op otherwise.
    void mobility_step();

    /// Elect heads, form clusters and (when enabled) charge the setup
    /// traffic: head advertisements at network-max distance, per-head
    /// receives at every non-head, join messages, and for the centralized
    /// variants one status report to the sink plus the sink's announcement.
    void run_setup_phase();

    /// Data frames: members transmit to their head, heads aggregate and
    /// forward along their route, relays add received aggregates to their
    /// own transmission. Solar variants apply head handover before the
    /// frames; the mobile variant moves and re-associates between frames.
    void run_steady_phase();

    using RoundObserver =
        std::function<void(const NetworkState& state, const RoundReport& report)>;

    SimulationTrace run();
    SimulationTrace run(const RoundObserver& observer);

    const NetworkState& state() const { return state_; }
    NetworkState& state() { return state_; }
    const ScenarioConfig& config() const { return config_; }

    /// Spend energy on an action. An action costing more than the node has
    /// left drains it, kills it and reports failure (the action never
    /// happens); an exact-cost action completes and then kills the node.
    bool charge(Node& node, double cost);

    int chs_elected_this_round() const { return chs_elected_; }

  private:
    void reset_epoch_if_needed();
    void advance_node(Node& node);
    void apply_mleach_reassociation();
    void apply_sleach_handover();
    void run_downward_query();
    void prune_dead_from_assignment();
    bool sun_active() const;
    int join_for_variant(const Node& node) const;
    std::vector<int> alive_ch_ids() const;

    ScenarioConfig config_;
    NetworkState state_;
    Rng election_rng_;
    Rng mobility_rng_;
    Rng annealing_rng_;
    int chs_elected_ = 0;

    // Sink-side election memo: while no node died, harvested or spent
    // anything since the last election, the placement problem is unchanged
    // and the sink keeps its clustering (positions are static for the
    // centralized variants).
    std::vector<double> election_residuals_;
    std::vector<char> election_alive_;
    std::vector<int> election_result_;
};

SimulationTrace run_simulation(const ScenarioConfig& config);
SimulationTrace run_simulation(const ScenarioConfig& config,
                               const Simulation::RoundObserver& observer);

} // namespace leachsim
