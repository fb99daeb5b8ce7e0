#pragma once

#include "leachsim/cluster.hpp"
#include "leachsim/config.hpp"
#include "leachsim/node.hpp"
#include "leachsim/rng.hpp"

#include <map>
#include <vector>

namespace leachsim {

/// Rotation threshold T(n): p / (1 - p * (r mod ceil(1/p))) while the node
/// is still in set G, 0 once it has served this epoch. Clamped to [0, 1].
double leach_threshold(double p, long round, bool eligible);

/// Solar-weighted threshold: sf * p / (1 - cheads / num_nodes) with sf = 4
/// for solar-driven nodes and 1/4 for battery-driven ones. Clamped to
/// [0, 1]; saturates at 1 once cheads reaches num_nodes.
double sleach_threshold(double p, bool is_solar, long cheads, long num_nodes);

/// Per-node coin-flip election for the distributed variants. Draws one
/// uniform number per participating node in id order. Nodes elected under
/// the rotation threshold leave set G for the rest of the epoch; the
/// solar-weighted election keeps re-admitting every alive node, which is
/// what lets solar heads serve in consecutive rounds. Updates the
/// meta-round election counter.
std::vector<int> elect_chs_distributed(std::vector<Node>& nodes, EpochState& epoch,
                                       Protocol variant, double p, Rng& rng);

/// Sum over alive non-head nodes of squared distance to the nearest head.
double clustering_cost(const std::vector<Node>& nodes, const std::vector<int>& ch_ids);

/// Sink-side election: nodes at or above the mean residual energy are
/// candidates, and max(1, round(p * alive)) heads are picked from them to
/// minimize clustering_cost via greedy seeding plus simulated annealing.
/// Falls back to the single highest-energy node when the candidate pool is
/// smaller than the target head count.
std::vector<int> elect_chs_centralized(const std::vector<Node>& nodes, Position bs_pos,
                                       double p, bool solar_aware, Rng& rng);

/// Target head count for the centralized and rank-based elections.
int centralized_k(double p, int alive_count);

/// Nearest head by Euclidean distance (free-space signal strength is
/// monotone in distance). Ties by lowest id; kUnclustered when no heads.
int join_by_rssi(const Node& node, const std::vector<int>& ch_ids,
                 const std::vector<Node>& nodes);

/// Head closest to the midpoint between the node and the base station.
/// Ties by lowest id; kUnclustered when no heads.
int join_by_midpoint(const Node& node, const std::vector<int>& ch_ids,
                     const std::vector<Node>& nodes, Position bs_pos);

/// Rank-based election for the mobile variant: slowest first, then highest
/// residual energy, then lowest id; top max(1, round(p * alive)) win.
std::vector<int> mleach_elect(const std::vector<Node>& nodes, double p);

/// Highest-energy head within range (ties by lowest id); nearest head
/// overall when none is in range. kUnclustered when no heads.
int mleach_join(const Node& node, const std::vector<int>& ch_ids,
                const std::vector<Node>& nodes, double range);

/// Mid-round head handover for the solar variants: a battery-driven (or
/// currently dark) head yields to the solar-active member with the most
/// residual energy. Returns the head for the rest of the round.
int sleach_handover(const std::vector<Node>& nodes, const std::vector<int>& member_ids,
                    int current_ch, bool sun_active);

/// Minimum-hop routes from each head to the base station over the head
/// adjacency graph (edges where distance <= range; heads within range of
/// the sink link to it directly). Next-hop ties break by shortest hop
/// distance, then lowest id. Heads with no path transmit directly.
std::map<int, int> multihop_route(const std::vector<int>& ch_ids,
                                  const std::vector<Node>& nodes, Position bs_pos,
                                  double range);

/// Hops to the base station implied by a route map (direct link = 1).
std::map<int, int> route_depths(const std::map<int, int>& routes);

} // namespace leachsim
