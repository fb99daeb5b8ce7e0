#include "leachsim/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace leachsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

} // namespace

double leach_threshold(double p, long round, bool eligible) {
    if (!eligible) {
        return 0.0;
    }
    const long cycle = static_cast<long>(std::ceil(1.0 / p));
    const double denom = 1.0 - p * static_cast<double>(round % cycle);
    if (denom <= 0.0) {
        return 1.0;
    }
    return clamp01(p / denom);
}

double sleach_threshold(double p, bool is_solar, long cheads, long num_nodes) {
    const double sf = is_solar ? 4.0 : 0.25;
    if (cheads >= num_nodes) {
        return 1.0;
    }
    const double denom = 1.0 - static_cast<double>(cheads) / static_cast<double>(num_nodes);
    return clamp01(sf * p / denom);
}

std::vector<int> elect_chs_distributed(std::vector<Node>& nodes, EpochState& epoch,
                                       Protocol variant, double p, Rng& rng) {
    const bool solar_weighted = variant == Protocol::SLeachD;
    const long num_nodes = static_cast<long>(nodes.size());
    std::vector<int> elected;
    for (Node& node : nodes) {
        if (!node.alive) {
            continue;
        }
        double threshold = 0.0;
        if (solar_weighted) {
            // Every alive node flips a coin each round; solar heads may
            // serve in consecutive rounds.
            threshold = sleach_threshold(p, node.is_solar, epoch.chs_this_metaround,
                                         num_nodes);
        } else {
            if (!node.eligible) {
                continue;
            }
            threshold = leach_threshold(p, epoch.round, node.eligible);
        }
        if (rng.uniform01() < threshold) {
            elected.push_back(node.id);
            if (!solar_weighted) {
                node.eligible = false;
            }
        }
    }
    epoch.chs_this_metaround += static_cast<long>(elected.size());
    return elected;
}

double clustering_cost(const std::vector<Node>& nodes, const std::vector<int>& ch_ids) {
    double total = 0.0;
    for (const Node& node : nodes) {
        if (!node.alive) {
            continue;
        }
        if (std::find(ch_ids.begin(), ch_ids.end(), node.id) != ch_ids.end()) {
            continue;
        }
        double best = kInf;
        for (int ch : ch_ids) {
            best = std::min(best, distance_sq(node.pos, nodes[ch].pos));
        }
        if (best < kInf) {
            total += best;
        }
    }
    return total;
}

int centralized_k(double p, int alive_count) {
    return std::max(1L, std::lround(p * alive_count));
}

namespace {

/// Working state for the placement optimizer. Node-to-candidate distances
/// are precomputed once per election; everything below runs on flat
/// indices into the alive and candidate lists.
struct PlacementProblem {
    std::vector<int> alive_ids;       // node ids
    std::vector<int> cand_ids;        // node ids, in preference order
    std::vector<int> cand_alive_idx;  // candidate -> alive index
    std::vector<double> dist;         // [cand * n_alive + alive] squared m^2

    int n_alive() const { return static_cast<int>(alive_ids.size()); }
    int n_cand() const { return static_cast<int>(cand_ids.size()); }
    double d(int cand, int alive) const { return dist[cand * alive_ids.size() + alive]; }
};

/// Nearest and second-nearest selected candidate per alive node, kept
/// incrementally so a swap costs O(n) to evaluate.
struct NearestTable {
    std::vector<double> d1, d2;
    std::vector<int> c1, c2;

    void rebuild(const PlacementProblem& problem, const std::vector<int>& chs) {
        d1.assign(problem.alive_ids.size(), kInf);
        d2.assign(problem.alive_ids.size(), kInf);
        c1.assign(problem.alive_ids.size(), -1);
        c2.assign(problem.alive_ids.size(), -1);
        for (int a = 0; a < problem.n_alive(); ++a) {
            for (int c : chs) {
                insert(a, c, problem.d(c, a));
            }
        }
    }

    void recompute_row(const PlacementProblem& problem, const std::vector<int>& chs,
                       int alive) {
        d1[alive] = d2[alive] = kInf;
        c1[alive] = c2[alive] = -1;
        for (int c : chs) {
            insert(alive, c, problem.d(c, alive));
        }
    }

    /// After swapping head `out` for `in` (chs already updated): rows whose
    /// top-two mentioned the removed head are rebuilt, everyone else only
    /// considers the newcomer.
    void apply_swap(const PlacementProblem& problem, const std::vector<int>& chs, int out,
                    int in) {
        for (int a = 0; a < problem.n_alive(); ++a) {
            if (c1[a] == out || c2[a] == out) {
                recompute_row(problem, chs, a);
            } else {
                insert(a, in, problem.d(in, a));
            }
        }
    }

    void insert(int alive, int cand, double d) {
        if (d < d1[alive]) {
            d2[alive] = d1[alive];
            c2[alive] = c1[alive];
            d1[alive] = d;
            c1[alive] = cand;
        } else if (d < d2[alive]) {
            d2[alive] = d;
            c2[alive] = cand;
        }
    }
};

/// Cost change from replacing selected candidate `out` with `in`.
/// `selected` flags alive indices currently serving as heads.
double swap_delta(const PlacementProblem& problem, const std::vector<char>& selected,
                  const std::vector<int>& chs, const NearestTable& table, int out, int in) {
    const int out_alive = problem.cand_alive_idx[out];
    const int in_alive = problem.cand_alive_idx[in];
    double delta = 0.0;
    for (int a = 0; a < problem.n_alive(); ++a) {
        if (a == in_alive || (selected[a] && a != out_alive)) {
            continue;
        }
        const double d_in = problem.d(in, a);
        double now;
        double after;
        if (a == out_alive) {
            now = 0.0;
            after = d_in;
            for (int c : chs) {
                if (c != out) {
                    after = std::min(after, problem.d(c, a));
                }
            }
        } else {
            now = table.d1[a];
            const double surviving = table.c1[a] == out ? table.d2[a] : table.d1[a];
            after = std::min(surviving, d_in);
        }
        delta += after - now;
    }
    delta -= table.d1[in_alive]; // the incoming head stops counting
    return delta;
}

} // namespace

std::vector<int> elect_chs_centralized(const std::vector<Node>& nodes, Position /*bs_pos*/,
                                       double p, bool solar_aware, Rng& rng) {
    PlacementProblem problem;
    double energy_sum = 0.0;
    for (const Node& node : nodes) {
        if (node.alive) {
            problem.alive_ids.push_back(node.id);
            energy_sum += node.residual_energy;
        }
    }
    if (problem.alive_ids.empty()) {
        throw std::invalid_argument("centralized election requires an alive node");
    }
    const int n_alive = problem.n_alive();
    const double mean_energy = energy_sum / n_alive;
    const int k = centralized_k(p, n_alive);

    // Candidate pool: alive nodes at or above the mean residual energy,
    // ranked for deterministic tie-breaking. When the pool falls short of
    // the target head count it is topped up with the strongest remaining
    // nodes, so the sink always fields exactly k heads and never passes
    // over an above-average node for a weaker one.
    const auto preference = [&](int a, int b) {
        if (solar_aware && nodes[a].is_solar != nodes[b].is_solar) {
            return nodes[a].is_solar;
        }
        if (solar_aware && nodes[a].residual_energy != nodes[b].residual_energy) {
            return nodes[a].residual_energy > nodes[b].residual_energy;
        }
        return a < b;
    };
    std::vector<int> below_mean;
    for (int id : problem.alive_ids) {
        if (nodes[id].residual_energy >= mean_energy) {
            problem.cand_ids.push_back(id);
        } else {
            below_mean.push_back(id);
        }
    }
    std::sort(problem.cand_ids.begin(), problem.cand_ids.end(), preference);
    if (problem.n_cand() < k) {
        std::sort(below_mean.begin(), below_mean.end(), [&](int a, int b) {
            if (nodes[a].residual_energy != nodes[b].residual_energy) {
                return nodes[a].residual_energy > nodes[b].residual_energy;
            }
            return a < b;
        });
        for (int id : below_mean) {
            if (problem.n_cand() >= k) {
                break;
            }
            problem.cand_ids.push_back(id);
        }
    }

    if (problem.n_cand() <= k) {
        std::vector<int> chs = problem.cand_ids;
        std::sort(chs.begin(), chs.end());
        return chs;
    }

    std::vector<int> id_to_alive(nodes.size(), -1);
    for (int a = 0; a < n_alive; ++a) {
        id_to_alive[problem.alive_ids[a]] = a;
    }
    problem.cand_alive_idx.resize(problem.n_cand());
    problem.dist.resize(static_cast<std::size_t>(problem.n_cand()) * n_alive);
    for (int c = 0; c < problem.n_cand(); ++c) {
        problem.cand_alive_idx[c] = id_to_alive[problem.cand_ids[c]];
        const Position& cp = nodes[problem.cand_ids[c]].pos;
        for (int a = 0; a < n_alive; ++a) {
            problem.dist[static_cast<std::size_t>(c) * n_alive + a] =
                distance_sq(cp, nodes[problem.alive_ids[a]].pos);
        }
    }

    // Greedy medoid seeding. The first head minimizes the plain distance
    // sum; later heads are picked lazily: cost drops are submodular, so a
    // stale drop is an upper bound and only the current front-runner needs
    // re-evaluation.
    std::vector<int> chs; // candidate indices
    std::vector<char> selected(n_alive, 0);
    std::vector<double> best_d(n_alive, kInf);
    {
        int pick = 0;
        double pick_cost = kInf;
        for (int c = 0; c < problem.n_cand(); ++c) {
            double cost = 0.0;
            const double* row = &problem.dist[static_cast<std::size_t>(c) * n_alive];
            for (int a = 0; a < n_alive; ++a) {
                cost += row[a];
            }
            if (cost < pick_cost) { // own entry is zero, never skews the sum
                pick_cost = cost;
                pick = c;
            }
        }
        chs.push_back(pick);
        selected[problem.cand_alive_idx[pick]] = 1;
        for (int a = 0; a < n_alive; ++a) {
            best_d[a] = problem.d(pick, a);
        }
    }
    // Includes c's own row (distance zero), so its vanishing member cost is
    // already counted.
    const auto cost_drop = [&](int c) {
        double drop = 0.0;
        const double* row = &problem.dist[static_cast<std::size_t>(c) * n_alive];
        for (int a = 0; a < n_alive; ++a) {
            if (!selected[a] && row[a] < best_d[a]) {
                drop += best_d[a] - row[a];
            }
        }
        return drop;
    };
    std::vector<double> drop_bound(problem.n_cand(), kInf);
    while (static_cast<int>(chs.size()) < k) {
        int pick = -1;
        double pick_drop = -1.0;
        for (int c = 0; c < problem.n_cand(); ++c) {
            if (selected[problem.cand_alive_idx[c]] || drop_bound[c] <= pick_drop) {
                continue;
            }
            drop_bound[c] = cost_drop(c);
            if (drop_bound[c] > pick_drop) {
                pick_drop = drop_bound[c];
                pick = c;
            }
        }
        chs.push_back(pick);
        selected[problem.cand_alive_idx[pick]] = 1;
        for (int a = 0; a < n_alive; ++a) {
            best_d[a] = std::min(best_d[a], problem.d(pick, a));
        }
    }

    const std::vector<int> greedy_chs = chs;

    // Refinement: simulated annealing over single swaps (geometric cooling,
    // fixed budget) followed by a first-improvement descent to a swap-local
    // optimum. Small instances get the full descent and extra random
    // restarts inside the same work budget; the big in-simulation problems
    // run one annealed pass.
    std::vector<int> pool;
    NearestTable table;
    double cost = 0.0;
    const auto reset_state = [&](const std::vector<int>& seed) {
        chs = seed;
        std::fill(selected.begin(), selected.end(), 0);
        for (int c : chs) {
            selected[problem.cand_alive_idx[c]] = 1;
        }
        pool.clear();
        for (int c = 0; c < problem.n_cand(); ++c) {
            if (!selected[problem.cand_alive_idx[c]]) {
                pool.push_back(c);
            }
        }
        table.rebuild(problem, chs);
        cost = 0.0;
        for (int a = 0; a < n_alive; ++a) {
            if (!selected[a]) {
                cost += table.d1[a];
            }
        }
    };
    const auto apply_swap = [&](int out_idx, int in_idx) {
        const int out = chs[out_idx];
        const int in = pool[in_idx];
        selected[problem.cand_alive_idx[out]] = 0;
        selected[problem.cand_alive_idx[in]] = 1;
        std::swap(chs[out_idx], pool[in_idx]);
        table.apply_swap(problem, chs, out, in);
        cost = 0.0;
        for (int a = 0; a < n_alive; ++a) {
            if (!selected[a]) {
                cost += table.d1[a];
            }
        }
    };
    const auto anneal = [&] {
        std::vector<int> local_best = chs;
        double local_best_cost = cost;
        double temperature = std::max(cost * 0.05, 1e-9);
        const int iterations = 40 + 12 * k;
        for (int iter = 0; iter < iterations; ++iter, temperature *= 0.95) {
            const int out_idx = static_cast<int>(rng.uniform_index(chs.size()));
            const int in_idx = static_cast<int>(rng.uniform_index(pool.size()));
            const double delta = swap_delta(problem, selected, chs, table, chs[out_idx],
                                            pool[in_idx]);
            const bool accept =
                delta < 0.0 || rng.uniform01() < std::exp(-delta / temperature);
            if (accept) {
                apply_swap(out_idx, in_idx);
                // Ties keep the earlier state: only a strict improvement
                // displaces the best set.
                if (cost < local_best_cost) {
                    local_best_cost = cost;
                    local_best = chs;
                }
            }
        }
        if (chs != local_best) {
            reset_state(local_best); // zero-delta wandering must not stick
        }
    };
    const auto descend = [&] {
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t out_idx = 0; out_idx < chs.size() && !improved; ++out_idx) {
                for (std::size_t in_idx = 0; in_idx < pool.size() && !improved; ++in_idx) {
                    if (swap_delta(problem, selected, chs, table, chs[out_idx],
                                   pool[in_idx]) < -1e-12) {
                        apply_swap(static_cast<int>(out_idx), static_cast<int>(in_idx));
                        improved = true;
                    }
                }
            }
        }
    };

    const std::size_t scan_work = static_cast<std::size_t>(k) *
                                  static_cast<std::size_t>(problem.n_cand() - k) *
                                  static_cast<std::size_t>(n_alive);
    const bool small_instance = scan_work <= 20000;
    const int restarts =
        small_instance
            ? static_cast<int>(std::clamp<std::size_t>(8000 / std::max<std::size_t>(scan_work, 1),
                                                       1, 6))
            : 1;

    std::vector<int> best_chs;
    double best_cost = kInf;
    std::vector<int> scratch(problem.n_cand());
    for (int restart = 0; restart < restarts; ++restart) {
        std::vector<int> seed;
        if (restart == 0) {
            seed = greedy_chs;
        } else {
            // Partial Fisher-Yates draw of k distinct candidates.
            for (int c = 0; c < problem.n_cand(); ++c) {
                scratch[c] = c;
            }
            for (int i = 0; i < k; ++i) {
                const int j =
                    i + static_cast<int>(rng.uniform_index(problem.n_cand() - i));
                std::swap(scratch[i], scratch[j]);
                seed.push_back(scratch[i]);
            }
        }
        reset_state(seed);
        anneal();
        if (small_instance) {
            descend();
        }
        if (cost < best_cost) {
            best_cost = cost;
            best_chs = chs;
        }
    }
    chs = best_chs;

    std::vector<int> result;
    result.reserve(chs.size());
    for (int c : chs) {
        result.push_back(problem.cand_ids[c]);
    }
    std::sort(result.begin(), result.end());
    return result;
}

int join_by_rssi(const Node& node, const std::vector<int>& ch_ids,
                 const std::vector<Node>& nodes) {
    int best = kUnclustered;
    double best_d = kInf;
    for (int ch : ch_ids) {
        const double d = distance_sq(node.pos, nodes[ch].pos);
        if (d < best_d) {
            best_d = d;
            best = ch;
        }
    }
    return best;
}

int join_by_midpoint(const Node& node, const std::vector<int>& ch_ids,
                     const std::vector<Node>& nodes, Position bs_pos) {
    const Position mid = midpoint(node.pos, bs_pos);
    int best = kUnclustered;
    double best_d = kInf;
    for (int ch : ch_ids) {
        const double d = distance_sq(nodes[ch].pos, mid);
        if (d < best_d) {
            best_d = d;
            best = ch;
        }
    }
    return best;
}

std::vector<int> mleach_elect(const std::vector<Node>& nodes, double p) {
    std::vector<int> alive_ids;
    for (const Node& node : nodes) {
        if (node.alive) {
            alive_ids.push_back(node.id);
        }
    }
    if (alive_ids.empty()) {
        return {};
    }
    std::sort(alive_ids.begin(), alive_ids.end(), [&](int a, int b) {
        if (nodes[a].speed != nodes[b].speed) {
            return nodes[a].speed < nodes[b].speed;
        }
        if (nodes[a].residual_energy != nodes[b].residual_energy) {
            return nodes[a].residual_energy > nodes[b].residual_energy;
        }
        return a < b;
    });
    const int k = std::min<int>(centralized_k(p, static_cast<int>(alive_ids.size())),
                                static_cast<int>(alive_ids.size()));
    std::vector<int> chs(alive_ids.begin(), alive_ids.begin() + k);
    std::sort(chs.begin(), chs.end());
    return chs;
}

int mleach_join(const Node& node, const std::vector<int>& ch_ids,
                const std::vector<Node>& nodes, double range) {
    int best = kUnclustered;
    double best_energy = -kInf;
    const double range_sq = range * range;
    for (int ch : ch_ids) {
        if (distance_sq(node.pos, nodes[ch].pos) <= range_sq &&
            nodes[ch].residual_energy > best_energy) {
            best_energy = nodes[ch].residual_energy;
            best = ch;
        }
    }
    if (best == kUnclustered) {
        return join_by_rssi(node, ch_ids, nodes);
    }
    return best;
}

int sleach_handover(const std::vector<Node>& nodes, const std::vector<int>& member_ids,
                    int current_ch, bool sun_active) {
    const Node& ch = nodes[current_ch];
    if (ch.is_solar && sun_active) {
        return current_ch;
    }
    int best = current_ch;
    double best_energy = -kInf;
    for (int id : member_ids) {
        const Node& member = nodes[id];
        if (member.alive && member.is_solar && sun_active &&
            member.residual_energy > best_energy) {
            best_energy = member.residual_energy;
            best = id;
        }
    }
    return best;
}

std::map<int, int> multihop_route(const std::vector<int>& ch_ids,
                                  const std::vector<Node>& nodes, Position bs_pos,
                                  double range) {
    const double range_sq = range * range;
    std::map<int, int> depth;
    std::vector<int> frontier;
    for (int ch : ch_ids) {
        if (distance_sq(nodes[ch].pos, bs_pos) <= range_sq) {
            depth[ch] = 1;
            frontier.push_back(ch);
        }
    }
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int ch : ch_ids) {
            if (depth.count(ch)) {
                continue;
            }
            for (int reached : frontier) {
                if (distance_sq(nodes[ch].pos, nodes[reached].pos) <= range_sq) {
                    depth[ch] = depth[reached] + 1;
                    next.push_back(ch);
                    break;
                }
            }
        }
        frontier = std::move(next);
    }

    std::map<int, int> routes;
    for (int ch : ch_ids) {
        auto it = depth.find(ch);
        if (it == depth.end() || it->second == 1) {
            routes[ch] = kBaseStation; // direct, whether near or unreachable
            continue;
        }
        const int my_depth = it->second;
        int best = kBaseStation;
        double best_d = kInf;
        for (int other : ch_ids) {
            auto jt = depth.find(other);
            if (other == ch || jt == depth.end() || jt->second != my_depth - 1) {
                continue;
            }
            const double d = distance_sq(nodes[ch].pos, nodes[other].pos);
            if (d <= range_sq && d < best_d) {
                best_d = d;
                best = other;
            }
        }
        routes[ch] = best;
    }
    return routes;
}

std::map<int, int> route_depths(const std::map<int, int>& routes) {
    std::map<int, int> depths;
    for (const auto& [ch, _] : routes) {
        int hops = 0;
        int at = ch;
        while (at != kBaseStation && hops <= static_cast<int>(routes.size())) {
            auto it = routes.find(at);
            at = it == routes.end() ? kBaseStation : it->second;
            ++hops;
        }
        depths[ch] = hops;
    }
    return depths;
}

} // namespace leachsim
