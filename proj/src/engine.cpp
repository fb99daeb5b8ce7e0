#include "leachsim/engine.hpp"

#include <algorithm>
#include <cmath>

namespace leachsim {

int NetworkState::alive_count() const {
    int count = 0;
    for (const Node& node : nodes) {
        count += node.alive ? 1 : 0;
    }
    return count;
}

double NetworkState::residual_total() const {
    KahanSum sum;
    for (const Node& node : nodes) {
        sum.add(node.residual_energy);
    }
    return sum.sum;
}

double NetworkState::initial_total() const {
    KahanSum sum;
    for (const Node& node : nodes) {
        sum.add(node.initial_energy);
    }
    return sum.sum;
}

Simulation::Simulation(ScenarioConfig config)
    : config_(std::move(config)),
      election_rng_(Rng::substream(config_.seed, Rng::Stream::Election)),
      mobility_rng_(Rng::substream(config_.seed, Rng::Stream::Mobility)),
      annealing_rng_(Rng::substream(config_.seed, Rng::Stream::Annealing)) {
    Rng deployment_rng = Rng::substream(config_.seed, Rng::Stream::Deployment);
    state_ = deploy(config_, deployment_rng);
    state_.epoch.epoch_len = config_.epoch_len();
}

NetworkState Simulation::deploy(const ScenarioConfig& config, Rng& rng) {
    // A zero-round run is legal and yields an empty trace; everything else
    // must satisfy the config invariants.
    ScenarioConfig check = config;
    check.rounds_max = std::max(check.rounds_max, 1L);
    validate(check);
    NetworkState state;
    state.nodes.resize(config.num_nodes);
    const int solar_count =
        static_cast<int>(std::floor(config.solar_fraction * config.num_nodes));
    for (int id = 0; id < config.num_nodes; ++id) {
        Node& node = state.nodes[id];
        node.id = id;
        node.pos.x = rng.uniform(0.0, config.field_width);
        node.pos.y = rng.uniform(0.0, config.field_height);
        node.is_solar = id < solar_count;
        node.residual_energy = config.initial_energy;
        node.initial_energy = config.initial_energy;
    }
    state.epoch.epoch_len = config.epoch_len();
    return state;
}

bool Simulation::charge(Node& node, double cost) {
    if (!node.alive || cost < 0.0) {
        return false;
    }
    if (cost > node.residual_energy) {
        state_.dissipated.add(node.residual_energy);
        node.residual_energy = 0.0;
        node.alive = false;
        return false;
    }
    node.residual_energy -= cost;
    state_.dissipated.add(cost);
    if (node.residual_energy <= 0.0) {
        node.residual_energy = 0.0;
        node.alive = false;
    }
    return true;
}

bool Simulation::sun_active() const {
    const long phase = state_.epoch.round % config_.sun_cycle_rounds;
    return static_cast<double>(phase) <
           config_.sun_fraction * static_cast<double>(config_.sun_cycle_rounds);
}

void Simulation::solar_step() {
    if (!is_solar_aware(config_.protocol) || !sun_active()) {
        return;
    }
    for (Node& node : state_.nodes) {
        if (!node.alive || !node.is_solar) {
            continue;
        }
        const double headroom = node.initial_energy - node.residual_energy;
        const double gain = std::min(config_.harvest_j_per_round, headroom);
        if (gain > 0.0) {
            node.residual_energy += gain;
            state_.harvested.add(gain);
        }
    }
}

void Simulation::advance_node(Node& node) {
    if (!node.has_waypoint) {
        node.waypoint.x = mobility_rng_.uniform(0.0, config_.field_width);
        node.waypoint.y = mobility_rng_.uniform(0.0, config_.field_height);
        node.has_waypoint = true;
    }
    const double remaining = distance(node.pos, node.waypoint);
    if (remaining <= node.speed) {
        node.pos = node.waypoint;
        node.waypoint.x = mobility_rng_.uniform(0.0, config_.field_width);
        node.waypoint.y = mobility_rng_.uniform(0.0, config_.field_height);
        return;
    }
    if (node.speed <= 0.0) {
        return;
    }
    const double scale = node.speed / remaining;
    node.pos.x += (node.waypoint.x - node.pos.x) * scale;
    node.pos.y += (node.waypoint.y - node.pos.y) * scale;
    node.pos.x = std::clamp(node.pos.x, 0.0, config_.field_width);
    node.pos.y = std::clamp(node.pos.y, 0.0, config_.field_height);
}

void Simulation::mobility_step() {
    if (!is_mobile(config_.protocol)) {
        return;
    }
    for (Node& node : state_.nodes) {
        if (node.alive) {
            advance_node(node);
        }
    }
}

std::vector<int> Simulation::alive_ch_ids() const {
    std::vector<int> ids;
    for (int ch : state_.assignment.ch_ids) {
        if (state_.nodes[ch].alive) {
            ids.push_back(ch);
        }
    }
    return ids;
}

int Simulation::join_for_variant(const Node& node) const {
    const std::vector<int>& chs = state_.assignment.ch_ids;
    switch (config_.protocol) {
        case Protocol::LeachSC:
            return join_by_midpoint(node, chs, state_.nodes, config_.bs_pos);
        case Protocol::MLeach:
            return mleach_join(node, chs, state_.nodes, config_.mleach_join_range);
        default:
            return join_by_rssi(node, chs, state_.nodes);
    }
}

void Simulation::run_setup_phase() {
    const double l_c = config_.packet_bits_data;
    const bool charge_setup = config_.charge_setup_energy;
    auto& nodes = state_.nodes;
    state_.assignment.clear();
    for (Node& node : nodes) {
        node.role = Role::Unassigned;
        node.cluster_of = kUnclustered;
    }

    // Centralized variants: every alive node reports position and energy to
    // the sink before the election.
    if (is_centralized(config_.protocol) && charge_setup) {
        for (Node& node : nodes) {
            if (node.alive) {
                charge(node, tx_energy(config_.radio, l_c, distance(node.pos, config_.bs_pos)));
            }
        }
    }

    std::vector<int> elected;
    switch (config_.protocol) {
        case Protocol::LeachC:
        case Protocol::SLeachC:
            if (state_.alive_count() > 0) {
                bool unchanged = !election_residuals_.empty();
                for (std::size_t i = 0; unchanged && i < nodes.size(); ++i) {
                    unchanged = nodes[i].residual_energy == election_residuals_[i] &&
                                static_cast<char>(nodes[i].alive) == election_alive_[i];
                }
                if (unchanged) {
                    elected = election_result_;
                } else {
                    elected = elect_chs_centralized(nodes, config_.bs_pos, config_.p_ch,
                                                    config_.protocol == Protocol::SLeachC,
                                                    annealing_rng_);
                    election_residuals_.resize(nodes.size());
                    election_alive_.resize(nodes.size());
                    for (std::size_t i = 0; i < nodes.size(); ++i) {
                        election_residuals_[i] = nodes[i].residual_energy;
                        election_alive_[i] = static_cast<char>(nodes[i].alive);
                    }
                    election_result_ = elected;
                }
            }
            break;
        case Protocol::MLeach:
            elected = mleach_elect(nodes, config_.p_ch);
            break;
        default:
            elected = elect_chs_distributed(nodes, state_.epoch, config_.protocol,
                                            config_.p_ch, election_rng_);
            break;
    }
    chs_elected_ = static_cast<int>(elected.size());

    // The sink broadcasts the head list; every alive node pays one receive.
    if (is_centralized(config_.protocol) && charge_setup) {
        for (Node& node : nodes) {
            if (node.alive) {
                charge(node, rx_energy(config_.radio, l_c));
            }
        }
    }

    for (int ch : elected) {
        if (nodes[ch].alive) {
            nodes[ch].role = Role::ClusterHead;
            nodes[ch].cluster_of = ch;
            state_.assignment.ch_ids.push_back(ch);
        }
    }

    // Head advertisements reach the whole field: priced at each head's
    // maximum distance to any alive node.
    if (charge_setup) {
        for (int ch : state_.assignment.ch_ids) {
            Node& head = nodes[ch];
            if (!head.alive) {
                continue;
            }
            double max_d_sq = 0.0;
            for (const Node& other : nodes) {
                if (other.alive) {
                    max_d_sq = std::max(max_d_sq, distance_sq(head.pos, other.pos));
                }
            }
            charge(head, tx_energy(config_.radio, l_c, std::sqrt(max_d_sq)));
        }
        // One receive per advertising head, charged as a single batch (the
        // outcome — energy spent and survival — matches charging packet by
        // packet, since nothing observes the node mid-batch).
        const double advert_rx_total =
            static_cast<double>(alive_ch_ids().size()) * rx_energy(config_.radio, l_c);
        for (Node& node : nodes) {
            if (node.alive && node.role != Role::ClusterHead) {
                charge(node, advert_rx_total);
            }
        }
    }

    // Cluster joining; members announce themselves to their chosen head.
    if (!state_.assignment.ch_ids.empty()) {
        for (Node& node : nodes) {
            if (!node.alive || node.role == Role::ClusterHead) {
                continue;
            }
            const int ch = join_for_variant(node);
            if (ch == kUnclustered) {
                continue;
            }
            if (charge_setup &&
                !charge(node, tx_energy(config_.radio, l_c, distance(node.pos, nodes[ch].pos)))) {
                continue;
            }
            node.role = Role::Member;
            node.cluster_of = ch;
            state_.assignment.membership[node.id] = ch;
            if (charge_setup && nodes[ch].alive) {
                charge(nodes[ch], rx_energy(config_.radio, l_c));
            }
        }
    }

    prune_dead_from_assignment();

    if (is_multihop(config_.protocol)) {
        state_.assignment.routes = multihop_route(state_.assignment.ch_ids, nodes,
                                                  config_.bs_pos, config_.ch_radio_range);
    } else {
        for (int ch : state_.assignment.ch_ids) {
            state_.assignment.routes[ch] = kBaseStation;
        }
    }
}

void Simulation::apply_sleach_handover() {
    auto& assignment = state_.assignment;
    const bool sun = sun_active();
    std::vector<int> heads = assignment.ch_ids;
    for (int ch : heads) {
        if (!state_.nodes[ch].alive) {
            continue;
        }
        std::vector<int> members;
        for (const auto& [member, head] : assignment.membership) {
            if (head == ch && state_.nodes[member].alive) {
                members.push_back(member);
            }
        }
        const int next = sleach_handover(state_.nodes, members, ch, sun);
        if (next == ch) {
            continue;
        }
        // Promote the solar member: it takes over the cluster, the old head
        // steps down to member for the rest of the round.
        state_.nodes[next].role = Role::ClusterHead;
        state_.nodes[next].cluster_of = next;
        state_.nodes[ch].role = Role::Member;
        state_.nodes[ch].cluster_of = next;
        assignment.membership.erase(next);
        assignment.membership[ch] = next;
        for (auto& [member, head] : assignment.membership) {
            if (head == ch) {
                head = next;
            }
        }
        auto route = assignment.routes.find(ch);
        const int next_hop = route == assignment.routes.end() ? kBaseStation : route->second;
        assignment.routes.erase(ch);
        assignment.routes[next] = next_hop;
        std::replace(assignment.ch_ids.begin(), assignment.ch_ids.end(), ch, next);
        std::sort(assignment.ch_ids.begin(), assignment.ch_ids.end());
    }
}

void Simulation::apply_mleach_reassociation() {
    const double l_c = config_.packet_bits_data;
    const std::vector<int> heads = alive_ch_ids();
    if (heads.empty()) {
        return;
    }
    auto& nodes = state_.nodes;
    std::vector<std::pair<int, int>> moves; // member -> new head
    for (const auto& [member, current] : state_.assignment.membership) {
        if (!nodes[member].alive) {
            continue;
        }
        const int next = mleach_join(nodes[member], heads, nodes, config_.mleach_join_range);
        if (next != kUnclustered && next != current) {
            moves.emplace_back(member, next);
        }
    }
    for (const auto& [member, next] : moves) {
        Node& node = nodes[member];
        const int current = state_.assignment.membership[member];
        if (nodes[current].alive) {
            // DIS-JOIN to the old head.
            if (!charge(node, tx_energy(config_.radio, l_c, distance(node.pos, nodes[current].pos)))) {
                state_.assignment.membership.erase(member);
                continue;
            }
        }
        // JOIN-REQ to the new head.
        if (!charge(node, tx_energy(config_.radio, l_c, distance(node.pos, nodes[next].pos)))) {
            state_.assignment.membership.erase(member);
            continue;
        }
        state_.assignment.membership[member] = next;
        node.cluster_of = next;
    }
}

void Simulation::run_steady_phase() {
    const double l_c = config_.packet_bits_data;
    const double l_a = config_.packet_bits_agg;
    auto& nodes = state_.nodes;
    auto& assignment = state_.assignment;

    if (is_solar_aware(config_.protocol)) {
        apply_sleach_handover();
    }

    const std::map<int, int> depths = route_depths(assignment.routes);

    for (int frame = 0; frame < config_.frames_per_round; ++frame) {
        if (is_mobile(config_.protocol)) {
            mobility_step();
            apply_mleach_reassociation();
        }
        if (assignment.ch_ids.empty()) {
            continue; // no heads elected: members stay idle this round
        }

        // Member slots in member id order.
        std::map<int, int> delivered;
        for (int ch : assignment.ch_ids) {
            delivered[ch] = 0;
        }
        for (const auto& [member, ch] : assignment.membership) {
            Node& node = nodes[member];
            if (!node.alive) {
                continue;
            }
            if (!charge(node, tx_energy(config_.radio, l_c, distance(node.pos, nodes[ch].pos)))) {
                continue; // the dying sender forfeits its packet
            }
            Node& head = nodes[ch];
            if (head.alive && charge(head, rx_energy(config_.radio, l_c))) {
                delivered[ch] += 1;
                state_.pkts_to_ch += 1;
            }
        }

        // Aggregation: the head fuses what it received plus its own reading.
        struct Outgoing {
            double bits = 0.0;
            std::uint64_t aggregates = 0;
        };
        std::map<int, Outgoing> outbox;
        for (int ch : assignment.ch_ids) {
            Node& head = nodes[ch];
            if (!head.alive) {
                continue;
            }
            const double agg_bits = (delivered[ch] + 1) * l_c;
            if (!charge(head, agg_energy(config_.radio, agg_bits))) {
                continue;
            }
            outbox[ch] = Outgoing{l_a, 1};
        }

        // Forwarding, deepest heads first so relays already hold upstream
        // aggregates when their own slot comes (single transmission of
        // own + relayed bits).
        std::vector<int> order = assignment.ch_ids;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const int da = depths.count(a) ? depths.at(a) : 1;
            const int db = depths.count(b) ? depths.at(b) : 1;
            if (da != db) {
                return da > db;
            }
            return a < b;
        });
        for (int ch : order) {
            auto it = outbox.find(ch);
            if (it == outbox.end() || it->second.aggregates == 0) {
                continue;
            }
            Node& head = nodes[ch];
            if (!head.alive) {
                continue;
            }
            const Outgoing payload = it->second;
            auto route = assignment.routes.find(ch);
            const int next = route == assignment.routes.end() ? kBaseStation : route->second;
            if (next == kBaseStation) {
                if (charge(head, tx_energy(config_.radio, payload.bits,
                                           distance(head.pos, config_.bs_pos)))) {
                    state_.pkts_to_bs += payload.aggregates;
                }
                continue;
            }
            Node& relay = nodes[next];
            if (!charge(head, tx_energy(config_.radio, payload.bits,
                                        distance(head.pos, relay.pos)))) {
                continue;
            }
            if (!relay.alive || !charge(relay, rx_energy(config_.radio, payload.bits))) {
                continue; // relay gone: the carried aggregates are lost
            }
            Outgoing& forward = outbox[next];
            forward.bits += payload.bits;
            forward.aggregates += payload.aggregates;
        }
    }
}

void Simulation::run_downward_query() {
    if (!config_.downward_query) {
        return;
    }
    const double l_bs = config_.packet_bits_data;
    auto& nodes = state_.nodes;
    for (int ch : state_.assignment.ch_ids) {
        Node& head = nodes[ch];
        if (!head.alive) {
            continue;
        }
        std::vector<int> members;
        for (const auto& [member, assigned] : state_.assignment.membership) {
            if (assigned == ch && nodes[member].alive) {
                members.push_back(member);
            }
        }
        // The head receives one instruction per cluster node, itself included.
        charge(head, static_cast<double>(members.size() + 1) * rx_energy(config_.radio, l_bs));
        for (int member : members) {
            if (!head.alive) {
                break;
            }
            if (!charge(head, tx_energy(config_.radio, l_bs,
                                        distance(head.pos, nodes[member].pos)))) {
                break;
            }
            if (nodes[member].alive) {
                charge(nodes[member], rx_energy(config_.radio, l_bs));
            }
        }
    }
}

void Simulation::prune_dead_from_assignment() {
    auto& assignment = state_.assignment;
    auto& nodes = state_.nodes;
    assignment.ch_ids.erase(std::remove_if(assignment.ch_ids.begin(), assignment.ch_ids.end(),
                                           [&](int ch) { return !nodes[ch].alive; }),
                            assignment.ch_ids.end());
    for (auto it = assignment.membership.begin(); it != assignment.membership.end();) {
        const bool member_dead = !nodes[it->first].alive;
        const bool head_gone = !assignment.is_ch(it->second);
        if (member_dead || head_gone) {
            if (!member_dead) {
                nodes[it->first].role = Role::Unassigned;
                nodes[it->first].cluster_of = kUnclustered;
            }
            it = assignment.membership.erase(it);
        } else {
            ++it;
        }
    }
    for (auto it = assignment.routes.begin(); it != assignment.routes.end();) {
        if (!assignment.is_ch(it->first)) {
            it = assignment.routes.erase(it);
        } else {
            if (it->second != kBaseStation && !assignment.is_ch(it->second)) {
                it->second = kBaseStation;
            }
            ++it;
        }
    }
}

void Simulation::reset_epoch_if_needed() {
    EpochState& epoch = state_.epoch;
    if (epoch.round % epoch.epoch_len != 0) {
        return;
    }
    epoch.chs_this_metaround = 0;
    epoch.metaround_start = epoch.round;
    for (Node& node : state_.nodes) {
        if (node.alive) {
            node.eligible = true;
        }
    }
    if (is_mobile(config_.protocol)) {
        // Speeds hold for a whole epoch so the minimum-mobility ranking
        // stays meaningful across a cluster lifetime.
        for (Node& node : state_.nodes) {
            if (node.alive) {
                node.speed = mobility_rng_.uniform(0.0, config_.v_max);
            }
        }
    }
}

SimulationTrace Simulation::run() {
    return run(RoundObserver{});
}

SimulationTrace Simulation::run(const RoundObserver& observer) {
    SimulationTrace trace;
    trace.config = config_;
    trace.rounds.reserve(
        static_cast<std::size_t>(std::clamp(config_.rounds_max, 0L, 100000L)));
    for (long round = 0; round < config_.rounds_max; ++round) {
        state_.epoch.round = round;
        reset_epoch_if_needed();
        solar_step();
        mobility_step();
        run_setup_phase();
        run_steady_phase();
        run_downward_query();
        prune_dead_from_assignment();

        RoundReport report;
        report.round = round;
        report.alive = state_.alive_count();
        report.dead = config_.num_nodes - report.alive;
        report.chs_elected = chs_elected_;
        report.pkts_to_ch = state_.pkts_to_ch;
        report.pkts_to_bs = state_.pkts_to_bs;
        report.energy_dissipated_j = state_.dissipated.sum;
        report.energy_harvested_j = state_.harvested.sum;
        trace.rounds.push_back(report);
        if (observer) {
            observer(state_, report);
        }
        if (report.alive == 0) {
            break;
        }
    }
    if (!trace.rounds.empty()) {
        trace.summary = summarize(trace);
    } else {
        trace.summary = LifetimeSummary{config_.rounds_max, config_.rounds_max,
                                        config_.rounds_max, 0, 0};
    }
    return trace;
}

SimulationTrace run_simulation(const ScenarioConfig& config) {
    return Simulation(config).run();
}

SimulationTrace run_simulation(const ScenarioConfig& config,
                               const Simulation::RoundObserver& observer) {
    return Simulation(config).run(observer);
}

} // namespace leachsim
