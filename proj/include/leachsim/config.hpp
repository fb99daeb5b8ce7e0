#pragma once

#include "leachsim/geometry.hpp"
#include "leachsim/radio.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace leachsim {

enum class Protocol {
    Leach,
    LeachC,
    SLeachC,
    SLeachD,
    MultiHopLeach,
    MLeach,
    LeachSC,
};

inline constexpr Protocol kAllProtocols[] = {
    Protocol::Leach,   Protocol::LeachC, Protocol::SLeachC, Protocol::SLeachD,
    Protocol::MultiHopLeach, Protocol::MLeach, Protocol::LeachSC,
};

std::string to_string(Protocol p);
Protocol protocol_from_string(std::string_view name);

/// Cluster heads picked by the sink rather than by per-node coin flips.
inline bool is_centralized(Protocol p) {
    return p == Protocol::LeachC || p == Protocol::SLeachC;
}

/// Variants whose deployments carry active solar harvesters.
inline bool is_solar_aware(Protocol p) {
    return p == Protocol::SLeachC || p == Protocol::SLeachD;
}

inline bool is_multihop(Protocol p) { return p == Protocol::MultiHopLeach; }

inline bool is_mobile(Protocol p) { return p == Protocol::MLeach; }

/// Full experiment description. Field geometry, radio constants, protocol
/// selection and all per-variant knobs live here so a run is reproducible
/// from the config file and seed alone.
struct ScenarioConfig {
    int num_nodes = 100;
    double field_width = 100.0;
    double field_height = 100.0;
    Position bs_pos{50.0, 175.0};
    Protocol protocol = Protocol::Leach;
    double p_ch = 0.1;
    double packet_bits_data = 200.0; // member data packet
    double packet_bits_agg = 200.0;  // cluster-head aggregate
    double initial_energy = 0.5;
    long rounds_max = 13000;
    int frames_per_round = 1;
    std::uint64_t seed = 1;

    // Solar model (only harvested under the solar-aware protocols).
    double solar_fraction = 0.5;
    double harvest_j_per_round = 0.01;
    long sun_cycle_rounds = 200;
    double sun_fraction = 0.5;

    // Mobility (max speed in meters per mobility step; only the mobile
    // variant moves).
    double v_max = 1.0;

    // Inter-head relay threshold for the multi-hop variant.
    double ch_radio_range = 120.0;
    // Association radius for the mobile variant's energy-based join.
    double mleach_join_range = 10.0;

    // Setup-phase pricing (advertisements, joins, sink reports). Turning it
    // off leaves only steady-state costs, matching the closed-form model.
    bool charge_setup_energy = true;
    // One downward instruction per round, priced like the duplex model.
    bool downward_query = false;

    RadioParams radio;

    long epoch_len() const;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ScenarioConfig& config);

bool equal_ignoring_seed(const ScenarioConfig& a, const ScenarioConfig& b);

} // namespace leachsim
