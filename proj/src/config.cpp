#include "leachsim/config.hpp"

#include <cmath>
#include <stdexcept>

namespace leachsim {

std::string to_string(Protocol p) {
    switch (p) {
        case Protocol::Leach: return "leach";
        case Protocol::LeachC: return "leach-c";
        case Protocol::SLeachC: return "sleach-c";
        case Protocol::SLeachD: return "sleach-d";
        case Protocol::MultiHopLeach: return "multihop-leach";
        case Protocol::MLeach: return "m-leach";
        case Protocol::LeachSC: return "leach-sc";
    }
    throw std::logic_error("unknown protocol tag");
}

Protocol protocol_from_string(std::string_view name) {
    for (Protocol p : kAllProtocols) {
        if (to_string(p) == name) {
            return p;
        }
    }
    throw std::invalid_argument("unknown protocol '" + std::string(name) +
                                "' (expected one of: leach, leach-c, sleach-c, "
                                "sleach-d, multihop-leach, m-leach, leach-sc)");
}

long ScenarioConfig::epoch_len() const {
    return std::max(1L, std::lround(1.0 / p_ch));
}

namespace {

void require(bool ok, const char* message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

} // namespace

void validate(const ScenarioConfig& config) {
    require(config.num_nodes >= 1, "num_nodes must be >= 1");
    require(config.field_width > 0, "field_width must be positive");
    require(config.field_height > 0, "field_height must be positive");
    require(config.p_ch > 0 && config.p_ch < 1, "p_ch must lie strictly between 0 and 1");
    require(config.packet_bits_data >= 0, "packet_bits_data must be non-negative");
    require(config.packet_bits_agg >= 0, "packet_bits_agg must be non-negative");
    require(config.initial_energy > 0, "initial_energy must be positive");
    require(config.rounds_max >= 1, "rounds_max must be >= 1");
    require(config.frames_per_round >= 1, "frames_per_round must be >= 1");
    require(config.solar_fraction >= 0 && config.solar_fraction <= 1,
            "solar_fraction must lie in [0, 1]");
    require(config.harvest_j_per_round >= 0, "harvest_j_per_round must be non-negative");
    require(config.sun_cycle_rounds >= 1, "sun_cycle_rounds must be >= 1");
    require(config.sun_fraction >= 0 && config.sun_fraction <= 1,
            "sun_fraction must lie in [0, 1]");
    require(config.v_max >= 0, "v_max must be non-negative");
    require(config.ch_radio_range >= 0, "ch_radio_range must be non-negative");
    require(config.mleach_join_range >= 0, "mleach_join_range must be non-negative");
    validate(config.radio);
}

bool equal_ignoring_seed(const ScenarioConfig& a, const ScenarioConfig& b) {
    return a.num_nodes == b.num_nodes && a.field_width == b.field_width &&
           a.field_height == b.field_height && a.bs_pos == b.bs_pos &&
           a.protocol == b.protocol && a.p_ch == b.p_ch &&
           a.packet_bits_data == b.packet_bits_data &&
           a.packet_bits_agg == b.packet_bits_agg &&
           a.initial_energy == b.initial_energy && a.rounds_max == b.rounds_max &&
           a.frames_per_round == b.frames_per_round &&
           a.solar_fraction == b.solar_fraction &&
           a.harvest_j_per_round == b.harvest_j_per_round &&
           a.sun_cycle_rounds == b.sun_cycle_rounds &&
           a.sun_fraction == b.sun_fraction && a.v_max == b.v_max &&
           a.ch_radio_range == b.ch_radio_range &&
           a.mleach_join_range == b.mleach_join_range &&
           a.charge_setup_energy == b.charge_setup_energy &&
           a.downward_query == b.downward_query &&
           a.radio.e_elec_tx == b.radio.e_elec_tx &&
           a.radio.e_elec_rx == b.radio.e_elec_rx &&
           a.radio.eps_fs == b.radio.eps_fs && a.radio.e_da == b.radio.e_da;
}

} // namespace leachsim
