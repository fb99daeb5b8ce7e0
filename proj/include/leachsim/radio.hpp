#pragma once

#include "leachsim/geometry.hpp"

namespace leachsim {

/// First-order radio transceiver constants, joules per bit (amplifier per
/// bit per square meter). Defaults are the standard sensor-radio figures:
/// 50 nJ/bit electronics on both ends, 100 pJ/bit/m^2 free-space
/// amplifier, 50 pJ/bit aggregation.
struct RadioParams {
    double e_elec_tx = 50e-9;
    double e_elec_rx = 50e-9;
    double eps_fs = 100e-12;
    double e_da = 50e-12;
};

void validate(const RadioParams& params);

/// Transmit cost over distance d: electronics plus free-space d^2 amplifier.
double tx_energy(const RadioParams& params, double bits, double d);

/// Receive cost: electronics only.
double rx_energy(const RadioParams& params, double bits);

/// Aggregation cost over the total bits fused at a cluster head.
double agg_energy(const RadioParams& params, double bits_total);

/// Closed-form duplex cluster model: n nodes in K clusters, member packets
/// of l_c bits, aggregates of l_a bits, downward instructions of l_bs bits,
/// with representative head-to-sink and member-to-head distances.
struct ClusterGeometry {
    double n = 100;
    double k = 10;
    double l_c = 200;
    double l_a = 200;
    double l_bs = 200;
    double d_to_bs = 100;
    double d_to_ch = 20;
};

void validate(const ClusterGeometry& g);

double ch_upward_energy(const RadioParams& params, const ClusterGeometry& g);
double member_upward_energy(const RadioParams& params, double l_c, double d_to_ch);
double cluster_upward_energy(const RadioParams& params, const ClusterGeometry& g);
double ch_downward_energy(const RadioParams& params, const ClusterGeometry& g);
double cluster_downward_energy(const RadioParams& params, const ClusterGeometry& g);
double cluster_total_energy(const RadioParams& params, const ClusterGeometry& g);
double network_total_energy(const RadioParams& params, const ClusterGeometry& g);

/// Two cluster heads A and B on a line with the sink, uniform spacing m:
/// sink -- m -- B -- m -- A. l_a and l_b are the aggregates each head sends.
struct LinearScenario {
    double m = 25;
    double l_a = 200;
    double l_b = 200;
};

void validate(const LinearScenario& s);

/// Both heads transmit straight to the sink (A over 2m, B over m).
double linear_direct_cost(const RadioParams& params, const LinearScenario& s);

/// A relays through B; B forwards its own aggregate plus A's in one
/// transmission.
double linear_multihop_cost(const RadioParams& params, const LinearScenario& s);

/// Smallest spacing m at which relaying through B costs no more than the
/// direct transmissions. Independent of packet sizes for l_a > 0:
/// m = sqrt((e_elec_tx + e_elec_rx) / (2 eps_fs)).
double multihop_breakeven_m(const RadioParams& params, double l_a, double l_b);

} // namespace leachsim
