#include "leachsim/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace leachsim {

void validate(const RadioParams& params) {
    if (!(params.e_elec_tx > 0) || !(params.e_elec_rx > 0) ||
        !(params.eps_fs > 0) || !(params.e_da > 0)) {
        throw std::invalid_argument("radio parameters must be strictly positive");
    }
}

double tx_energy(const RadioParams& params, double bits, double d) {
    if (bits < 0 || d < 0) {
        throw std::invalid_argument("tx_energy: bits and distance must be non-negative");
    }
    return params.e_elec_tx * bits + params.eps_fs * bits * d * d;
}

double rx_energy(const RadioParams& params, double bits) {
    if (bits < 0) {
        throw std::invalid_argument("rx_energy: bits must be non-negative");
    }
    return params.e_elec_rx * bits;
}

double agg_energy(const RadioParams& params, double bits_total) {
    if (bits_total < 0) {
        throw std::invalid_argument("agg_energy: bits must be non-negative");
    }
    return params.e_da * bits_total;
}

void validate(const ClusterGeometry& g) {
    if (!(g.n >= 1) || !(g.k >= 1)) {
        throw std::invalid_argument("cluster geometry: node and cluster counts must be >= 1");
    }
    if (g.n / g.k < 1) {
        throw std::invalid_argument("cluster geometry: clusters cannot outnumber nodes");
    }
    if (g.l_c < 0 || g.l_a < 0 || g.l_bs < 0) {
        throw std::invalid_argument("cluster geometry: packet sizes must be non-negative");
    }
    if (g.d_to_bs < 0 || g.d_to_ch < 0) {
        throw std::invalid_argument("cluster geometry: distances must be non-negative");
    }
}

double ch_upward_energy(const RadioParams& params, const ClusterGeometry& g) {
    validate(g);
    const double cluster_size = g.n / g.k;
    return (cluster_size - 1) * rx_energy(params, g.l_c) +
           agg_energy(params, cluster_size * g.l_c) +
           tx_energy(params, g.l_a, g.d_to_bs);
}

double member_upward_energy(const RadioParams& params, double l_c, double d_to_ch) {
    return tx_energy(params, l_c, d_to_ch);
}

double cluster_upward_energy(const RadioParams& params, const ClusterGeometry& g) {
    validate(g);
    const double cluster_size = g.n / g.k;
    return ch_upward_energy(params, g) +
           (cluster_size - 1) * member_upward_energy(params, g.l_c, g.d_to_ch);
}

double ch_downward_energy(const RadioParams& params, const ClusterGeometry& g) {
    validate(g);
    const double cluster_size = g.n / g.k;
    return cluster_size * rx_energy(params, g.l_bs) +
           (cluster_size - 1) * tx_energy(params, g.l_bs, g.d_to_ch);
}

double cluster_downward_energy(const RadioParams& params, const ClusterGeometry& g) {
    validate(g);
    const double cluster_size = g.n / g.k;
    return ch_downward_energy(params, g) + (cluster_size - 1) * rx_energy(params, g.l_bs);
}

double cluster_total_energy(const RadioParams& params, const ClusterGeometry& g) {
    return cluster_upward_energy(params, g) + cluster_downward_energy(params, g);
}

double network_total_energy(const RadioParams& params, const ClusterGeometry& g) {
    return cluster_total_energy(params, g) * g.k;
}

void validate(const LinearScenario& s) {
    if (!(s.m >= 0)) {
        throw std::invalid_argument("linear scenario: spacing must be non-negative");
    }
    if (s.l_a < 0 || s.l_b < 0) {
        throw std::invalid_argument("linear scenario: packet sizes must be non-negative");
    }
}

double linear_direct_cost(const RadioParams& params, const LinearScenario& s) {
    validate(s);
    return tx_energy(params, s.l_a, 2 * s.m) + tx_energy(params, s.l_b, s.m);
}

double linear_multihop_cost(const RadioParams& params, const LinearScenario& s) {
    validate(s);
    return tx_energy(params, s.l_a, s.m) + rx_energy(params, s.l_a) +
           tx_energy(params, s.l_a + s.l_b, s.m);
}

double multihop_breakeven_m(const RadioParams& params, double l_a, double l_b) {
    if (!(l_a > 0) || l_b < 0) {
        throw std::invalid_argument("breakeven: l_a must be positive, l_b non-negative");
    }
    // direct - multihop = l_a (2 eps_fs m^2 - e_elec_tx - e_elec_rx); l_b cancels.
    return std::sqrt((params.e_elec_tx + params.e_elec_rx) / (2 * params.eps_fs));
}

} // namespace leachsim
