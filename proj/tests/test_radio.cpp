#include "leachsim/radio.hpp"
#include "leachsim/rng.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace leachsim;

namespace {
const RadioParams kRadio; // 50 nJ / 50 nJ / 100 pJ/m^2 / 50 pJ
}

TEST_CASE("tx_energy") {
    CHECK(tx_energy(kRadio, 200, 10) == doctest::Approx(12.0e-6).epsilon(1e-12));
    CHECK(tx_energy(kRadio, 0, 123.4) == 0.0);
    CHECK(tx_energy(kRadio, 200, 0) == doctest::Approx(10.0e-6).epsilon(1e-12));
    CHECK_THROWS_AS(tx_energy(kRadio, -1, 0), std::invalid_argument);
    CHECK_THROWS_AS(tx_energy(kRadio, 1, -2), std::invalid_argument);
}

TEST_CASE("rx_energy") {
    CHECK(rx_energy(kRadio, 200) == doctest::Approx(10.0e-6).epsilon(1e-12));
    CHECK(rx_energy(kRadio, 0) == 0.0);
    CHECK(rx_energy(kRadio, 2000) == doctest::Approx(100.0e-6).epsilon(1e-12));
    CHECK_THROWS_AS(rx_energy(kRadio, -5), std::invalid_argument);
}

TEST_CASE("agg_energy") {
    CHECK(agg_energy(kRadio, 2000) == doctest::Approx(1.0e-7).epsilon(1e-12));
    CHECK(agg_energy(kRadio, 0) == 0.0);
    CHECK(agg_energy(kRadio, 200) == doctest::Approx(1.0e-8).epsilon(1e-12));
    CHECK_THROWS_AS(agg_energy(kRadio, -1), std::invalid_argument);
}

TEST_CASE("tx monotonicity and linearity") {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const double bits = rng.uniform(1, 4000);
        const double d = rng.uniform(0, 200);
        CHECK(tx_energy(kRadio, bits + 1, d) > tx_energy(kRadio, bits, d));
        CHECK(tx_energy(kRadio, bits, d + 1) > tx_energy(kRadio, bits, d));
        CHECK(tx_energy(kRadio, 2 * bits, d) ==
              doctest::Approx(2 * tx_energy(kRadio, bits, d)).epsilon(1e-12));
        CHECK(rx_energy(kRadio, 2 * bits) == 2 * rx_energy(kRadio, bits));
        // Pure function: repeated evaluation is bit-identical.
        CHECK(tx_energy(kRadio, bits, d) == tx_energy(kRadio, bits, d));
    }
}

TEST_CASE("cluster head upward energy") {
    ClusterGeometry g{100, 10, 200, 200, 200, 100, 20};
    CHECK(ch_upward_energy(kRadio, g) == doctest::Approx(3.001e-4).epsilon(1e-9));

    ClusterGeometry singleton{10, 10, 0, 0, 0, 0, 0};
    CHECK(ch_upward_energy(kRadio, singleton) == 0.0);

    ClusterGeometry nearer = g;
    nearer.d_to_bs = 50;
    CHECK(ch_upward_energy(kRadio, nearer) == doctest::Approx(1.501e-4).epsilon(1e-9));

    ClusterGeometry bad = g;
    bad.k = 200; // clusters cannot outnumber nodes
    CHECK_THROWS_AS(ch_upward_energy(kRadio, bad), std::invalid_argument);
}

TEST_CASE("member upward energy") {
    CHECK(member_upward_energy(kRadio, 200, 20) == doctest::Approx(18.0e-6).epsilon(1e-12));
    CHECK(member_upward_energy(kRadio, 0, 50) == 0.0);
    CHECK(member_upward_energy(kRadio, 200, 10) == doctest::Approx(12.0e-6).epsilon(1e-12));
}

TEST_CASE("cluster upward energy and its decomposition") {
    ClusterGeometry g{100, 10, 200, 200, 200, 100, 20};
    CHECK(cluster_upward_energy(kRadio, g) == doctest::Approx(4.621e-4).epsilon(1e-9));

    ClusterGeometry singleton{10, 10, 200, 200, 200, 40, 15};
    CHECK(cluster_upward_energy(kRadio, singleton) == ch_upward_energy(kRadio, singleton));

    ClusterGeometry zero_d{100, 10, 200, 200, 200, 0, 0};
    CHECK(cluster_upward_energy(kRadio, zero_d) == doctest::Approx(1.901e-4).epsilon(1e-9));

    // Exact decomposition into head plus per-member terms.
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        ClusterGeometry random{rng.uniform(10, 500), rng.uniform(1, 10), rng.uniform(0, 1000),
                               rng.uniform(0, 1000), rng.uniform(0, 1000), rng.uniform(0, 150),
                               rng.uniform(0, 60)};
        if (random.n / random.k < 1) {
            continue;
        }
        const double members = random.n / random.k - 1;
        CHECK(cluster_upward_energy(kRadio, random) ==
              ch_upward_energy(kRadio, random) +
                  members * member_upward_energy(kRadio, random.l_c, random.d_to_ch));
    }
}

TEST_CASE("downward energies") {
    ClusterGeometry g{100, 10, 200, 200, 200, 100, 20};
    CHECK(ch_downward_energy(kRadio, g) == doctest::Approx(2.62e-4).epsilon(1e-9));
    CHECK(cluster_downward_energy(kRadio, g) == doctest::Approx(3.52e-4).epsilon(1e-9));

    ClusterGeometry no_instruction = g;
    no_instruction.l_bs = 0;
    CHECK(ch_downward_energy(kRadio, no_instruction) == 0.0);
    CHECK(cluster_downward_energy(kRadio, no_instruction) == 0.0);

    ClusterGeometry singleton{10, 10, 200, 200, 200, 40, 15};
    CHECK(ch_downward_energy(kRadio, singleton) == doctest::Approx(10.0e-6).epsilon(1e-12));
    CHECK(cluster_downward_energy(kRadio, singleton) == doctest::Approx(10.0e-6).epsilon(1e-12));
}

TEST_CASE("duplex totals") {
    ClusterGeometry g{100, 10, 200, 200, 200, 100, 20};
    CHECK(cluster_total_energy(kRadio, g) == doctest::Approx(8.141e-4).epsilon(1e-9));
    CHECK(network_total_energy(kRadio, g) == doctest::Approx(8.141e-3).epsilon(1e-9));

    ClusterGeometry zero{100, 10, 0, 0, 0, 100, 20};
    CHECK(cluster_total_energy(kRadio, zero) == 0.0);
    CHECK(network_total_energy(kRadio, zero) == 0.0);

    ClusterGeometry one_cluster{50, 1, 200, 200, 200, 80, 25};
    CHECK(network_total_energy(kRadio, one_cluster) ==
          cluster_total_energy(kRadio, one_cluster));

    // E_T = K * E_C exactly, over random geometries.
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        ClusterGeometry random{rng.uniform(20, 400), rng.uniform(1, 15), rng.uniform(0, 800),
                               rng.uniform(0, 800), rng.uniform(0, 800), rng.uniform(0, 150),
                               rng.uniform(0, 50)};
        if (random.n / random.k < 1) {
            continue;
        }
        CHECK(network_total_energy(kRadio, random) ==
              cluster_total_energy(kRadio, random) * random.k);
    }
}

TEST_CASE("linear network costs") {
    // Direct: A transmits over 2m, B over m.
    LinearScenario s{25, 200, 200};
    CHECK(linear_direct_cost(kRadio, s) == doctest::Approx(8.25e-5).epsilon(1e-9));
    CHECK(linear_multihop_cost(kRadio, s) == doctest::Approx(77.5e-6).epsilon(1e-9));

    LinearScenario empty{25, 0, 0};
    CHECK(linear_direct_cost(kRadio, empty) == 0.0);
    CHECK(linear_multihop_cost(kRadio, empty) == 0.0);

    LinearScenario collapsed{0, 200, 200};
    CHECK(linear_direct_cost(kRadio, collapsed) == doctest::Approx(20e-6).epsilon(1e-12));
    CHECK(linear_multihop_cost(kRadio, collapsed) == doctest::Approx(40e-6).epsilon(1e-12));
}

TEST_CASE("multihop break-even distance") {
    CHECK(multihop_breakeven_m(kRadio, 200, 200) == doctest::Approx(22.36).epsilon(5e-4));

    // Relaying wins above the break-even spacing, loses below it.
    LinearScenario above{30, 200, 200};
    CHECK(linear_multihop_cost(kRadio, above) < linear_direct_cost(kRadio, above));
    LinearScenario below{15, 200, 200};
    CHECK(linear_multihop_cost(kRadio, below) > linear_direct_cost(kRadio, below));

    // Vanishing electronics cost: relaying always wins.
    RadioParams cheap = kRadio;
    cheap.e_elec_tx = 1e-18;
    cheap.e_elec_rx = 1e-18;
    CHECK(multihop_breakeven_m(cheap, 200, 200) < 1e-3);

    // Ordering flips exactly at the break-even point, for unequal loads too.
    Rng rng(23);
    for (int i = 0; i < 40; ++i) {
        const double l_a = rng.uniform(1, 2000);
        const double l_b = rng.uniform(0, 2000);
        const double pivot = multihop_breakeven_m(kRadio, l_a, l_b);
        for (double m = 1.0; m < 50.0; m += 0.5) {
            LinearScenario scan{m, l_a, l_b};
            const double direct = linear_direct_cost(kRadio, scan);
            const double relayed = linear_multihop_cost(kRadio, scan);
            if (m > pivot + 1e-9) {
                CHECK(relayed < direct);
            } else if (m < pivot - 1e-9) {
                CHECK(relayed > direct);
            }
        }
    }
}
