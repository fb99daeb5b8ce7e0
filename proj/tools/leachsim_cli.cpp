#include "leachsim/engine.hpp"
#include "leachsim/io.hpp"
#include "leachsim/radio.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

using namespace leachsim;

std::vector<Protocol> parse_protocol_list(const std::string& csv) {
    std::vector<Protocol> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string token =
            csv.substr(pos, comma == std::string::npos ? csv.size() - pos : comma - pos);
        if (!token.empty()) {
            out.push_back(protocol_from_string(token));
        }
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    if (out.empty()) {
        throw ConfigError("no protocols given");
    }
    return out;
}

void print_summary_table(const CompareReport& report) {
    std::printf("%-15s %12s %12s %12s %14s %14s %10s\n", "variant", "first_death",
                "half_death", "last_death", "pkts_to_bs", "pkts_to_ch", "vs_leach");
    for (const VariantSummary& v : report.variants) {
        std::printf("%-15s %12.1f %12.1f %12.1f %14.1f %14.1f %+9.1f%%\n",
                    to_string(v.protocol).c_str(), v.medians.first_node_death,
                    v.medians.half_nodes_death, v.medians.last_node_death,
                    v.medians.total_pkts_to_bs, v.medians.total_pkts_to_ch,
                    v.improvement_vs_leach_pct);
    }
}

int cmd_energy_calc(const RadioParams& radio, const ClusterGeometry& geometry,
                    const LinearScenario& linear, bool sweep, double sweep_lo,
                    double sweep_hi, double sweep_step) {
    std::printf("cluster model (n=%g, k=%g, l_c=%g, l_a=%g, l_bs=%g, d_to_bs=%g, d_to_ch=%g)\n",
                geometry.n, geometry.k, geometry.l_c, geometry.l_a, geometry.l_bs,
                geometry.d_to_bs, geometry.d_to_ch);
    std::printf("  ch_upward_energy       = %.9g J\n", ch_upward_energy(radio, geometry));
    std::printf("  member_upward_energy   = %.9g J\n",
                member_upward_energy(radio, geometry.l_c, geometry.d_to_ch));
    std::printf("  cluster_upward_energy  = %.9g J\n", cluster_upward_energy(radio, geometry));
    std::printf("  ch_downward_energy     = %.9g J\n", ch_downward_energy(radio, geometry));
    std::printf("  cluster_downward_energy= %.9g J\n", cluster_downward_energy(radio, geometry));
    std::printf("  cluster_total_energy   = %.9g J\n", cluster_total_energy(radio, geometry));
    std::printf("  network_total_energy   = %.9g J\n", network_total_energy(radio, geometry));
    std::printf("linear model (m=%g, l_a=%g, l_b=%g)\n", linear.m, linear.l_a, linear.l_b);
    std::printf("  direct_cost   = %.9g J\n", linear_direct_cost(radio, linear));
    std::printf("  multihop_cost = %.9g J\n", linear_multihop_cost(radio, linear));
    std::printf("  breakeven_m   = %.9g m\n",
                multihop_breakeven_m(radio, linear.l_a, linear.l_b));
    if (sweep) {
        std::printf("m,direct_j,multihop_j\n");
        for (double m = sweep_lo; m <= sweep_hi + 1e-12; m += sweep_step) {
            LinearScenario s = linear;
            s.m = m;
            std::printf("%.9g,%.9g,%.9g\n", m, linear_direct_cost(radio, s),
                        linear_multihop_cost(radio, s));
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Round-based simulator for the LEACH protocol family"};
    app.require_subcommand(1);

    // run: one protocol, one or more seeds.
    auto* run = app.add_subcommand("run", "Run one protocol over one or more seeds");
    std::string run_config;
    std::string run_protocol;
    std::vector<std::uint64_t> run_seeds;
    std::string run_out = "out";
    bool run_gnuplot = false;
    run->add_option("--config", run_config, "scenario file (key = value)")->required();
    run->add_option("--protocol", run_protocol, "override the scenario protocol");
    run->add_option("--seed", run_seeds, "seed (repeatable; default: scenario seed)");
    run->add_option("--out", run_out, "output directory");
    run->add_flag("--gnuplot", run_gnuplot, "also write a gnuplot script");

    // compare: several protocols, aggregated over seeds.
    auto* compare = app.add_subcommand("compare", "Compare protocols across seeds");
    std::string cmp_config;
    std::string cmp_protocols = "leach,leach-c,sleach-c,sleach-d,multihop-leach,m-leach,leach-sc";
    std::size_t cmp_seed_count = 10;
    std::string cmp_out = "out";
    bool cmp_gnuplot = false;
    compare->add_option("--config", cmp_config, "scenario file (key = value)")->required();
    compare->add_option("--protocols", cmp_protocols, "comma-separated protocol tags");
    compare->add_option("--seeds", cmp_seed_count, "number of seeds (1..N)");
    compare->add_option("--out", cmp_out, "output directory");
    compare->add_flag("--gnuplot", cmp_gnuplot, "also write a gnuplot script");

    // energy-calc: closed-form cluster/linear costs and the break-even sweep.
    auto* calc = app.add_subcommand("energy-calc", "Evaluate the closed-form radio model");
    leachsim::ClusterGeometry geometry;
    leachsim::LinearScenario linear;
    leachsim::RadioParams radio;
    bool sweep = false;
    double sweep_lo = 5.0, sweep_hi = 50.0, sweep_step = 1.0;
    calc->add_option("--n", geometry.n, "total nodes");
    calc->add_option("--k", geometry.k, "cluster count");
    calc->add_option("--lc", geometry.l_c, "member packet bits");
    calc->add_option("--la", geometry.l_a, "aggregate packet bits");
    calc->add_option("--lbs", geometry.l_bs, "downward packet bits");
    calc->add_option("--d-bs", geometry.d_to_bs, "head-to-sink distance (m)");
    calc->add_option("--d-ch", geometry.d_to_ch, "member-to-head distance (m)");
    calc->add_option("--linear-m", linear.m, "linear spacing m");
    calc->add_option("--linear-la", linear.l_a, "linear: aggregate bits of head A");
    calc->add_option("--linear-lb", linear.l_b, "linear: aggregate bits of head B");
    calc->add_flag("--sweep", sweep, "print a direct-vs-multihop sweep over m");
    calc->add_option("--sweep-lo", sweep_lo, "sweep start (m)");
    calc->add_option("--sweep-hi", sweep_hi, "sweep end (m)");
    calc->add_option("--sweep-step", sweep_step, "sweep step (m)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            leachsim::RunRequest request;
            request.config_path = run_config;
            if (!run_protocol.empty()) {
                request.protocol_override = leachsim::protocol_from_string(run_protocol);
            }
            request.seeds = run_seeds;
            if (request.seeds.empty()) {
                request.seeds.push_back(leachsim::load_config_file(run_config).seed);
            }
            request.output_dir = run_out;
            request.write_gnuplot = run_gnuplot;
            request.write_per_seed_traces = true;
            print_summary_table(leachsim::run_compare(request));
            std::printf("wrote %s\n", run_out.c_str());
            return 0;
        }
        if (compare->parsed()) {
            leachsim::RunRequest request;
            request.config_path = cmp_config;
            request.compare_list = parse_protocol_list(cmp_protocols);
            if (cmp_seed_count == 0) {
                throw leachsim::ConfigError("--seeds must be >= 1");
            }
            for (std::uint64_t s = 1; s <= cmp_seed_count; ++s) {
                request.seeds.push_back(s);
            }
            request.output_dir = cmp_out;
            request.write_gnuplot = cmp_gnuplot;
            print_summary_table(leachsim::run_compare(request));
            std::printf("wrote %s\n", cmp_out.c_str());
            return 0;
        }
        if (calc->parsed()) {
            return cmd_energy_calc(radio, geometry, linear, sweep, sweep_lo, sweep_hi,
                                   sweep_step);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
