#include "leachsim/engine.hpp"
#include "leachsim/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace leachsim;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* name) {
    fs::path dir = fs::temp_directory_path() / "leachsim_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("empty config yields the default scenario") {
    const ScenarioConfig config = parse_config("");
    CHECK(config.num_nodes == 100);
    CHECK(config.field_width == 100.0);
    CHECK(config.field_height == 100.0);
    CHECK(config.bs_pos.x == 50.0);
    CHECK(config.bs_pos.y == 175.0);
    CHECK(config.protocol == Protocol::Leach);
    CHECK(config.p_ch == 0.1);
    CHECK(config.packet_bits_data == 200.0);
    CHECK(config.packet_bits_agg == 200.0);
    CHECK(config.initial_energy == 0.5);
    CHECK(config.frames_per_round == 1);
    CHECK(config.radio.e_elec_tx == 50e-9);
    CHECK(config.radio.e_elec_rx == 50e-9);
    CHECK(config.radio.eps_fs == 100e-12);
    CHECK(config.radio.e_da == 50e-12);
    CHECK(config.epoch_len() == 10);
}

TEST_CASE("config parsing errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_config("p_ch = 1.5"),
                         "line 1: p_ch must lie strictly between 0 and 1", ConfigError);
    CHECK_THROWS_AS(parse_config("num_nodes = 100\nwhatever = 3\n"), ConfigError);
    try {
        parse_config("num_nodes = 100\nwhatever = 3\n");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_config("p_ch 0.2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("num_nodes = twelve\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("protocol = leachy\n"), ConfigError);
}

TEST_CASE("single override keeps remaining defaults") {
    const ScenarioConfig config = parse_config("# scenario\nnum_nodes = 50\n");
    CHECK(config.num_nodes == 50);
    CHECK(config.p_ch == 0.1);
    CHECK(config.initial_energy == 0.5);
}

TEST_CASE("config round-trips through format_config exactly") {
    ScenarioConfig config;
    config.num_nodes = 37;
    config.field_width = 123.456789012345;
    config.field_height = 77.7;
    config.bs_pos = {12.25, -3.5};
    config.protocol = Protocol::MultiHopLeach;
    config.p_ch = 0.07;
    config.packet_bits_data = 512;
    config.packet_bits_agg = 384;
    config.initial_energy = 0.123456789;
    config.rounds_max = 4321;
    config.frames_per_round = 3;
    config.seed = 0xdeadbeefcafef00dULL;
    config.solar_fraction = 0.31;
    config.harvest_j_per_round = 0.0123;
    config.sun_cycle_rounds = 77;
    config.sun_fraction = 0.4;
    config.v_max = 2.5;
    config.ch_radio_range = 61.5;
    config.mleach_join_range = 19.75;
    config.charge_setup_energy = false;
    config.downward_query = true;
    config.radio.eps_fs = 13e-12;

    const ScenarioConfig back = parse_config(format_config(config));
    CHECK(equal_ignoring_seed(back, config));
    CHECK(back.seed == config.seed);
}

TEST_CASE("all protocol tags round-trip") {
    for (Protocol p : kAllProtocols) {
        CHECK(protocol_from_string(to_string(p)) == p);
    }
}

TEST_CASE("trace csv schema") {
    const fs::path dir = temp_dir("csv");
    SimulationTrace trace;
    trace.config = parse_config("");

    SUBCASE("empty trace writes the header only") {
        emit_trace_csv(trace, dir / "empty.csv");
        CHECK(slurp(dir / "empty.csv") ==
              "round,alive,dead,chs_elected,pkts_to_ch,pkts_to_bs,"
              "energy_dissipated_j,energy_harvested_j\n");
    }

    SUBCASE("one round writes two newline-terminated lines") {
        RoundReport r;
        r.round = 0;
        r.alive = 99;
        r.dead = 1;
        r.chs_elected = 9;
        r.pkts_to_ch = 90;
        r.pkts_to_bs = 9;
        r.energy_dissipated_j = 0.0123456789;
        r.energy_harvested_j = 0.5;
        trace.rounds.push_back(r);
        emit_trace_csv(trace, dir / "one.csv");
        const std::string text = slurp(dir / "one.csv");
        CHECK(text == "round,alive,dead,chs_elected,pkts_to_ch,pkts_to_bs,"
                      "energy_dissipated_j,energy_harvested_j\n"
                      "0,99,1,9,90,9,0.0123456789,0.5\n");
    }

    SUBCASE("emitted floats round-trip to 9 significant digits") {
        ScenarioConfig config = trace.config;
        config.num_nodes = 20;
        config.initial_energy = 0.05;
        config.rounds_max = 400;
        const SimulationTrace run = run_simulation(config);
        emit_trace_csv(run, dir / "roundtrip.csv");
        std::ifstream in(dir / "roundtrip.csv");
        std::string header;
        std::getline(in, header);
        for (const RoundReport& expected : run.rounds) {
            long round;
            int alive, dead, chs;
            unsigned long long to_ch, to_bs;
            double dissipated, harvested;
            char line[256];
            REQUIRE(in.getline(line, sizeof(line)));
            REQUIRE(std::sscanf(line, "%ld,%d,%d,%d,%llu,%llu,%lf,%lf", &round, &alive, &dead,
                                &chs, &to_ch, &to_bs, &dissipated, &harvested) == 8);
            CHECK(round == expected.round);
            CHECK(alive == expected.alive);
            CHECK(to_bs == expected.pkts_to_bs);
            CHECK(dissipated ==
                  doctest::Approx(expected.energy_dissipated_j).epsilon(5e-9));
            CHECK(harvested == doctest::Approx(expected.energy_harvested_j).epsilon(5e-9));
        }
    }
}

TEST_CASE("trace csv write is atomic") {
    const fs::path dir = temp_dir("atomic");
    SimulationTrace trace;
    trace.config = parse_config("");
    CHECK_THROWS_AS(emit_trace_csv(trace, dir / "missing" / "trace.csv"), ConfigError);
    CHECK(!fs::exists(dir / "missing"));
}

TEST_CASE("run_compare writes aggregated traces and a summary") {
    const fs::path dir = temp_dir("compare");
    const fs::path config_path = dir / "scenario.conf";
    {
        std::ofstream out(config_path);
        out << "num_nodes = 20\ninitial_energy = 0.05\nrounds_max = 500\n";
    }

    RunRequest request;
    request.config_path = config_path;
    request.compare_list = {Protocol::Leach};
    request.seeds = {1};
    request.output_dir = dir / "out";
    const CompareReport report = run_compare(request);

    REQUIRE(report.variants.size() == 1);
    CHECK(report.variants[0].protocol == Protocol::Leach);
    CHECK(report.variants[0].improvement_vs_leach_pct == 0.0);
    CHECK(fs::exists(dir / "out" / "leach_trace.csv"));
    CHECK(fs::exists(dir / "out" / "summary.csv"));
    const std::string summary = slurp(dir / "out" / "summary.csv");
    CHECK(summary.find("variant,seeds,first_death_median") == 0);
    CHECK(summary.find("leach,1,") != std::string::npos);
}

TEST_CASE("run_compare rejects an unusable output directory") {
    const fs::path dir = temp_dir("badout");
    const fs::path config_path = dir / "scenario.conf";
    {
        std::ofstream out(config_path);
        out << "num_nodes = 20\n";
    }
    const fs::path blocker = dir / "blocked";
    {
        std::ofstream out(blocker);
        out << "file, not a directory\n";
    }

    RunRequest request;
    request.config_path = config_path;
    request.compare_list = {Protocol::Leach};
    request.seeds = {1};
    request.output_dir = blocker;
    CHECK_THROWS_AS(run_compare(request), ConfigError);
    CHECK(fs::is_regular_file(blocker));
}

TEST_CASE("run_compare requires seeds") {
    RunRequest request;
    request.config_path = "unused";
    CHECK_THROWS_AS(run_compare(request), ConfigError);
}
