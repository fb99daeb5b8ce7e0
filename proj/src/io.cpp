#include "leachsim/io.hpp"

#include "leachsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace leachsim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_double(std::string_view value, const std::string& key, int line) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("value '" + std::string(value) + "' for " + key + " is not a number",
                          line);
    }
    return out;
}

long parse_long(std::string_view value, const std::string& key, int line) {
    long out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("value '" + std::string(value) + "' for " + key + " is not an integer",
                          line);
    }
    return out;
}

std::uint64_t parse_u64(std::string_view value, const std::string& key, int line) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("value '" + std::string(value) + "' for " + key +
                              " is not an unsigned integer",
                          line);
    }
    return out;
}

bool parse_bool(std::string_view value, const std::string& key, int line) {
    if (value == "true" || value == "1") {
        return true;
    }
    if (value == "false" || value == "0") {
        return false;
    }
    throw ConfigError("value '" + std::string(value) + "' for " + key +
                          " must be true/false/1/0",
                      line);
}

void check_range(bool ok, const std::string& key, const char* what, int line) {
    if (!ok) {
        throw ConfigError(key + " " + what, line);
    }
}

} // namespace

ScenarioConfig parse_config(std::string_view text) {
    ScenarioConfig config;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                              : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        const std::string_view stripped = trim(raw);
        if (stripped.empty()) {
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("expected 'key = value', got '" + std::string(stripped) + "'",
                              line_no);
        }
        const std::string key{trim(stripped.substr(0, eq))};
        const std::string_view value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("expected 'key = value', got '" + std::string(stripped) + "'",
                              line_no);
        }

        if (key == "num_nodes") {
            config.num_nodes = static_cast<int>(parse_long(value, key, line_no));
            check_range(config.num_nodes >= 1, key, "must be >= 1", line_no);
        } else if (key == "field_width") {
            config.field_width = parse_double(value, key, line_no);
            check_range(config.field_width > 0, key, "must be positive", line_no);
        } else if (key == "field_height") {
            config.field_height = parse_double(value, key, line_no);
            check_range(config.field_height > 0, key, "must be positive", line_no);
        } else if (key == "bs_x") {
            config.bs_pos.x = parse_double(value, key, line_no);
        } else if (key == "bs_y") {
            config.bs_pos.y = parse_double(value, key, line_no);
        } else if (key == "protocol") {
            try {
                config.protocol = protocol_from_string(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what(), line_no);
            }
        } else if (key == "p_ch") {
            config.p_ch = parse_double(value, key, line_no);
            check_range(config.p_ch > 0 && config.p_ch < 1,
                        key, "must lie strictly between 0 and 1", line_no);
        } else if (key == "packet_bits_data") {
            config.packet_bits_data = parse_double(value, key, line_no);
            check_range(config.packet_bits_data >= 0, key, "must be non-negative", line_no);
        } else if (key == "packet_bits_agg") {
            config.packet_bits_agg = parse_double(value, key, line_no);
            check_range(config.packet_bits_agg >= 0, key, "must be non-negative", line_no);
        } else if (key == "initial_energy") {
            config.initial_energy = parse_double(value, key, line_no);
            check_range(config.initial_energy > 0, key, "must be positive", line_no);
        } else if (key == "rounds_max") {
            config.rounds_max = parse_long(value, key, line_no);
            check_range(config.rounds_max >= 1, key, "must be >= 1", line_no);
        } else if (key == "frames_per_round") {
            config.frames_per_round = static_cast<int>(parse_long(value, key, line_no));
            check_range(config.frames_per_round >= 1, key, "must be >= 1", line_no);
        } else if (key == "seed") {
            config.seed = parse_u64(value, key, line_no);
        } else if (key == "solar_fraction") {
            config.solar_fraction = parse_double(value, key, line_no);
            check_range(config.solar_fraction >= 0 && config.solar_fraction <= 1,
                        key, "must lie in [0, 1]", line_no);
        } else if (key == "harvest_j_per_round") {
            config.harvest_j_per_round = parse_double(value, key, line_no);
            check_range(config.harvest_j_per_round >= 0, key, "must be non-negative", line_no);
        } else if (key == "sun_cycle_rounds") {
            config.sun_cycle_rounds = parse_long(value, key, line_no);
            check_range(config.sun_cycle_rounds >= 1, key, "must be >= 1", line_no);
        } else if (key == "sun_fraction") {
            config.sun_fraction = parse_double(value, key, line_no);
            check_range(config.sun_fraction >= 0 && config.sun_fraction <= 1,
                        key, "must lie in [0, 1]", line_no);
        } else if (key == "v_max") {
            config.v_max = parse_double(value, key, line_no);
            check_range(config.v_max >= 0, key, "must be non-negative", line_no);
        } else if (key == "ch_radio_range") {
            config.ch_radio_range = parse_double(value, key, line_no);
            check_range(config.ch_radio_range >= 0, key, "must be non-negative", line_no);
        } else if (key == "mleach_join_range") {
            config.mleach_join_range = parse_double(value, key, line_no);
            check_range(config.mleach_join_range >= 0, key, "must be non-negative", line_no);
        } else if (key == "charge_setup_energy") {
            config.charge_setup_energy = parse_bool(value, key, line_no);
        } else if (key == "downward_query") {
            config.downward_query = parse_bool(value, key, line_no);
        } else if (key == "e_elec_tx") {
            config.radio.e_elec_tx = parse_double(value, key, line_no);
            check_range(config.radio.e_elec_tx > 0, key, "must be positive", line_no);
        } else if (key == "e_elec_rx") {
            config.radio.e_elec_rx = parse_double(value, key, line_no);
            check_range(config.radio.e_elec_rx > 0, key, "must be positive", line_no);
        } else if (key == "eps_fs") {
            config.radio.eps_fs = parse_double(value, key, line_no);
            check_range(config.radio.eps_fs > 0, key, "must be positive", line_no);
        } else if (key == "e_da") {
            config.radio.e_da = parse_double(value, key, line_no);
            check_range(config.radio.e_da > 0, key, "must be positive", line_no);
        } else {
            throw ConfigError("unknown key '" + key + "'", line_no);
        }
    }
    try {
        validate(config);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return config;
}

ScenarioConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

namespace {

std::string fmt_double(double v, const char* format) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

/// Shortest decimal form that round-trips the exact double.
std::string fmt_exact(double v) {
    for (int precision = 1; precision <= 17; ++precision) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) {
            return buf;
        }
    }
    return fmt_double(v, "%.17g");
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ConfigError("cannot write " + tmp.string());
        }
        out << content;
        if (!out.flush()) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw ConfigError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw ConfigError("cannot rename into place: " + path.string());
    }
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (std::thread& t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace

std::string format_config(const ScenarioConfig& config) {
    std::ostringstream out;
    out << "num_nodes = " << config.num_nodes << "\n";
    out << "field_width = " << fmt_exact(config.field_width) << "\n";
    out << "field_height = " << fmt_exact(config.field_height) << "\n";
    out << "bs_x = " << fmt_exact(config.bs_pos.x) << "\n";
    out << "bs_y = " << fmt_exact(config.bs_pos.y) << "\n";
    out << "protocol = " << to_string(config.protocol) << "\n";
    out << "p_ch = " << fmt_exact(config.p_ch) << "\n";
    out << "packet_bits_data = " << fmt_exact(config.packet_bits_data) << "\n";
    out << "packet_bits_agg = " << fmt_exact(config.packet_bits_agg) << "\n";
    out << "initial_energy = " << fmt_exact(config.initial_energy) << "\n";
    out << "rounds_max = " << config.rounds_max << "\n";
    out << "frames_per_round = " << config.frames_per_round << "\n";
    out << "seed = " << config.seed << "\n";
    out << "solar_fraction = " << fmt_exact(config.solar_fraction) << "\n";
    out << "harvest_j_per_round = " << fmt_exact(config.harvest_j_per_round) << "\n";
    out << "sun_cycle_rounds = " << config.sun_cycle_rounds << "\n";
    out << "sun_fraction = " << fmt_exact(config.sun_fraction) << "\n";
    out << "v_max = " << fmt_exact(config.v_max) << "\n";
    out << "ch_radio_range = " << fmt_exact(config.ch_radio_range) << "\n";
    out << "mleach_join_range = " << fmt_exact(config.mleach_join_range) << "\n";
    out << "charge_setup_energy = " << (config.charge_setup_energy ? "true" : "false") << "\n";
    out << "downward_query = " << (config.downward_query ? "true" : "false") << "\n";
    out << "e_elec_tx = " << fmt_exact(config.radio.e_elec_tx) << "\n";
    out << "e_elec_rx = " << fmt_exact(config.radio.e_elec_rx) << "\n";
    out << "eps_fs = " << fmt_exact(config.radio.eps_fs) << "\n";
    out << "e_da = " << fmt_exact(config.radio.e_da) << "\n";
    return out.str();
}

void emit_trace_csv(const SimulationTrace& trace, const std::filesystem::path& path) {
    std::string out = "round,alive,dead,chs_elected,pkts_to_ch,pkts_to_bs,"
                      "energy_dissipated_j,energy_harvested_j\n";
    for (const RoundReport& r : trace.rounds) {
        out += std::to_string(r.round);
        out += ',';
        out += std::to_string(r.alive);
        out += ',';
        out += std::to_string(r.dead);
        out += ',';
        out += std::to_string(r.chs_elected);
        out += ',';
        out += std::to_string(r.pkts_to_ch);
        out += ',';
        out += std::to_string(r.pkts_to_bs);
        out += ',';
        out += fmt_double(r.energy_dissipated_j, "%.9g");
        out += ',';
        out += fmt_double(r.energy_harvested_j, "%.9g");
        out += '\n';
    }
    atomic_write(path, out);
}

void emit_aggregate_csv(const AggregateTrace& aggregate, const std::filesystem::path& path) {
    std::string out =
        "round,alive_median,alive_mean,dead_median,dead_mean,"
        "chs_elected_median,chs_elected_mean,pkts_to_ch_median,pkts_to_ch_mean,"
        "pkts_to_bs_median,pkts_to_bs_mean,energy_dissipated_j_median,"
        "energy_dissipated_j_mean,energy_harvested_j_median,energy_harvested_j_mean\n";
    for (const AggregateRound& r : aggregate.rounds) {
        out += std::to_string(r.round);
        for (double v : {r.alive_median, r.alive_mean, r.dead_median, r.dead_mean,
                         r.chs_elected_median, r.chs_elected_mean, r.pkts_to_ch_median,
                         r.pkts_to_ch_mean, r.pkts_to_bs_median, r.pkts_to_bs_mean,
                         r.energy_dissipated_median, r.energy_dissipated_mean,
                         r.energy_harvested_median, r.energy_harvested_mean}) {
            out += ',';
            out += fmt_double(v, "%.9g");
        }
        out += '\n';
    }
    atomic_write(path, out);
}

CompareReport run_compare(const RunRequest& request) {
    if (request.seeds.empty()) {
        throw ConfigError("at least one seed is required");
    }
    ScenarioConfig base = load_config_file(request.config_path);
    if (request.protocol_override) {
        base.protocol = *request.protocol_override;
    }
    std::vector<Protocol> variants = request.compare_list;
    if (variants.empty()) {
        variants.push_back(base.protocol);
    }

    std::error_code ec;
    std::filesystem::create_directories(request.output_dir, ec);
    if (ec || !std::filesystem::is_directory(request.output_dir)) {
        throw ConfigError("cannot create output directory " + request.output_dir.string());
    }

    // LEACH is the comparison baseline; run it even when not requested.
    std::vector<Protocol> to_run = variants;
    if (std::find(to_run.begin(), to_run.end(), Protocol::Leach) == to_run.end()) {
        to_run.push_back(Protocol::Leach);
    }

    struct Cell {
        Protocol protocol;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (Protocol p : to_run) {
        for (std::uint64_t seed : request.seeds) {
            cells.push_back(Cell{p, seed});
        }
    }
    std::vector<SimulationTrace> traces(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        ScenarioConfig config = base;
        config.protocol = cells[i].protocol;
        config.seed = cells[i].seed;
        traces[i] = run_simulation(config);
    });

    std::map<Protocol, std::vector<SimulationTrace>> by_variant;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        by_variant[cells[i].protocol].push_back(std::move(traces[i]));
    }

    std::map<Protocol, AggregateTrace> aggregates;
    for (Protocol p : to_run) {
        aggregates[p] = aggregate_seeds(by_variant[p]);
    }
    const double leach_last = aggregates[Protocol::Leach].median_summary.last_node_death;

    CompareReport report;
    for (Protocol p : variants) {
        const AggregateTrace& agg = aggregates[p];
        emit_aggregate_csv(agg, request.output_dir / (to_string(p) + "_trace.csv"));
        if (request.write_per_seed_traces) {
            for (const SimulationTrace& trace : by_variant[p]) {
                emit_trace_csv(trace, request.output_dir /
                                          (to_string(p) + "_seed" +
                                           std::to_string(trace.config.seed) + ".csv"));
            }
        }
        VariantSummary summary;
        summary.protocol = p;
        summary.medians = agg.median_summary;
        summary.improvement_vs_leach_pct =
            leach_last > 0 ? 100.0 * (agg.median_summary.last_node_death - leach_last) /
                                 leach_last
                           : 0.0;
        report.variants.push_back(summary);
    }

    std::string summary_csv =
        "variant,seeds,first_death_median,half_death_median,last_death_median,"
        "total_pkts_to_bs_median,total_pkts_to_ch_median,improvement_vs_leach_pct\n";
    for (const VariantSummary& v : report.variants) {
        summary_csv += to_string(v.protocol);
        summary_csv += ',' + std::to_string(request.seeds.size());
        summary_csv += ',' + fmt_double(v.medians.first_node_death, "%.9g");
        summary_csv += ',' + fmt_double(v.medians.half_nodes_death, "%.9g");
        summary_csv += ',' + fmt_double(v.medians.last_node_death, "%.9g");
        summary_csv += ',' + fmt_double(v.medians.total_pkts_to_bs, "%.9g");
        summary_csv += ',' + fmt_double(v.medians.total_pkts_to_ch, "%.9g");
        summary_csv += ',' + fmt_double(v.improvement_vs_leach_pct, "%.9g");
        summary_csv += '\n';
    }
    report.summary_csv = request.output_dir / "summary.csv";
    atomic_write(report.summary_csv, summary_csv);

    if (request.write_gnuplot) {
        emit_gnuplot_script(variants, request.output_dir / "plot.gp");
    }
    return report;
}

void emit_gnuplot_script(const std::vector<Protocol>& variants,
                         const std::filesystem::path& path) {
    std::string out = "# gnuplot companion for the emitted trace CSVs\n"
                      "set datafile separator ','\n"
                      "set key outside\n"
                      "set xlabel 'round'\n";
    const auto plot_block = [&](const char* title, int column) {
        std::string block = "set ylabel '" + std::string(title) + "'\nplot ";
        bool first = true;
        for (Protocol p : variants) {
            if (!first) {
                block += ", ";
            }
            first = false;
            block += "'" + to_string(p) + "_trace.csv' using 1:" + std::to_string(column) +
                     " with lines title '" + to_string(p) + "'";
        }
        block += "\npause -1\n";
        return block;
    };
    out += plot_block("alive nodes (median)", 2);
    out += plot_block("packets at BS (median)", 10);
    out += plot_block("cluster heads per round (median)", 6);
    atomic_write(path, out);
}

} // namespace leachsim
