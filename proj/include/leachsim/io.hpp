#pragma once

#include "leachsim/config.hpp"
#include "leachsim/metrics.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace leachsim {

/// Config-file or request problem, with the 1-based line number when the
/// problem is tied to a specific line.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::string message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : std::move(message)),
          line_(line) {}

    int line() const { return line_; }

  private:
    int line_ = 0;
};

/// Parses the `key = value` scenario format (one pair per line, `#` starts
/// a comment). Missing keys keep their defaults; unknown keys, malformed
/// lines and out-of-range values are rejected with their line number.
ScenarioConfig parse_config(std::string_view text);

ScenarioConfig load_config_file(const std::filesystem::path& path);

/// Renders a config as parse_config input; parsing it back reproduces every
/// field exactly.
std::string format_config(const ScenarioConfig& config);

/// Writes `round,alive,dead,chs_elected,pkts_to_ch,pkts_to_bs,
/// energy_dissipated_j,energy_harvested_j` with one row per round, floats
/// at 9 significant digits, final line newline-terminated. Atomic
/// (temp file + rename).
void emit_trace_csv(const SimulationTrace& trace, const std::filesystem::path& path);

void emit_aggregate_csv(const AggregateTrace& aggregate, const std::filesystem::path& path);

struct RunRequest {
    std::filesystem::path config_path;
    std::optional<Protocol> protocol_override;
    std::vector<std::uint64_t> seeds;
    std::filesystem::path output_dir;
    std::vector<Protocol> compare_list;
    bool write_gnuplot = false;
    bool write_per_seed_traces = false;
};

struct VariantSummary {
    Protocol protocol = Protocol::Leach;
    AggregateSummary medians;
    double improvement_vs_leach_pct = 0.0;
};

struct CompareReport {
    std::vector<VariantSummary> variants;
    std::filesystem::path summary_csv;
};

/// Runs every (variant, seed) cell — cells may execute in parallel — then
/// writes one aggregated trace CSV per variant plus summary.csv. The
/// baseline for improvement percentages is always plain LEACH (run
/// implicitly when not requested).
CompareReport run_compare(const RunRequest& request);

/// Data-only plotting companion: a gnuplot script over the emitted CSVs.
void emit_gnuplot_script(const std::vector<Protocol>& variants,
                         const std::filesystem::path& path);

} // namespace leachsim
