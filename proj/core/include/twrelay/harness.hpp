#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "twrelay/metrics.hpp"
#include "twrelay/model.hpp"
#include "twrelay/relay_design.hpp"

namespace twrelay {

enum class SweepVar { snr_db, relay_antennas, pairs, streams };

std::string to_string(SweepVar var);
SweepVar sweep_var_from_string(const std::string& name);

/// One Monte-Carlo experiment: a base configuration, one swept variable,
/// and the relay modes to evaluate with common random numbers.
struct Scenario {
  std::string name = "scenario";
  SystemConfig base;
  SweepVar sweep_var = SweepVar::snr_db;
  std::vector<double> sweep_values;
  int realizations = 1000;
  std::vector<RelayMode> modes = {RelayMode::hybrid, RelayMode::full_rf};
};

/// Base config with the swept variable applied. Sweeping `pairs` re-derives
/// rf_chains = 2·pairs·user_antennas so the hybrid invariant keeps holding.
SystemConfig config_at(const Scenario& scenario, double value);

/// Throws ConfigError if any sweep point violates the config invariants.
void require_valid(const Scenario& scenario);

struct SweepRow {
  SweepVar var = SweepVar::snr_db;
  double value = 0.0;
  RelayMode mode = RelayMode::hybrid;
  double mean_sum_se = 0.0;
  double stderr_sum_se = 0.0;
  int n = 0;
  double convergence_rate = 0.0;
  double mean_leakage = 0.0;
  bool valid = true;  ///< false when a realization kept failing after resampling
};

struct SweepResult {
  Scenario scenario;
  std::vector<SweepRow> rows;  ///< sweep values × modes, in declaration order
};

/// Full pipeline for one channel realization: draw, design the relay chain,
/// run the coupled amplification solve, evaluate rates. Deterministic given
/// (cfg.seed, mode, realization_index).
SimulationResult run_realization(const SystemConfig& cfg, RelayMode mode,
                                 std::uint64_t realization_index);

/// Transmit-receive signal simulation with explicit symbol and noise draws;
/// measures self-interference and inter-pair residuals against the desired
/// signal power.
struct SignalPathReport {
  double desired_power = 0.0;       ///< summed over users and symbols
  double interference_power = 0.0;  ///< inter-pair residual, summed
  double max_self_residual = 0.0;   ///< worst per-user self-residual / desired ratio
  double max_interpair_residual = 0.0;
  double max_power_budget_error = 0.0;  ///< |E‖ỹ‖² − desired − noise| relative (noise on)
};

SignalPathReport signal_path_check(const SystemConfig& cfg, RelayMode mode,
                                   std::uint64_t realization_index, int symbols, bool noiseless,
                                   double symbol_scale = 1.0);

/// Runs every sweep point and mode over `realizations` channel draws.
/// Hybrid and full-RF evaluations at the same (seed, index) consume the
/// identical channels. Realizations run on `workers` threads (0 = all
/// hardware threads); aggregation is in index order, so the result is
/// bit-identical for any worker count. Realizations failing with a
/// degenerate-channel error are deterministically resampled up to 3 times.
SweepResult run_sweep(const Scenario& scenario, int workers = 0);

/// CSV serialization of a sweep (stable formatting; %.17g round-trips).
std::string render_csv(const SweepResult& result);
std::vector<SweepRow> parse_csv(const std::string& text);

/// Writes `<name>.csv` plus `<name>.manifest.json` holding the full
/// scenario, library version, config hash, and CSV hash. Returns the CSV
/// path. Throws IoError with path context on failure.
std::filesystem::path emit_results(const SweepResult& result, const std::filesystem::path& out_dir);

struct ReplayOutcome {
  bool matches = false;
  std::filesystem::path csv_path;
  std::uint64_t expected_hash = 0;
  std::uint64_t actual_hash = 0;
};

/// Re-executes the sweep recorded in a manifest and writes the CSV into
/// `out_dir`, reporting whether the bytes hash identically to the recorded
/// run.
ReplayOutcome replay_manifest(const std::filesystem::path& manifest_path,
                              const std::filesystem::path& out_dir, int workers = 0);

/// JSON (de)serialization for scenario files and manifests.
Scenario scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const Scenario& scenario);
Scenario load_scenario(const std::filesystem::path& path);

/// Applies a dotted-path override ("base.seed=7", "realizations=50",
/// "modes=hybrid", "sweep.values=0,10,20"). Throws ConfigError on unknown
/// keys or malformed values.
void apply_override(Scenario& scenario, const std::string& key, const std::string& value);

/// Built-in scenario presets (fig2..fig5 experiment grids and a small `ci`
/// smoke grid). A preset may expand to several scenarios.
std::vector<Scenario> preset_scenarios(const std::string& name);
std::vector<std::string> preset_names();

/// One named property check; `observed` against `bound` (pass when within).
struct InvariantCheck {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double bound = 0.0;
};

/// Design-invariant property suite over `realizations` random channel
/// draws of `cfg` (constant modulus, nulling, certificate optimality,
/// whitening, water-filling KKT, power accounting, signal residuals,
/// determinism).
std::vector<InvariantCheck> run_invariant_checks(const SystemConfig& cfg, int realizations);

int resolve_workers(int requested);

}  // namespace twrelay
