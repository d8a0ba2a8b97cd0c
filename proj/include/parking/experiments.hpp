#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "parking/fitting.hpp"
#include "parking/garage.hpp"
#include "parking/simulation.hpp"

namespace parking {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full description of one experiment. Field names double as JSON keys and
/// CLI flag names.
struct ScenarioConfig {
  int num_levels = 10;
  int capacity_per_level = 30;
  double temperature = 0.5;
  int num_cars = 30;
  TimeConstants times;
  FitConfig fit;
  std::vector<PolicyKind> policies{std::begin(kAllPolicies), std::end(kAllPolicies)};
  std::uint64_t seed = 0;
  double departure_prob = 0.0;
  std::filesystem::path output_dir = "out";
  std::optional<double> tipp_prior_temperature;
  bool tipp_condition_on_full_floors = false;

  /// Throws ConfigError describing the first invalid field.
  void validate() const;
};

/// Reads a config document. Missing keys keep their defaults; unknown keys
/// are rejected. `times` is {t1, t2, t3}.
ScenarioConfig scenario_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ScenarioConfig& config);
ScenarioConfig load_scenario(const std::filesystem::path& path);

RunConfig to_run_config(const ScenarioConfig& config, double temperature);

struct PolicySummary {
  PolicyKind policy = PolicyKind::Benchmark;
  double total_time = 0.0;
  double mean_time = 0.0;
  int failures = 0;
};

struct PolicyRun {
  PolicyKind policy = PolicyKind::Benchmark;
  std::vector<ArrivalOutcome> outcomes;
  PolicySummary summary;
};

/// Runs every requested policy on a freshly initialized garage.
std::vector<PolicyRun> simulate(const ScenarioConfig& config);
std::vector<PolicyRun> simulate_at(const ScenarioConfig& config, double temperature);

PolicySummary summarize(PolicyKind policy, const std::vector<ArrivalOutcome>& outcomes);

/// car_index,policy,floors_scanned,parked_floor,spot_index,elapsed_seconds,
/// cumulative_seconds,temperature_estimate. Floors are ';'-joined; absent
/// values are empty fields.
void write_outcome_csv(std::ostream& out, const std::vector<ArrivalOutcome>& outcomes);
nlohmann::json summary_json(const ScenarioConfig& config, const std::vector<PolicyRun>& runs);

/// Writes <policy>_percar.csv and summary.json into config.output_dir.
void write_simulation(const ScenarioConfig& config, const std::vector<PolicyRun>& runs);

struct SweepRow {
  double temperature = 0.0;
  PolicyKind policy = PolicyKind::Benchmark;
  double cumulative_seconds = 0.0;
};

std::vector<SweepRow> sweep(const ScenarioConfig& config, const std::vector<double>& temperatures);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

nlohmann::json fit_report_json(const FitResult& result);

void write_sample_curve_csv(std::ostream& out, const std::vector<SampleEfficiencyPoint>& curve);

/// One row per level, level 1 first: '#' occupied, '.' free.
std::string render_text(const GarageSnapshot& snapshot);
/// Binary PPM (P6): red occupied, white free, each spot a cell_px square
/// framed by a grey grid line.
void write_ppm(std::ostream& out, const GarageSnapshot& snapshot, int cell_px = 12);

/// Opens a file for writing, creating parent directories. Throws
/// ConfigError if that fails (the output directory is a config field).
std::ofstream open_output(const std::filesystem::path& path, bool binary = false);

}  // namespace parking
