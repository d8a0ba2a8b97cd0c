#include "parking/experiments.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "parking/format.hpp"

namespace parking {

using nlohmann::json;

namespace {

const std::set<std::string> kScenarioKeys = {
    "num_levels", "capacity_per_level", "temperature", "num_cars",
    "times", "fit", "policies", "seed",
    "departure_prob", "output_dir", "tipp_prior_temperature", "tipp_condition_on_full_floors"};

template <typename T>
void read_field(const json& doc, const char* key, T& target) {
  if (!doc.contains(key)) return;
  try {
    target = doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

void reject_unknown(const json& doc, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown config field '" + where + key + "'");
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  try {
    GarageShape{num_levels, capacity_per_level}.validate();
    EntropyParams{temperature, kBoltzmann}.validate();
    times.validate();
    fit.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (num_cars < 0) throw ConfigError("num_cars must be >= 0");
  if (policies.empty()) throw ConfigError("policies must not be empty");
  if (!std::isfinite(departure_prob) || departure_prob < 0.0 || departure_prob > 1.0) {
    throw ConfigError("departure_prob outside [0,1]");
  }
  if (tipp_prior_temperature &&
      (!std::isfinite(*tipp_prior_temperature) || *tipp_prior_temperature < kMinTemperature ||
       *tipp_prior_temperature > kMaxTemperature)) {
    throw ConfigError("tipp_prior_temperature outside the temperature domain");
  }
}

ScenarioConfig scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc, kScenarioKeys, "");

  ScenarioConfig config;
  read_field(doc, "num_levels", config.num_levels);
  read_field(doc, "capacity_per_level", config.capacity_per_level);
  read_field(doc, "temperature", config.temperature);
  read_field(doc, "num_cars", config.num_cars);
  read_field(doc, "seed", config.seed);
  read_field(doc, "departure_prob", config.departure_prob);
  read_field(doc, "tipp_condition_on_full_floors", config.tipp_condition_on_full_floors);
  if (doc.contains("output_dir")) {
    std::string dir;
    read_field(doc, "output_dir", dir);
    config.output_dir = dir;
  }
  if (doc.contains("tipp_prior_temperature") && !doc.at("tipp_prior_temperature").is_null()) {
    double prior = 0.0;
    read_field(doc, "tipp_prior_temperature", prior);
    config.tipp_prior_temperature = prior;
  }
  if (doc.contains("times")) {
    const auto& t = doc.at("times");
    if (!t.is_object()) throw ConfigError("config field 'times' must be an object");
    reject_unknown(t, {"t1", "t2", "t3"}, "times.");
    read_field(t, "t1", config.times.scan);
    read_field(t, "t2", config.times.walk_up);
    read_field(t, "t3", config.times.drive_down);
  }
  if (doc.contains("fit")) {
    const auto& f = doc.at("fit");
    if (!f.is_object()) throw ConfigError("config field 'fit' must be an object");
    reject_unknown(f, {"learning_rate", "max_iterations", "gradient_tolerance", "initial_temperature"},
                   "fit.");
    read_field(f, "learning_rate", config.fit.learning_rate);
    read_field(f, "max_iterations", config.fit.max_iterations);
    read_field(f, "gradient_tolerance", config.fit.gradient_tolerance);
    read_field(f, "initial_temperature", config.fit.initial_temperature);
  }
  if (doc.contains("policies")) {
    std::vector<std::string> names;
    read_field(doc, "policies", names);
    config.policies.clear();
    for (const auto& name : names) {
      try {
        config.policies.push_back(parse_policy(name));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }
  config.validate();
  return config;
}

json to_json(const ScenarioConfig& config) {
  json policies = json::array();
  for (auto p : config.policies) policies.push_back(std::string(to_string(p)));
  return json{
      {"num_levels", config.num_levels},
      {"capacity_per_level", config.capacity_per_level},
      {"temperature", config.temperature},
      {"num_cars", config.num_cars},
      {"times", {{"t1", config.times.scan}, {"t2", config.times.walk_up}, {"t3", config.times.drive_down}}},
      {"fit",
       {{"learning_rate", config.fit.learning_rate},
        {"max_iterations", config.fit.max_iterations},
        {"gradient_tolerance", config.fit.gradient_tolerance},
        {"initial_temperature", config.fit.initial_temperature}}},
      {"policies", policies},
      {"seed", config.seed},
      {"departure_prob", config.departure_prob},
      {"output_dir", config.output_dir.string()},
      {"tipp_prior_temperature",
       config.tipp_prior_temperature ? json(*config.tipp_prior_temperature) : json(nullptr)},
      {"tipp_condition_on_full_floors", config.tipp_condition_on_full_floors},
  };
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return scenario_from_json(doc);
}

RunConfig to_run_config(const ScenarioConfig& config, double temperature) {
  RunConfig run;
  run.num_levels = config.num_levels;
  run.capacity_per_level = config.capacity_per_level;
  run.temperature = temperature;
  run.num_cars = config.num_cars;
  run.seed = config.seed;
  run.departure_prob = config.departure_prob;
  run.tipp_prior_temperature = config.tipp_prior_temperature;
  run.context.times = config.times;
  run.context.fit = config.fit;
  run.context.tipp.condition_on_full_floors = config.tipp_condition_on_full_floors;
  return run;
}

PolicySummary summarize(PolicyKind policy, const std::vector<ArrivalOutcome>& outcomes) {
  PolicySummary s;
  s.policy = policy;
  for (const auto& o : outcomes) {
    s.total_time += o.elapsed_seconds;
    if (!o.parked()) ++s.failures;
  }
  if (!outcomes.empty()) s.mean_time = s.total_time / static_cast<double>(outcomes.size());
  return s;
}

std::vector<PolicyRun> simulate_at(const ScenarioConfig& config, double temperature) {
  ScenarioConfig at = config;
  at.temperature = temperature;
  at.validate();
  const RunConfig run = to_run_config(at, temperature);
  std::vector<PolicyRun> runs;
  for (auto policy : at.policies) {
    auto outcomes = run_policy(run, policy);
    auto summary = summarize(policy, outcomes);
    runs.push_back({policy, std::move(outcomes), summary});
  }
  return runs;
}

std::vector<PolicyRun> simulate(const ScenarioConfig& config) {
  return simulate_at(config, config.temperature);
}

void write_outcome_csv(std::ostream& out, const std::vector<ArrivalOutcome>& outcomes) {
  out << "car_index,policy,floors_scanned,parked_floor,spot_index,elapsed_seconds,"
         "cumulative_seconds,temperature_estimate\n";
  double cumulative = 0.0;
  for (const auto& o : outcomes) {
    cumulative += o.elapsed_seconds;
    out << o.car_index << ',' << to_string(o.policy) << ',';
    for (std::size_t i = 0; i < o.floors_scanned.size(); ++i) {
      if (i) out << ';';
      out << o.floors_scanned[i];
    }
    out << ',';
    if (o.parked_floor) out << *o.parked_floor;
    out << ',';
    if (o.spot_index) out << *o.spot_index;
    out << ',' << format_real(o.elapsed_seconds) << ',' << format_real(cumulative) << ',';
    if (o.temperature_estimate_after) out << format_real(*o.temperature_estimate_after);
    out << '\n';
  }
}

json summary_json(const ScenarioConfig& config, const std::vector<PolicyRun>& runs) {
  json policies = json::array();
  for (const auto& r : runs) {
    policies.push_back({{"policy", std::string(to_string(r.policy))},
                        {"total_time", r.summary.total_time},
                        {"mean_time", r.summary.mean_time},
                        {"failures", r.summary.failures}});
  }
  return json{{"config", to_json(config)}, {"policies", policies}};
}

std::ofstream open_output(const std::filesystem::path& path, bool binary) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

void write_simulation(const ScenarioConfig& config, const std::vector<PolicyRun>& runs) {
  for (const auto& r : runs) {
    auto out = open_output(config.output_dir / (std::string(to_string(r.policy)) + "_percar.csv"));
    write_outcome_csv(out, r.outcomes);
  }
  auto out = open_output(config.output_dir / "summary.json");
  out << summary_json(config, runs).dump(2) << '\n';
}

std::vector<SweepRow> sweep(const ScenarioConfig& config, const std::vector<double>& temperatures) {
  if (temperatures.empty()) throw ConfigError("sweep needs at least one temperature");
  std::vector<SweepRow> rows;
  for (double t : temperatures) {
    for (const auto& r : simulate_at(config, t)) rows.push_back({t, r.policy, r.summary.total_time});
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "temperature,policy,cumulative_seconds\n";
  for (const auto& r : rows) {
    out << format_real(r.temperature) << ',' << to_string(r.policy) << ','
        << format_real(r.cumulative_seconds) << '\n';
  }
}

json fit_report_json(const FitResult& result) {
  return json{{"temperature", result.temperature},
              {"final_loss", result.final_loss},
              {"iterations", result.iterations},
              {"n_observations", result.n_observations},
              {"clamped", result.clamped}};
}

void write_sample_curve_csv(std::ostream& out, const std::vector<SampleEfficiencyPoint>& curve) {
  out << "sample_size,mean_mse,std_mse\n";
  for (const auto& p : curve) {
    out << p.sample_size << ',' << format_real(p.mean_full_lot_mse) << ','
        << format_real(p.std_full_lot_mse) << '\n';
  }
}

std::string render_text(const GarageSnapshot& snapshot) {
  std::string text;
  for (const auto& row : snapshot.occupancy) {
    for (bool occupied : row) text.push_back(occupied ? '#' : '.');
    text.push_back('\n');
  }
  return text;
}

void write_ppm(std::ostream& out, const GarageSnapshot& snapshot, int cell_px) {
  if (cell_px < 3) throw std::invalid_argument("cell_px must be >= 3");
  const int width = snapshot.capacity * cell_px + 1;
  const int height = snapshot.num_levels * cell_px + 1;
  out << "P6\n" << width << ' ' << height << "\n255\n";
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      unsigned char rgb[3] = {160, 160, 160};
      if (y % cell_px != 0 && x % cell_px != 0) {
        const auto level = static_cast<std::size_t>(y / cell_px);
        const auto spot = static_cast<std::size_t>(x / cell_px);
        const bool occupied = snapshot.occupancy[level][spot];
        rgb[0] = 255;
        rgb[1] = occupied ? 0 : 255;
        rgb[2] = occupied ? 0 : 255;
      }
      out.write(reinterpret_cast<const char*>(rgb), 3);
    }
  }
}

}  // namespace parking
