// Command-line front end: simulate, sweep, fit, sample-curve, render,
// synth-survey.
//
// Exit codes: 0 success, 2 config/usage error, 3 simulation failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "parking/experiments.hpp"
#include "parking/fitting.hpp"
#include "parking/garage.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSimulation = 3;

struct Overrides {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;

  std::optional<int> num_levels;
  std::optional<int> capacity_per_level;
  std::optional<double> temperature;
  std::optional<int> num_cars;
  std::optional<double> t1, t2, t3;
  std::optional<double> learning_rate;
  std::optional<int> max_iterations;
  std::optional<double> gradient_tolerance;
  std::optional<double> initial_temperature;
  std::optional<std::vector<std::string>> policies;
  std::optional<double> departure_prob;
  std::optional<std::string> output_dir;
  std::optional<double> tipp_prior_temperature;
  std::optional<bool> tipp_condition_on_full_floors;
};

void add_fit_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--learning_rate", o.learning_rate, "Gradient step size");
  cmd->add_option("--max_iterations", o.max_iterations, "Gradient descent iteration cap");
  cmd->add_option("--gradient_tolerance", o.gradient_tolerance, "Stop when |dL/dT| falls below this");
  cmd->add_option("--initial_temperature", o.initial_temperature, "Starting temperature");
}

void add_scenario_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--num_levels", o.num_levels, "Garage levels");
  cmd->add_option("--capacity_per_level", o.capacity_per_level, "Spots per level");
  cmd->add_option("--temperature", o.temperature, "Fill temperature");
  cmd->add_option("--num_cars", o.num_cars, "Cars inserted per policy");
  cmd->add_option("--t1", o.t1, "Floor scan time (s)");
  cmd->add_option("--t2", o.t2, "Walk-up time per floor (s)");
  cmd->add_option("--t3", o.t3, "Drive-down time per floor (s)");
  cmd->add_option("--policies", o.policies, "Subset of benchmark,inverse,optimal,tipp")->delimiter(',');
  cmd->add_option("--departure_prob", o.departure_prob, "Per-spot departure probability after each car");
  cmd->add_option("--output_dir", o.output_dir, "Output directory (same as --out)");
  cmd->add_option("--tipp_prior_temperature", o.tipp_prior_temperature, "Initial TIPP estimate");
  cmd->add_option("--tipp_condition_on_full_floors", o.tipp_condition_on_full_floors,
                  "Treat floors last seen full as unavailable (true/false)");
  add_fit_flags(cmd, o);
}

parking::ScenarioConfig resolve(const Overrides& o) {
  parking::ScenarioConfig c = o.config ? parking::load_scenario(*o.config) : parking::ScenarioConfig{};
  if (o.num_levels) c.num_levels = *o.num_levels;
  if (o.capacity_per_level) c.capacity_per_level = *o.capacity_per_level;
  if (o.temperature) c.temperature = *o.temperature;
  if (o.num_cars) c.num_cars = *o.num_cars;
  if (o.t1) c.times.scan = *o.t1;
  if (o.t2) c.times.walk_up = *o.t2;
  if (o.t3) c.times.drive_down = *o.t3;
  if (o.learning_rate) c.fit.learning_rate = *o.learning_rate;
  if (o.max_iterations) c.fit.max_iterations = *o.max_iterations;
  if (o.gradient_tolerance) c.fit.gradient_tolerance = *o.gradient_tolerance;
  if (o.initial_temperature) c.fit.initial_temperature = *o.initial_temperature;
  if (o.policies) {
    c.policies.clear();
    for (const auto& name : *o.policies) {
      try {
        c.policies.push_back(parking::parse_policy(name));
      } catch (const std::invalid_argument& e) {
        throw parking::ConfigError(e.what());
      }
    }
  }
  if (o.departure_prob) c.departure_prob = *o.departure_prob;
  if (o.output_dir) c.output_dir = *o.output_dir;
  if (o.out) c.output_dir = *o.out;
  if (o.seed) c.seed = *o.seed;
  if (o.tipp_prior_temperature) c.tipp_prior_temperature = *o.tipp_prior_temperature;
  if (o.tipp_condition_on_full_floors) c.tipp_condition_on_full_floors = *o.tipp_condition_on_full_floors;
  c.validate();
  return c;
}

int total_failures(const std::vector<parking::PolicyRun>& runs) {
  int failures = 0;
  for (const auto& r : runs) failures += r.summary.failures;
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-model parking experiments"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--config", o.config, "Scenario JSON file")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--out", o.out, "Output directory");

  auto* simulate = app.add_subcommand("simulate", "Run each policy on a freshly initialized garage");
  add_scenario_flags(simulate, o);

  std::vector<double> temperatures;
  auto* sweep = app.add_subcommand("sweep", "Cumulative time per policy across temperatures");
  add_scenario_flags(sweep, o);
  sweep->add_option("--temperatures", temperatures, "Comma-separated temperatures")
      ->delimiter(',')
      ->required();

  std::string survey_path;
  auto* fit = app.add_subcommand("fit", "Fit the lot temperature to a survey CSV");
  fit->add_option("survey", survey_path, "Survey CSV")->required();
  add_fit_flags(fit, o);

  std::vector<int> sizes;
  int trials = 50;
  auto* curve = app.add_subcommand("sample-curve", "Full-lot MSE against fitting sample size");
  curve->add_option("survey", survey_path, "Survey CSV")->required();
  curve->add_option("--sizes", sizes, "Comma-separated sample sizes (default 5,10,20,50,all)")
      ->delimiter(',');
  curve->add_option("--trials", trials, "Random subsets per size");
  add_fit_flags(curve, o);

  auto* render = app.add_subcommand("render", "Draw the initialized garage (garage.txt, garage.ppm)");
  add_scenario_flags(render, o);

  int spots = 105;
  double synth_temperature = 0.5;
  auto* synth = app.add_subcommand("synth-survey", "Write a synthetic survey CSV to stdout");
  synth->add_option("--spots", spots, "Number of spots");
  synth->add_option("--temperature", synth_temperature, "Generating temperature");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) {
      const auto config = resolve(o);
      const auto runs = parking::simulate(config);
      parking::write_simulation(config, runs);
      for (const auto& r : runs) {
        std::cout << parking::to_string(r.policy) << ": total " << r.summary.total_time << " s, mean "
                  << r.summary.mean_time << " s, failures " << r.summary.failures << '\n';
      }
      return total_failures(runs) > 0 ? kExitSimulation : kExitOk;
    }
    if (*sweep) {
      const auto config = resolve(o);
      const auto rows = parking::sweep(config, temperatures);
      auto out = parking::open_output(config.output_dir / "sweep.csv");
      parking::write_sweep_csv(out, rows);
      parking::write_sweep_csv(std::cout, rows);
      return kExitOk;
    }
    if (*fit || *curve) {
      const auto config = resolve(o);
      const auto survey = parking::read_survey_csv(survey_path);
      if (*fit) {
        const auto observations = parking::survey_to_observations(survey);
        const auto result = parking::fit_temperature(observations, config.fit);
        const auto report = parking::fit_report_json(result).dump(2);
        std::cout << report << '\n';
        if (o.out) parking::open_output(config.output_dir / "fit_report.json") << report << '\n';
      } else {
        if (sizes.empty()) {
          const auto n = static_cast<int>(survey.spots.size());
          for (int s : {5, 10, 20, 50}) {
            if (s < n) sizes.push_back(s);
          }
          sizes.push_back(n);
        }
        const auto points = parking::sample_efficiency_curve(survey, sizes, trials, config.seed, config.fit);
        parking::write_sample_curve_csv(std::cout, points);
        if (o.out) {
          auto out = parking::open_output(config.output_dir / "sample_curve.csv");
          parking::write_sample_curve_csv(out, points);
        }
      }
      return kExitOk;
    }
    if (*render) {
      const auto config = resolve(o);
      const auto garage = parking::init_from_temperature(config.num_levels, config.capacity_per_level,
                                                         config.temperature, config.seed);
      const auto snap = garage.snapshot();
      const auto text = parking::render_text(snap);
      parking::open_output(config.output_dir / "garage.txt") << text;
      auto ppm = parking::open_output(config.output_dir / "garage.ppm", true);
      parking::write_ppm(ppm, snap);
      std::cout << text;
      return kExitOk;
    }
    if (*synth) {
      const auto survey = parking::make_synthetic_survey(spots, synth_temperature, o.seed.value_or(0));
      std::cout << "# synthetic lot: " << spots << " spots, temperature " << synth_temperature << '\n';
      parking::write_survey_csv(std::cout, survey);
      return kExitOk;
    }
  } catch (const parking::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const parking::SurveyError& e) {
    std::cerr << "survey error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const parking::GarageExhausted& e) {
    std::cerr << "simulation failure: " << e.what() << '\n';
    return kExitSimulation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSimulation;
  }
  return kExitUsage;
}
