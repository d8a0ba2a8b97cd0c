#include "parking/fitting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>

#include "parking/format.hpp"

namespace parking {

namespace {

constexpr int kMaxStepHalvings = 60;

void require_observations(std::span<const Observation> observations) {
  if (observations.empty()) throw std::invalid_argument("no observations");
  for (const auto& o : observations) {
    if (!std::isfinite(o.energy) || o.energy < 0.0) {
      throw std::invalid_argument("observation energy must be finite and nonnegative");
    }
    if (!std::isfinite(o.fill_fraction) || o.fill_fraction < 0.0 || o.fill_fraction > 1.0) {
      throw std::invalid_argument("observation fill fraction outside [0,1]");
    }
  }
}

double loss_unchecked(double temperature, std::span<const Observation> obs, double kb) {
  const EntropyParams params{temperature, kb};
  double sum = 0.0;
  for (const auto& o : obs) {
    const double r = spot_occupancy_prob(o.energy, params) - o.fill_fraction;
    sum += r * r;
  }
  return sum / static_cast<double>(obs.size());
}

double gradient_unchecked(double temperature, std::span<const Observation> obs, double kb) {
  const EntropyParams params{temperature, kb};
  double sum = 0.0;
  for (const auto& o : obs) {
    const double r = spot_occupancy_prob(o.energy, params) - o.fill_fraction;
    sum += 2.0 * r * spot_occupancy_prob_dT(o.energy, params);
  }
  return sum / static_cast<double>(obs.size());
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_real(std::string_view field, int line_no) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw SurveyError("line " + std::to_string(line_no) + ": invalid number '" +
                      std::string(field) + "'");
  }
  return value;
}

}  // namespace

void FitConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning_rate must be positive");
  }
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");
  if (!(gradient_tolerance > 0.0)) throw std::invalid_argument("gradient_tolerance must be positive");
  if (!std::isfinite(initial_temperature) || initial_temperature < kMinTemperature ||
      initial_temperature > kMaxTemperature) {
    throw std::invalid_argument("initial_temperature outside the temperature domain");
  }
}

std::vector<Observation> survey_to_observations(const LotSurvey& survey) {
  if (survey.spots.size() < 2) throw SurveyError("survey needs at least 2 spots");
  std::vector<double> dist;
  dist.reserve(survey.spots.size());
  for (const auto& s : survey.spots) {
    dist.push_back(std::hypot(s.x - survey.poi.x, s.y - survey.poi.y));
  }
  const double max_dist = *std::max_element(dist.begin(), dist.end());
  if (!(max_dist > 0.0) || !std::isfinite(max_dist)) throw SurveyError("degenerate geometry");

  std::vector<Observation> out;
  out.reserve(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double r = dist[i] / max_dist;
    out.push_back({r * r, survey.spots[i].occupied ? 1.0 : 0.0});
  }
  return out;
}

double mse_loss(double temperature, std::span<const Observation> observations,
                double boltzmann_constant) {
  require_observations(observations);
  EntropyParams{temperature, boltzmann_constant}.validate();
  return loss_unchecked(temperature, observations, boltzmann_constant);
}

double mse_loss_gradient(double temperature, std::span<const Observation> observations,
                         double boltzmann_constant) {
  require_observations(observations);
  EntropyParams{temperature, boltzmann_constant}.validate();
  return gradient_unchecked(temperature, observations, boltzmann_constant);
}

FitResult fit_temperature(std::span<const Observation> observations, const FitConfig& config) {
  require_observations(observations);
  config.validate();

  // Sorted copy: floating-point sums then do not depend on input order.
  std::vector<Observation> obs(observations.begin(), observations.end());
  std::sort(obs.begin(), obs.end(), [](const Observation& a, const Observation& b) {
    return a.energy != b.energy ? a.energy < b.energy : a.fill_fraction < b.fill_fraction;
  });
  const double kb = kBoltzmann;

  double t = config.initial_temperature;
  double loss = loss_unchecked(t, obs, kb);
  if (!std::isfinite(loss)) throw FitDiverged();

  int it = 0;
  for (; it < config.max_iterations; ++it) {
    const double g = gradient_unchecked(t, obs, kb);
    if (!std::isfinite(g)) throw FitDiverged();
    if (std::abs(g) <= config.gradient_tolerance) break;
    if ((t == kMaxTemperature && g < 0.0) || (t == kMinTemperature && g > 0.0)) break;

    double step = config.learning_rate;
    bool moved = false;
    for (int h = 0; h < kMaxStepHalvings; ++h, step *= 0.5) {
      const double candidate = clamp_temperature(t - step * g);
      if (candidate == t) break;
      const double candidate_loss = loss_unchecked(candidate, obs, kb);
      if (!std::isfinite(candidate_loss)) throw FitDiverged();
      if (candidate_loss <= loss) {
        t = candidate;
        loss = candidate_loss;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }

  for (double bound : {kMinTemperature, kMaxTemperature}) {
    const double bound_loss = loss_unchecked(bound, obs, kb);
    if (bound_loss < loss) {
      t = bound;
      loss = bound_loss;
    }
  }

  return FitResult{t, loss, it, obs.size(), t == kMinTemperature || t == kMaxTemperature};
}

std::vector<SampleEfficiencyPoint> sample_efficiency_curve(std::span<const Observation> observations,
                                                           std::span<const int> sample_sizes,
                                                           int trials_per_size, std::uint64_t seed,
                                                           const FitConfig& config) {
  require_observations(observations);
  if (trials_per_size < 1) throw std::invalid_argument("trials_per_size must be >= 1");
  const auto n_total = static_cast<int>(observations.size());
  for (int size : sample_sizes) {
    if (size < 1 || size > n_total) {
      throw std::invalid_argument("sample size " + std::to_string(size) + " outside [1, " +
                                  std::to_string(n_total) + "]");
    }
  }

  std::vector<SampleEfficiencyPoint> curve;
  std::vector<std::size_t> index(observations.size());
  std::vector<Observation> subset;
  std::vector<double> mses(static_cast<std::size_t>(trials_per_size));
  for (int size : sample_sizes) {
    for (int trial = 0; trial < trials_per_size; ++trial) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(size), static_cast<std::uint32_t>(trial)};
      std::mt19937_64 rng(seq);
      std::iota(index.begin(), index.end(), std::size_t{0});
      std::shuffle(index.begin(), index.end(), rng);
      subset.clear();
      for (int k = 0; k < size; ++k) subset.push_back(observations[index[static_cast<std::size_t>(k)]]);
      const auto fit = fit_temperature(subset, config);
      mses[static_cast<std::size_t>(trial)] = mse_loss(fit.temperature, observations);
    }
    const double mean = std::accumulate(mses.begin(), mses.end(), 0.0) / trials_per_size;
    double var = 0.0;
    for (double m : mses) var += (m - mean) * (m - mean);
    curve.push_back({size, mean, std::sqrt(var / trials_per_size)});
  }
  return curve;
}

std::vector<SampleEfficiencyPoint> sample_efficiency_curve(const LotSurvey& survey,
                                                           std::span<const int> sample_sizes,
                                                           int trials_per_size, std::uint64_t seed,
                                                           const FitConfig& config) {
  const auto obs = survey_to_observations(survey);
  return sample_efficiency_curve(obs, sample_sizes, trials_per_size, seed, config);
}

LotSurvey parse_survey_csv(std::istream& in) {
  LotSurvey survey;
  bool have_poi = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = split_fields(text);
    if (!have_poi) {
      if (fields.size() != 3 || fields[0] != "poi") {
        throw SurveyError("line " + std::to_string(line_no) + ": expected 'poi,<x>,<y>'");
      }
      survey.poi = {parse_real(fields[1], line_no), parse_real(fields[2], line_no)};
      have_poi = true;
      continue;
    }
    if (fields.size() != 3) {
      throw SurveyError("line " + std::to_string(line_no) + ": expected '<x>,<y>,<0|1>'");
    }
    if (fields[2] != "0" && fields[2] != "1") {
      throw SurveyError("line " + std::to_string(line_no) + ": occupied flag must be 0 or 1");
    }
    survey.spots.push_back(
        {parse_real(fields[0], line_no), parse_real(fields[1], line_no), fields[2] == "1"});
  }
  if (!have_poi) throw SurveyError("survey has no poi record");
  if (survey.spots.size() < 2) throw SurveyError("survey needs at least 2 spots");
  return survey;
}

LotSurvey read_survey_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SurveyError("cannot open survey file " + path.string());
  return parse_survey_csv(in);
}

void write_survey_csv(std::ostream& out, const LotSurvey& survey) {
  out << "poi," << format_real(survey.poi.x) << ',' << format_real(survey.poi.y) << '\n';
  for (const auto& s : survey.spots) {
    out << format_real(s.x) << ',' << format_real(s.y) << ',' << (s.occupied ? 1 : 0) << '\n';
  }
}

LotSurvey make_synthetic_survey(int num_spots, double temperature, std::uint64_t seed) {
  if (num_spots < 2) throw std::invalid_argument("num_spots must be >= 2");
  const EntropyParams params{temperature, kBoltzmann};
  params.validate();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LotSurvey survey;
  survey.poi = {0.5, 0.0};
  survey.spots.reserve(static_cast<std::size_t>(num_spots));
  for (int i = 0; i < num_spots; ++i) {
    const double x = unit(rng);
    const double y = unit(rng);
    survey.spots.push_back({x, y, false});
  }
  const auto obs = survey_to_observations(survey);
  for (std::size_t i = 0; i < obs.size(); ++i) {
    survey.spots[i].occupied = unit(rng) < spot_occupancy_prob(obs[i].energy, params);
  }
  return survey;
}

}  // namespace parking
