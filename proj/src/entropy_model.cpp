#include "parking/entropy_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace parking {

namespace {

void require_probability(double q, const char* what) {
  if (!std::isfinite(q) || q < 0.0 || q > 1.0) {
    throw std::invalid_argument(std::string(what) + ": probability outside [0,1]");
  }
}

}  // namespace

void EntropyParams::validate() const {
  if (!std::isfinite(temperature) || temperature < kMinTemperature ||
      temperature > kMaxTemperature) {
    throw std::invalid_argument("temperature outside [" + std::to_string(kMinTemperature) +
                                ", " + std::to_string(kMaxTemperature) + "]");
  }
  if (!std::isfinite(boltzmann_constant) || boltzmann_constant <= 0.0) {
    throw std::invalid_argument("boltzmann constant must be positive");
  }
}

double clamp_temperature(double temperature) {
  return std::clamp(temperature, kMinTemperature, kMaxTemperature);
}

std::vector<double> energies(const EnergySpec& spec) {
  if (const auto* levels = std::get_if<PerLevelEnergy>(&spec)) {
    if (levels->num_levels < 1) throw std::invalid_argument("num_levels must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(levels->num_levels));
    for (int i = 1; i <= levels->num_levels; ++i) out.push_back(level_energy(i, levels->num_levels));
    return out;
  }
  const auto& spots = std::get<PerSpotEnergy>(spec);
  bool has_unit = false;
  std::vector<double> out;
  out.reserve(spots.normalized_distances.size());
  for (double d : spots.normalized_distances) {
    if (!std::isfinite(d) || d < 0.0 || d > 1.0) {
      throw std::invalid_argument("normalized distance outside [0,1]");
    }
    has_unit = has_unit || d == 1.0;
    out.push_back(d * d);
  }
  if (!has_unit) throw std::invalid_argument("normalized distances must reach 1");
  return out;
}

double spot_occupancy_prob(double energy, const EntropyParams& params) {
  if (!std::isfinite(energy) || energy < 0.0) {
    throw std::invalid_argument("energy must be finite and nonnegative");
  }
  params.validate();
  const double t = std::exp(-energy / (params.boltzmann_constant * params.temperature));
  return 2.0 * t / (1.0 + t);
}

double spot_occupancy_prob_dT(double energy, const EntropyParams& params) {
  const double q = spot_occupancy_prob(energy, params);
  const double kt = params.boltzmann_constant * params.temperature;
  return q * (1.0 - 0.5 * q) * energy / (kt * params.temperature);
}

double level_energy(int level_index, int num_levels) {
  if (num_levels < 1 || level_index < 1 || level_index > num_levels) {
    throw std::out_of_range("level index " + std::to_string(level_index) + " outside [1, " +
                            std::to_string(num_levels) + "]");
  }
  const double r = static_cast<double>(level_index) / static_cast<double>(num_levels);
  return r * r;
}

int level_fill_count(double occupancy_prob, int capacity) {
  require_probability(occupancy_prob, "level_fill_count");
  if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
  const double filled = std::floor(occupancy_prob * capacity + 0.5);
  return std::clamp(static_cast<int>(filled), 0, capacity);
}

double level_availability_prob(double occupancy_prob, int capacity) {
  require_probability(occupancy_prob, "level_availability_prob");
  if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
  return 1.0 - std::pow(occupancy_prob, capacity);
}

}  // namespace parking
