#include "parking/tipp.hpp"

#include <cmath>
#include <string>

#include "parking/entropy_model.hpp"

namespace parking {

void GarageShape::validate() const {
  if (num_levels < 1) throw std::invalid_argument("num_levels must be >= 1");
  if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
}

TippState observe_floor(const TippState& state, int floor, double fill_fraction, int num_levels) {
  if (floor < 1 || floor > num_levels) {
    throw std::out_of_range("observed floor " + std::to_string(floor) + " outside [1, " +
                            std::to_string(num_levels) + "]");
  }
  if (!std::isfinite(fill_fraction) || fill_fraction < 0.0 || fill_fraction > 1.0) {
    throw std::invalid_argument("fill fraction outside [0,1]");
  }
  TippState next = state;
  next.floor_observations[floor] = fill_fraction;
  return next;
}

std::vector<double> model_availability(double temperature, const GarageShape& shape) {
  shape.validate();
  const EntropyParams params{temperature, kBoltzmann};
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(shape.num_levels));
  for (int k = 1; k <= shape.num_levels; ++k) {
    const double q = spot_occupancy_prob(level_energy(k, shape.num_levels), params);
    p.push_back(level_availability_prob(q, shape.capacity));
  }
  return p;
}

TippDecision tipp_decide(const TippState& state, const GarageShape& shape, const TimeConstants& times,
                         const FitConfig& fit, const TippOptions& options) {
  shape.validate();
  if (state.current_floor == shape.num_levels) throw GarageExhausted();
  if (state.current_floor < 0 || state.current_floor > shape.num_levels) {
    throw std::out_of_range("current floor outside [0, N]");
  }

  double temperature = state.temperature_estimate;
  if (!state.floor_observations.empty()) {
    std::vector<Observation> obs;
    obs.reserve(state.floor_observations.size());
    for (const auto& [floor, fill] : state.floor_observations) {
      obs.push_back({level_energy(floor, shape.num_levels), fill});
    }
    FitConfig warm = fit;
    warm.initial_temperature = clamp_temperature(temperature);
    temperature = fit_temperature(obs, warm).temperature;
  }

  auto p = model_availability(temperature, shape);
  if (options.condition_on_full_floors) {
    for (const auto& [floor, fill] : state.floor_observations) {
      if (fill >= 1.0) p[static_cast<std::size_t>(floor - 1)] = 0.0;
    }
  }
  const auto plan = solve_dp(p, times);
  return TippDecision{plan.action(state.current_floor), temperature, std::move(p)};
}

}  // namespace parking
