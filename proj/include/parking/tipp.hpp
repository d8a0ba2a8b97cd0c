#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "parking/dp.hpp"
#include "parking/fitting.hpp"

namespace parking {

struct GarageShape {
  int num_levels = 10;
  int capacity = 30;

  void validate() const;
};

/// Temperature-informed controller state: where the car is, the current
/// temperature estimate, and the latest fill fraction seen on each floor.
/// Observations outlive a single car within one simulation run.
struct TippState {
  int current_floor = 0;
  double temperature_estimate = 0.5;
  std::map<int, double> floor_observations;

  friend bool operator==(const TippState&, const TippState&) = default;
};

struct TippOptions {
  /// Floors whose latest observation is completely full get availability 0
  /// instead of the model's 1 - q^S.
  bool condition_on_full_floors = false;
};

struct TippDecision {
  int next_floor = 0;
  double temperature_estimate = 0.0;
  std::vector<double> availability;
};

class GarageExhausted : public std::runtime_error {
 public:
  GarageExhausted() : std::runtime_error("garage exhausted") {}
};

/// Returns a copy of `state` with floor's observation replaced.
TippState observe_floor(const TippState& state, int floor, double fill_fraction, int num_levels);

/// Availability per floor for a temperature, before conditioning on observations.
std::vector<double> model_availability(double temperature, const GarageShape& shape);

/// Refits the temperature on the observed floors (warm-started at the current
/// estimate), derives per-floor availability, solves the descent DP and
/// returns u(current_floor). Throws GarageExhausted at the bottom floor.
TippDecision tipp_decide(const TippState& state, const GarageShape& shape, const TimeConstants& times,
                         const FitConfig& fit, const TippOptions& options = {});

}  // namespace parking
