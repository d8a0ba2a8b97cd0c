#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parking/dp.hpp"
#include "parking/fitting.hpp"
#include "parking/garage.hpp"
#include "parking/tipp.hpp"

namespace parking {

enum class PolicyKind { Benchmark, Inverse, Optimal, Tipp };

inline constexpr PolicyKind kAllPolicies[] = {PolicyKind::Benchmark, PolicyKind::Inverse,
                                              PolicyKind::Optimal, PolicyKind::Tipp};

std::string_view to_string(PolicyKind policy);
/// Accepts the lower-case names used in configs and CSVs ("benchmark", ...).
PolicyKind parse_policy(std::string_view name);

/// One car's journey.
struct ArrivalOutcome {
  int car_index = 0;
  PolicyKind policy = PolicyKind::Benchmark;
  std::vector<int> floors_scanned;
  std::optional<int> parked_floor;
  std::optional<int> spot_index;
  double elapsed_seconds = 0.0;
  std::optional<double> temperature_estimate_after;

  bool parked() const { return parked_floor.has_value(); }
  friend bool operator==(const ArrivalOutcome&, const ArrivalOutcome&) = default;
};

/// Everything a policy needs besides the garage itself.
struct PolicyContext {
  TimeConstants times;
  FitConfig fit;
  TippOptions tipp;
};

/// Parks one car. `tipp_state` carries the TIPP temperature estimate and floor
/// observations between cars and is ignored by the other policies.
///
///   Benchmark  floors 1, 2, ... until a spot is found.
///   Inverse    drive to floor N, then N, N-1, ... upward.
///   Optimal    straight to the lowest floor with a free spot.
///   Tipp       tipp_decide / drive / observe / scan until parked.
///
/// Descending itineraries are timed by total_time(); Inverse (and a TIPP car
/// stranded on a full bottom floor, which then sweeps upward) by
/// itinerary_time(). Throws GarageExhausted if the garage has no free spot.
ArrivalOutcome run_arrival(Garage& garage, PolicyKind policy, TippState& tipp_state,
                           const PolicyContext& context, int car_index = 0);

struct RunConfig {
  int num_levels = 10;
  int capacity_per_level = 30;
  double temperature = 0.5;
  int num_cars = 30;
  std::uint64_t seed = 0;
  double departure_prob = 0.0;
  /// Initial TIPP estimate; defaults to the fill temperature.
  std::optional<double> tipp_prior_temperature;
  PolicyContext context;
};

/// Initializes a fresh garage from (temperature, seed) and runs num_cars
/// arrivals under one policy. A car that finds the garage exhausted is
/// recorded as unparked with zero elapsed time.
std::vector<ArrivalOutcome> run_policy(const RunConfig& config, PolicyKind policy);

}  // namespace parking
