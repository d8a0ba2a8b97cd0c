#include "parking/simulation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace parking {

std::string_view to_string(PolicyKind policy) {
  switch (policy) {
    case PolicyKind::Benchmark: return "benchmark";
    case PolicyKind::Inverse: return "inverse";
    case PolicyKind::Optimal: return "optimal";
    case PolicyKind::Tipp: return "tipp";
  }
  return "unknown";
}

PolicyKind parse_policy(std::string_view name) {
  for (auto p : kAllPolicies) {
    if (name == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

namespace {

ArrivalOutcome run_benchmark(Garage& garage, const PolicyContext& ctx, ArrivalOutcome out) {
  for (int floor = 1; floor <= garage.num_levels(); ++floor) {
    out.floors_scanned.push_back(floor);
    if (auto spot = scan_and_park(garage, floor)) {
      out.parked_floor = floor;
      out.spot_index = spot;
      out.elapsed_seconds = total_time(static_cast<int>(out.floors_scanned.size()), floor, ctx.times);
      return out;
    }
  }
  throw GarageExhausted();
}

ArrivalOutcome run_inverse(Garage& garage, const PolicyContext& ctx, ArrivalOutcome out) {
  for (int floor = garage.num_levels(); floor >= 1; --floor) {
    out.floors_scanned.push_back(floor);
    if (auto spot = scan_and_park(garage, floor)) {
      out.parked_floor = floor;
      out.spot_index = spot;
      out.elapsed_seconds = itinerary_time(out.floors_scanned, floor, ctx.times);
      return out;
    }
  }
  throw GarageExhausted();
}

ArrivalOutcome run_optimal(Garage& garage, const PolicyContext& ctx, ArrivalOutcome out) {
  const auto floor = garage.first_free_level();
  if (!floor) throw GarageExhausted();
  out.floors_scanned.push_back(*floor);
  out.spot_index = scan_and_park(garage, *floor);
  out.parked_floor = *floor;
  out.elapsed_seconds = total_time(1, *floor, ctx.times);
  return out;
}

ArrivalOutcome run_tipp(Garage& garage, TippState& state, const PolicyContext& ctx,
                        ArrivalOutcome out) {
  const GarageShape shape{garage.num_levels(), garage.capacity()};
  state.current_floor = 0;
  while (state.current_floor < shape.num_levels) {
    const auto decision = tipp_decide(state, shape, ctx.times, ctx.fit, ctx.tipp);
    const int floor = decision.next_floor;
    state.temperature_estimate = decision.temperature_estimate;
    state = observe_floor(state, floor, garage.fill_fraction(floor), shape.num_levels);
    state.current_floor = floor;
    out.floors_scanned.push_back(floor);
    if (auto spot = scan_and_park(garage, floor)) {
      out.parked_floor = floor;
      out.spot_index = spot;
      out.elapsed_seconds = total_time(static_cast<int>(out.floors_scanned.size()), floor, ctx.times);
      out.temperature_estimate_after = state.temperature_estimate;
      return out;
    }
  }

  // Bottom floor full but spots remain above: sweep back up over floors not
  // yet visited on this trip.
  std::vector<int> visited = out.floors_scanned;
  std::sort(visited.begin(), visited.end());
  for (int floor = shape.num_levels - 1; floor >= 1; --floor) {
    if (std::binary_search(visited.begin(), visited.end(), floor)) continue;
    state = observe_floor(state, floor, garage.fill_fraction(floor), shape.num_levels);
    state.current_floor = floor;
    out.floors_scanned.push_back(floor);
    if (auto spot = scan_and_park(garage, floor)) {
      out.parked_floor = floor;
      out.spot_index = spot;
      out.elapsed_seconds = itinerary_time(out.floors_scanned, floor, ctx.times);
      out.temperature_estimate_after = state.temperature_estimate;
      return out;
    }
  }
  throw GarageExhausted();
}

}  // namespace

ArrivalOutcome run_arrival(Garage& garage, PolicyKind policy, TippState& tipp_state,
                           const PolicyContext& context, int car_index) {
  if (!garage.has_free_spot()) throw GarageExhausted();
  ArrivalOutcome out;
  out.car_index = car_index;
  out.policy = policy;
  switch (policy) {
    case PolicyKind::Benchmark: return run_benchmark(garage, context, std::move(out));
    case PolicyKind::Inverse: return run_inverse(garage, context, std::move(out));
    case PolicyKind::Optimal: return run_optimal(garage, context, std::move(out));
    case PolicyKind::Tipp: return run_tipp(garage, tipp_state, context, std::move(out));
  }
  throw std::invalid_argument("unknown policy");
}

std::vector<ArrivalOutcome> run_policy(const RunConfig& config, PolicyKind policy) {
  config.context.times.validate();
  config.context.fit.validate();
  if (config.num_cars < 0) throw std::invalid_argument("num_cars must be >= 0");

  Garage garage =
      init_from_temperature(config.num_levels, config.capacity_per_level, config.temperature, config.seed);
  TippState tipp_state;
  tipp_state.temperature_estimate =
      clamp_temperature(config.tipp_prior_temperature.value_or(config.temperature));

  std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                    static_cast<std::uint32_t>(config.seed >> 32), 0x72656e77u};
  std::mt19937_64 renewal_rng(seq);

  std::vector<ArrivalOutcome> outcomes;
  outcomes.reserve(static_cast<std::size_t>(config.num_cars));
  for (int car = 0; car < config.num_cars; ++car) {
    if (!garage.has_free_spot()) {
      ArrivalOutcome failed;
      failed.car_index = car;
      failed.policy = policy;
      outcomes.push_back(std::move(failed));
    } else {
      outcomes.push_back(run_arrival(garage, policy, tipp_state, config.context, car));
    }
    renewal_step(garage, config.departure_prob, renewal_rng);
  }
  return outcomes;
}

}  // namespace parking
