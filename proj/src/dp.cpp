#include "parking/dp.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace parking {

void TimeConstants::validate() const {
  for (double t : {scan, walk_up, drive_down}) {
    if (!std::isfinite(t) || t <= 0.0) throw std::invalid_argument("time constants must be positive");
  }
}

DpSolution::DpSolution(std::vector<double> values, std::vector<int> actions, double entrance_value)
    : values_(std::move(values)), actions_(std::move(actions)), entrance_value_(entrance_value) {}

double DpSolution::value(int floor) const {
  if (floor < 1 || floor > num_floors()) throw std::out_of_range("floor outside [1, N]");
  return values_[static_cast<std::size_t>(floor - 1)];
}

int DpSolution::action(int from_floor) const {
  if (from_floor < 0 || from_floor >= num_floors()) throw std::out_of_range("floor outside [0, N-1]");
  return actions_[static_cast<std::size_t>(from_floor)];
}

DpSolution solve_dp(std::span<const double> availability, const TimeConstants& times) {
  if (availability.empty()) throw std::invalid_argument("availability vector is empty");
  for (double p : availability) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw std::invalid_argument("availability outside [0,1]");
    }
  }
  times.validate();

  const int n = static_cast<int>(availability.size());
  const double t1 = times.scan;
  const double t2 = times.walk_up;
  const double t3 = times.drive_down;

  // f[i] for i in 1..N, u[i] for i in 0..N-1; index 0 of f is unused.
  std::vector<double> f(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<int> u(static_cast<std::size_t>(n), n);

  auto best_from = [&](int i) {
    int best_j = i + 1;
    double best_cost = (best_j - i) * t3 + f[static_cast<std::size_t>(best_j)];
    for (int j = i + 2; j <= n; ++j) {
      const double cost = (j - i) * t3 + f[static_cast<std::size_t>(j)];
      if (cost < best_cost) {
        best_cost = cost;
        best_j = j;
      }
    }
    return std::pair{best_j, best_cost};
  };

  f[static_cast<std::size_t>(n)] = t1 + n * t2;
  for (int i = n - 1; i >= 1; --i) {
    const auto [j, cost] = best_from(i);
    const double p = availability[static_cast<std::size_t>(i - 1)];
    f[static_cast<std::size_t>(i)] = p * (t1 + i * t2) + (1.0 - p) * (t1 + cost);
    u[static_cast<std::size_t>(i)] = j;
  }
  const auto [first, entrance] = best_from(0);
  u[0] = first;

  f.erase(f.begin());
  return DpSolution(std::move(f), std::move(u), entrance);
}

double total_time(int num_scans, int parked_floor, const TimeConstants& times) {
  if (num_scans < 1) throw std::invalid_argument("num_scans must be >= 1");
  if (parked_floor < 1) throw std::invalid_argument("parked_floor must be >= 1");
  return num_scans * times.scan + parked_floor * (times.walk_up + times.drive_down);
}

double itinerary_time(std::span<const int> floors_visited, std::optional<int> parked_floor,
                      const TimeConstants& times) {
  long floors_driven = 0;
  int at = 0;
  for (int floor : floors_visited) {
    if (floor < 1) throw std::invalid_argument("itinerary floor must be >= 1");
    floors_driven += std::abs(floor - at);
    at = floor;
  }
  double elapsed = static_cast<double>(floors_visited.size()) * times.scan +
                   static_cast<double>(floors_driven) * times.drive_down;
  if (parked_floor) elapsed += *parked_floor * times.walk_up;
  return elapsed;
}

}  // namespace parking
