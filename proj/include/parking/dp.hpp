#pragma once

#include <optional>
#include <span>
#include <vector>

namespace parking {

/// Per-floor time constants, in seconds.
struct TimeConstants {
  double scan = 30.0;        ///< t1: scanning one floor for a spot
  double walk_up = 10.0;     ///< t2: passenger climbs one floor back to the entrance
  double drive_down = 5.0;   ///< t3: vehicle descends one floor

  void validate() const;
};

/// Optimal floor-descent plan for one availability vector.
///
/// Floors are 1-based; floor 0 is the entrance. value(i) is the minimum
/// expected time-to-go having just arrived on floor i. action(i) for
/// i in [0, N-1] is the floor to drive to next.
class DpSolution {
 public:
  DpSolution(std::vector<double> values, std::vector<int> actions, double entrance_value);

  int num_floors() const { return static_cast<int>(values_.size()); }
  double value(int floor) const;
  int action(int from_floor) const;
  /// min_j [ j * t3 + f(j) ], the expected total time from the entrance.
  double entrance_value() const { return entrance_value_; }

  const std::vector<double>& values() const { return values_; }
  const std::vector<int>& actions() const { return actions_; }

 private:
  std::vector<double> values_;
  std::vector<int> actions_;
  double entrance_value_;
};

// Backward recursion over floors:
//
//   f(N) = t1 + N t2
//   f(i) = p_i (t1 + i t2) + (1 - p_i) (t1 + min_{j>i} [(j - i) t3 + f(j)])
//   u(i) = argmin_{j>i} [(j - i) t3 + f(j)]
//
// Ties go to the smallest j. p_N is accepted but unused: the bottom floor is
// assumed to yield a spot. O(N^2).
DpSolution solve_dp(std::span<const double> availability, const TimeConstants& times);

/// Time for a car that scanned `num_scans` floors and parked on `parked_floor`
/// while only ever descending: n t1 + a (t2 + t3).
double total_time(int num_scans, int parked_floor, const TimeConstants& times);

/// Per-segment accounting for any itinerary: t1 per floor visited, t3 per floor
/// transition driven in either direction (starting from the entrance, floor 0),
/// and parked_floor * t2 walk-back when the car parked.
double itinerary_time(std::span<const int> floors_visited, std::optional<int> parked_floor,
                      const TimeConstants& times);

}  // namespace parking
