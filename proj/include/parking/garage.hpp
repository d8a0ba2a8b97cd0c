#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace parking {

/// Read-only copy of a garage's occupancy.
struct GarageSnapshot {
  int num_levels = 0;
  int capacity = 0;
  std::vector<std::vector<bool>> occupancy;  ///< [level-1][spot]
  std::vector<int> level_counts;             ///< occupied spots per level
  int total_occupied = 0;

  friend bool operator==(const GarageSnapshot&, const GarageSnapshot&) = default;
};

/// N levels of S spots. Levels are 1-based (1 = nearest the entrance), spots
/// 0-based. Only park() and vacate() change occupancy.
class Garage {
 public:
  Garage(int num_levels, int capacity);

  int num_levels() const { return num_levels_; }
  int capacity() const { return capacity_; }

  bool occupied(int level, int spot) const;
  int occupied_count(int level) const;
  int free_count(int level) const { return capacity_ - occupied_count(level); }
  double fill_fraction(int level) const;
  int total_occupied() const { return total_; }
  bool has_free_spot() const { return total_ < num_levels_ * capacity_; }
  /// Lowest level with a free spot, if any.
  std::optional<int> first_free_level() const;

  /// Marks a free spot occupied. Throws std::logic_error if it is taken.
  void park(int level, int spot);
  /// Marks an occupied spot free. Throws std::logic_error if it is free.
  void vacate(int level, int spot);

  GarageSnapshot snapshot() const;

 private:
  std::size_t cell(int level, int spot) const;

  int num_levels_;
  int capacity_;
  std::vector<std::uint8_t> cells_;
  std::vector<int> counts_;
  int total_ = 0;
};

/// Level i gets level_fill_count(q((i/N)^2, T), S) occupied spots; which
/// spots within a level are occupied is a seeded shuffle.
Garage init_from_temperature(int num_levels, int capacity, double temperature, std::uint64_t seed);

/// Parks on the lowest-indexed free spot of `floor`. Returns the spot, or
/// nullopt (garage untouched) when the floor is full.
std::optional<int> scan_and_park(Garage& garage, int floor);

/// Each occupied spot leaves independently with probability departure_prob.
/// Returns the number of departures.
int renewal_step(Garage& garage, double departure_prob, std::mt19937_64& rng);

}  // namespace parking
