#include "parking/garage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "parking/entropy_model.hpp"

namespace parking {

Garage::Garage(int num_levels, int capacity) : num_levels_(num_levels), capacity_(capacity) {
  if (num_levels < 1) throw std::invalid_argument("num_levels must be >= 1");
  if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
  cells_.assign(static_cast<std::size_t>(num_levels) * static_cast<std::size_t>(capacity), 0);
  counts_.assign(static_cast<std::size_t>(num_levels), 0);
}

std::size_t Garage::cell(int level, int spot) const {
  if (level < 1 || level > num_levels_) {
    throw std::out_of_range("level " + std::to_string(level) + " outside [1, " +
                            std::to_string(num_levels_) + "]");
  }
  if (spot < 0 || spot >= capacity_) throw std::out_of_range("spot index out of range");
  return static_cast<std::size_t>(level - 1) * static_cast<std::size_t>(capacity_) +
         static_cast<std::size_t>(spot);
}

bool Garage::occupied(int level, int spot) const { return cells_[cell(level, spot)] != 0; }

int Garage::occupied_count(int level) const {
  if (level < 1 || level > num_levels_) throw std::out_of_range("level out of range");
  return counts_[static_cast<std::size_t>(level - 1)];
}

double Garage::fill_fraction(int level) const {
  return static_cast<double>(occupied_count(level)) / static_cast<double>(capacity_);
}

std::optional<int> Garage::first_free_level() const {
  for (int level = 1; level <= num_levels_; ++level) {
    if (counts_[static_cast<std::size_t>(level - 1)] < capacity_) return level;
  }
  return std::nullopt;
}

void Garage::park(int level, int spot) {
  auto& c = cells_[cell(level, spot)];
  if (c != 0) throw std::logic_error("spot already occupied");
  c = 1;
  ++counts_[static_cast<std::size_t>(level - 1)];
  ++total_;
}

void Garage::vacate(int level, int spot) {
  auto& c = cells_[cell(level, spot)];
  if (c == 0) throw std::logic_error("spot already free");
  c = 0;
  --counts_[static_cast<std::size_t>(level - 1)];
  --total_;
}

GarageSnapshot Garage::snapshot() const {
  GarageSnapshot snap;
  snap.num_levels = num_levels_;
  snap.capacity = capacity_;
  snap.level_counts = counts_;
  snap.total_occupied = total_;
  snap.occupancy.resize(static_cast<std::size_t>(num_levels_));
  for (int level = 1; level <= num_levels_; ++level) {
    auto& row = snap.occupancy[static_cast<std::size_t>(level - 1)];
    row.resize(static_cast<std::size_t>(capacity_));
    for (int s = 0; s < capacity_; ++s) row[static_cast<std::size_t>(s)] = occupied(level, s);
  }
  return snap;
}

Garage init_from_temperature(int num_levels, int capacity, double temperature, std::uint64_t seed) {
  const EntropyParams params{temperature, kBoltzmann};
  params.validate();
  Garage garage(num_levels, capacity);

  std::vector<int> spots(static_cast<std::size_t>(capacity));
  for (int level = 1; level <= num_levels; ++level) {
    const double q = spot_occupancy_prob(level_energy(level, num_levels), params);
    const int filled = level_fill_count(q, capacity);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(level)};
    std::mt19937_64 rng(seq);
    std::iota(spots.begin(), spots.end(), 0);
    std::shuffle(spots.begin(), spots.end(), rng);
    for (int k = 0; k < filled; ++k) garage.park(level, spots[static_cast<std::size_t>(k)]);
  }
  return garage;
}

std::optional<int> scan_and_park(Garage& garage, int floor) {
  if (garage.free_count(floor) == 0) return std::nullopt;
  for (int s = 0; s < garage.capacity(); ++s) {
    if (!garage.occupied(floor, s)) {
      garage.park(floor, s);
      return s;
    }
  }
  return std::nullopt;
}

int renewal_step(Garage& garage, double departure_prob, std::mt19937_64& rng) {
  if (!std::isfinite(departure_prob) || departure_prob < 0.0 || departure_prob > 1.0) {
    throw std::invalid_argument("departure_prob outside [0,1]");
  }
  if (departure_prob == 0.0) return 0;
  std::bernoulli_distribution leaves(departure_prob);
  int departed = 0;
  for (int level = 1; level <= garage.num_levels(); ++level) {
    for (int s = 0; s < garage.capacity(); ++s) {
      if (garage.occupied(level, s) && leaves(rng)) {
        garage.vacate(level, s);
        ++departed;
      }
    }
  }
  return departed;
}

}  // namespace parking
