#pragma once

#include <variant>
#include <vector>

namespace parking {

inline constexpr double kMinTemperature = 1e-3;
inline constexpr double kMaxTemperature = 10.0;
inline constexpr double kBoltzmann = 1.0;

/// Occupancy-model parameters. Only the ratio E / (k_B T) matters, so k_B is
/// held at 1 and temperature is the single free parameter.
struct EntropyParams {
  double temperature = 0.5;
  double boltzmann_constant = kBoltzmann;

  /// Throws std::invalid_argument unless temperature lies in
  /// [kMinTemperature, kMaxTemperature] and k_B > 0.
  void validate() const;
};

/// Clamp a temperature into the model domain.
double clamp_temperature(double temperature);

/// Energy assignment for a garage (one value per level, (i/N)^2) or for an
/// open lot (one value per spot, squared normalized distance).
struct PerLevelEnergy {
  int num_levels = 1;
};
struct PerSpotEnergy {
  std::vector<double> normalized_distances;
};
using EnergySpec = std::variant<PerLevelEnergy, PerSpotEnergy>;

/// Expands an EnergySpec into energies. Validates the variant's invariants.
std::vector<double> energies(const EnergySpec& spec);

// Per-spot occupancy probability
//
//   q(E, T) = 2 / (1 + exp(E / (k_B T)))
//
// q(0, T) = 1, q decreases with energy and increases with temperature.
// Evaluated as 2t / (1 + t) with t = exp(-E / k_B T) so it cannot overflow.
double spot_occupancy_prob(double energy, const EntropyParams& params);

/// d q / d T at fixed energy: q (1 - q/2) E / (k_B T^2).
double spot_occupancy_prob_dT(double energy, const EntropyParams& params);

/// Energy of level i (1 = nearest the entrance) in an N-level garage: (i/N)^2.
double level_energy(int level_index, int num_levels);

/// Occupied spots on a level holding `capacity` spots: round-half-up of q * S,
/// clamped to [0, S].
int level_fill_count(double occupancy_prob, int capacity);

/// Probability that at least one of `capacity` independently occupied spots
/// is free: 1 - q^S.
double level_availability_prob(double occupancy_prob, int capacity);

}  // namespace parking
