#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "parking/entropy_model.hpp"

namespace parking {

struct SurveySpot {
  double x = 0.0;
  double y = 0.0;
  bool occupied = false;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Surveyed open lot with a single point of interest.
struct LotSurvey {
  std::vector<SurveySpot> spots;
  Point poi;
};

/// One fit target: an energy and the observed fraction of it that was filled
/// (0/1 for a single spot, occupied/capacity for a floor).
struct Observation {
  double energy = 0.0;
  double fill_fraction = 0.0;

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct FitConfig {
  double learning_rate = 0.05;
  int max_iterations = 10'000;
  double gradient_tolerance = 1e-8;
  double initial_temperature = 0.5;

  void validate() const;
};

struct FitResult {
  double temperature = 0.0;
  double final_loss = 0.0;
  int iterations = 0;
  std::size_t n_observations = 0;
  /// True when the returned temperature sits on T_MIN or T_MAX.
  bool clamped = false;
};

class FitDiverged : public std::runtime_error {
 public:
  FitDiverged() : std::runtime_error("fit diverged (non-finite loss; try a smaller learning rate)") {}
};

class SurveyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Energy = squared Euclidean distance to the POI, normalized by the largest
/// such distance in the lot; fill = 1 for occupied spots.
std::vector<Observation> survey_to_observations(const LotSurvey& survey);

/// Mean squared error of the occupancy model against the observations.
double mse_loss(double temperature, std::span<const Observation> observations,
                double boltzmann_constant = kBoltzmann);

/// dL/dT for mse_loss.
double mse_loss_gradient(double temperature, std::span<const Observation> observations,
                         double boltzmann_constant = kBoltzmann);

/// Fits the temperature by gradient descent on the MSE, clamped to
/// [T_MIN, T_MAX].
///
/// Each step moves by learning_rate * dL/dT; a step that would raise the loss
/// is halved until it does not. Descent stops when |dL/dT| <= tolerance, when
/// the projected gradient vanishes at a bound, or at max_iterations. The loss
/// at the stopping point is then compared against both bounds so monotone
/// losses land on the clamp. Throws FitDiverged on a non-finite loss.
FitResult fit_temperature(std::span<const Observation> observations, const FitConfig& config = {});

struct SampleEfficiencyPoint {
  int sample_size = 0;
  double mean_full_lot_mse = 0.0;
  double std_full_lot_mse = 0.0;
};

/// For each sample size, fits on `trials` uniform random subsets and scores
/// each fit on the full observation set. Trial k of size n draws from
/// std::seed_seq{seed, n, k}, so results do not depend on evaluation order.
std::vector<SampleEfficiencyPoint> sample_efficiency_curve(std::span<const Observation> observations,
                                                           std::span<const int> sample_sizes,
                                                           int trials_per_size, std::uint64_t seed,
                                                           const FitConfig& config = {});

std::vector<SampleEfficiencyPoint> sample_efficiency_curve(const LotSurvey& survey,
                                                           std::span<const int> sample_sizes,
                                                           int trials_per_size, std::uint64_t seed,
                                                           const FitConfig& config = {});

// Survey CSV: '#' lines and blank lines are skipped, the first record is
// `poi,<x>,<y>`, every following record is `<x>,<y>,<0|1>`.
LotSurvey parse_survey_csv(std::istream& in);
LotSurvey read_survey_csv(const std::filesystem::path& path);
void write_survey_csv(std::ostream& out, const LotSurvey& survey);

/// Lot with spots uniform in the unit square, POI at (0.5, 0), and each spot
/// occupied with probability q(E, temperature).
LotSurvey make_synthetic_survey(int num_spots, double temperature, std::uint64_t seed);

}  // namespace parking
