#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "parking/entropy_model.hpp"

using namespace parking;

namespace {

double q(double e, double t) { return spot_occupancy_prob(e, EntropyParams{t, kBoltzmann}); }

}  // namespace

TEST(SpotOccupancyProb, ZeroEnergyIsCertain) {
  EXPECT_EQ(q(0.0, 0.5), 1.0);
  EXPECT_EQ(q(0.0, kMinTemperature), 1.0);
  EXPECT_EQ(q(0.0, kMaxTemperature), 1.0);
}

TEST(SpotOccupancyProb, ClosedFormValues) {
  // 2 / (1 + e^2) and 2 / (1 + e^0.5), 30-digit reference evaluation.
  EXPECT_NEAR(q(1.0, 0.5), 0.238405844044235111880541717395, 1e-15);
  EXPECT_NEAR(q(0.25, 0.5), 0.755081337596290870722198868509, 1e-15);
  EXPECT_GT(q(1.0, kMaxTemperature), q(1.0, 0.5));
}

TEST(SpotOccupancyProb, LargeExponentUnderflowsToZeroNotNan) {
  const double v = q(1.0, kMinTemperature);
  EXPECT_FALSE(std::isnan(v));
  EXPECT_GE(v, 0.0);
  EXPECT_LT(v, 1e-300);
}

TEST(SpotOccupancyProb, RejectsBadInputs) {
  EXPECT_THROW(q(-0.1, 0.5), std::invalid_argument);
  EXPECT_THROW(q(NAN, 0.5), std::invalid_argument);
  EXPECT_THROW(q(INFINITY, 0.5), std::invalid_argument);
  EXPECT_THROW(q(0.5, 0.0), std::invalid_argument);
  EXPECT_THROW(q(0.5, 11.0), std::invalid_argument);
  EXPECT_THROW(spot_occupancy_prob(0.5, EntropyParams{0.5, 0.0}), std::invalid_argument);
}

TEST(SpotOccupancyProb, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> energy(0.0, 1.0);
  std::uniform_real_distribution<double> temp(0.05, 9.0);
  for (int i = 0; i < 500; ++i) {
    const double e = energy(rng);
    const double t = temp(rng);
    const double h = 1e-6 * t;
    const double fd = (q(e, t + h) - q(e, t - h)) / (2.0 * h);
    const double analytic = spot_occupancy_prob_dT(e, EntropyParams{t, kBoltzmann});
    EXPECT_NEAR(analytic, fd, 1e-6 * std::max(1.0, std::abs(fd))) << "E=" << e << " T=" << t;
  }
}

TEST(SpotOccupancyProb, MonotoneInEnergyAndTemperature) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> energy(0.0, 1.0);
  std::uniform_real_distribution<double> temp(0.01, kMaxTemperature);
  for (int i = 0; i < 2000; ++i) {
    double e1 = energy(rng), e2 = energy(rng);
    double t1 = temp(rng), t2 = temp(rng);
    if (e1 > e2) std::swap(e1, e2);
    if (t1 > t2) std::swap(t1, t2);
    if (e1 < e2) {
      EXPECT_GT(q(e1, t1), q(e2, t1));
    }
    if (t1 < t2 && e2 > 0.0) {
      EXPECT_LT(q(e2, t1), q(e2, t2));
    }
  }
}

TEST(LevelEnergy, SquaredFraction) {
  EXPECT_EQ(level_energy(10, 10), 1.0);
  EXPECT_DOUBLE_EQ(level_energy(1, 10), 0.01);
  EXPECT_DOUBLE_EQ(level_energy(5, 10), 0.25);
  EXPECT_THROW(level_energy(0, 10), std::out_of_range);
  EXPECT_THROW(level_energy(11, 10), std::out_of_range);
}

TEST(LevelFillCount, RoundsHalfUp) {
  EXPECT_EQ(level_fill_count(q(1.0, 0.5), 30), 7);  // 7.152
  EXPECT_EQ(level_fill_count(0.0, 30), 0);
  EXPECT_EQ(level_fill_count(1.0, 30), 30);
  EXPECT_EQ(level_fill_count(0.5, 3), 2);  // 1.5 -> 2
  EXPECT_EQ(level_fill_count(0.25, 2), 1);  // 0.5 -> 1
  EXPECT_THROW(level_fill_count(1.1, 30), std::invalid_argument);
  EXPECT_THROW(level_fill_count(0.5, 0), std::invalid_argument);
}

TEST(LevelFillCount, ConvergesToProbability) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  std::uniform_int_distribution<int> cap(1, 5000);
  for (int i = 0; i < 5000; ++i) {
    const double p = prob(rng);
    const int s = cap(rng);
    const double frac = static_cast<double>(level_fill_count(p, s)) / s;
    EXPECT_LE(std::abs(frac - p), 0.5 / s + 1e-12);
  }
}

TEST(LevelAvailabilityProb, Values) {
  EXPECT_EQ(level_availability_prob(1.0, 30), 0.0);
  EXPECT_EQ(level_availability_prob(0.0, 30), 1.0);
  EXPECT_NEAR(level_availability_prob(0.99, 30), 0.260299626611719577269984907683, 1e-14);
}

TEST(LevelAvailabilityProb, MonotoneInOccupancyAndCapacity) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> prob(0.5, 0.99);  // keeps q^S well above 1 ulp
  for (int i = 0; i < 1000; ++i) {
    double a = prob(rng), b = prob(rng);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    EXPECT_GT(level_availability_prob(a, 30), level_availability_prob(b, 30));
    EXPECT_LT(level_availability_prob(a, 10), level_availability_prob(a, 11));
  }
}

TEST(Energies, PerLevelAndPerSpot) {
  const auto levels = energies(PerLevelEnergy{4});
  ASSERT_EQ(levels.size(), 4u);
  EXPECT_DOUBLE_EQ(levels[1], 0.25);
  const auto spots = energies(PerSpotEnergy{{0.0, 0.5, 1.0}});
  EXPECT_EQ(spots, (std::vector<double>{0.0, 0.25, 1.0}));
  EXPECT_THROW(energies(PerSpotEnergy{{0.2, 0.5}}), std::invalid_argument);
  EXPECT_THROW(energies(PerSpotEnergy{{1.0, 1.5}}), std::invalid_argument);
  EXPECT_THROW(energies(PerLevelEnergy{0}), std::invalid_argument);
}
