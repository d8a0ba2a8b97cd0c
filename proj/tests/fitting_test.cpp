#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "parking/entropy_model.hpp"
#include "parking/fitting.hpp"

using namespace parking;

namespace {

double q(double e, double t) { return spot_occupancy_prob(e, EntropyParams{t, kBoltzmann}); }

std::vector<Observation> noiseless(double t_star) {
  std::vector<Observation> obs;
  for (int k = 1; k <= 10; ++k) obs.push_back({0.1 * k, q(0.1 * k, t_star)});
  return obs;
}

std::vector<oracle::EnergyFill> to_oracle(const std::vector<Observation>& obs) {
  std::vector<oracle::EnergyFill> out;
  for (const auto& o : obs) out.push_back({o.energy, o.fill_fraction});
  return out;
}

}  // namespace

TEST(SurveyToObservations, NormalizesSquaredDistance) {
  LotSurvey survey;
  survey.poi = {0.0, 0.0};
  survey.spots = {{0.0, 0.0, false}, {3.0, 4.0, true}, {1.5, 2.0, false}};
  const auto obs = survey_to_observations(survey);
  ASSERT_EQ(obs.size(), 3u);
  EXPECT_EQ(obs[0], (Observation{0.0, 0.0}));
  EXPECT_EQ(obs[1], (Observation{1.0, 1.0}));
  EXPECT_DOUBLE_EQ(obs[2].energy, 0.25);
  EXPECT_EQ(obs[2].fill_fraction, 0.0);
}

TEST(SurveyToObservations, DegenerateGeometry) {
  LotSurvey survey;
  survey.poi = {1.0, 1.0};
  survey.spots = {{1.0, 1.0, true}, {1.0, 1.0, false}};
  EXPECT_THROW(survey_to_observations(survey), SurveyError);
  survey.spots.resize(1);
  EXPECT_THROW(survey_to_observations(survey), SurveyError);
}

TEST(SurveyToObservations, ScaleInvariant) {
  const auto survey = make_synthetic_survey(60, 0.5, 21);
  const auto base = survey_to_observations(survey);
  for (double c : {0.25, 2.0, 1024.0}) {  // powers of two scale exactly
    LotSurvey scaled = survey;
    scaled.poi = {survey.poi.x * c, survey.poi.y * c};
    for (auto& s : scaled.spots) {
      s.x *= c;
      s.y *= c;
    }
    EXPECT_EQ(survey_to_observations(scaled), base) << "c=" << c;
  }
  LotSurvey scaled = survey;
  scaled.poi = {survey.poi.x * 3.7, survey.poi.y * 3.7};
  for (auto& s : scaled.spots) {
    s.x *= 3.7;
    s.y *= 3.7;
  }
  const auto other = survey_to_observations(scaled);
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_NEAR(other[i].energy, base[i].energy, 1e-14);
    EXPECT_EQ(other[i].fill_fraction, base[i].fill_fraction);
  }
}

TEST(MseLoss, Examples) {
  const std::vector<Observation> at_zero{{0.0, 1.0}, {0.0, 1.0}};
  for (double t : {0.001, 0.5, 10.0}) EXPECT_EQ(mse_loss(t, at_zero), 0.0);

  const std::vector<Observation> exact{{1.0, 2.0 / (1.0 + std::exp(2.0))}};
  EXPECT_NEAR(mse_loss(0.5, exact), 0.0, 1e-30);

  const std::vector<Observation> full{{1.0, 1.0}};
  EXPECT_NEAR(mse_loss(0.5, full), 0.580025658385973930605503260958, 1e-14);

  EXPECT_THROW(mse_loss(0.5, std::vector<Observation>{}), std::invalid_argument);
}

TEST(MseLoss, GradientMatchesFiniteDifference) {
  const auto survey = make_synthetic_survey(40, 0.7, 4);
  const auto obs = survey_to_observations(survey);
  for (double t : {0.05, 0.3, 0.9, 2.5, 7.0}) {
    const double h = 1e-6 * t;
    const double fd = oracle::central_difference([&](double x) { return mse_loss(x, obs); }, t, h);
    EXPECT_NEAR(mse_loss_gradient(t, obs), fd, 1e-6 * std::max(1.0, std::abs(fd))) << "T=" << t;
  }
}

TEST(FitTemperature, RecoversNoiselessTemperature) {
  // Grid-search oracle at 1e-5 resolution over [1e-3, 10] returned exactly
  // 0.1, 0.5 and 1.0 for these three observation sets.
  for (double t_star : {0.1, 0.5, 1.0}) {
    const auto fit = fit_temperature(noiseless(t_star));
    EXPECT_NEAR(fit.temperature, t_star, 1e-4) << "T*=" << t_star;
    EXPECT_FALSE(fit.clamped);
    EXPECT_LT(fit.final_loss, 1e-12);
  }
}

TEST(FitTemperature, ClampsOnMonotoneLoss) {
  std::vector<Observation> full, empty;
  for (int k = 1; k <= 10; ++k) {
    full.push_back({0.1 * k, 1.0});
    empty.push_back({0.1 * k, 0.0});
  }
  const auto hot = fit_temperature(full);
  EXPECT_EQ(hot.temperature, kMaxTemperature);
  EXPECT_TRUE(hot.clamped);
  const auto cold = fit_temperature(empty);
  EXPECT_EQ(cold.temperature, kMinTemperature);
  EXPECT_TRUE(cold.clamped);
}

TEST(FitTemperature, Errors) {
  EXPECT_THROW(fit_temperature(std::vector<Observation>{}), std::invalid_argument);
  FitConfig bad;
  bad.learning_rate = -1.0;
  EXPECT_THROW(fit_temperature(noiseless(0.5), bad), std::invalid_argument);
  bad = FitConfig{};
  bad.initial_temperature = 20.0;
  EXPECT_THROW(fit_temperature(noiseless(0.5), bad), std::invalid_argument);
  EXPECT_THROW(fit_temperature(std::vector<Observation>{{0.5, 1.5}}), std::invalid_argument);
}

TEST(FitTemperature, OrderInvariant) {
  const auto obs = survey_to_observations(make_synthetic_survey(80, 0.4, 9));
  const auto base = fit_temperature(obs);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5; ++i) {
    auto shuffled = obs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto fit = fit_temperature(shuffled);
    EXPECT_EQ(fit.temperature, base.temperature);
    EXPECT_EQ(fit.final_loss, base.final_loss);
  }
}

TEST(FitTemperature, NeverWorseThanStart) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> start(kMinTemperature, kMaxTemperature);
  for (int i = 0; i < 50; ++i) {
    std::vector<Observation> obs;
    const int n = 1 + static_cast<int>(unit(rng) * 20);
    for (int k = 0; k < n; ++k) obs.push_back({unit(rng), unit(rng)});
    FitConfig cfg;
    cfg.initial_temperature = start(rng);
    cfg.learning_rate = 0.05 + unit(rng) * 5.0;
    const auto fit = fit_temperature(obs, cfg);
    EXPECT_LE(fit.final_loss, mse_loss(cfg.initial_temperature, obs));
    EXPECT_GE(fit.temperature, kMinTemperature);
    EXPECT_LE(fit.temperature, kMaxTemperature);
  }
}

TEST(FitTemperature, MatchesGridSearchOnRandomSyntheticSets) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> temp(0.1, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.05);
  for (int trial = 0; trial < 8; ++trial) {
    const double t_star = temp(rng);
    std::vector<Observation> obs;
    for (int k = 0; k < 12; ++k) {
      const double e = unit(rng);
      obs.push_back({e, std::clamp(q(e, t_star) + noise(rng), 0.0, 1.0)});
    }
    const double grid = oracle::grid_search_temperature(to_oracle(obs), 1e-4);
    EXPECT_NEAR(fit_temperature(obs).temperature, grid, 1e-3) << "T*=" << t_star;
  }
}

TEST(SampleEfficiency, FullSampleHasZeroSpread) {
  const auto survey = make_synthetic_survey(105, 0.5, 3);
  const auto obs = survey_to_observations(survey);
  const int sizes[] = {105};
  const auto curve = sample_efficiency_curve(survey, sizes, 5, 99);
  ASSERT_EQ(curve.size(), 1u);
  EXPECT_EQ(curve[0].std_full_lot_mse, 0.0);
  EXPECT_DOUBLE_EQ(curve[0].mean_full_lot_mse, fit_temperature(obs).final_loss);
}

TEST(SampleEfficiency, SmallSamplesWithinTwiceFullFit) {
  const auto survey = make_synthetic_survey(105, 0.5, 3);
  const double full = fit_temperature(survey_to_observations(survey)).final_loss;
  const int sizes[] = {1, 10};
  const auto curve = sample_efficiency_curve(survey, sizes, 50, 7);
  EXPECT_LE(curve[1].mean_full_lot_mse, 2.0 * full);
  EXPECT_GE(curve[0].mean_full_lot_mse, curve[1].mean_full_lot_mse);
}

TEST(SampleEfficiency, DeterministicAndValidated) {
  const auto survey = make_synthetic_survey(30, 0.5, 1);
  const int sizes[] = {3, 12};
  EXPECT_EQ(sample_efficiency_curve(survey, sizes, 4, 5)[1].mean_full_lot_mse,
            sample_efficiency_curve(survey, sizes, 4, 5)[1].mean_full_lot_mse);
  const int too_big[] = {31};
  EXPECT_THROW(sample_efficiency_curve(survey, too_big, 4, 5), std::invalid_argument);
  EXPECT_THROW(sample_efficiency_curve(survey, sizes, 0, 5), std::invalid_argument);
}

TEST(SurveyCsv, ParsesAndRoundTrips) {
  std::istringstream in(
      "# lot A\n"
      "poi,0,0\n"
      "\n"
      "3,4,1\n"
      "# interior comment\n"
      "1.5,2,0\n");
  const auto survey = parse_survey_csv(in);
  EXPECT_EQ(survey.spots.size(), 2u);
  EXPECT_TRUE(survey.spots[0].occupied);
  EXPECT_DOUBLE_EQ(survey.spots[1].x, 1.5);

  const auto synth = make_synthetic_survey(20, 0.5, 8);
  std::stringstream buf;
  write_survey_csv(buf, synth);
  const auto back = parse_survey_csv(buf);
  EXPECT_EQ(survey_to_observations(back), survey_to_observations(synth));
}

TEST(SurveyCsv, ErrorsNameTheLine) {
  auto message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_survey_csv(in);
    } catch (const SurveyError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("poi,0,0\n1,2,1\n1,x,0\n").find("line 3"), std::string::npos);
  EXPECT_NE(message("1,2,1\n").find("line 1"), std::string::npos);
  EXPECT_NE(message("poi,0,0\n1,2,1\n1,2,2\n").find("line 3"), std::string::npos);
  EXPECT_NE(message("poi,0,0\n1,2\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("poi,0,0\n1,2,1\n").find("at least 2"), std::string::npos);
}
