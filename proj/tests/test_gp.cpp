#include "asyncbo/gp.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "asyncbo/errors.hpp"

namespace asyncbo {
namespace {

ObservationSet sampled(const SearchSpace& space, std::size_t n, RandomStream& rng,
                       const std::function<double(const Point&)>& f) {
  ObservationSet d;
  for (std::size_t i = 0; i < n; ++i) {
    Point p = space.sample_uniform(rng);
    const double y = f(p);
    d.append({std::move(p), y});
  }
  return d;
}

TEST(CandidateCountTest, FollowsFormula) {
  EXPECT_EQ(n_acq(18, 10), 2000u);
  EXPECT_EQ(n_acq(18, 1000), 2000u);
  EXPECT_EQ(n_acq(1, 0), 2000u);
  for (std::size_t d : {1u, 3u, 6u, 18u}) {
    for (std::size_t j : {0u, 5u, 200u, 1000u, 5000u}) {
      const double jj = static_cast<double>(std::min<std::size_t>(j, 1000));
      const double expected =
          std::floor(std::max(2000.0, std::min(5.0, static_cast<double>(d)) * std::sqrt(jj)));
      EXPECT_EQ(static_cast<double>(n_acq(d, j)), expected);
    }
  }
}

TEST(GpFitTest, ReproducesNoiseFreeLinearDataAtTrainingInputs) {
  const auto space = SearchSpace::unit_cube(1);
  ObservationSet d;
  for (int i = 0; i < 8; ++i) {
    const double x = i / 7.0;
    d.append({Point{x}, x});
  }
  RandomStream rng(0);
  const auto gp = fit_gp(d, space, rng);
  for (const auto& o : d.items()) EXPECT_NEAR(gp.posterior_mean(o.x), o.y, 1e-3);
}

TEST(GpFitTest, FinalLikelihoodDominatesEveryStart) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RandomStream rng(seed);
    const auto space = SearchSpace::unit_cube(3);
    const auto d = sampled(space, 25, rng, [](const Point& p) {
      return std::sin(5.0 * p[0]) + p[1] * p[1] - p[2];
    });
    const auto gp = fit_gp(d, space, rng);
    ASSERT_EQ(gp.start_log_likelihoods().size(), GpFitOptions{}.starts);
    for (double start : gp.start_log_likelihoods()) {
      EXPECT_GE(gp.log_marginal_likelihood(), start);
    }
    const auto& h = gp.hyperparameters();
    for (double b : h.bandwidths) {
      EXPECT_GE(b, 1e-2 * (1 - 1e-9));
      EXPECT_LE(b, 10.0 * (1 + 1e-9));
    }
    EXPECT_GE(h.noise, 1e-6 * (1 - 1e-9));
    EXPECT_LE(h.noise, 1.0 * (1 + 1e-9));
  }
}

TEST(GpFitTest, DuplicateInputsWithDifferentValuesStillFit) {
  const auto space = SearchSpace::unit_cube(2);
  ObservationSet d;
  for (int i = 0; i < 6; ++i) d.append({Point{0.25, 0.75}, static_cast<double>(i % 3)});
  d.append({Point{0.9, 0.1}, 4.0});
  RandomStream rng(1);
  const auto gp = fit_gp(d, space, rng);
  EXPECT_GT(gp.hyperparameters().noise, 0.0);
  EXPECT_TRUE(std::isfinite(gp.log_marginal_likelihood()));
  EXPECT_TRUE(std::isfinite(gp.posterior_mean(Point{0.5, 0.5})));
}

TEST(GpFitTest, ConstantTargetsFit) {
  const auto space = SearchSpace::unit_cube(2);
  RandomStream rng(2);
  const auto d = sampled(space, 10, rng, [](const Point&) { return 3.0; });
  const auto gp = fit_gp(d, space, rng);
  EXPECT_NEAR(gp.posterior_mean(Point{0.4, 0.4}), 3.0, 1e-9);
}

TEST(GpFitTest, KernelMatrixIsExactlySymmetric) {
  const auto space = SearchSpace::unit_cube(4);
  RandomStream rng(3);
  const auto d = sampled(space, 30, rng, [](const Point& p) { return p[0] - p[3]; });
  const auto gp = fit_gp(d, space, rng);
  const Eigen::MatrixXd k = gp.kernel_matrix();
  for (Eigen::Index i = 0; i < k.rows(); ++i) {
    for (Eigen::Index j = 0; j < k.cols(); ++j) EXPECT_EQ(k(i, j), k(j, i));
  }
}

TEST(GpFitTest, NeedsTwoObservations) {
  const auto space = SearchSpace::unit_cube(1);
  ObservationSet d;
  RandomStream rng(0);
  EXPECT_THROW(fit_gp(d, space, rng), PreconditionError);
  d.append({Point{0.5}, 1.0});
  EXPECT_THROW(fit_gp(d, space, rng), PreconditionError);
}

TEST(ThompsonTest, ReturnsArgminOfTheSample) {
  const auto space = SearchSpace::unit_cube(2);
  RandomStream rng(4);
  const auto d = sampled(space, 15, rng, [](const Point& p) { return p[0] + p[1]; });
  const auto gp = fit_gp(d, space, rng);
  const auto draw = thompson_draw(gp, space, d.size(), rng);
  ASSERT_EQ(draw.candidates.size(), std::min(n_acq(2, d.size()), kMaxThompsonCandidates));
  ASSERT_EQ(static_cast<std::size_t>(draw.values.size()), draw.candidates.size());
  for (Eigen::Index i = 0; i < draw.values.size(); ++i) {
    EXPECT_LE(draw.values[static_cast<Eigen::Index>(draw.best)], draw.values[i]);
  }
  for (const auto& c : draw.candidates) EXPECT_TRUE(space.contains(c));
}

TEST(ThompsonTest, ConcentratesNearTheMinimumOfDenseData) {
  const auto space = SearchSpace::unit_cube(1);
  ObservationSet d;
  for (int i = 0; i < 40; ++i) {
    const double x = (i + 0.5) / 40.0;
    d.append({Point{x}, (x - 0.3) * (x - 0.3)});
  }
  RandomStream fit_rng(0);
  const auto gp = fit_gp(d, space, fit_rng);
  int close = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomStream rng(seed, "thompson");
    if (std::abs(thompson_propose(gp, space, d.size(), rng)[0] - 0.3) <= 0.05) ++close;
  }
  EXPECT_GE(close, 9);
}

TEST(ThompsonTest, DifferentSeedsGiveDifferentProposals) {
  const auto space = SearchSpace::unit_cube(3);
  RandomStream rng(5);
  const auto d = sampled(space, 20, rng, [](const Point& p) { return p[0] * p[1] + p[2]; });
  const auto gp = fit_gp(d, space, rng);
  RandomStream a(10), b(11), a2(10);
  const Point pa = thompson_propose(gp, space, d.size(), a);
  EXPECT_NE(pa, thompson_propose(gp, space, d.size(), b));
  EXPECT_EQ(pa, thompson_propose(gp, space, d.size(), a2));
}

}  // namespace
}  // namespace asyncbo
