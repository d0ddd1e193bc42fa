#include "asyncbo/parzen.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "asyncbo/errors.hpp"
#include "support/oracles.hpp"

namespace asyncbo {
namespace {

std::vector<Point> random_points(const SearchSpace& space, std::size_t n, RandomStream& rng) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(space.sample_uniform(rng));
  return pts;
}

SearchSpace random_space(RandomStream& rng, std::size_t d) {
  std::vector<ParamDomain> dims;
  for (std::size_t k = 0; k < d; ++k) {
    const double low = rng.uniform(-5.0, 5.0);
    dims.push_back({"p" + std::to_string(k), low, low + rng.uniform(0.1, 10.0),
                    ParamKind::continuous});
  }
  return SearchSpace(std::move(dims));
}

TEST(ParzenFitTest, SinglePointGivesObservationPlusPrior) {
  const auto space = SearchSpace::unit_cube(1);
  const std::vector<Point> pts{Point{0.5}};
  const auto est = ParzenEstimator::fit(pts, space);
  const auto kernels = est.dimension(0).kernels();
  ASSERT_EQ(kernels.size(), 2u);
  EXPECT_DOUBLE_EQ(kernels[0].weight, 0.5);
  EXPECT_DOUBLE_EQ(kernels[1].weight, 0.5);
  EXPECT_DOUBLE_EQ(kernels[0].center, 0.5);
  // Prior: midpoint, full width.
  EXPECT_DOUBLE_EQ(kernels[1].center, 0.5);
  EXPECT_DOUBLE_EQ(kernels[1].bandwidth, 1.0);
  // No spread estimate from one point.
  EXPECT_DOUBLE_EQ(kernels[0].bandwidth, 1.0);
}

TEST(ParzenFitTest, EmptyInputIsAPreconditionError) {
  EXPECT_THROW(ParzenEstimator::fit({}, SearchSpace::unit_cube(1)), PreconditionError);
}

TEST(ParzenFitTest, OutOfDomainInputIsRejected) {
  const std::vector<Point> pts{Point{1.5}};
  EXPECT_THROW(ParzenEstimator::fit(pts, SearchSpace::unit_cube(1)), DomainError);
}

TEST(ParzenFitTest, DuplicatePointsClipToBandwidthFloor) {
  const auto space = SearchSpace::unit_cube(1);
  const std::vector<Point> pts{Point{0.25}, Point{0.25}};
  const auto est = ParzenEstimator::fit(pts, space);
  EXPECT_DOUBLE_EQ(est.dimension(0).kernels()[0].bandwidth, 1e-3);
  for (int i = 0; i <= 1000; ++i) {
    const double lp = est.log_pdf(Point{i / 1000.0});
    EXPECT_TRUE(std::isfinite(lp)) << "at " << i / 1000.0;
  }
}

TEST(ParzenFitTest, ScottBandwidthRule) {
  const std::vector<double> coords{0.1, 0.2, 0.3, 0.4};
  // sd = 0.1290994..., times 4^(-1/5).
  const double expected = std::sqrt(0.05 / 3.0) * std::pow(4.0, -0.2);
  EXPECT_NEAR(scott_bandwidth(coords, 1.0), expected, 1e-15);
  EXPECT_DOUBLE_EQ(scott_bandwidth(coords, 1e-4), 1e-4);  // upper clip at width
  const std::vector<double> wide{-100.0, 100.0};
  EXPECT_DOUBLE_EQ(scott_bandwidth(wide, 1.0), 1.0);
}

TEST(ParzenFitTest, WeightsSumToOne) {
  RandomStream rng(11);
  const auto space = random_space(rng, 3);
  const auto est = ParzenEstimator::fit(random_points(space, 17, rng), space);
  for (std::size_t k = 0; k < 3; ++k) {
    double total = 0.0;
    for (const auto& kern : est.dimension(k).kernels()) total += kern.weight;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

// Normalization property over randomized fits, checked by quadrature.
TEST(ParzenFitTest, PerDimensionDensityIntegratesToOne) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomStream rng(seed);
    const auto space = random_space(rng, 2);
    const std::size_t n = 1 + rng.index(60);
    const auto est = ParzenEstimator::fit(random_points(space, n, rng), space);
    for (std::size_t k = 0; k < space.dim(); ++k) {
      const auto& mix = est.dimension(k);
      const double integral = oracle::midpoint_integral(
          [&](double x) { return mix.pdf(x); }, space[k].low, space[k].high, 2048);
      EXPECT_NEAR(integral, 1.0, 1e-3) << "seed " << seed << " dim " << k;
    }
  }
}

TEST(ParzenLogPdfTest, SymmetricAroundCenteredFit) {
  const auto space = SearchSpace::unit_cube(1);
  const std::vector<Point> pts{Point{0.5}};
  const auto est = ParzenEstimator::fit(pts, space);
  for (double delta : {0.01, 0.1, 0.3, 0.5}) {
    EXPECT_NEAR(est.log_pdf(Point{0.5 - delta}), est.log_pdf(Point{0.5 + delta}), 1e-14);
  }
}

TEST(ParzenLogPdfTest, MatchesBruteForceMixtureSum) {
  RandomStream rng(2024);
  const auto space = random_space(rng, 1);
  const auto est = ParzenEstimator::fit(random_points(space, 25, rng), space);
  const auto kernels = est.dimension(0).kernels();
  for (int i = 0; i < 20; ++i) {
    const Point p = space.sample_uniform(rng);
    const double expected = std::log(oracle::mixture_pdf(kernels, p[0]));
    EXPECT_NEAR(est.log_pdf(p), expected, 1e-10 * std::abs(expected) + 1e-300);
  }
}

TEST(ParzenLogPdfTest, ProductOverDimensions) {
  RandomStream rng(5);
  const auto space = SearchSpace::unit_cube(2);
  const auto est = ParzenEstimator::fit(random_points(space, 12, rng), space);
  for (int i = 0; i < 20; ++i) {
    const Point p = space.sample_uniform(rng);
    EXPECT_NEAR(est.log_pdf(p),
                est.dimension(0).log_pdf(p[0]) + est.dimension(1).log_pdf(p[1]), 1e-12);
  }
}

TEST(ParzenLogPdfTest, OutOfDomainIsADomainError) {
  const auto space = SearchSpace::unit_cube(1);
  const std::vector<Point> pts{Point{0.5}};
  const auto est = ParzenEstimator::fit(pts, space);
  EXPECT_THROW(est.log_pdf(Point{-0.1}), DomainError);
}

TEST(ParzenLogPdfTest, StaysFiniteWhereLinearSumUnderflows) {
  // A lone narrow kernel: the density far away underflows in linear space.
  const TruncatedGaussianMixture mix({{0.0, 1e-3, 1.0, 0.0, 1.0}});
  const double lp = mix.log_pdf(1.0);
  EXPECT_TRUE(std::isfinite(lp));
  const double z = 1.0 / 1e-3;
  EXPECT_NEAR(lp, -0.5 * z * z - std::log(1e-3 * 0.5 * std::sqrt(2 * std::numbers::pi)),
              1e-6 * std::abs(lp));
}

TEST(ParzenSampleTest, NarrowKernelConcentratesNearCenter) {
  const double h = 1e-3;
  const TruncatedGaussianMixture mix({{0.4, h, 1.0, 0.0, 1.0}});
  RandomStream rng(9);
  std::vector<double> xs;
  for (int i = 0; i < 10000; ++i) xs.push_back(mix.sample(rng));
  EXPECT_LE(oracle::sample_std(xs), 2.0 * h);
  EXPECT_NEAR(oracle::mean(xs), 0.4, 1e-4);
}

TEST(ParzenSampleTest, SamplesStayInDomain) {
  RandomStream rng(1);
  const SearchSpace space({{"a", -3.0, -1.0, ParamKind::continuous},
                           {"b", 10.0, 10.5, ParamKind::continuous}});
  std::vector<Point> pts{Point{-3.0, 10.5}, Point{-1.0, 10.0}, Point{-2.9, 10.49}};
  const auto est = ParzenEstimator::fit(pts, space);
  for (int i = 0; i < 5000; ++i) EXPECT_TRUE(space.contains(est.sample(rng)));
}

TEST(ParzenSampleTest, EdgeCenteredKernelFillsOnlyItsHalf) {
  const TruncatedGaussianMixture mix({{0.0, 0.2, 1.0, 0.0, 1.0}});
  RandomStream rng(4);
  std::vector<double> xs;
  for (int i = 0; i < 20000; ++i) xs.push_back(mix.sample(rng));
  // Half-normal with scale 0.2 truncated at 5 sigma: mean 0.2 * sqrt(2 / pi).
  EXPECT_NEAR(oracle::mean(xs), 0.2 * std::sqrt(2.0 / std::numbers::pi), 3e-3);
}

// Sampling/density consistency over randomized fits.
TEST(ParzenSampleTest, HistogramMatchesQuadratureDensity) {
  for (std::uint64_t seed = 100; seed < 104; ++seed) {
    RandomStream rng(seed);
    const auto space = random_space(rng, 1);
    const auto est = ParzenEstimator::fit(random_points(space, 3 + rng.index(20), rng), space);
    std::vector<double> xs;
    for (int i = 0; i < 50000; ++i) xs.push_back(est.sample(rng)[0]);
    const auto& mix = est.dimension(0);
    const double tv = oracle::tv_distance(xs, [&](double x) { return mix.pdf(x); },
                                          space[0].low, space[0].high);
    EXPECT_LE(tv, 0.02) << "seed " << seed;
  }
}

TEST(ParzenEstimatorTest, RejectsMismatchedMixtures) {
  const auto space = SearchSpace::unit_cube(2);
  std::vector<TruncatedGaussianMixture> one{TruncatedGaussianMixture({{0.5, 0.1, 1.0, 0.0, 1.0}})};
  EXPECT_THROW(ParzenEstimator(space, one), ShapeError);
  std::vector<TruncatedGaussianMixture> wrong{
      TruncatedGaussianMixture({{0.5, 0.1, 1.0, 0.0, 1.0}}),
      TruncatedGaussianMixture({{0.5, 0.1, 1.0, 0.0, 2.0}})};
  EXPECT_THROW(ParzenEstimator(space, wrong), DomainError);
}

}  // namespace
}  // namespace asyncbo
