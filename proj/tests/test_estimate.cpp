#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "isomlab/error.hpp"
#include "isomlab/estimate.hpp"
#include "isomlab/kernels.hpp"

using namespace isomlab;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::InvalidDimension;
}

TracelessHermitian diag2(double x) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = x;
  m(1, 1) = -x;
  return TracelessHermitian(m);
}

// Scan the SU(2) orbit: U = [[cos t, -e^{-ip} sin t], [e^{ip} sin t, cos t]].
double circle_orbit_radius(const TracelessHermitian& a, const TracelessHermitian& c) {
  double best = 0.0;
  const int steps = 2000;
  const double pi = std::acos(-1.0);
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; j < 8; ++j) {
      const double t = pi * i / steps;
      const Complex e = std::polar(1.0, 2.0 * pi * j / 8);
      CMatrix u(2, 2);
      u << std::cos(t), -std::conj(e) * std::sin(t), e * std::sin(t), std::cos(t);
      best = std::max(best, std::abs((a.matrix() * u * c.matrix() * u.adjoint()).trace().real()));
    }
  return best;
}

}  // namespace

TEST(GapCut, FindsLargestRatio) {
  const auto cut = largest_gap_cut({5.0, 4.0, 3.0, 1e-9, 1e-10});
  ASSERT_TRUE(cut.has_value());
  EXPECT_EQ(cut->rank, 3);
  EXPECT_NEAR(cut->ratio, 3e9, 1.0);
  EXPECT_FALSE(largest_gap_cut({5.0, 4.0, 3.0, 2.0}).has_value());
}

TEST(GapCut, RepeatedExactZerosCutAtFirst) {
  const auto cut = largest_gap_cut({2.0, 1.0, 0.0, 0.0, 0.0});
  ASSERT_TRUE(cut.has_value());
  EXPECT_EQ(cut->rank, 2);
}

TEST(Dimension, HermitianExamples) {
  const DimensionReport p3 = isometry_algebra_dimension(NormSpec::schatten(3.0), 3, 0, 7);
  EXPECT_EQ(p3.estimated_dim, 8);
  EXPECT_EQ(p3.matched_case, MatchedCase::adjoint_group);
  EXPECT_EQ(p3.samples_used, 3 * 64);
  EXPECT_GE(p3.gap_ratio, 1e3);
  EXPECT_EQ(p3.singular_values.size(), 64u);
  EXPECT_TRUE(std::is_sorted(p3.singular_values.rbegin(), p3.singular_values.rend()));

  const DimensionReport p2 = isometry_algebra_dimension(NormSpec::schatten(2.0), 3, 0, 7);
  EXPECT_EQ(p2.estimated_dim, 28);
  EXPECT_EQ(p2.matched_case, MatchedCase::full_orthogonal);
}

TEST(Dimension, TwoByTwoCoincidence) {
  for (double p : {1.5, 2.0, 3.0}) {
    const DimensionReport r = isometry_algebra_dimension(NormSpec::schatten(p), 2, 0, 3);
    EXPECT_EQ(r.estimated_dim, 3) << p;
    EXPECT_EQ(r.matched_case, MatchedCase::adjoint_group);
  }
}

TEST(Dimension, FrobeniusIsExact) {
  for (int n = 2; n <= 4; ++n) {
    const int d = n * n - 1;
    const DimensionReport r = isometry_algebra_dimension(NormSpec::frobenius(), n, 0, 1);
    EXPECT_EQ(r.estimated_dim, d * (d - 1) / 2);
    EXPECT_GT(r.gap_ratio, 1e6);
  }
}

TEST(Dimension, NoIntermediateValues) {
  for (int n = 3; n <= 5; ++n)
    for (const char* name : {"schatten:1.5", "schatten:3", "schatten:5", "kyfan:1"}) {
      const DimensionReport r = isometry_algebra_dimension(parse_norm_spec(name), n, 0, 5);
      EXPECT_EQ(r.estimated_dim, n * n - 1) << name << " n=" << n;
      EXPECT_GE(r.gap_ratio, 1e3);
    }
}

TEST(Dimension, StableUnderReseeding) {
  const NormSpec spec = NormSpec::schatten(1.5);
  EXPECT_EQ(isometry_algebra_dimension(spec, 4, 0, 1).estimated_dim,
            isometry_algebra_dimension(spec, 4, 0, 2).estimated_dim);
}

TEST(Dimension, SkewExamples) {
  EXPECT_EQ(skew_isometry_algebra_dimension(NormSpec::cspectral({2.0, 1.0}), 5, 0, 1).estimated_dim, 10);
  EXPECT_EQ(skew_isometry_algebra_dimension(NormSpec::frobenius(SpaceTag::skew_real), 5, 0, 1).estimated_dim, 45);
  const DimensionReport r = skew_isometry_algebra_dimension(NormSpec::cspectral({1.0, 0.0}), 4, 0, 1);
  EXPECT_EQ(r.estimated_dim, 6);
  EXPECT_EQ(r.matched_case, MatchedCase::adjoint_group);
  EXPECT_GE(r.gap_ratio, 1e3);
}

TEST(Dimension, ArgumentErrors) {
  EXPECT_EQ(code_of([] { isometry_algebra_dimension(NormSpec::schatten(3.0), 3, 100, 1); }),
            ErrorCode::InvalidDimension);
  EXPECT_EQ(code_of([] { isometry_algebra_dimension(NormSpec::cspectral({1.0}), 3, 0, 1); }),
            ErrorCode::SpecMismatch);
  // K_2 is a line: the only constraint has full rank and no gap exists.
  EXPECT_EQ(code_of([] { skew_isometry_algebra_dimension(NormSpec::cspectral({1.0}), 2, 0, 1); }),
            ErrorCode::InconclusiveDimension);
}

TEST(Range, AlignedTwoByTwo) {
  const TracelessHermitian a = diag2(1.0 / std::sqrt(2.0));
  const RangeSample r = c_numerical_range_sample(a, a, 500, 1);
  EXPECT_NEAR(r.hi, 1.0, 1e-15);
  EXPECT_NEAR(r.lo, -1.0, 1e-15);
  EXPECT_NEAR(r.radius, 1.0, 1e-15);
  EXPECT_EQ(r.values.size(), 502u);
}

TEST(Range, ZeroC) {
  const TracelessHermitian a = random_hermitian_traceless(3, 2);
  const TracelessHermitian z(CMatrix::Zero(3, 3));
  const RangeSample r = c_numerical_range_sample(a, z, 100, 1);
  for (double v : r.values) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(c_numerical_radius(a, z, 8, 1), 0.0);
}

TEST(Range, ContainsPermutationPoints) {
  const TracelessHermitian a = random_hermitian_traceless(3, 3);
  const TracelessHermitian c = random_hermitian_traceless(3, 4);
  const RangeSample r = c_numerical_range_sample(a, c, 1000, 5);
  const auto ext = permutation_extremes(a, c);
  EXPECT_GE(r.hi, ext[1] - 1e-12);
  EXPECT_LE(r.lo, ext[0] + 1e-12);
  for (double v : r.values) {
    EXPECT_LE(r.lo, v);
    EXPECT_LE(v, r.hi);
  }
  EXPECT_EQ(r.radius, std::max(std::abs(r.lo), std::abs(r.hi)));
  EXPECT_EQ(r.values.size(), 1006u);
  EXPECT_EQ(code_of([&] { c_numerical_range_sample(a, random_hermitian_traceless(4, 1), 10, 1); }),
            ErrorCode::InvalidDimension);
}

TEST(Radius, TwoByTwoAnalytic) {
  for (auto [a, c] : {std::pair{0.7, 1.3}, std::pair{2.0, 0.25}}) {
    const TracelessHermitian x = diag2(a);
    const TracelessHermitian y = diag2(c);
    const double oracle = circle_orbit_radius(x, y);
    EXPECT_NEAR(oracle, 2.0 * a * c, 1e-6);
    EXPECT_NEAR(c_numerical_radius(x, y, 8, 1), 2.0 * a * c, 1e-6);
  }
}

TEST(Radius, BeatsMonteCarloAndPermutationBound) {
  const TracelessHermitian a = random_hermitian_traceless(3, 31);
  const TracelessHermitian c = random_hermitian_traceless(3, 32);
  const std::vector<double> mc = kernels::orbit_trace_values(a.matrix(), c.matrix(), 200000, 9);
  double mc_max = 0.0;
  for (double v : mc) mc_max = std::max(mc_max, std::abs(v));
  const RadiusResult r = c_numerical_radius_detailed(a, c, 8, 1);
  EXPECT_GE(r.value, mc_max - 1e-6);
  EXPECT_GE(r.ascent_value, r.permutation_bound - 1e-9);
  EXPECT_LE(r.ascent_value, r.permutation_bound + 1e-9);
  EXPECT_GE(r.starts, 10);
}

TEST(Radius, AscentFromRandomStartsOnly) {
  for (int n = 3; n <= 5; ++n) {
    const TracelessHermitian a = random_hermitian_traceless(n, 41u + n);
    const TracelessHermitian c = random_hermitian_traceless(n, 42u + n);
    const RadiusResult r = c_numerical_radius_detailed(a, c, 8, 3);
    EXPECT_NEAR(r.random_start_value, r.permutation_bound, 1e-6) << n;
  }
}

TEST(Radius, Symmetric) {
  Rng rng = make_rng(50);
  for (int t = 0; t < 10; ++t) {
    const TracelessHermitian a = random_hermitian_traceless(3, rng);
    const TracelessHermitian c = random_hermitian_traceless(3, rng);
    EXPECT_NEAR(c_numerical_radius(a, c, 8, t), c_numerical_radius(c, a, 8, t), 1e-6);
  }
}

TEST(Preserver, CanonicalFormsPreserveRadiusAndRange) {
  const TracelessHermitian c = random_hermitian_traceless(3, 60);
  const PreserverReport r = verify_preserver_forms(c, 3, 20, 61);
  EXPECT_EQ(r.trials, 20);
  for (int f = 0; f < kPreserverForms; ++f) EXPECT_LT(r.radius_deviation[static_cast<std::size_t>(f)], 1e-6);
  EXPECT_LT(r.sample_deviation, 1e-12);
  EXPECT_LE(r.interval_deviation, 1e-2);
}
