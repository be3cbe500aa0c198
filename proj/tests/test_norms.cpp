#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>

#include "isomlab/error.hpp"
#include "isomlab/norms.hpp"

using namespace isomlab;

namespace {

template <class M>
std::vector<double> svd_values(const M& a) {
  const RVector s = Eigen::JacobiSVD<M>(a).singularValues();
  return {s.data(), s.data() + s.size()};
}

double schatten_oracle(const std::vector<double>& s, double p) {
  if (std::isinf(p)) return s.front();
  double acc = 0.0;
  for (double x : s) acc += std::pow(x, p);
  return std::pow(acc, 1.0 / p);
}

template <class M, class Basis, class Eval>
CoordinateVector fd_gradient(const M& a, const Basis& basis, Eval eval) {
  const double h = 1e-5;
  CoordinateVector g(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    M step;
    if constexpr (std::is_same_v<M, RMatrix>)
      step = h * basis.real_element(i);
    else
      step = h * basis.element(i);
    g(i) = (eval(M(a + step)) - eval(M(a - step))) / (2.0 * h);
  }
  return g;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::InvalidDimension;
}

}  // namespace

TEST(NormValue, SchattenMatchesSvdOracle) {
  Rng rng = make_rng(1);
  for (int n = 2; n <= 5; ++n)
    for (double p : {1.0, 1.5, 2.0, 3.0, 5.0, double(INFINITY)}) {
      const TracelessHermitian a = random_hermitian_traceless(n, rng);
      const double expected = schatten_oracle(svd_values(a.matrix()), p);
      EXPECT_NEAR(norm_value(a, NormSpec::schatten(p)), expected, 1e-12 * expected) << n << " " << p;
    }
}

TEST(NormValue, FrobeniusIsSchattenTwo) {
  const TracelessHermitian a = random_hermitian_traceless(4, 3);
  EXPECT_NEAR(norm_value(a, NormSpec::frobenius()), norm_value(a, NormSpec::schatten(2.0)), 1e-13);
  EXPECT_NEAR(norm_value(a, NormSpec::frobenius()), std::sqrt((a.matrix().adjoint() * a.matrix()).trace().real()),
              1e-13);
}

TEST(NormValue, KyFanMatchesSvdOracle) {
  const TracelessHermitian a = random_hermitian_traceless(5, 4);
  const std::vector<double> s = svd_values(a.matrix());
  for (int k = 1; k <= 5; ++k)
    EXPECT_NEAR(norm_value(a, NormSpec::kyfan(k)), std::accumulate(s.begin(), s.begin() + k, 0.0), 1e-12);
}

TEST(NormValue, CSpectralMatchesSvdPairs) {
  Rng rng = make_rng(9);
  for (int n = 2; n <= 6; ++n) {
    const SkewSymmetricReal a = random_skew(n, rng);
    const std::vector<double> s = svd_values(a.matrix());
    std::vector<double> c(static_cast<std::size_t>(n / 2));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<double>(c.size() - i);
    double expected = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) expected += c[i] * s[2 * i];
    EXPECT_NEAR(norm_value(a, NormSpec::cspectral(c)), expected, 1e-12);
  }
}

TEST(NormValue, SkewSchattenAndFrobenius) {
  const SkewSymmetricReal a = random_skew(5, 2);
  const std::vector<double> s = svd_values(a.matrix());
  EXPECT_NEAR(norm_value(a, NormSpec::schatten(3.0, SpaceTag::skew_real)), schatten_oracle(s, 3.0), 1e-12);
  EXPECT_NEAR(norm_value(a, NormSpec::frobenius(SpaceTag::skew_real)), a.matrix().norm(), 1e-13);
}

TEST(Gradient, MatchesFiniteDifferenceOracle) {
  const OrthonormalBasis b = gell_mann_basis(4);
  const TracelessHermitian a = random_hermitian_traceless(4, 21);
  for (const char* name : {"frobenius", "schatten:1.5", "schatten:3", "schatten:1", "schatten:inf", "kyfan:2"}) {
    const NormSpec spec = parse_norm_spec(name);
    const CoordinateVector g = norm_gradient_coords(a.matrix(), spec, b);
    const CoordinateVector ref = fd_gradient(a.matrix(), b, [&](const CMatrix& x) {
      return norm_value(TracelessHermitian::unchecked(x), spec);
    });
    EXPECT_LT((g - ref).cwiseAbs().maxCoeff(), 1e-6) << name;
  }
}

TEST(Gradient, SkewMatchesFiniteDifferenceOracle) {
  const OrthonormalBasis b = skew_basis(5);
  const SkewSymmetricReal a = random_skew(5, 22);
  for (const NormSpec& spec : {NormSpec::cspectral({2.0, 1.0}), NormSpec::frobenius(SpaceTag::skew_real),
                               NormSpec::schatten(3.0, SpaceTag::skew_real)}) {
    const CoordinateVector g = norm_gradient_coords(a.matrix(), spec, b);
    const CoordinateVector ref = fd_gradient(a.matrix(), b, [&](const RMatrix& x) {
      return norm_value(SkewSymmetricReal::unchecked(x), spec);
    });
    EXPECT_LT((g - ref).cwiseAbs().maxCoeff(), 1e-6) << spec.to_string();
  }
}

TEST(Gradient, EulerIdentity) {
  // Norms are 1-homogeneous: <grad N(A), A> = N(A).
  const OrthonormalBasis b = gell_mann_basis(3);
  const TracelessHermitian a = random_hermitian_traceless(3, 5);
  for (const char* name : {"schatten:1.5", "schatten:4", "kyfan:1"}) {
    const NormSpec spec = parse_norm_spec(name);
    EXPECT_NEAR(norm_gradient_coords(a.matrix(), spec, b).dot(vectorize(a, b)), norm_value(a, spec), 1e-8);
  }
}

TEST(Gradient, TwoByTwoSpectralNormIsSmooth) {
  const OrthonormalBasis b = gell_mann_basis(2);
  const TracelessHermitian a = random_hermitian_traceless(2, 8);
  const CoordinateVector g = norm_gradient_coords(a.matrix(), NormSpec::schatten(INFINITY), b);
  EXPECT_LT((g - vectorize(a, b) / (std::sqrt(2.0) * a.matrix().norm())).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Gradient, DegeneratePointsRejected) {
  const OrthonormalBasis b = gell_mann_basis(3);
  EXPECT_EQ(code_of([&] { norm_gradient_coords(CMatrix(CMatrix::Zero(3, 3)), NormSpec::schatten(3.0), b); }),
            ErrorCode::DegeneratePoint);
  CMatrix tie = CMatrix::Zero(3, 3);
  tie.diagonal() << 1.0, 1.0, -2.0;
  // Singular values (2, 1, 1): Ky Fan 2 has no gap after the second value.
  EXPECT_EQ(code_of([&] { norm_gradient_coords(tie, NormSpec::kyfan(2), b); }), ErrorCode::DegeneratePoint);
  EXPECT_NO_THROW(norm_gradient_coords(tie, NormSpec::kyfan(1), b));
}

TEST(Invariance, AllSpecsInvariant) {
  for (int n = 2; n <= 5; ++n) {
    for (const char* name : {"frobenius", "schatten:1", "schatten:1.5", "schatten:3", "schatten:inf", "kyfan:1"})
      EXPECT_LT(check_invariance(parse_norm_spec(name), n, 100, 77).max_relative_deviation, 1e-10) << name;
    std::vector<double> c(static_cast<std::size_t>(n / 2), 1.0);
    EXPECT_LT(check_invariance(NormSpec::cspectral(c), n, 100, 78).max_relative_deviation, 1e-10);
  }
}

TEST(Spec, ParseAndPrintRoundTrip) {
  for (const char* name : {"frobenius", "schatten:1.5", "schatten:inf", "kyfan:2"})
    EXPECT_EQ(parse_norm_spec(name).to_string(), name);
  EXPECT_EQ(parse_norm_spec("cspec:2,1").to_string(), "cspec:2,1");
  EXPECT_EQ(parse_norm_spec("cspec:1,0").space, SpaceTag::skew_real);
  EXPECT_TRUE(std::isinf(std::get<Schatten>(parse_norm_spec("schatten:inf").variant).p));
}

TEST(Spec, InvalidRejected) {
  for (const char* bad : {"schatten:0.5", "schatten:", "schatten:x", "kyfan:0", "kyfan:1.5", "cspec:1,2",
                          "cspec:0,0", "cspec:-1", "nuclear", "frobenius:2"})
    EXPECT_EQ(code_of([&] { parse_norm_spec(bad); }), ErrorCode::InvalidNormSpec) << bad;
  EXPECT_EQ(code_of([] { NormSpec::kyfan(4).validate_for(3); }), ErrorCode::InvalidNormSpec);
  EXPECT_EQ(code_of([] { NormSpec::cspectral({1.0}).validate_for(4); }), ErrorCode::InvalidNormSpec);
  EXPECT_EQ(code_of([] { norm_value(random_skew(3, 1), NormSpec::schatten(3.0)); }), ErrorCode::SpecMismatch);
}

TEST(Spec, FrobeniusProportionalSpaces) {
  EXPECT_TRUE(NormSpec::schatten(2.0).is_frobenius_proportional(4));
  EXPECT_TRUE(NormSpec::schatten(3.0).is_frobenius_proportional(2));
  EXPECT_FALSE(NormSpec::schatten(3.0).is_frobenius_proportional(3));
  EXPECT_TRUE(NormSpec::cspectral({1.0}).is_frobenius_proportional(3));
  EXPECT_FALSE(NormSpec::cspectral({1.0, 0.0}).is_frobenius_proportional(4));
}

// On H0_2 the spectrum is {l, -l}, so every invariant norm is c ||A||_F.
TEST(Spec, TwoByTwoNormsAreFrobeniusMultiples) {
  Rng rng = make_rng(4);
  for (const char* name : {"schatten:1", "schatten:3", "schatten:inf", "kyfan:1"}) {
    const NormSpec spec = parse_norm_spec(name);
    const TracelessHermitian a = random_hermitian_traceless(2, rng);
    const TracelessHermitian b = random_hermitian_traceless(2, rng);
    EXPECT_NEAR(norm_value(a, spec) / a.matrix().norm(), norm_value(b, spec) / b.matrix().norm(), 1e-13);
  }
}
