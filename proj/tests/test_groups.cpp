#include <gtest/gtest.h>

#include <cmath>

#include "isomlab/error.hpp"
#include "isomlab/groups.hpp"

using namespace isomlab;

TEST(Haar, UnitaryAndSpecial) {
  Rng rng = make_rng(3);
  for (int n = 2; n <= 6; ++n) {
    const UnitaryMatrix u = haar_unitary(n, rng, true);
    EXPECT_LT(max_abs(CMatrix(u.matrix() * u.matrix().adjoint() - CMatrix::Identity(n, n))), 1e-13);
    EXPECT_TRUE(u.is_special());
    const OrthogonalMatrix q = haar_orthogonal(n, rng, true);
    EXPECT_NEAR(q.det(), 1.0, 1e-12);
  }
}

// For Haar U(n), |U_00|^2 ~ Beta(1, n-1): mean 1/n, second moment 2/(n(n+1)).
TEST(Haar, FirstEntryMoments) {
  const int n = 3;
  const int trials = 40000;
  Rng rng = make_rng(71);
  double m1 = 0.0;
  double m2 = 0.0;
  Complex phase(0.0, 0.0);
  for (int t = 0; t < trials; ++t) {
    const Complex z = haar_unitary(n, rng, false).matrix()(0, 0);
    const double p = std::norm(z);
    m1 += p;
    m2 += p * p;
    phase += z / std::abs(z);
  }
  EXPECT_NEAR(m1 / trials, 1.0 / n, 0.005);
  EXPECT_NEAR(m2 / trials, 2.0 / (n * (n + 1.0)), 0.005);
  EXPECT_LT(std::abs(phase) / trials, 0.02);  // uniform phase
}

TEST(Validation, NonUnitaryRejected) {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 0) = 1.1;
  try {
    UnitaryMatrix{m};
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitary);
  }
  RMatrix q = RMatrix::Identity(3, 3);
  q(0, 1) = 0.2;
  EXPECT_THROW(OrthogonalMatrix{q}, Error);
}

TEST(Adjoint, IsOrthogonalAndMatchesConjugation) {
  for (int n = 2; n <= 5; ++n) {
    const OrthonormalBasis b = gell_mann_basis(n);
    const UnitaryMatrix u = haar_unitary(n, 40u + n, true);
    const RealLinearMap m = ad_matrix(u, b);
    EXPECT_LT(max_abs(RMatrix(m.matrix.transpose() * m.matrix - RMatrix::Identity(m.dim(), m.dim()))), 1e-13);
    const TracelessHermitian a = random_hermitian_traceless(n, 5);
    const CMatrix direct = u.matrix() * a.matrix() * u.matrix().adjoint();
    EXPECT_LT(max_abs(CMatrix(apply(m, a, b).matrix() - direct)), 1e-13);
  }
}

TEST(Adjoint, BlindToRootsOfUnity) {
  const int n = 3;
  const OrthonormalBasis b = gell_mann_basis(n);
  const UnitaryMatrix u = haar_unitary(n, 8, true);
  const UnitaryMatrix v(u.matrix() * std::polar(1.0, 2.0 * std::acos(-1.0) / n));
  EXPECT_LT(map_distance(ad_matrix(u, b), ad_matrix(v, b)), 1e-13);
  EXPECT_LT(distance_mod_roots(u.matrix(), v.matrix()), 1e-13);
  EXPECT_GT(max_abs(CMatrix(u.matrix() - v.matrix())), 0.1);
}

TEST(Cartan, TraceAndInvolution) {
  const OrthonormalBasis b3 = gell_mann_basis(3);
  const RealLinearMap s = cartan_matrix(b3);
  // +1 eigenspace: imaginary antisymmetric part (3); -1: real symmetric traceless (5).
  EXPECT_NEAR(s.matrix.trace(), -2.0, 1e-14);
  EXPECT_LT(max_abs(RMatrix(s.matrix * s.matrix - RMatrix::Identity(8, 8))), 1e-14);

  const RealLinearMap s2 = cartan_matrix(gell_mann_basis(2));
  RMatrix expected = RMatrix::Zero(3, 3);
  expected.diagonal() << -1, 1, -1;
  EXPECT_LT(max_abs(RMatrix(s2.matrix - expected)), 1e-15);
  EXPECT_NEAR(s2.matrix.determinant(), 1.0, 1e-14);  // sigma is a rotation of H0_2
}

TEST(Cartan, EigenspaceDimensions) {
  for (int n = 2; n <= 5; ++n) {
    const RealLinearMap s = cartan_matrix(gell_mann_basis(n));
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(s.matrix);
    int plus = 0;
    for (int i = 0; i < s.dim(); ++i) plus += eig.eigenvalues()(i) > 0 ? 1 : 0;
    EXPECT_EQ(plus, n * (n - 1) / 2);
    EXPECT_EQ(s.dim() - plus, n * (n + 1) / 2 - 1);
  }
}

TEST(Cartan, NormalizesConjugation) {
  Rng rng = make_rng(12);
  for (int t = 0; t < 50; ++t) {
    const UnitaryMatrix u = haar_unitary(4, rng, false);
    EXPECT_LT(verify_sigma_normalizes(u, 1, rng()), 1e-11);
  }
}

TEST(Psi, SwapsA14AndA23) {
  const RealLinearMap psi = psi_matrix();
  EXPECT_EQ(RMatrix(psi.matrix * psi.matrix), RMatrix(RMatrix::Identity(6, 6)));
  EXPECT_EQ(psi.matrix(2, 3), 1.0);
  EXPECT_EQ(psi.matrix(3, 2), 1.0);
  EXPECT_EQ(psi.matrix(2, 2), 0.0);
}

TEST(Psi, IdentityOnSelfDualReflectionOnAntiSelfDual) {
  const RealLinearMap psi = psi_matrix();
  // Coordinates (a12,a13,a14,a23,a24,a34). Self-dual: e12+e34, e13-e24, e14+e23.
  const double r = 1.0 / std::sqrt(2.0);
  RMatrix sd = RMatrix::Zero(6, 3);
  sd(0, 0) = r, sd(5, 0) = r;
  sd(1, 1) = r, sd(4, 1) = -r;
  sd(2, 2) = r, sd(3, 2) = r;
  RMatrix asd = RMatrix::Zero(6, 3);
  asd(0, 0) = r, asd(5, 0) = -r;
  asd(1, 1) = r, asd(4, 1) = r;
  asd(2, 2) = r, asd(3, 2) = -r;
  RMatrix flip = RMatrix::Identity(3, 3);
  flip(2, 2) = -1.0;
  EXPECT_LT(max_abs(RMatrix(sd.transpose() * psi.matrix * sd - RMatrix::Identity(3, 3))), 1e-15);
  EXPECT_LT(max_abs(RMatrix(asd.transpose() * psi.matrix * asd - flip)), 1e-15);
  EXPECT_LT(max_abs(RMatrix(sd.transpose() * psi.matrix * asd)), 1e-15);
  EXPECT_NEAR(psi.matrix.determinant(), -1.0, 1e-14);
}

TEST(Tau, IsMinusIdentity) {
  for (int n = 2; n <= 6; ++n) {
    const RealLinearMap t = tau_matrix(skew_basis(n));
    EXPECT_EQ(t.matrix, RMatrix(-RMatrix::Identity(t.dim(), t.dim())));
  }
}

TEST(SoAdjoint, RejectsReflectionUnlessAllowed) {
  const OrthonormalBasis b = skew_basis(3);
  RMatrix r = RMatrix::Identity(3, 3);
  r(2, 2) = -1.0;
  const OrthogonalMatrix q(r);
  try {
    so_adjoint_matrix(q, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSpecialOrthogonal);
  }
  EXPECT_NO_THROW(so_adjoint_matrix(q, b, true));
}

TEST(Maps, ComposeInvertScale) {
  const OrthonormalBasis b = gell_mann_basis(3);
  const RealLinearMap m = ad_matrix(haar_unitary(3, 1, true), b);
  const RealLinearMap id = compose(m, invert(m));
  EXPECT_LT(map_distance(id, RealLinearMap::identity(SpaceTag::hermitian_traceless, 3)), 1e-13);
  EXPECT_LT(map_distance(scale(scale(m, 2.0), 0.5), m), 1e-15);
  RealLinearMap singular = m;
  singular.matrix.col(0).setZero();
  try {
    invert(singular);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMap);
  }
}

TEST(Maps, SizeMismatchRejected) {
  EXPECT_THROW(RealLinearMap(SpaceTag::hermitian_traceless, 3, RMatrix::Identity(7, 7)), Error);
  const RealLinearMap a = RealLinearMap::identity(SpaceTag::hermitian_traceless, 3);
  const RealLinearMap c = RealLinearMap::identity(SpaceTag::skew_real, 3);
  EXPECT_THROW(compose(a, c), Error);
}
