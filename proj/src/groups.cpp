#include "isomlab/groups.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "isomlab/error.hpp"

namespace isomlab {

namespace {

constexpr double kUnitarityTol = 1e-11;

void require_basis(const OrthonormalBasis& basis, SpaceTag tag, int n) {
  if (basis.space() != tag || basis.n() != n)
    throw Error(ErrorCode::InvalidDimension, "basis does not match operand (n=" + std::to_string(n) + ")");
}

}  // namespace

UnitaryMatrix::UnitaryMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
    throw Error(ErrorCode::InvalidDimension, "unitary matrix must be square");
  const auto n = entries_.rows();
  const double res = max_abs(entries_ * entries_.adjoint() - CMatrix::Identity(n, n));
  if (res > kUnitarityTol) throw Error(ErrorCode::NotUnitary, "U U* != I", res);
  det_ = entries_.determinant();
}

OrthogonalMatrix::OrthogonalMatrix(RMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
    throw Error(ErrorCode::InvalidDimension, "orthogonal matrix must be square");
  const auto n = entries_.rows();
  const double res = max_abs(entries_ * entries_.transpose() - RMatrix::Identity(n, n));
  if (res > kUnitarityTol) throw Error(ErrorCode::NotOrthogonal, "Q Q^T != I", res);
  det_ = entries_.determinant();
}

RealLinearMap::RealLinearMap(SpaceTag space_, int n_, RMatrix matrix_)
    : space(space_), n(n_), matrix(std::move(matrix_)) {
  const int d = space_dimension(space, n);
  if (matrix.rows() != d || matrix.cols() != d)
    throw Error(ErrorCode::InvalidDimension, "map size does not match space dimension " + std::to_string(d));
  if (!matrix.allFinite()) throw Error(ErrorCode::InvalidDimension, "map has non-finite entries");
}

RealLinearMap RealLinearMap::identity(SpaceTag space, int n) {
  const int d = space_dimension(space, n);
  return RealLinearMap(space, n, RMatrix::Identity(d, d));
}

UnitaryMatrix haar_unitary(int n, Rng& rng, bool special) {
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "haar_unitary needs n >= 1");
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double re = standard_normal(rng);
      const double im = standard_normal(rng);
      z(i, j) = Complex(re * r, im * r);
    }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix& rr = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = rr(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  if (special) {
    const Complex det = q.determinant();
    const Complex root = std::polar(1.0, std::arg(det) / n);
    q /= root;
  }
  return UnitaryMatrix(std::move(q));
}

UnitaryMatrix haar_unitary(int n, std::uint64_t seed, bool special) {
  Rng rng = make_rng(seed);
  return haar_unitary(n, rng, special);
}

OrthogonalMatrix haar_orthogonal(int n, Rng& rng, bool special) {
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "haar_orthogonal needs n >= 1");
  RMatrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = standard_normal(rng);
  Eigen::HouseholderQR<RMatrix> qr(z);
  RMatrix q = qr.householderQ() * RMatrix::Identity(n, n);
  const RMatrix& rr = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (rr(j, j) < 0.0) q.col(j) *= -1.0;
  if (special && q.determinant() < 0.0) q.col(0) *= -1.0;
  return OrthogonalMatrix(std::move(q));
}

OrthogonalMatrix haar_orthogonal(int n, std::uint64_t seed, bool special) {
  Rng rng = make_rng(seed);
  return haar_orthogonal(n, rng, special);
}

RealLinearMap ad_matrix(const UnitaryMatrix& u, const OrthonormalBasis& basis) {
  require_basis(basis, SpaceTag::hermitian_traceless, u.n());
  const int d = basis.dim();
  RMatrix m(d, d);
  const CMatrix& um = u.matrix();
  const CMatrix uinv = um.adjoint();
  for (int i = 0; i < d; ++i) m.col(i) = coordinates_of(CMatrix(um * basis.element(i) * uinv), basis);
  return RealLinearMap(SpaceTag::hermitian_traceless, u.n(), std::move(m));
}

RealLinearMap cartan_matrix(const OrthonormalBasis& basis) {
  if (basis.space() != SpaceTag::hermitian_traceless)
    throw Error(ErrorCode::InvalidDimension, "cartan_matrix needs the hermitian basis");
  const int d = basis.dim();
  RMatrix m(d, d);
  for (int i = 0; i < d; ++i) m.col(i) = coordinates_of(CMatrix(-basis.element(i).transpose()), basis);
  return RealLinearMap(SpaceTag::hermitian_traceless, basis.n(), std::move(m));
}

double verify_sigma_normalizes(const UnitaryMatrix& u, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidDimension, "trials must be >= 1");
  const int n = u.n();
  const CMatrix& um = u.matrix();
  const CMatrix ut = um.transpose();
  const CMatrix ut_inv = ut.partialPivLu().inverse();
  const CMatrix u_inv = um.partialPivLu().inverse();
  Rng rng = make_rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const CMatrix a = random_hermitian_traceless(n, rng).matrix();
    const CMatrix lhs = -(um * a * u_inv).transpose();
    const CMatrix rhs = ut_inv * (-a.transpose()) * ut;
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  return worst;
}

RealLinearMap so_adjoint_matrix(const OrthogonalMatrix& q, const OrthonormalBasis& basis, bool allow_reflection) {
  require_basis(basis, SpaceTag::skew_real, q.n());
  if (!q.is_special() && !allow_reflection)
    throw Error(ErrorCode::NotSpecialOrthogonal, "det Q = -1", q.det());
  const int d = basis.dim();
  const RMatrix& qm = q.matrix();
  RMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    m.col(i) = coordinates_of(RMatrix(qm * basis.real_element(i) * qm.transpose()), basis);
  return RealLinearMap(SpaceTag::skew_real, q.n(), std::move(m));
}

RealLinearMap psi_matrix() {
  RMatrix m = RMatrix::Identity(6, 6);
  // positions of a14 and a23
  m(2, 2) = 0.0;
  m(3, 3) = 0.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return RealLinearMap(SpaceTag::skew_real, 4, std::move(m));
}

RealLinearMap tau_matrix(const OrthonormalBasis& basis) {
  if (basis.space() != SpaceTag::skew_real)
    throw Error(ErrorCode::InvalidDimension, "tau_matrix needs the skew basis");
  const int d = basis.dim();
  RMatrix m(d, d);
  for (int i = 0; i < d; ++i) m.col(i) = coordinates_of(RMatrix(basis.real_element(i).transpose()), basis);
  return RealLinearMap(SpaceTag::skew_real, basis.n(), std::move(m));
}

RealLinearMap compose(const RealLinearMap& a, const RealLinearMap& b) {
  if (a.space != b.space || a.n != b.n)
    throw Error(ErrorCode::InvalidDimension, "compose: maps act on different spaces");
  return RealLinearMap(a.space, a.n, a.matrix * b.matrix);
}

RealLinearMap invert(const RealLinearMap& a) {
  Eigen::JacobiSVD<RMatrix> svd(a.matrix);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0) || smax / smin > 1e12)
    throw Error(ErrorCode::SingularMap, "map is singular or ill-conditioned", smin > 0.0 ? smax / smin : INFINITY);
  return RealLinearMap(a.space, a.n, a.matrix.partialPivLu().inverse());
}

RealLinearMap scale(const RealLinearMap& a, double t) { return RealLinearMap(a.space, a.n, t * a.matrix); }

TracelessHermitian apply(const RealLinearMap& m, const TracelessHermitian& a, const OrthonormalBasis& basis) {
  if (m.space != SpaceTag::hermitian_traceless || m.n != a.n())
    throw Error(ErrorCode::InvalidDimension, "apply: map and element differ");
  return devectorize_hermitian(m.matrix * vectorize(a, basis), basis);
}

SkewSymmetricReal apply(const RealLinearMap& m, const SkewSymmetricReal& a, const OrthonormalBasis& basis) {
  if (m.space != SpaceTag::skew_real || m.n != a.n())
    throw Error(ErrorCode::InvalidDimension, "apply: map and element differ");
  return devectorize_skew(m.matrix * vectorize(a, basis), basis);
}

double distance_mod_roots(const CMatrix& u, const CMatrix& v) {
  const auto n = static_cast<int>(u.rows());
  double best = INFINITY;
  for (int k = 0; k < n; ++k) {
    const Complex zeta = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
    best = std::min(best, max_abs(u - zeta * v));
  }
  return best;
}

double map_distance(const RealLinearMap& a, const RealLinearMap& b) { return max_abs(RMatrix(a.matrix - b.matrix)); }

}  // namespace isomlab
