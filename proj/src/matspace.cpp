#include "isomlab/matspace.hpp"

#include <cmath>
#include <string>

#include "isomlab/error.hpp"

namespace isomlab {

namespace {

void require_square(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols || rows < 1)
    throw Error(ErrorCode::InvalidDimension,
                "expected a square matrix, got " + std::to_string(rows) + "x" + std::to_string(cols));
}

void require_n(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidDimension, "n must be >= 2, got " + std::to_string(n));
}

void require_basis(const OrthonormalBasis& basis, SpaceTag tag, int n) {
  if (basis.space() != tag || basis.n() != n)
    throw Error(ErrorCode::InvalidDimension,
                std::string("element of ") + to_string(tag) + " n=" + std::to_string(n) +
                    " does not match basis " + to_string(basis.space()) + " n=" + std::to_string(basis.n()));
}

}  // namespace

const char* to_string(SpaceTag tag) {
  return tag == SpaceTag::hermitian_traceless ? "hermitian_traceless" : "skew_real";
}

int space_dimension(SpaceTag tag, int n) {
  return tag == SpaceTag::hermitian_traceless ? n * n - 1 : n * (n - 1) / 2;
}


TracelessHermitian::TracelessHermitian(CMatrix entries) : entries_(std::move(entries)) {
  require_square(entries_.rows(), entries_.cols());
  const double scale = 1.0 + max_abs(entries_);
  if (max_abs(entries_ - entries_.adjoint()) > kStructuralTol * scale)
    throw Error(ErrorCode::NotHermitian, "matrix is not self-adjoint");
  if (std::abs(entries_.trace()) > kStructuralTol * scale)
    throw Error(ErrorCode::NotTraceless, "matrix has nonzero trace", std::abs(entries_.trace()));
}

TracelessHermitian TracelessHermitian::unchecked(CMatrix entries) {
  return TracelessHermitian(std::move(entries), Unchecked{});
}

SkewSymmetricReal::SkewSymmetricReal(RMatrix entries) : entries_(std::move(entries)) {
  require_square(entries_.rows(), entries_.cols());
  if (max_abs(entries_ + entries_.transpose()) > kStructuralTol * (1.0 + max_abs(entries_)))
    throw Error(ErrorCode::NotSkewSymmetric, "matrix is not skew-symmetric");
}

SkewSymmetricReal SkewSymmetricReal::unchecked(RMatrix entries) {
  return SkewSymmetricReal(std::move(entries), Unchecked{});
}

RMatrix OrthonormalBasis::gram() const {
  const int d = dim();
  RMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      g(i, j) = (elements_[i].adjoint() * elements_[j]).trace().real();
  return g;
}

OrthonormalBasis gell_mann_basis(int n) {
  require_n(n);
  OrthonormalBasis basis;
  basis.space_ = SpaceTag::hermitian_traceless;
  basis.n_ = n;
  basis.elements_.reserve(static_cast<std::size_t>(n * n - 1));
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i_unit(0.0, 1.0);

  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      CMatrix b = CMatrix::Zero(n, n);
      b(j, k) = r;
      b(k, j) = r;
      basis.elements_.push_back(std::move(b));
    }
  // -i(E_jk - E_kj)/sqrt2, which is sigma_y/sqrt2 for n = 2.
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      CMatrix b = CMatrix::Zero(n, n);
      b(j, k) = -i_unit * r;
      b(k, j) = i_unit * r;
      basis.elements_.push_back(std::move(b));
    }
  for (int l = 1; l < n; ++l) {
    CMatrix b = CMatrix::Zero(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (int t = 0; t < l; ++t) b(t, t) = s;
    b(l, l) = -static_cast<double>(l) * s;
    basis.elements_.push_back(std::move(b));
  }
  return basis;
}

OrthonormalBasis skew_basis(int n) {
  require_n(n);
  OrthonormalBasis basis;
  basis.space_ = SpaceTag::skew_real;
  basis.n_ = n;
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      RMatrix f = RMatrix::Zero(n, n);
      f(j, k) = r;
      f(k, j) = -r;
      basis.elements_.push_back(f.cast<Complex>());
      basis.real_elements_.push_back(std::move(f));
    }
  return basis;
}

OrthonormalBasis basis_for(SpaceTag tag, int n) {
  return tag == SpaceTag::hermitian_traceless ? gell_mann_basis(n) : skew_basis(n);
}

CoordinateVector coordinates_of(const CMatrix& a, const OrthonormalBasis& basis) {
  const int d = basis.dim();
  CoordinateVector v(d);
  // tr(B A) = sum_ab B_ab A_ba
  for (int i = 0; i < d; ++i) v(i) = basis.element(i).transpose().cwiseProduct(a).sum().real();
  return v;
}

CoordinateVector coordinates_of(const RMatrix& a, const OrthonormalBasis& basis) {
  CoordinateVector v(basis.dim());
  // tr(F_jk^T A) = (a_jk - a_kj) / sqrt2, written so transposed basis elements map to exactly -1.
  const double half_root2 = 0.5 * std::sqrt(2.0);
  const int n = basis.n();
  int i = 0;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k, ++i) v(i) = (a(j, k) - a(k, j)) * half_root2;
  return v;
}

CoordinateVector vectorize(const TracelessHermitian& a, const OrthonormalBasis& basis) {
  require_basis(basis, SpaceTag::hermitian_traceless, a.n());
  return coordinates_of(a.matrix(), basis);
}

CoordinateVector vectorize(const SkewSymmetricReal& a, const OrthonormalBasis& basis) {
  require_basis(basis, SpaceTag::skew_real, a.n());
  return coordinates_of(a.matrix(), basis);
}

TracelessHermitian devectorize_hermitian(const CoordinateVector& v, const OrthonormalBasis& basis) {
  if (basis.space() != SpaceTag::hermitian_traceless || v.size() != basis.dim())
    throw Error(ErrorCode::InvalidDimension, "coordinate length does not match hermitian basis");
  CMatrix a = CMatrix::Zero(basis.n(), basis.n());
  for (int i = 0; i < basis.dim(); ++i) a += v(i) * basis.element(i);
  return TracelessHermitian::unchecked(std::move(a));
}

SkewSymmetricReal devectorize_skew(const CoordinateVector& v, const OrthonormalBasis& basis) {
  if (basis.space() != SpaceTag::skew_real || v.size() != basis.dim())
    throw Error(ErrorCode::InvalidDimension, "coordinate length does not match skew basis");
  RMatrix a = RMatrix::Zero(basis.n(), basis.n());
  for (int i = 0; i < basis.dim(); ++i) a += v(i) * basis.real_element(i);
  return SkewSymmetricReal::unchecked(std::move(a));
}

TracelessHermitian project_traceless(const CMatrix& a) {
  require_square(a.rows(), a.cols());
  if (max_abs(a - a.adjoint()) > kStructuralTol * (1.0 + max_abs(a)))
    throw Error(ErrorCode::NotHermitian, "project_traceless needs a Hermitian input");
  const auto n = a.rows();
  CMatrix out = a;
  const Complex shift = a.trace() / static_cast<double>(n);
  out.diagonal().array() -= shift;
  // Re-symmetrize so the output is exactly Hermitian.
  out = 0.5 * (out + out.adjoint()).eval();
  return TracelessHermitian::unchecked(std::move(out));
}

double trace_form(const TracelessHermitian& a, const TracelessHermitian& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::InvalidDimension, "trace_form operands differ in size");
  return a.matrix().transpose().cwiseProduct(b.matrix()).sum().real();
}

double trace_form(const SkewSymmetricReal& a, const SkewSymmetricReal& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::InvalidDimension, "trace_form operands differ in size");
  return a.matrix().cwiseProduct(b.matrix()).sum();
}

TracelessHermitian random_hermitian_traceless(int n, Rng& rng) {
  require_n(n);
  const int d = n * n - 1;
  CoordinateVector v(d);
  for (int i = 0; i < d; ++i) v(i) = standard_normal(rng);
  return devectorize_hermitian(v, gell_mann_basis(n));
}

TracelessHermitian random_hermitian_traceless(int n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_hermitian_traceless(n, rng);
}

SkewSymmetricReal random_skew(int n, Rng& rng) {
  require_n(n);
  const int d = n * (n - 1) / 2;
  CoordinateVector v(d);
  for (int i = 0; i < d; ++i) v(i) = standard_normal(rng);
  return devectorize_skew(v, skew_basis(n));
}

SkewSymmetricReal random_skew(int n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_skew(n, rng);
}

}  // namespace isomlab
