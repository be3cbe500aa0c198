#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "isomlab/rng.hpp"

namespace isomlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Coordinates of a space element with respect to an OrthonormalBasis.
using CoordinateVector = Eigen::VectorXd;

enum class SpaceTag { hermitian_traceless, skew_real };

const char* to_string(SpaceTag tag);

/// Structural tolerance used by every space-membership check.
inline constexpr double kStructuralTol = 1e-12;

/// Dimension of the real space: n^2-1 for H0_n, n(n-1)/2 for K_n(R).
int space_dimension(SpaceTag tag, int n);

/// Self-adjoint traceless n x n matrix (an element of H0_n).
class TracelessHermitian {
 public:
  /// Validates Hermitian-ness and vanishing trace; throws NotHermitian /
  /// NotTraceless.
  explicit TracelessHermitian(CMatrix entries);

  /// Skips validation; for values produced by closed operations.
  static TracelessHermitian unchecked(CMatrix entries);

  const CMatrix& matrix() const noexcept { return entries_; }
  int n() const noexcept { return static_cast<int>(entries_.rows()); }

 private:
  struct Unchecked {};
  TracelessHermitian(CMatrix entries, Unchecked) : entries_(std::move(entries)) {}
  CMatrix entries_;
};

/// Real skew-symmetric n x n matrix (an element of K_n(R)).
class SkewSymmetricReal {
 public:
  explicit SkewSymmetricReal(RMatrix entries);
  static SkewSymmetricReal unchecked(RMatrix entries);

  const RMatrix& matrix() const noexcept { return entries_; }
  int n() const noexcept { return static_cast<int>(entries_.rows()); }

 private:
  struct Unchecked {};
  SkewSymmetricReal(RMatrix entries, Unchecked) : entries_(std::move(entries)) {}
  RMatrix entries_;
};

/// Trace-orthonormal basis of H0_n or K_n(R).
///
/// Hermitian ordering: symmetric block (E_jk+E_kj)/sqrt2, then antisymmetric
/// block -i(E_jk-E_kj)/sqrt2, both over j<k in lexicographic order, then the
/// diagonal block diag(1,..,1,-l,0,..)/sqrt(l(l+1)) for l = 1..n-1. For n = 2
/// this is (sigma_x, sigma_y, sigma_z)/sqrt2.
///
/// Skew ordering: F_jk = (E_jk-E_kj)/sqrt2 for j<k lexicographic, so that for
/// n = 4 coordinates read (a12,a13,a14,a23,a24,a34) up to the factor sqrt2.
class OrthonormalBasis {
 public:
  SpaceTag space() const noexcept { return space_; }
  int n() const noexcept { return n_; }
  int dim() const noexcept { return static_cast<int>(elements_.size()); }

  const CMatrix& element(int i) const { return elements_.at(static_cast<std::size_t>(i)); }
  /// Real view of a skew element (only valid for skew_real bases).
  const RMatrix& real_element(int i) const { return real_elements_.at(static_cast<std::size_t>(i)); }

  /// Gram matrix under the trace form (tr(B_i B_j) resp. tr(B_i^T B_j)).
  RMatrix gram() const;

 private:
  friend OrthonormalBasis gell_mann_basis(int n);
  friend OrthonormalBasis skew_basis(int n);

  SpaceTag space_ = SpaceTag::hermitian_traceless;
  int n_ = 0;
  std::vector<CMatrix> elements_;
  std::vector<RMatrix> real_elements_;
};

OrthonormalBasis gell_mann_basis(int n);
OrthonormalBasis skew_basis(int n);
OrthonormalBasis basis_for(SpaceTag tag, int n);

CoordinateVector vectorize(const TracelessHermitian& a, const OrthonormalBasis& basis);
CoordinateVector vectorize(const SkewSymmetricReal& a, const OrthonormalBasis& basis);

/// Raw overloads used on hot paths; the caller guarantees membership.
CoordinateVector coordinates_of(const CMatrix& a, const OrthonormalBasis& basis);
CoordinateVector coordinates_of(const RMatrix& a, const OrthonormalBasis& basis);

TracelessHermitian devectorize_hermitian(const CoordinateVector& v, const OrthonormalBasis& basis);
SkewSymmetricReal devectorize_skew(const CoordinateVector& v, const OrthonormalBasis& basis);

/// A - (tr A / n) I. Throws NotHermitian if A is not Hermitian within tolerance.
TracelessHermitian project_traceless(const CMatrix& a);

/// Trace form <A,B> = tr(AB), real on H0_n.
double trace_form(const TracelessHermitian& a, const TracelessHermitian& b);
/// Trace form <A,B> = tr(A^T B) on K_n(R).
double trace_form(const SkewSymmetricReal& a, const SkewSymmetricReal& b);

/// Independent standard Gaussian per coordinate, mapped through the basis.
/// This is the rotation-invariant distribution on the space.
TracelessHermitian random_hermitian_traceless(int n, Rng& rng);
TracelessHermitian random_hermitian_traceless(int n, std::uint64_t seed);
SkewSymmetricReal random_skew(int n, Rng& rng);
SkewSymmetricReal random_skew(int n, std::uint64_t seed);

/// Largest entry modulus; 0 for an empty matrix.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

}  // namespace isomlab
