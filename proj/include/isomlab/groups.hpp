#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "isomlab/matspace.hpp"

namespace isomlab {

/// n x n unitary matrix, validated to U U* = I within 1e-11.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(CMatrix entries);

  const CMatrix& matrix() const noexcept { return entries_; }
  int n() const noexcept { return static_cast<int>(entries_.rows()); }
  Complex det() const noexcept { return det_; }
  bool is_special() const noexcept { return std::abs(det_ - Complex(1.0, 0.0)) < 1e-10; }

 private:
  CMatrix entries_;
  Complex det_;
};

/// n x n real orthogonal matrix, validated to Q Q^T = I within 1e-11.
class OrthogonalMatrix {
 public:
  explicit OrthogonalMatrix(RMatrix entries);

  const RMatrix& matrix() const noexcept { return entries_; }
  int n() const noexcept { return static_cast<int>(entries_.rows()); }
  double det() const noexcept { return det_; }
  bool is_special() const noexcept { return det_ > 0.0; }

 private:
  RMatrix entries_;
  double det_;
};

/// Linear operator on the coordinate space of H0_n or K_n(R), expressed in
/// the canonical basis for (space, n).
struct RealLinearMap {
  SpaceTag space = SpaceTag::hermitian_traceless;
  int n = 0;
  RMatrix matrix;

  RealLinearMap() = default;
  /// Validates size against the space dimension and finiteness.
  RealLinearMap(SpaceTag space, int n, RMatrix matrix);

  int dim() const noexcept { return static_cast<int>(matrix.rows()); }
  static RealLinearMap identity(SpaceTag space, int n);
};

/// Where a GroupElement came from, when it was built from canonical data.
struct HermitianProvenance {
  int eta = 1;
  bool sigma_flag = false;
  CMatrix u;
};
struct SkewProvenance {
  int sign = 1;
  bool psi_flag = false;
  RMatrix q;
};

struct GroupElement {
  RealLinearMap map;
  std::variant<std::monostate, HermitianProvenance, SkewProvenance> provenance;
};

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// phases of diag(R) absorbed. With `special`, rescaled by an n-th root of
/// det into SU(n).
UnitaryMatrix haar_unitary(int n, Rng& rng, bool special);
UnitaryMatrix haar_unitary(int n, std::uint64_t seed, bool special);

/// Real analogue; `special` flips the first column when det = -1.
OrthogonalMatrix haar_orthogonal(int n, Rng& rng, bool special);
OrthogonalMatrix haar_orthogonal(int n, std::uint64_t seed, bool special);

/// Column i = coordinates of U B_i U^{-1}.
RealLinearMap ad_matrix(const UnitaryMatrix& u, const OrthonormalBasis& basis);

/// The Cartan involution A -> -A^T on H0_n.
RealLinearMap cartan_matrix(const OrthonormalBasis& basis);

/// Max entry deviation of sigma(U A U^{-1}) from (U^T)^{-1} sigma(A) U^T over
/// `trials` random A.
double verify_sigma_normalizes(const UnitaryMatrix& u, int trials, std::uint64_t seed);

/// Column i = coordinates of Q F_i Q^T. Throws NotSpecialOrthogonal for
/// det Q = -1 unless `allow_reflection`.
RealLinearMap so_adjoint_matrix(const OrthogonalMatrix& q, const OrthonormalBasis& basis,
                                bool allow_reflection = false);

/// The entry swap a14 <-> a23 on K_4 coordinates (a12,a13,a14,a23,a24,a34).
RealLinearMap psi_matrix();

/// The transpose map on K_n(R); equals minus the identity.
RealLinearMap tau_matrix(const OrthonormalBasis& basis);

RealLinearMap compose(const RealLinearMap& a, const RealLinearMap& b);
/// Throws SingularMap when the condition number exceeds 1e12.
RealLinearMap invert(const RealLinearMap& a);
RealLinearMap scale(const RealLinearMap& a, double t);

/// Applies a map to a matrix through coordinates.
TracelessHermitian apply(const RealLinearMap& m, const TracelessHermitian& a, const OrthonormalBasis& basis);
SkewSymmetricReal apply(const RealLinearMap& m, const SkewSymmetricReal& a, const OrthonormalBasis& basis);

/// min over n-th roots of unity zeta of max|U - zeta V|.
double distance_mod_roots(const CMatrix& u, const CMatrix& v);

/// Operator max-norm distance between two maps' matrices (max entry).
double map_distance(const RealLinearMap& a, const RealLinearMap& b);

}  // namespace isomlab
