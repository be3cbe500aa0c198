#pragma once

#include <cstdint>
#include <optional>

#include "isomlab/error.hpp"
#include "isomlab/groups.hpp"
#include "isomlab/matspace.hpp"
#include "isomlab/norms.hpp"

namespace isomlab {

/// A -> M A + offset on H0_n, in coordinates.
struct AffineMap {
  RealLinearMap linear;
  CoordinateVector offset;

  static AffineMap linear_only(RealLinearMap m);
  TracelessHermitian operator()(const TracelessHermitian& a, const OrthonormalBasis& basis) const;
};

/// eta Ad(U) sigma^flag as a coordinate map.
RealLinearMap canonical_hermitian_map(int eta, bool sigma_flag, const UnitaryMatrix& u);
/// sign Ad(Q) psi^flag on K_n; Q may be a reflection.
RealLinearMap canonical_skew_map(int sign, bool psi_flag, const OrthogonalMatrix& q);

struct EtaSigma {
  int eta = 1;
  bool sigma_flag = false;
  int votes = 0;     // triples that passed the denominator floor
  int agreeing = 0;  // votes for the returned branch
};

/// Separates the four components of <PSU(n), -1, sigma> with the cubic form
/// tr(X^3) and the bracket form tr([X,Y]Z): both ratios are exactly +-1 on
/// the classified group, sigma flips the cubic only and -1 flips both.
/// Needs n >= 3; throws NotInClassifiedForm without a strict majority.
EtaSigma classify_eta_sigma(const RealLinearMap& m, std::uint64_t seed);

struct UnitaryRecovery {
  UnitaryMatrix u;
  double residual;  // max|Ad(U) - M|
};

/// Inverts the adjoint representation; U is returned in SU(n), defined up to
/// an n-th root of unity. Throws NotAdjointImage / RecoveryFailed.
UnitaryRecovery recover_unitary_from_ad(const RealLinearMap& m);

struct IsometryDecomposition {
  int eta = 1;
  bool sigma_flag = false;
  UnitaryMatrix u;
  TracelessHermitian b;
  double residual = 0.0;  // max coordinate deviation over basis images

  AffineMap rebuild() const;
};

/// Splits an isometry of `spec` into eta U sigma^flag(A) U^{-1} + B.
/// Throws NotIsometry if the map moves distances by more than 1e-8 relative on
/// 50 random pairs, NotInClassifiedForm when no canonical form fits.
/// For n = 2 sigma lies in Ad(SU(2)), so sigma_flag is always false there and
/// eta is the determinant sign.
IsometryDecomposition decompose_isometry(const AffineMap& l, const NormSpec& spec, std::uint64_t seed = 0);

struct OrthogonalRecoveryAttempt {
  std::optional<OrthogonalMatrix> q;
  double residual = 0.0;
  std::optional<ErrorCode> error;
};

/// Non-throwing form of recover_orthogonal_from_adso; `residual` is reported
/// even when recovery is rejected.
OrthogonalRecoveryAttempt try_recover_orthogonal_from_adso(const RealLinearMap& m);

struct OrthogonalRecovery {
  OrthogonalMatrix q;
  double residual;
};

/// Inverts Q -> (A -> Q A Q^T) up to the global sign of Q. For odd n the sign
/// is fixed so det Q = +1; for even n a det -1 result means M is the
/// congruence by a reflection.
OrthogonalRecovery recover_orthogonal_from_adso(const RealLinearMap& m);

struct SkewIsometryDecomposition {
  int sign = 1;
  bool psi_flag = false;
  OrthogonalMatrix q;
  double residual = 0.0;

  RealLinearMap rebuild() const;
};

/// Tries M, -M and (n = 4) M psi, -M psi in that order.
SkewIsometryDecomposition decompose_skew_isometry(const RealLinearMap& l, const NormSpec& spec,
                                                  std::uint64_t seed = 0);

/// max|M^T M - I|.
double orthogonality_defect(const RealLinearMap& m);

}  // namespace isomlab
