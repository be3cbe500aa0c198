#pragma once

#include <optional>
#include <vector>

#include "isomlab/groups.hpp"
#include "isomlab/matspace.hpp"

namespace isomlab {

/// A = Q Sigma(a) Q^T with Sigma(a) = 0_{n-2r} (+) [[0,a_i],[-a_i,0]].
struct YoulaForm {
  int n = 0;
  RMatrix q;               // orthogonal; det +1 whenever a kernel block exists
  std::vector<double> a;   // a_1 >= ... >= a_r > 0
  int r = 0;
  double residual = 0.0;   // max|Q Sigma Q^T - A|

  RMatrix sigma() const;
  RMatrix reconstruct() const;
};

/// Youla decomposition through the Hermitian eigenproblem of iA.
///
/// Blocks are ordered by descending a_j, ties broken lexicographically on the
/// leading block vector. Each block is oriented so its (1,2) entry is +a_j.
/// The kernel (|lambda| < 1e-10 ||A||) comes first and is completed by QR of
/// the orthogonal complement; when it is nonempty its first vector is flipped
/// to make det Q = +1. Without a kernel (n even, A invertible) det Q equals
/// the sign of the Pfaffian and is left as is.
YoulaForm youla_decompose(const SkewSymmetricReal& a);

/// The floor(n/2) Youla parameters a_1 >= a_2 >= ... >= 0 (zero-padded),
/// from eigenvalues only.
std::vector<double> youla_values(const SkewSymmetricReal& a);

/// The n singular values of A: each a_j twice, zero-padded, descending.
std::vector<double> skew_singular_values(const SkewSymmetricReal& a);

/// Swaps a14 <-> a23 of a 4x4 skew matrix. Throws InvalidDimension if n != 4.
SkewSymmetricReal psi_apply(const SkewSymmetricReal& a);

struct QuarticInvariants {
  double p = 0.0;                  // sum_{j<k} a_jk^2
  double pfaffian = 0.0;           // a12 a34 - a13 a24 + a14 a23
  double identity_residual = 0.0;  // max coeff gap between det(lambda - A) and lambda^4 + p lambda^2 + pf^2
};

struct CharPoly {
  /// coeffs[k] is the coefficient of lambda^k in det(lambda I - A); coeffs[n] = 1.
  std::vector<double> coeffs;
  std::optional<QuarticInvariants> quartic;
};

/// Faddeev-LeVerrier recursion; n <= 8.
CharPoly char_poly_skew(const SkewSymmetricReal& a);

double pfaffian4(const RMatrix& a);

/// True iff the sorted singular values agree to 1e-8 relative to the larger
/// spectral radius.
bool same_congruence_orbit(const SkewSymmetricReal& a, const SkewSymmetricReal& b);

}  // namespace isomlab
