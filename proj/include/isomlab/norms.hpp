#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "isomlab/matspace.hpp"

namespace isomlab {

struct Frobenius {};
struct Schatten {
  double p = 2.0;  // +inf allowed
};
struct KyFan {
  int k = 1;
};
/// sum_i c_i a_i over the descending Youla parameters of a skew matrix.
struct CSpectralSkew {
  std::vector<double> c;
};

using NormVariant = std::variant<Frobenius, Schatten, KyFan, CSpectralSkew>;

struct NormSpec {
  NormVariant variant;
  SpaceTag space = SpaceTag::hermitian_traceless;

  static NormSpec frobenius(SpaceTag space = SpaceTag::hermitian_traceless);
  static NormSpec schatten(double p, SpaceTag space = SpaceTag::hermitian_traceless);
  static NormSpec kyfan(int k, SpaceTag space = SpaceTag::hermitian_traceless);
  static NormSpec cspectral(std::vector<double> c);

  /// Command-line grammar: frobenius, schatten:<p|inf>, kyfan:<k>, cspec:<c1,c2,...>.
  std::string to_string() const;

  /// Checks the n-independent constraints; throws InvalidNormSpec.
  void validate() const;
  /// Checks the constraints that depend on the ambient n.
  void validate_for(int n) const;

  /// True when the norm is a constant multiple of the Frobenius norm on the
  /// given space. Covers p = 2 and the low-dimensional spaces where every
  /// invariant norm is (H0_2, K_2, K_3).
  bool is_frobenius_proportional(int n) const;
};

/// Parses the command-line grammar. `cspec` always yields a skew spec; other
/// variants take `space`.
NormSpec parse_norm_spec(std::string_view text, SpaceTag space = SpaceTag::hermitian_traceless);

double norm_value(const TracelessHermitian& a, const NormSpec& spec);
double norm_value(const SkewSymmetricReal& a, const NormSpec& spec);

/// Trace-form gradient. Analytic for Frobenius and Hermitian Schatten
/// 1 < p < inf; central differences with h = 1e-6 (1 + ||A||_F) otherwise.
/// Throws DegeneratePoint at zero or at a non-smooth spectrum.
TracelessHermitian norm_gradient(const TracelessHermitian& a, const NormSpec& spec);
SkewSymmetricReal norm_gradient(const SkewSymmetricReal& a, const NormSpec& spec);

/// Same as norm_gradient, in basis coordinates; used by the estimator.
CoordinateVector norm_gradient_coords(const CMatrix& a, const NormSpec& spec, const OrthonormalBasis& basis);
CoordinateVector norm_gradient_coords(const RMatrix& a, const NormSpec& spec, const OrthonormalBasis& basis);

struct InvarianceReport {
  int trials = 0;
  double max_relative_deviation = 0.0;
};

/// max over trials of |‖gA‖ - ‖A‖| / ‖A‖ with g a Haar unitary similarity
/// (Hermitian specs) or Haar orthogonal congruence (skew specs).
InvarianceReport check_invariance(const NormSpec& spec, int n, int trials, std::uint64_t seed);

}  // namespace isomlab
