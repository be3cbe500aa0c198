#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "isomlab/matspace.hpp"
#include "isomlab/norms.hpp"

namespace isomlab {

enum class MatchedCase { adjoint_group, full_orthogonal, inconclusive };

const char* to_string(MatchedCase c);

struct DimensionReport {
  SpaceTag space = SpaceTag::hermitian_traceless;
  int n = 0;
  NormSpec spec;
  int estimated_dim = 0;
  std::vector<double> singular_values;  // descending
  double gap_ratio = 0.0;
  int samples_used = 0;
  MatchedCase matched_case = MatchedCase::inconclusive;
};

inline constexpr double kMinGapRatio = 1e3;

struct GapCut {
  int rank = 0;  // singular values above the gap
  double ratio = 0.0;
};

/// Largest consecutive ratio sv[k-1] / sv[k] in a descending sequence, with
/// values below eps * size * sv[0] clamped to that floor. Empty when the best
/// ratio is below `min_ratio`.
std::optional<GapCut> largest_gap_cut(const std::vector<double>& sv, double min_ratio = kMinGapRatio);

/// Dimension of the isometry Lie algebra of `spec` on H0_n, from the null
/// space of the first-order constraints <g_X, T X> = 0. num_samples = 0 means
/// 3 d^2; smaller positive values are rejected.
/// Throws InconclusiveDimension when the spectrum has no clear gap.
DimensionReport isometry_algebra_dimension(const NormSpec& spec, int n, int num_samples, std::uint64_t seed);

/// Same estimator on K_n(R).
DimensionReport skew_isometry_algebra_dimension(const NormSpec& spec, int n, int num_samples,
                                                std::uint64_t seed);

struct RangeSample {
  std::vector<double> values;
  double lo = 0.0;
  double hi = 0.0;
  double radius = 0.0;
};

/// tr(A U C U^*) over `trials` Haar unitaries followed by the n! permutation
/// values sum_j lambda_j(A) mu_pi(j)(C).
RangeSample c_numerical_range_sample(const TracelessHermitian& a, const TracelessHermitian& c, int trials,
                                     std::uint64_t seed);

/// Extremes of sum_j lambda_j(A) mu_pi(j)(C): equal-order and opposite-order
/// pairing of the spectra.
std::array<double, 2> permutation_extremes(const TracelessHermitian& a, const TracelessHermitian& c);

struct RadiusResult {
  double value = 0.0;              // max(ascent, permutation_bound)
  double ascent_value = 0.0;       // best |tr(A U C U^*)| reached on the orbit
  double random_start_value = 0.0;  // best over the Haar restarts alone
  double permutation_bound = 0.0;  // max |permutation value|
  int starts = 0;
};

/// max |tr(A U C U^*)| by Riemannian gradient ascent on U(n) with the
/// multiplicative update U <- exp(alpha S) U, from `restarts` Haar points
/// (at least 8) plus the two permutation warm starts.
RadiusResult c_numerical_radius_detailed(const TracelessHermitian& a, const TracelessHermitian& c, int restarts,
                                         std::uint64_t seed);
double c_numerical_radius(const TracelessHermitian& a, const TracelessHermitian& c, int restarts,
                          std::uint64_t seed);

/// Canonical forms eta U A U^{-1} and eta U sigma(A) U^{-1}.
enum PreserverForm { form_i_pos, form_i_neg, form_ii_pos, form_ii_neg };
inline constexpr int kPreserverForms = 4;

struct PreserverReport {
  int trials = 0;
  std::array<double, kPreserverForms> radius_deviation{};  // max |r_C(L A) - r_C(A)|
  double sample_deviation = 0.0;    // form (i), eta = +1: shared-orbit values
  double interval_deviation = 0.0;  // form (i), eta = +1: |lo|, |hi| shift over ||A|| ||C||
  double max_radius_deviation() const;
};

PreserverReport verify_preserver_forms(const TracelessHermitian& c, int n, int trials, std::uint64_t seed,
                                       int restarts = 8, int orbit_samples = 256);

}  // namespace isomlab
