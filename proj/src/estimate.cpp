#include "isomlab/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/SVD>

#include "isomlab/error.hpp"
#include "isomlab/groups.hpp"
#include "isomlab/kernels.hpp"

namespace isomlab {

namespace {

constexpr std::uint64_t kRestartStream = 0x72657374;  // "rest"
constexpr std::uint64_t kTrialStream = 0x7472696c;    // "tril"
constexpr std::uint64_t kSharedStream = 0x73686172;   // "shar"

constexpr int kMinRestarts = 8;
constexpr int kMaxIterations = 2000;
constexpr double kGradientTol = 1e-10;

// Values below `floor` are treated as numerically zero, so exact zeros past
// the first one do not produce spurious infinite ratios.
GapCut best_gap(const std::vector<double>& sv, double floor) {
  GapCut best{static_cast<int>(sv.size()), 0.0};
  for (std::size_t k = 1; k < sv.size(); ++k) {
    if (sv[k - 1] <= floor) break;
    const double ratio = sv[k - 1] / std::max(sv[k], floor);
    if (ratio > best.ratio) best = {static_cast<int>(k), ratio};
  }
  return best;
}

double default_floor(const std::vector<double>& sv, std::size_t extent) {
  if (sv.empty()) return 0.0;
  return std::numeric_limits<double>::epsilon() * static_cast<double>(std::max<std::size_t>(extent, 1)) * sv.front();
}

DimensionReport estimate_dimension(SpaceTag space, const NormSpec& spec, int n, int num_samples,
                                   std::uint64_t seed) {
  if (spec.space != space) throw Error(ErrorCode::SpecMismatch, "norm spec lives on the other space");
  if (n < 2) throw Error(ErrorCode::InvalidDimension, "n must be >= 2");
  spec.validate_for(n);
  const int d = space_dimension(space, n);
  const int minimum = 3 * d * d;
  const int samples = num_samples == 0 ? minimum : num_samples;
  if (samples < minimum)
    throw Error(ErrorCode::InvalidDimension,
                "need at least 3 d^2 = " + std::to_string(minimum) + " samples, got " + std::to_string(samples));

  const RMatrix rows = kernels::constraint_matrix(spec, n, samples, seed);
  Eigen::BDCSVD<RMatrix> svd(rows);
  const RVector& s = svd.singularValues();

  DimensionReport report;
  report.space = space;
  report.n = n;
  report.spec = spec;
  report.samples_used = samples;
  report.singular_values.assign(s.data(), s.data() + s.size());

  const auto extent = static_cast<std::size_t>(std::max(rows.rows(), rows.cols()));
  const GapCut cut = best_gap(report.singular_values, default_floor(report.singular_values, extent));
  report.gap_ratio = cut.ratio;
  if (cut.ratio < kMinGapRatio)
    throw Error(ErrorCode::InconclusiveDimension, "no singular-value gap of ratio >= 1e3", cut.ratio);
  report.estimated_dim = d * d - cut.rank;

  const int adjoint = space == SpaceTag::hermitian_traceless ? n * n - 1 : n * (n - 1) / 2;
  const int full = d * (d - 1) / 2;
  if (report.estimated_dim == adjoint)
    report.matched_case = MatchedCase::adjoint_group;
  else if (report.estimated_dim == full)
    report.matched_case = MatchedCase::full_orthogonal;
  else
    report.matched_case = MatchedCase::inconclusive;
  return report;
}

void check_pair(const TracelessHermitian& a, const TracelessHermitian& c) {
  if (a.n() != c.n()) throw Error(ErrorCode::InvalidDimension, "A and C differ in size");
}

double orbit_value(const CMatrix& a, const CMatrix& c, const CMatrix& u) {
  return (a * u * c * u.adjoint()).trace().real();
}

// exp(S) for skew-Hermitian S through the Hermitian matrix iS.
CMatrix exp_skew_hermitian(const CMatrix& s) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(Complex(0.0, 1.0) * s);
  const RVector& d = eig.eigenvalues();
  Eigen::VectorXcd phases(d.size());
  for (Eigen::Index k = 0; k < d.size(); ++k) phases(k) = std::polar(1.0, -d(k));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

double ascend(const CMatrix& a, const CMatrix& c, CMatrix u) {
  const double scale = a.norm() * c.norm();
  double f = orbit_value(a, c, u);
  if (scale == 0.0) return std::abs(f);
  double alpha = 1.0 / scale;
  for (int it = 0; it < kMaxIterations; ++it) {
    const CMatrix x = u * c * u.adjoint();
    const CMatrix s = (f >= 0.0 ? 1.0 : -1.0) * (a * x - x * a);
    const double gnorm = s.norm();
    if (gnorm < kGradientTol * scale) break;
    bool moved = false;
    while (alpha * gnorm > 1e-16) {
      const CMatrix candidate = exp_skew_hermitian(alpha * s) * u;
      const double fc = orbit_value(a, c, candidate);
      if (std::abs(fc) > std::abs(f)) {
        u = candidate;
        f = fc;
        alpha *= 1.5;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  return std::abs(f);
}

}  // namespace

const char* to_string(MatchedCase c) {
  switch (c) {
    case MatchedCase::adjoint_group: return "adjoint_group";
    case MatchedCase::full_orthogonal: return "full_orthogonal";
    case MatchedCase::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::optional<GapCut> largest_gap_cut(const std::vector<double>& sv, double min_ratio) {
  const GapCut cut = best_gap(sv, default_floor(sv, sv.size()));
  if (cut.ratio < min_ratio) return std::nullopt;
  return cut;
}

DimensionReport isometry_algebra_dimension(const NormSpec& spec, int n, int num_samples, std::uint64_t seed) {
  return estimate_dimension(SpaceTag::hermitian_traceless, spec, n, num_samples, seed);
}

DimensionReport skew_isometry_algebra_dimension(const NormSpec& spec, int n, int num_samples,
                                                std::uint64_t seed) {
  return estimate_dimension(SpaceTag::skew_real, spec, n, num_samples, seed);
}

std::array<double, 2> permutation_extremes(const TracelessHermitian& a, const TracelessHermitian& c) {
  check_pair(a, c);
  const RVector la = Eigen::SelfAdjointEigenSolver<CMatrix>(a.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
  const RVector lc = Eigen::SelfAdjointEigenSolver<CMatrix>(c.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
  const double hi = la.dot(lc);
  const double lo = la.dot(lc.reverse());
  return {lo, hi};
}

RangeSample c_numerical_range_sample(const TracelessHermitian& a, const TracelessHermitian& c, int trials,
                                     std::uint64_t seed) {
  check_pair(a, c);
  if (trials < 1) throw Error(ErrorCode::InvalidDimension, "trials must be >= 1");
  RangeSample out;
  out.values = kernels::orbit_trace_values(a.matrix(), c.matrix(), trials, seed);

  const RVector la = Eigen::SelfAdjointEigenSolver<CMatrix>(a.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
  const RVector lc = Eigen::SelfAdjointEigenSolver<CMatrix>(c.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
  std::vector<int> perm(static_cast<std::size_t>(a.n()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    double v = 0.0;
    for (int j = 0; j < a.n(); ++j) v += la(j) * lc(perm[static_cast<std::size_t>(j)]);
    out.values.push_back(v);
  } while (std::next_permutation(perm.begin(), perm.end()));

  const auto [lo, hi] = std::minmax_element(out.values.begin(), out.values.end());
  out.lo = *lo;
  out.hi = *hi;
  out.radius = std::max(std::abs(out.lo), std::abs(out.hi));
  return out;
}

RadiusResult c_numerical_radius_detailed(const TracelessHermitian& a, const TracelessHermitian& c, int restarts,
                                         std::uint64_t seed) {
  check_pair(a, c);
  const int n = a.n();
  RadiusResult out;
  const auto ext = permutation_extremes(a, c);
  out.permutation_bound = std::max(std::abs(ext[0]), std::abs(ext[1]));

  Eigen::SelfAdjointEigenSolver<CMatrix> ea(a.matrix());
  Eigen::SelfAdjointEigenSolver<CMatrix> ec(c.matrix());
  const CMatrix& va = ea.eigenvectors();
  const CMatrix& vc = ec.eigenvectors();
  // V_A P V_C^* carries the eigenbasis of C onto that of A in a chosen order.
  const CMatrix reversal = CMatrix::Identity(n, n).rowwise().reverse();
  std::vector<CMatrix> starts{va * vc.adjoint(), va * reversal * vc.adjoint()};
  const int haar = std::max(restarts, kMinRestarts);
  for (int r = 0; r < haar; ++r)
    starts.push_back(haar_unitary(n, derive_seed(seed, kRestartStream, static_cast<std::uint64_t>(r)), false).matrix());

  for (std::size_t k = 0; k < starts.size(); ++k) {
    const double v = ascend(a.matrix(), c.matrix(), starts[k]);
    out.ascent_value = std::max(out.ascent_value, v);
    if (k >= 2) out.random_start_value = std::max(out.random_start_value, v);
  }
  out.starts = static_cast<int>(starts.size());
  out.value = std::max(out.ascent_value, out.permutation_bound);
  return out;
}

double c_numerical_radius(const TracelessHermitian& a, const TracelessHermitian& c, int restarts,
                          std::uint64_t seed) {
  return c_numerical_radius_detailed(a, c, restarts, seed).value;
}

double PreserverReport::max_radius_deviation() const {
  return *std::max_element(radius_deviation.begin(), radius_deviation.end());
}

PreserverReport verify_preserver_forms(const TracelessHermitian& c, int n, int trials, std::uint64_t seed,
                                       int restarts, int orbit_samples) {
  if (c.n() != n) throw Error(ErrorCode::InvalidDimension, "C is not n x n");
  PreserverReport out;
  out.trials = trials;
  const double cnorm = c.matrix().norm();

  for (int t = 0; t < trials; ++t) {
    const auto tt = static_cast<std::uint64_t>(t);
    Rng rng = make_rng(derive_seed(seed, kTrialStream, tt));
    const TracelessHermitian a = random_hermitian_traceless(n, rng);
    const CMatrix u = haar_unitary(n, rng, true).matrix();
    const std::uint64_t radius_seed = derive_seed(seed, kRestartStream, tt);
    const double base = c_numerical_radius(a, c, restarts, radius_seed);

    const CMatrix sigma_a = -a.matrix().transpose();
    const CMatrix forms[kPreserverForms] = {
        u * a.matrix() * u.adjoint(), -(u * a.matrix() * u.adjoint()),
        u * sigma_a * u.adjoint(), -(u * sigma_a * u.adjoint())};
    for (int f = 0; f < kPreserverForms; ++f) {
      const TracelessHermitian la = project_traceless(forms[f]);
      const double r = c_numerical_radius(la, c, restarts, radius_seed);
      out.radius_deviation[static_cast<std::size_t>(f)] =
          std::max(out.radius_deviation[static_cast<std::size_t>(f)], std::abs(r - base));
    }

    // tr(U A U^* W C W^*) = tr(A V C V^*) with V = U^* W.
    const TracelessHermitian la = project_traceless(forms[form_i_pos]);
    Rng shared = make_rng(derive_seed(seed, kSharedStream, tt));
    for (int k = 0; k < orbit_samples; ++k) {
      const CMatrix w = haar_unitary(n, shared, false).matrix();
      const double lhs = orbit_value(la.matrix(), c.matrix(), w);
      const double rhs = orbit_value(a.matrix(), c.matrix(), u.adjoint() * w);
      out.sample_deviation = std::max(out.sample_deviation, std::abs(lhs - rhs));
    }

    const RangeSample before = c_numerical_range_sample(a, c, orbit_samples, derive_seed(seed, kSharedStream + 1, tt));
    const RangeSample after = c_numerical_range_sample(la, c, orbit_samples, derive_seed(seed, kSharedStream + 2, tt));
    const double scale = a.matrix().norm() * cnorm;
    if (scale > 0.0) {
      const double shift = std::max(std::abs(before.lo - after.lo), std::abs(before.hi - after.hi));
      out.interval_deviation = std::max(out.interval_deviation, shift / scale);
    }
  }
  return out;
}

}  // namespace isomlab
