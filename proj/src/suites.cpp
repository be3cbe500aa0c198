#include "isomlab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include <Eigen/SVD>

#include "isomlab/error.hpp"
#include "isomlab/estimate.hpp"
#include "isomlab/groups.hpp"
#include "isomlab/norms.hpp"
#include "isomlab/recover.hpp"
#include "isomlab/skew.hpp"

#ifndef ISOMLAB_VERSION
#define ISOMLAB_VERSION "0.0.0"
#endif

namespace isomlab {

namespace {

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : s) h = (h ^ static_cast<unsigned char>(ch)) * 0x100000001b3ULL;
  return h;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxDeterministicTrials = 20;  // optimizer-heavy checks

const std::vector<std::string> kDefaultNorms{"schatten:1", "schatten:3", "frobenius"};

class Runner {
 public:
  Runner(const SuiteConfig& config, std::string prefix) : config_(config), prefix_(std::move(prefix)) {
    tol_ = default_tolerances();
    for (const auto& [k, v] : config.tol) tol_[k] = v;
  }

  std::vector<ReportRecord> take() { return std::move(records_); }

  double tol(const std::string& key) const { return tol_.at(key); }
  int samples() const { return config_.samples; }
  int heavy_samples() const { return std::min(config_.samples, kMaxDeterministicTrials); }
  int restarts() const { return config_.restarts; }

  std::uint64_t seed(std::string_view check, int n, std::string_view spec = {}) const {
    return derive_seed(config_.seed, fnv1a(prefix_) ^ fnv1a(check) ^ (fnv1a(spec) >> 1), static_cast<std::uint64_t>(n));
  }

  // value < tolerance
  void below(const std::string& id, const char* tag, int n, const std::string& spec, const std::string& key,
             const std::function<double()>& measure) {
    run(id, tag, n, spec, 0.0, tol(key), measure, [](double v, double, double t) { return v < t; });
  }
  // value > expected
  void above(const std::string& id, const char* tag, int n, const std::string& spec, const std::string& key,
             const std::function<double()>& measure) {
    run(id, tag, n, spec, tol(key), 0.0, measure, [](double v, double e, double) { return v > e; });
  }
  // value == expected
  void equals(const std::string& id, const char* tag, int n, const std::string& spec, double expected,
              const std::function<double()>& measure) {
    run(id, tag, n, spec, expected, 0.0, measure, [](double v, double e, double) { return v == e; });
  }
  // value >= expected
  void at_least(const std::string& id, const char* tag, int n, const std::string& spec, const std::string& key,
                const std::function<double()>& measure) {
    run(id, tag, n, spec, tol(key), 0.0, measure, [](double v, double e, double) { return v >= e; });
  }

 private:
  void run(const std::string& id, const char* tag, int n, const std::string& spec, double expected, double tolerance,
           const std::function<double()>& measure, bool (*accept)(double, double, double)) {
    ReportRecord r{prefix_ + "." + id, tag, n, spec, kNaN, expected, tolerance, false};
    try {
      r.value = measure();
      r.pass = std::isfinite(r.value) && accept(r.value, expected, tolerance);
    } catch (const Error&) {
      r.value = kNaN;
      r.pass = false;
    }
    records_.push_back(std::move(r));
  }

  const SuiteConfig& config_;
  std::string prefix_;
  std::map<std::string, double> tol_;
  std::vector<ReportRecord> records_;
};

bool is_cspec(const std::string& s) { return s.rfind("cspec:", 0) == 0; }

std::vector<std::string> hermitian_norms(const SuiteConfig& config) {
  std::vector<std::string> out;
  for (const std::string& s : effective_norms(config))
    if (!is_cspec(s)) out.push_back(s);
  return out;
}

NormSpec default_cspec(int n) {
  std::vector<double> c(static_cast<std::size_t>(n / 2), 0.0);
  c[0] = 1.0;
  return NormSpec::cspectral(std::move(c));
}

std::vector<NormSpec> skew_specs(const SuiteConfig& config, int n) {
  std::vector<NormSpec> out;
  const std::vector<std::string> norms = effective_norms(config);
  if (std::none_of(norms.begin(), norms.end(), is_cspec)) out.push_back(default_cspec(n));
  for (const std::string& s : norms) out.push_back(parse_norm_spec(s, SpaceTag::skew_real));
  return out;
}

// ---------------------------------------------------------------- invariance

void invariance_suite(Runner& run, const SuiteConfig& config) {
  for (int n : config.n_values) {
    for (const std::string& name : hermitian_norms(config)) {
      const NormSpec spec = parse_norm_spec(name);
      run.below("norm_invariance", "T1i", n, name, "invariance", [&] {
        return check_invariance(spec, n, run.samples(), run.seed("inv", n, name)).max_relative_deviation;
      });
    }
    run.below("sigma_normalizes", "T1i", n, "", "sigma", [&] {
      Rng rng = make_rng(run.seed("sigma", n));
      double worst = 0.0;
      for (int t = 0; t < 50; ++t) {
        const UnitaryMatrix u = haar_unitary(n, rng, false);
        worst = std::max(worst, verify_sigma_normalizes(u, 1, rng()));
      }
      return worst;
    });
    for (const NormSpec& spec : skew_specs(config, n)) {
      const std::string name = spec.to_string();
      run.below("skew_norm_invariance", "CK_i", n, name, "invariance", [&] {
        return check_invariance(spec, n, run.samples(), run.seed("skinv", n, name)).max_relative_deviation;
      });
    }
  }
}

// ---------------------------------------------------------------- dimension

void dimension_suite(Runner& run, const SuiteConfig& config) {
  for (int n : config.n_values) {
    const int d = n * n - 1;
    for (const std::string& name : hermitian_norms(config)) {
      const NormSpec spec = parse_norm_spec(name);
      const bool frob = spec.is_frobenius_proportional(n);
      const int expected = frob ? d * (d - 1) / 2 : d;
      const int rows = std::max(config.samples, 3 * d * d);
      run.equals("estimated_dim", frob && n > 2 ? "T1ii" : "T1i", n, name, expected, [&] {
        return static_cast<double>(isometry_algebra_dimension(spec, n, rows, run.seed("dim", n, name)).estimated_dim);
      });
    }
  }
}

void skew_dimension_checks(Runner& run, const SuiteConfig& config, int n) {
  if (n < 3) return;  // K_2 is one-dimensional: no generator to detect
  const int m = n * (n - 1) / 2;
  for (const NormSpec& spec : skew_specs(config, n)) {
    const std::string name = spec.to_string();
    const bool frob = spec.is_frobenius_proportional(n);
    const int expected = frob ? m * (m - 1) / 2 : m;
    const int rows = std::max(config.samples, 3 * m * m);
    run.equals("skew_estimated_dim", "CK_i", n, name, expected, [&] {
      return static_cast<double>(
          skew_isometry_algebra_dimension(spec, n, rows, run.seed("skdim", n, name)).estimated_dim);
    });
  }
}

// ---------------------------------------------------------------- decompose

void decompose_suite(Runner& run, const SuiteConfig& config) {
  for (int n : config.n_values) {
    const OrthonormalBasis basis = gell_mann_basis(n);
    const int d = basis.dim();
    for (const std::string& name : hermitian_norms(config)) {
      const NormSpec spec = parse_norm_spec(name);
      if (n >= 3 && spec.is_frobenius_proportional(n)) {
        run.below("orthogonal_map_invariance", "T1ii", n, name, "invariance", [&] {
          Rng rng = make_rng(run.seed("negctl", n, name));
          double worst = 0.0;
          for (int t = 0; t < run.samples(); ++t) {
            const RealLinearMap m(SpaceTag::hermitian_traceless, n, haar_orthogonal(d, rng, true).matrix());
            const TracelessHermitian a = random_hermitian_traceless(n, rng);
            const double before = norm_value(a, spec);
            worst = std::max(worst, std::abs(norm_value(apply(m, a, basis), spec) - before) / before);
          }
          return worst;
        });
        run.at_least("orthogonal_map_rejected", "T1ii", n, name, "reject_fraction", [&] {
          Rng rng = make_rng(run.seed("negctl", n, name));
          int rejected = 0;
          for (int t = 0; t < run.samples(); ++t) {
            const RealLinearMap m(SpaceTag::hermitian_traceless, n, haar_orthogonal(d, rng, true).matrix());
            random_hermitian_traceless(n, rng);
            try {
              decompose_isometry(AffineMap::linear_only(m), spec, rng());
            } catch (const Error& e) {
              if (e.code() == ErrorCode::NotInClassifiedForm) ++rejected;
            }
          }
          return static_cast<double>(rejected) / run.samples();
        });
        continue;
      }

      double worst_residual = 0.0;
      double worst_unitary = 0.0;
      bool failed = false;
      Rng rng = make_rng(run.seed("roundtrip", n, name));
      for (int t = 0; t < run.samples() && !failed; ++t) {
        const int eta = (rng() & 1U) ? 1 : -1;
        const bool sigma = n >= 3 && (rng() & 1U);
        const UnitaryMatrix u = haar_unitary(n, rng, true);
        const TracelessHermitian b = random_hermitian_traceless(n, rng);
        const AffineMap l{canonical_hermitian_map(eta, sigma, u), vectorize(b, basis)};
        try {
          const IsometryDecomposition dec = decompose_isometry(l, spec, rng());
          const AffineMap rebuilt = dec.rebuild();
          double res = map_distance(rebuilt.linear, l.linear);
          res = std::max(res, (rebuilt.offset - l.offset).cwiseAbs().maxCoeff());
          if (dec.eta != eta || dec.sigma_flag != sigma) res = INFINITY;
          worst_residual = std::max(worst_residual, res);
          worst_unitary = std::max(worst_unitary, distance_mod_roots(dec.u.matrix(), u.matrix()));
        } catch (const Error&) {
          failed = true;
        }
      }
      run.below("roundtrip_residual", "C2", n, name, "roundtrip", [&] { return failed ? kNaN : worst_residual; });
      run.below("roundtrip_unitary", "C2", n, name, "unitary", [&] { return failed ? kNaN : worst_unitary; });
    }
  }
}

// ---------------------------------------------------------------- skew

double q_distance_mod_sign(const RMatrix& a, const RMatrix& b) {
  return std::min(max_abs(RMatrix(a - b)), max_abs(RMatrix(a + b)));
}

void skew_suite(Runner& run, const SuiteConfig& config) {
  for (int n : config.n_values) {
    const OrthonormalBasis basis = skew_basis(n);

    run.below("youla_reconstruction", "S4_youla", n, "", "youla", [&] {
      Rng rng = make_rng(run.seed("youla", n));
      double worst = 0.0;
      for (int t = 0; t < run.samples(); ++t) {
        const SkewSymmetricReal a = random_skew(n, rng);
        worst = std::max(worst, max_abs(RMatrix(youla_decompose(a).reconstruct() - a.matrix())));
      }
      return worst;
    });
    run.below("youla_singular_values", "S4_youla", n, "", "youla", [&] {
      Rng rng = make_rng(run.seed("youla_sv", n));
      double worst = 0.0;
      for (int t = 0; t < run.samples(); ++t) {
        const SkewSymmetricReal a = random_skew(n, rng);
        const std::vector<double> sv = skew_singular_values(a);
        const RVector ref = Eigen::JacobiSVD<RMatrix>(a.matrix()).singularValues();
        for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(sv[static_cast<std::size_t>(k)] - ref(k)));
      }
      return worst;
    });

    if (n == 4) {
      run.below("psi_charpoly", "S4_psi", n, "", "psi_charpoly", [&] {
        Rng rng = make_rng(run.seed("psi_cp", n));
        double worst = 0.0;
        for (int t = 0; t < std::max(run.samples(), 1000); ++t) {
          const SkewSymmetricReal a = random_skew(4, rng);
          const std::vector<double> p = char_poly_skew(a).coeffs;
          const std::vector<double> q = char_poly_skew(psi_apply(a)).coeffs;
          for (std::size_t k = 0; k < p.size(); ++k) worst = std::max(worst, std::abs(p[k] - q[k]));
        }
        return worst;
      });
      run.below("psi_conjugates_adso", "S4_psi", n, "", "psi_conjugate", [&] {
        Rng rng = make_rng(run.seed("psi_conj", n));
        const RealLinearMap psi = psi_matrix();
        double worst = 0.0;
        for (int t = 0; t < run.samples(); ++t) {
          const OrthogonalMatrix q = haar_orthogonal(4, rng, true);
          const RealLinearMap m = compose(psi, compose(so_adjoint_matrix(q, basis), psi));
          const OrthogonalRecoveryAttempt r = try_recover_orthogonal_from_adso(m);
          worst = std::max(worst, r.q ? r.residual : INFINITY);
        }
        return worst;
      });
      run.above("psi_not_adso", "CK_ii", n, "", "psi_reject", [&] {
        const RealLinearMap psi = psi_matrix();
        const OrthogonalRecoveryAttempt plus = try_recover_orthogonal_from_adso(psi);
        const OrthogonalRecoveryAttempt minus = try_recover_orthogonal_from_adso(scale(psi, -1.0));
        if (plus.q || minus.q) return 0.0;
        return std::min(plus.residual, minus.residual);
      });
    }

    for (const NormSpec& spec : skew_specs(config, n)) {
      if (spec.is_frobenius_proportional(n)) continue;
      const std::string name = spec.to_string();
      run.below("skew_roundtrip", n == 4 ? "CK_ii" : "CK_i", n, name, "roundtrip", [&] {
        Rng rng = make_rng(run.seed("skrt", n, name));
        double worst = 0.0;
        for (int t = 0; t < run.samples(); ++t) {
          const int sign = (rng() & 1U) ? 1 : -1;
          const bool psi = n == 4 && (rng() & 1U);
          const OrthogonalMatrix q = haar_orthogonal(n, rng, true);
          const RealLinearMap l = canonical_skew_map(sign, psi, q);
          const SkewIsometryDecomposition dec = decompose_skew_isometry(l, spec, rng());
          if (dec.sign != sign || dec.psi_flag != psi) return static_cast<double>(INFINITY);
          worst = std::max({worst, dec.residual, map_distance(dec.rebuild(), l)});
          if (n % 2 == 1) worst = std::max(worst, max_abs(RMatrix(dec.q.matrix() - q.matrix())));
          else worst = std::max(worst, q_distance_mod_sign(dec.q.matrix(), q.matrix()));
        }
        return worst;
      });
    }

    skew_dimension_checks(run, config, n);
  }
}

// ---------------------------------------------------------------- cnr

TracelessHermitian diagonal_pair(double x) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = x;
  m(1, 1) = -x;
  return TracelessHermitian(m);
}

void cnr_suite(Runner& run, const SuiteConfig& config) {
  for (int n : config.n_values) {
    if (n == 2) {
      run.below("radius_analytic", "T3", n, "", "analytic", [&] {
        const double a = 0.7;
        const double c = 1.3;
        return std::abs(c_numerical_radius(diagonal_pair(a), diagonal_pair(c), run.restarts(), run.seed("an", n)) -
                        2.0 * a * c);
      });
    }
    run.at_least("ascent_vs_permutation", "T3", n, "", "perm", [&] {
      Rng rng = make_rng(run.seed("perm", n));
      double worst = INFINITY;
      for (int t = 0; t < run.heavy_samples(); ++t) {
        const TracelessHermitian a = random_hermitian_traceless(n, rng);
        const TracelessHermitian c = random_hermitian_traceless(n, rng);
        const RadiusResult r = c_numerical_radius_detailed(a, c, run.restarts(), rng());
        worst = std::min(worst, r.ascent_value - r.permutation_bound);
      }
      return worst;
    });
    run.below("radius_symmetry", "T3", n, "", "radius", [&] {
      Rng rng = make_rng(run.seed("sym", n));
      double worst = 0.0;
      for (int t = 0; t < run.heavy_samples(); ++t) {
        const TracelessHermitian a = random_hermitian_traceless(n, rng);
        const TracelessHermitian c = random_hermitian_traceless(n, rng);
        const std::uint64_t s = rng();
        worst = std::max(worst, std::abs(c_numerical_radius(a, c, run.restarts(), s) -
                                         c_numerical_radius(c, a, run.restarts(), s)));
      }
      return worst;
    });

    PreserverReport pr;
    bool ok = true;
    try {
      const TracelessHermitian c = random_hermitian_traceless(n, run.seed("pres_c", n));
      pr = verify_preserver_forms(c, n, run.heavy_samples(), run.seed("pres", n), run.restarts());
    } catch (const Error&) {
      ok = false;
    }
    const char* form_names[kPreserverForms] = {"preserver_radius_i_pos", "preserver_radius_i_neg",
                                               "preserver_radius_ii_pos", "preserver_radius_ii_neg"};
    for (int f = 0; f < kPreserverForms; ++f)
      run.below(form_names[f], "T3", n, "", "radius",
                [&] { return ok ? pr.radius_deviation[static_cast<std::size_t>(f)] : kNaN; });
    run.below("preserver_orbit_values", "T3", n, "", "orbit", [&] { return ok ? pr.sample_deviation : kNaN; });
    run.below("preserver_interval", "T3", n, "", "interval", [&] { return ok ? pr.interval_deviation : kNaN; });
  }
}

void run_kind(SuiteKind kind, const SuiteConfig& config, std::vector<ReportRecord>& out) {
  Runner run(config, to_string(kind));
  switch (kind) {
    case SuiteKind::invariance: invariance_suite(run, config); break;
    case SuiteKind::dimension: dimension_suite(run, config); break;
    case SuiteKind::decompose: decompose_suite(run, config); break;
    case SuiteKind::skew: skew_suite(run, config); break;
    case SuiteKind::cnr: cnr_suite(run, config); break;
    case SuiteKind::all: break;
  }
  for (ReportRecord& r : run.take()) out.push_back(std::move(r));
}

}  // namespace

const char* library_version() { return ISOMLAB_VERSION; }

const char* to_string(SuiteKind s) {
  switch (s) {
    case SuiteKind::invariance: return "invariance";
    case SuiteKind::dimension: return "dimension";
    case SuiteKind::decompose: return "decompose";
    case SuiteKind::skew: return "skew";
    case SuiteKind::cnr: return "cnr";
    case SuiteKind::all: return "all";
  }
  return "all";
}

SuiteKind parse_suite(std::string_view name) {
  for (SuiteKind k : {SuiteKind::invariance, SuiteKind::dimension, SuiteKind::decompose, SuiteKind::skew,
                      SuiteKind::cnr, SuiteKind::all})
    if (name == to_string(k)) return k;
  throw ConfigError("unknown suite '" + std::string(name) + "'");
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tol{
      {"analytic", 1e-6},  {"interval", 1e-2},     {"invariance", 1e-10},    {"orbit", 1e-12},
      {"perm", -1e-9},     {"psi_charpoly", 1e-10}, {"psi_conjugate", 1e-8}, {"psi_reject", 0.1},
      {"radius", 1e-6},    {"reject_fraction", 0.99}, {"roundtrip", 1e-8},   {"sigma", 1e-11},
      {"unitary", 1e-9},   {"youla", 1e-10}};
  return tol;
}

std::vector<std::string> effective_norms(const SuiteConfig& config) {
  return config.norms.empty() ? kDefaultNorms : config.norms;
}

void validate(const SuiteConfig& config) {
  if (config.n_values.empty()) throw ConfigError("no n values");
  for (int n : config.n_values)
    if (n < 2 || n > 8) throw ConfigError("n = " + std::to_string(n) + " outside [2, 8]");
  if (config.samples < 1) throw ConfigError("samples must be >= 1");
  if (config.restarts < 1) throw ConfigError("restarts must be >= 1");
  for (const auto& [k, v] : config.tol) {
    if (!default_tolerances().count(k)) throw ConfigError("unknown tolerance key '" + k + "'");
    if (!std::isfinite(v)) throw ConfigError("tolerance '" + k + "' is not finite");
  }
  for (const std::string& s : effective_norms(config)) {
    try {
      parse_norm_spec(s);
    } catch (const Error& e) {
      throw ConfigError(std::string("bad norm '") + s + "': " + e.what());
    }
  }
}

ReportDocument run_suite(const SuiteConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();

  ReportDocument doc;
  doc.suite = to_string(config.suite);
  doc.version = library_version();
  doc.config.n_values = config.n_values;
  doc.config.norms = effective_norms(config);
  doc.config.samples = config.samples;
  doc.config.restarts = config.restarts;
  doc.config.seed = config.seed;
  doc.config.tol = config.tol;

  if (config.suite == SuiteKind::all) {
    for (SuiteKind k : {SuiteKind::invariance, SuiteKind::dimension, SuiteKind::decompose, SuiteKind::skew,
                        SuiteKind::cnr})
      run_kind(k, config, doc.records);
  } else {
    run_kind(config.suite, config, doc.records);
  }

  doc.pass = std::all_of(doc.records.begin(), doc.records.end(), [](const ReportRecord& r) { return r.pass; });
  doc.wall_clock_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return doc;
}

}  // namespace isomlab
