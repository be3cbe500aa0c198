#include "isomlab/norms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "isomlab/error.hpp"
#include "isomlab/groups.hpp"
#include "isomlab/skew.hpp"

namespace isomlab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kGapTol = 1e-8;
constexpr double kFdStep = 1e-6;

std::string format_double(double x) {
  if (std::isinf(x)) return "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  if (s == "inf" || s == "Inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::InvalidNormSpec, "not a number: '" + std::string(s) + "'");
  return v;
}

void require_space(const NormSpec& spec, SpaceTag tag) {
  if (spec.space != tag)
    throw Error(ErrorCode::SpecMismatch, "norm " + spec.to_string() + " is defined on " + to_string(spec.space) +
                                             ", applied to " + to_string(tag));
}

/// Descending singular values sorted from |eigenvalues|.
std::vector<double> hermitian_singular_values(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(a, Eigen::EigenvaluesOnly);
  std::vector<double> s(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) s[static_cast<std::size_t>(i)] = std::abs(eig.eigenvalues()(i));
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

double schatten_of(const std::vector<double>& s, double p) {
  const double top = s.empty() ? 0.0 : *std::max_element(s.begin(), s.end());
  if (top == 0.0) return 0.0;
  if (std::isinf(p)) return top;
  double acc = 0.0;
  for (double v : s) acc += std::pow(v / top, p);
  return top * std::pow(acc, 1.0 / p);
}

double kyfan_of(const std::vector<double>& s, int k) {
  return std::accumulate(s.begin(), s.begin() + k, 0.0);
}

double value_from_singular(const std::vector<double>& s, const NormSpec& spec) {
  return std::visit(Overloaded{
                        [&](const Frobenius&) {
                          double acc = 0.0;
                          for (double v : s) acc += v * v;
                          return std::sqrt(acc);
                        },
                        [&](const Schatten& x) { return schatten_of(s, x.p); },
                        [&](const KyFan& x) { return kyfan_of(s, x.k); },
                        [&](const CSpectralSkew&) -> double {
                          throw Error(ErrorCode::SpecMismatch, "c-spectral norm needs a skew matrix");
                        },
                    },
                    spec.variant);
}

/// Rejects points where the variant is not differentiable. `s` is the
/// descending sequence of distinct-by-construction spectral parameters.
void require_smooth(const std::vector<double>& s, const NormSpec& spec, double scale) {
  const double tol = kGapTol * scale;
  auto gap_at = [&](std::size_t i) {  // s[i] - s[i+1], with s[size] = 0
    const double next = i + 1 < s.size() ? s[i + 1] : 0.0;
    return s[i] - next;
  };
  auto fail = [&](const char* what) {
    throw Error(ErrorCode::DegeneratePoint, std::string(what) + " for " + spec.to_string());
  };
  std::visit(Overloaded{
                 [&](const Frobenius&) {},
                 [&](const Schatten& x) {
                   if (std::isinf(x.p)) {
                     if (s.size() > 1 && gap_at(0) <= tol) fail("repeated top singular value");
                   } else if (x.p == 1.0) {
                     if (s.back() <= tol) fail("zero eigenvalue");
                   }
                 },
                 [&](const KyFan& x) {
                   const auto k = static_cast<std::size_t>(x.k);
                   if (k < s.size() && gap_at(k - 1) <= tol) fail("no gap after the k-th singular value");
                   if (k == s.size() && s.back() <= tol) fail("zero singular value");
                 },
                 [&](const CSpectralSkew&) {
                   for (std::size_t i = 0; i < s.size(); ++i)
                     if (gap_at(i) <= tol) fail("repeated or vanishing Youla value");
                 },
             },
             spec.variant);
}

bool is_analytic(const NormSpec& spec) {
  if (std::holds_alternative<Frobenius>(spec.variant)) return true;
  if (spec.space == SpaceTag::hermitian_traceless) {
    if (const auto* s = std::get_if<Schatten>(&spec.variant)) return s->p > 1.0 && std::isfinite(s->p);
  }
  return false;
}

template <class Eval, class Matrix>
CoordinateVector central_difference(const Matrix& a, const OrthonormalBasis& basis, Eval&& eval) {
  const int d = basis.dim();
  const double h = kFdStep * (1.0 + a.norm());
  CoordinateVector g(d);
  for (int i = 0; i < d; ++i) {
    Matrix plus = a;
    Matrix minus = a;
    if constexpr (std::is_same_v<Matrix, RMatrix>) {
      plus += h * basis.real_element(i);
      minus -= h * basis.real_element(i);
    } else {
      plus += h * basis.element(i);
      minus -= h * basis.element(i);
    }
    g(i) = (eval(plus) - eval(minus)) / (2.0 * h);
  }
  return g;
}

}  // namespace

NormSpec NormSpec::frobenius(SpaceTag space) { return NormSpec{Frobenius{}, space}; }
NormSpec NormSpec::schatten(double p, SpaceTag space) {
  NormSpec s{Schatten{p}, space};
  s.validate();
  return s;
}
NormSpec NormSpec::kyfan(int k, SpaceTag space) {
  NormSpec s{KyFan{k}, space};
  s.validate();
  return s;
}
NormSpec NormSpec::cspectral(std::vector<double> c) {
  NormSpec s{CSpectralSkew{std::move(c)}, SpaceTag::skew_real};
  s.validate();
  return s;
}

std::string NormSpec::to_string() const {
  return std::visit(Overloaded{
                        [](const Frobenius&) { return std::string("frobenius"); },
                        [](const Schatten& x) { return "schatten:" + format_double(x.p); },
                        [](const KyFan& x) { return "kyfan:" + std::to_string(x.k); },
                        [](const CSpectralSkew& x) {
                          std::string out = "cspec:";
                          for (std::size_t i = 0; i < x.c.size(); ++i) {
                            if (i) out += ',';
                            out += format_double(x.c[i]);
                          }
                          return out;
                        },
                    },
                    variant);
}

void NormSpec::validate() const {
  std::visit(Overloaded{
                 [](const Frobenius&) {},
                 [](const Schatten& x) {
                   if (!(x.p >= 1.0)) throw Error(ErrorCode::InvalidNormSpec, "Schatten p must be >= 1");
                 },
                 [](const KyFan& x) {
                   if (x.k < 1) throw Error(ErrorCode::InvalidNormSpec, "Ky Fan k must be >= 1");
                 },
                 [this](const CSpectralSkew& x) {
                   if (space != SpaceTag::skew_real)
                     throw Error(ErrorCode::InvalidNormSpec, "c-spectral norms live on skew matrices");
                   if (x.c.empty()) throw Error(ErrorCode::InvalidNormSpec, "c must be nonempty");
                   bool any = false;
                   for (std::size_t i = 0; i < x.c.size(); ++i) {
                     if (!(x.c[i] >= 0.0) || !std::isfinite(x.c[i]))
                       throw Error(ErrorCode::InvalidNormSpec, "c must be finite and nonnegative");
                     if (i > 0 && x.c[i] > x.c[i - 1])
                       throw Error(ErrorCode::InvalidNormSpec, "c must be nonincreasing");
                     any = any || x.c[i] > 0.0;
                   }
                   if (!any) throw Error(ErrorCode::InvalidNormSpec, "c must not be all zero");
                 },
             },
             variant);
}

void NormSpec::validate_for(int n) const {
  validate();
  if (const auto* k = std::get_if<KyFan>(&variant); k && k->k > n)
    throw Error(ErrorCode::InvalidNormSpec, "Ky Fan k exceeds n");
  if (const auto* c = std::get_if<CSpectralSkew>(&variant); c && static_cast<int>(c->c.size()) != n / 2)
    throw Error(ErrorCode::InvalidNormSpec, "c must have length floor(n/2) = " + std::to_string(n / 2));
}

bool NormSpec::is_frobenius_proportional(int n) const {
  if (std::holds_alternative<Frobenius>(variant)) return true;
  if (const auto* s = std::get_if<Schatten>(&variant); s && s->p == 2.0) return true;
  if (space == SpaceTag::hermitian_traceless) return n == 2;
  return n <= 3;
}

NormSpec parse_norm_spec(std::string_view text, SpaceTag space) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "frobenius") {
    if (!arg.empty()) throw Error(ErrorCode::InvalidNormSpec, "frobenius takes no argument");
    return NormSpec::frobenius(space);
  }
  if (arg.empty()) throw Error(ErrorCode::InvalidNormSpec, "missing argument in '" + std::string(text) + "'");
  if (head == "schatten") return NormSpec::schatten(parse_double(arg), space);
  if (head == "kyfan") {
    int k = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (ec != std::errc() || ptr != arg.data() + arg.size())
      throw Error(ErrorCode::InvalidNormSpec, "kyfan needs an integer");
    return NormSpec::kyfan(k, space);
  }
  if (head == "cspec") {
    std::vector<double> c;
    std::size_t start = 0;
    while (start <= arg.size()) {
      const auto comma = arg.find(',', start);
      const auto end = comma == std::string_view::npos ? arg.size() : comma;
      c.push_back(parse_double(arg.substr(start, end - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return NormSpec::cspectral(std::move(c));
  }
  throw Error(ErrorCode::InvalidNormSpec, "unknown norm '" + std::string(text) + "'");
}

double norm_value(const TracelessHermitian& a, const NormSpec& spec) {
  require_space(spec, SpaceTag::hermitian_traceless);
  spec.validate_for(a.n());
  if (std::holds_alternative<Frobenius>(spec.variant)) return a.matrix().norm();
  return value_from_singular(hermitian_singular_values(a.matrix()), spec);
}

double norm_value(const SkewSymmetricReal& a, const NormSpec& spec) {
  require_space(spec, SpaceTag::skew_real);
  spec.validate_for(a.n());
  if (std::holds_alternative<Frobenius>(spec.variant)) return a.matrix().norm();
  const auto y = youla_values(a);
  if (const auto* c = std::get_if<CSpectralSkew>(&spec.variant))
    return std::inner_product(c->c.begin(), c->c.end(), y.begin(), 0.0);
  std::vector<double> s;
  for (double v : y) {
    s.push_back(v);
    s.push_back(v);
  }
  s.resize(static_cast<std::size_t>(a.n()), 0.0);
  return value_from_singular(s, spec);
}

CoordinateVector norm_gradient_coords(const CMatrix& a, const NormSpec& spec, const OrthonormalBasis& basis) {
  require_space(spec, SpaceTag::hermitian_traceless);
  spec.validate_for(static_cast<int>(a.rows()));
  const double fro = a.norm();
  if (fro == 0.0) throw Error(ErrorCode::DegeneratePoint, "gradient of a norm at zero");
  if (std::holds_alternative<Frobenius>(spec.variant)) return coordinates_of(CMatrix(a / fro), basis);
  // The spectrum of an element of H0_2 is {l, -l}: every invariant norm is a
  // multiple of the Frobenius norm, smooth even where |l| is repeated.
  if (a.rows() == 2) {
    const double value = value_from_singular(hermitian_singular_values(a), spec);
    return coordinates_of(CMatrix(a * (value / (fro * fro))), basis);
  }

  if (is_analytic(spec)) {
    const double p = std::get<Schatten>(spec.variant).p;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(a);
    const auto& lam = eig.eigenvalues();
    std::vector<double> s(static_cast<std::size_t>(lam.size()));
    for (Eigen::Index i = 0; i < lam.size(); ++i) s[static_cast<std::size_t>(i)] = std::abs(lam(i));
    const double np = schatten_of(s, p);
    Eigen::VectorXd w(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      const double sign = lam(i) > 0.0 ? 1.0 : (lam(i) < 0.0 ? -1.0 : 0.0);
      w(i) = sign * std::pow(std::abs(lam(i)) / np, p - 1.0);
    }
    const CMatrix& v = eig.eigenvectors();
    const CMatrix g = v * w.cast<Complex>().asDiagonal() * v.adjoint();
    return coordinates_of(project_traceless(0.5 * (g + g.adjoint())).matrix(), basis);
  }

  require_smooth(hermitian_singular_values(a), spec, fro);
  return central_difference(a, basis,
                            [&](const CMatrix& x) { return value_from_singular(hermitian_singular_values(x), spec); });
}

CoordinateVector norm_gradient_coords(const RMatrix& a, const NormSpec& spec, const OrthonormalBasis& basis) {
  require_space(spec, SpaceTag::skew_real);
  spec.validate_for(static_cast<int>(a.rows()));
  const double fro = a.norm();
  if (fro == 0.0) throw Error(ErrorCode::DegeneratePoint, "gradient of a norm at zero");
  if (std::holds_alternative<Frobenius>(spec.variant)) return coordinates_of(RMatrix(a / fro), basis);

  std::vector<double> y = youla_values(SkewSymmetricReal::unchecked(a));
  // Schatten with p in (1, inf) is smooth away from zero; everything else
  // needs separated Youla parameters.
  const auto* sch = std::get_if<Schatten>(&spec.variant);
  if (!(sch && sch->p > 1.0 && std::isfinite(sch->p))) {
    NormSpec as_cspec = spec;
    if (!std::holds_alternative<CSpectralSkew>(spec.variant)) as_cspec.variant = CSpectralSkew{};
    require_smooth(y, as_cspec, fro);
  }
  return central_difference(a, basis,
                            [&](const RMatrix& x) { return norm_value(SkewSymmetricReal::unchecked(x), spec); });
}

TracelessHermitian norm_gradient(const TracelessHermitian& a, const NormSpec& spec) {
  const OrthonormalBasis basis = gell_mann_basis(a.n());
  return devectorize_hermitian(norm_gradient_coords(a.matrix(), spec, basis), basis);
}

SkewSymmetricReal norm_gradient(const SkewSymmetricReal& a, const NormSpec& spec) {
  const OrthonormalBasis basis = skew_basis(a.n());
  return devectorize_skew(norm_gradient_coords(a.matrix(), spec, basis), basis);
}

InvarianceReport check_invariance(const NormSpec& spec, int n, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidDimension, "trials must be >= 1");
  spec.validate_for(n);
  InvarianceReport report;
  report.trials = trials;
  Rng rng = make_rng(seed);
  for (int t = 0; t < trials; ++t) {
    double before = 0.0;
    double after = 0.0;
    if (spec.space == SpaceTag::hermitian_traceless) {
      const TracelessHermitian a = random_hermitian_traceless(n, rng);
      const UnitaryMatrix u = haar_unitary(n, rng, false);
      const CMatrix moved = u.matrix() * a.matrix() * u.matrix().adjoint();
      before = norm_value(a, spec);
      after = norm_value(project_traceless(0.5 * (moved + moved.adjoint())), spec);
    } else {
      const SkewSymmetricReal a = random_skew(n, rng);
      const OrthogonalMatrix q = haar_orthogonal(n, rng, false);
      const RMatrix moved = q.matrix() * a.matrix() * q.matrix().transpose();
      before = norm_value(a, spec);
      after = norm_value(SkewSymmetricReal::unchecked(0.5 * (moved - moved.transpose())), spec);
    }
    report.max_relative_deviation = std::max(report.max_relative_deviation, std::abs(after - before) / before);
  }
  return report;
}

}  // namespace isomlab
