#include "isomlab/kernels.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <string>

#include "isomlab/error.hpp"
#include "isomlab/groups.hpp"

namespace isomlab::kernels {

namespace {

constexpr std::uint64_t kConstraintStream = 0x636f6e73;  // "cons"
constexpr std::uint64_t kOrbitStream = 0x6f726269;       // "orbi"

struct Sample {
  CoordinateVector x;
  CoordinateVector g;
};

Sample draw_sample(const NormSpec& spec, const OrthonormalBasis& basis, std::uint64_t seed, int index) {
  const int d = basis.dim();
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    Rng rng = make_rng(derive_seed(seed, kConstraintStream + static_cast<std::uint64_t>(attempt),
                                   static_cast<std::uint64_t>(index)));
    CoordinateVector x(d);
    for (int k = 0; k < d; ++k) x(k) = standard_normal(rng);
    x.normalize();
    try {
      if (basis.space() == SpaceTag::hermitian_traceless) {
        const CMatrix a = devectorize_hermitian(x, basis).matrix();
        return {x, norm_gradient_coords(a, spec, basis)};
      }
      const RMatrix a = devectorize_skew(x, basis).matrix();
      return {x, norm_gradient_coords(a, spec, basis)};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegeneratePoint) throw;
    }
  }
  throw Error(ErrorCode::DegeneratePoint, "sample " + std::to_string(index) + " stayed degenerate after resampling");
}

void check_args(int n, int samples) {
  if (n < 2) throw Error(ErrorCode::InvalidDimension, "n must be >= 2");
  if (samples < 1) throw Error(ErrorCode::InvalidDimension, "samples must be >= 1");
}

double orbit_value(const CMatrix& a, const CMatrix& c, std::uint64_t seed, int index) {
  Rng rng = make_rng(derive_seed(seed, kOrbitStream, static_cast<std::uint64_t>(index)));
  const UnitaryMatrix u = haar_unitary(static_cast<int>(a.rows()), rng, false);
  const CMatrix x = u.matrix() * c * u.matrix().adjoint();
  return a.transpose().cwiseProduct(x).sum().real();
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("ISOMLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return omp_get_max_threads();
}

RMatrix constraint_matrix(const NormSpec& spec, int n, int samples, std::uint64_t seed) {
  check_args(n, samples);
  spec.validate_for(n);
  const OrthonormalBasis basis = basis_for(spec.space, n);
  const int d = basis.dim();
  RMatrix rows(samples, d * d);
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 16) num_threads(worker_count())
  for (int i = 0; i < samples; ++i) {
    try {
      const Sample s = draw_sample(spec, basis, seed, i);
      const RMatrix outer = s.g * s.x.transpose();
      rows.row(i) = Eigen::Map<const RVector>(outer.data(), d * d).transpose();
    } catch (...) {
#pragma omp critical(isomlab_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

RMatrix constraint_matrix_reference(const NormSpec& spec, int n, int samples, std::uint64_t seed) {
  check_args(n, samples);
  spec.validate_for(n);
  const OrthonormalBasis basis = basis_for(spec.space, n);
  const int d = basis.dim();
  RMatrix rows(samples, d * d);
  for (int i = 0; i < samples; ++i) {
    const Sample s = draw_sample(spec, basis, seed, i);
    for (int b = 0; b < d; ++b)
      for (int a = 0; a < d; ++a) rows(i, a + b * d) = s.g(a) * s.x(b);
  }
  return rows;
}

std::vector<double> orbit_trace_values(const CMatrix& a, const CMatrix& c, int trials, std::uint64_t seed) {
  if (a.rows() != c.rows()) throw Error(ErrorCode::InvalidDimension, "A and C differ in size");
  std::vector<double> values(static_cast<std::size_t>(std::max(trials, 0)));
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (int i = 0; i < trials; ++i) values[static_cast<std::size_t>(i)] = orbit_value(a, c, seed, i);
  return values;
}

std::vector<double> orbit_trace_values_reference(const CMatrix& a, const CMatrix& c, int trials,
                                                 std::uint64_t seed) {
  if (a.rows() != c.rows()) throw Error(ErrorCode::InvalidDimension, "A and C differ in size");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(std::max(trials, 0)));
  for (int i = 0; i < trials; ++i) values.push_back(orbit_value(a, c, seed, i));
  return values;
}

}  // namespace isomlab::kernels
