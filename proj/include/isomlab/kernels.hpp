#pragma once

#include <cstdint>
#include <vector>

#include "isomlab/matspace.hpp"
#include "isomlab/norms.hpp"

// Data-parallel inner loops. Each has an OpenMP version and a plain serial
// reference; both draw sample i from the stream derive_seed(seed, i, attempt),
// so their outputs are bitwise identical for any thread count.
namespace isomlab::kernels {

/// Number of redraws allowed for a sample that lands on a non-smooth point.
inline constexpr int kMaxResample = 8;

/// Constraint matrix of the first-order isometry condition <g_X, T X> = 0.
/// Row i is vec(g_i x_i^T) (column-major over the d x d generator T) for a
/// unit-norm random coordinate vector x_i and its norm gradient g_i.
RMatrix constraint_matrix(const NormSpec& spec, int n, int samples, std::uint64_t seed);
RMatrix constraint_matrix_reference(const NormSpec& spec, int n, int samples, std::uint64_t seed);

/// tr(A U_i C U_i^*) for Haar unitaries U_i.
std::vector<double> orbit_trace_values(const CMatrix& a, const CMatrix& c, int trials, std::uint64_t seed);
std::vector<double> orbit_trace_values_reference(const CMatrix& a, const CMatrix& c, int trials,
                                                 std::uint64_t seed);

/// Worker count honoring ISOMLAB_THREADS when set.
int worker_count();

}  // namespace isomlab::kernels
