#include "isomlab/skew.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "isomlab/error.hpp"

namespace isomlab {

namespace {

constexpr double kZeroModeTol = 1e-10;
constexpr double kTieTol = 1e-10;

struct Block {
  double a;
  Eigen::VectorXd q1;
  Eigen::VectorXd q2;
};

bool lexicographic_less(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x(i) - y(i)) > kTieTol) return x(i) < y(i);
  }
  return false;
}

}  // namespace

RMatrix YoulaForm::sigma() const {
  RMatrix s = RMatrix::Zero(n, n);
  const int offset = n - 2 * r;
  for (int i = 0; i < r; ++i) {
    s(offset + 2 * i, offset + 2 * i + 1) = a[static_cast<std::size_t>(i)];
    s(offset + 2 * i + 1, offset + 2 * i) = -a[static_cast<std::size_t>(i)];
  }
  return s;
}

RMatrix YoulaForm::reconstruct() const { return q * sigma() * q.transpose(); }

YoulaForm youla_decompose(const SkewSymmetricReal& a) {
  const int n = a.n();
  const RMatrix& am = a.matrix();
  YoulaForm form;
  form.n = n;

  const double scale = am.norm();
  if (scale == 0.0) {
    form.q = RMatrix::Identity(n, n);
    return form;
  }

  const CMatrix ia = Complex(0.0, 1.0) * am.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(ia);
  const auto& lambda = eig.eigenvalues();
  const CMatrix& vecs = eig.eigenvectors();

  // Positive eigenvalues of iA give the blocks: for iA v = a v with
  // v = x + iy, A x = a y and A y = -a x, so (q1, q2) = sqrt2 (y, x).
  std::vector<Block> blocks;
  for (int k = 0; k < n; ++k) {
    if (lambda(k) <= kZeroModeTol * scale) continue;
    const Eigen::VectorXcd v = vecs.col(k);
    Block b{lambda(k), std::sqrt(2.0) * v.imag(), std::sqrt(2.0) * v.real()};
    b.q1.normalize();
    b.q2.normalize();
    blocks.push_back(std::move(b));
  }
  std::sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) {
    if (std::abs(x.a - y.a) > kTieTol * (1.0 + std::max(x.a, y.a))) return x.a > y.a;
    return lexicographic_less(x.q1, y.q1);
  });

  const int r = static_cast<int>(blocks.size());
  const int kernel = n - 2 * r;
  RMatrix q(n, n);
  if (r > 0) {
    RMatrix qb(n, 2 * r);
    for (int i = 0; i < r; ++i) {
      qb.col(2 * i) = blocks[static_cast<std::size_t>(i)].q1;
      qb.col(2 * i + 1) = blocks[static_cast<std::size_t>(i)].q2;
    }
    q.rightCols(2 * r) = qb;
  }
  if (kernel > 0) {
    RMatrix basis = RMatrix::Identity(n, n);
    if (r > 0) {
      Eigen::HouseholderQR<RMatrix> qr(q.rightCols(2 * r));
      basis = qr.householderQ() * RMatrix::Identity(n, n);
      q.leftCols(kernel) = basis.rightCols(kernel);
    } else {
      q.leftCols(kernel) = basis.leftCols(kernel);
    }
  }
  if (kernel > 0 && q.determinant() < 0.0) q.col(0) *= -1.0;

  form.q = std::move(q);
  form.r = r;
  form.a.reserve(static_cast<std::size_t>(r));
  for (const auto& b : blocks) form.a.push_back(b.a);
  form.residual = max_abs(RMatrix(form.reconstruct() - am));
  return form;
}

std::vector<double> youla_values(const SkewSymmetricReal& a) {
  const int n = a.n();
  const CMatrix ia = Complex(0.0, 1.0) * a.matrix().cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(ia, Eigen::EigenvaluesOnly);
  // Ascending; the top floor(n/2) are the nonnegative half of the +-a_j pairs.
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n / 2));
  for (int k = n - 1; k >= n - n / 2; --k) out.push_back(std::max(0.0, eig.eigenvalues()(k)));
  return out;
}

std::vector<double> skew_singular_values(const SkewSymmetricReal& a) {
  std::vector<double> s;
  s.reserve(static_cast<std::size_t>(a.n()));
  for (double v : youla_values(a)) {
    s.push_back(v);
    s.push_back(v);
  }
  s.resize(static_cast<std::size_t>(a.n()), 0.0);
  return s;
}

SkewSymmetricReal psi_apply(const SkewSymmetricReal& a) {
  if (a.n() != 4) throw Error(ErrorCode::InvalidDimension, "psi is defined on K_4 only, got n=" + std::to_string(a.n()));
  RMatrix m = a.matrix();
  const double a14 = m(0, 3);
  const double a23 = m(1, 2);
  m(0, 3) = a23;
  m(3, 0) = -a23;
  m(1, 2) = a14;
  m(2, 1) = -a14;
  return SkewSymmetricReal::unchecked(std::move(m));
}

double pfaffian4(const RMatrix& a) {
  return a(0, 1) * a(2, 3) - a(0, 2) * a(1, 3) + a(0, 3) * a(1, 2);
}

CharPoly char_poly_skew(const SkewSymmetricReal& a) {
  const int n = a.n();
  if (n > 8) throw Error(ErrorCode::InvalidDimension, "char_poly_skew supports n <= 8");
  const RMatrix& am = a.matrix();

  // Faddeev-LeVerrier: M_0 = 0, c_n = 1, M_k = A M_{k-1} + c_{n-k+1} I,
  // c_{n-k} = -tr(A M_k) / k.
  CharPoly out;
  out.coeffs.assign(static_cast<std::size_t>(n + 1), 0.0);
  out.coeffs[static_cast<std::size_t>(n)] = 1.0;
  RMatrix mk = RMatrix::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    mk = am * mk;
    mk.diagonal().array() += out.coeffs[static_cast<std::size_t>(n - k + 1)];
    out.coeffs[static_cast<std::size_t>(n - k)] = -(am * mk).trace() / k;
  }
  // A^T = -A makes det(lambda - A) have the parity of n; drop the rounding residue.
  for (int k = n - 1; k >= 0; k -= 2) out.coeffs[static_cast<std::size_t>(k)] = 0.0;

  if (n == 4) {
    QuarticInvariants q;
    for (int j = 0; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) q.p += am(j, k) * am(j, k);
    q.pfaffian = pfaffian4(am);
    const double expected[5] = {q.pfaffian * q.pfaffian, 0.0, q.p, 0.0, 1.0};
    for (int k = 0; k < 5; ++k)
      q.identity_residual = std::max(q.identity_residual, std::abs(out.coeffs[static_cast<std::size_t>(k)] - expected[k]));
    out.quartic = q;
  }
  return out;
}

bool same_congruence_orbit(const SkewSymmetricReal& a, const SkewSymmetricReal& b) {
  if (a.n() != b.n()) return false;
  const auto sa = skew_singular_values(a);
  const auto sb = skew_singular_values(b);
  const double scale = std::max({sa.front(), sb.front(), 0.0});
  if (scale == 0.0) return true;
  for (std::size_t i = 0; i < sa.size(); ++i)
    if (std::abs(sa[i] - sb[i]) > 1e-8 * scale) return false;
  return true;
}

}  // namespace isomlab
