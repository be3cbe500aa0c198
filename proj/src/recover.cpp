#include "isomlab/recover.hpp"

#include <array>
#include <cmath>
#include <string>

namespace isomlab {

namespace {

constexpr int kClassifierVotes = 9;
constexpr int kClassifierMaxDraws = 400;
constexpr double kDenominatorFloor = 1e-6;
constexpr double kRatioTol = 1e-4;
constexpr double kOrthogonalityTol = 1e-8;
constexpr double kProjectionTol = 1e-6;
constexpr double kAcceptResidual = 1e-6;
constexpr double kBranchResidual = 1e-8;
constexpr double kIsometryTol = 1e-8;
constexpr int kIsometryPairs = 50;

constexpr std::uint64_t kIsometryStream = 0x69736f6d;  // "isom"

CMatrix apply_coords(const RealLinearMap& m, const CMatrix& x, const OrthonormalBasis& basis) {
  return devectorize_hermitian(m.matrix * coordinates_of(x, basis), basis).matrix();
}

Complex bracket_form(const CMatrix& x, const CMatrix& y, const CMatrix& z) {
  return ((x * y - y * x) * z).trace();
}

double raw_adso_residual(const RMatrix& q, const RealLinearMap& m, const OrthonormalBasis& basis) {
  double worst = 0.0;
  for (int i = 0; i < basis.dim(); ++i) {
    const CoordinateVector col = coordinates_of(RMatrix(q * basis.real_element(i) * q.transpose()), basis);
    worst = std::max(worst, (col - m.matrix.col(i)).cwiseAbs().maxCoeff());
  }
  return worst;
}

RMatrix nearest_orthogonal(const RMatrix& q) {
  Eigen::JacobiSVD<RMatrix> svd(q, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace

AffineMap AffineMap::linear_only(RealLinearMap m) {
  const int d = m.dim();
  return AffineMap{std::move(m), CoordinateVector::Zero(d)};
}

TracelessHermitian AffineMap::operator()(const TracelessHermitian& a, const OrthonormalBasis& basis) const {
  return devectorize_hermitian(linear.matrix * vectorize(a, basis) + offset, basis);
}

RealLinearMap canonical_hermitian_map(int eta, bool sigma_flag, const UnitaryMatrix& u) {
  const OrthonormalBasis basis = gell_mann_basis(u.n());
  RealLinearMap m = scale(ad_matrix(u, basis), static_cast<double>(eta));
  if (sigma_flag) m = compose(m, cartan_matrix(basis));
  return m;
}

RealLinearMap canonical_skew_map(int sign, bool psi_flag, const OrthogonalMatrix& q) {
  const OrthonormalBasis basis = skew_basis(q.n());
  RealLinearMap m = scale(so_adjoint_matrix(q, basis, true), static_cast<double>(sign));
  if (psi_flag) m = compose(m, psi_matrix());
  return m;
}

double orthogonality_defect(const RealLinearMap& m) {
  return max_abs(RMatrix(m.matrix.transpose() * m.matrix - RMatrix::Identity(m.dim(), m.dim())));
}

EtaSigma classify_eta_sigma(const RealLinearMap& m, std::uint64_t seed) {
  if (m.space != SpaceTag::hermitian_traceless)
    throw Error(ErrorCode::InvalidDimension, "classify_eta_sigma acts on H0_n");
  const int n = m.n;
  if (n < 3) throw Error(ErrorCode::InvalidDimension, "classify_eta_sigma needs n >= 3 (tr X^3 vanishes on H0_2)");
  const double defect = orthogonality_defect(m);
  if (defect > kOrthogonalityTol)
    throw Error(ErrorCode::NotInClassifiedForm, "map is not trace-form orthogonal", defect);

  const OrthonormalBasis basis = gell_mann_basis(n);
  Rng rng = make_rng(seed);
  // Branch index: 0 (+1,false), 1 (-1,false), 2 (+1,true), 3 (-1,true).
  std::array<int, 4> tally{};
  int votes = 0;
  for (int draw = 0; draw < kClassifierMaxDraws && votes < kClassifierVotes; ++draw) {
    const CMatrix x = random_hermitian_traceless(n, rng).matrix();
    const CMatrix y = random_hermitian_traceless(n, rng).matrix();
    const CMatrix z = random_hermitian_traceless(n, rng).matrix();
    const double nx = x.norm();
    const double cubic = (x * x * x).trace().real();
    // [X,Y] is skew-Hermitian, so tr([X,Y]Z) is purely imaginary.
    const double bracket = bracket_form(x, y, z).imag();
    if (std::abs(cubic) <= kDenominatorFloor * nx * nx * nx) continue;
    if (std::abs(bracket) <= kDenominatorFloor * nx * y.norm() * z.norm()) continue;
    ++votes;

    const CMatrix mx = apply_coords(m, x, basis);
    const CMatrix my = apply_coords(m, y, basis);
    const CMatrix mz = apply_coords(m, z, basis);
    const double r3 = (mx * mx * mx).trace().real() / cubic;
    const double rb = bracket_form(mx, my, mz).imag() / bracket;
    if (std::abs(std::abs(r3) - 1.0) > kRatioTol || std::abs(std::abs(rb) - 1.0) > kRatioTol) continue;

    const bool s3 = r3 > 0.0;
    const bool sb = rb > 0.0;
    int branch = 0;
    if (s3 && sb) branch = 0;
    else if (!s3 && !sb) branch = 1;
    else if (!s3 && sb) branch = 2;
    else branch = 3;
    ++tally[static_cast<std::size_t>(branch)];
  }

  int best = 0;
  for (int b = 1; b < 4; ++b)
    if (tally[static_cast<std::size_t>(b)] > tally[static_cast<std::size_t>(best)]) best = b;
  const int agreeing = tally[static_cast<std::size_t>(best)];
  if (votes == 0 || 2 * agreeing <= votes)
    throw Error(ErrorCode::NotInClassifiedForm,
                "discriminant votes do not single out a branch (" + std::to_string(agreeing) + "/" +
                    std::to_string(votes) + ")",
                static_cast<double>(agreeing));

  EtaSigma out;
  out.eta = (best == 1 || best == 3) ? -1 : 1;
  out.sigma_flag = best >= 2;
  out.votes = votes;
  out.agreeing = agreeing;
  return out;
}

UnitaryRecovery recover_unitary_from_ad(const RealLinearMap& m) {
  if (m.space != SpaceTag::hermitian_traceless)
    throw Error(ErrorCode::InvalidDimension, "recover_unitary_from_ad acts on H0_n");
  const int n = m.n;
  const OrthonormalBasis basis = gell_mann_basis(n);
  const CMatrix id = CMatrix::Identity(n, n);

  // Column j of U spans the image of the rank-one projection e_j e_j^*.
  CMatrix v(n, n);
  for (int j = 0; j < n; ++j) {
    CMatrix e = -id / static_cast<double>(n);
    e(j, j) += 1.0;
    CMatrix p = apply_coords(m, e, basis) + id / static_cast<double>(n);
    p = 0.5 * (p + p.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(p);
    const auto& lam = eig.eigenvalues();
    double deviation = std::abs(lam(n - 1) - 1.0);
    for (int k = 0; k + 1 < n; ++k) deviation = std::max(deviation, std::abs(lam(k)));
    if (deviation > kProjectionTol)
      throw Error(ErrorCode::NotAdjointImage,
                  "image of e_" + std::to_string(j) + " e_" + std::to_string(j) + "^* is not a rank-one projection",
                  deviation);
    if (lam(n - 1) - lam(n - 2) < kProjectionTol)
      throw Error(ErrorCode::RecoveryFailed, "top eigenvalue not separated", lam(n - 1) - lam(n - 2));
    v.col(j) = eig.eigenvectors().col(n - 1);
  }

  // Relative phases from the images of (e_0 e_k^* + e_k e_0^*)/sqrt2.
  for (int k = 1; k < n; ++k) {
    CMatrix s = CMatrix::Zero(n, n);
    s(0, k) = s(k, 0) = 1.0 / std::sqrt(2.0);
    const CMatrix img = apply_coords(m, s, basis);
    const Complex c = (v.col(0).adjoint() * img * v.col(k))(0, 0) * std::sqrt(2.0);
    if (std::abs(std::abs(c) - 1.0) > kProjectionTol)
      throw Error(ErrorCode::NotAdjointImage, "phase coupling has modulus != 1", std::abs(c));
    v.col(k) *= std::conj(c) / std::abs(c);
  }

  Eigen::JacobiSVD<CMatrix> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CMatrix u = svd.matrixU() * svd.matrixV().adjoint();
  u /= std::polar(1.0, std::arg(u.determinant()) / n);

  UnitaryMatrix um(std::move(u));
  const double residual = map_distance(ad_matrix(um, basis), m);
  if (residual > kAcceptResidual) throw Error(ErrorCode::NotAdjointImage, "Ad(U) does not reproduce M", residual);
  return {std::move(um), residual};
}

AffineMap IsometryDecomposition::rebuild() const {
  const OrthonormalBasis basis = gell_mann_basis(u.n());
  return AffineMap{canonical_hermitian_map(eta, sigma_flag, u), vectorize(b, basis)};
}

IsometryDecomposition decompose_isometry(const AffineMap& l, const NormSpec& spec, std::uint64_t seed) {
  const RealLinearMap& m = l.linear;
  if (m.space != SpaceTag::hermitian_traceless || spec.space != SpaceTag::hermitian_traceless)
    throw Error(ErrorCode::SpecMismatch, "decompose_isometry works on H0_n with a Hermitian norm");
  const int n = m.n;
  spec.validate_for(n);
  if (l.offset.size() != m.dim()) throw Error(ErrorCode::InvalidDimension, "offset length does not match map");
  const OrthonormalBasis basis = gell_mann_basis(n);

  Rng rng = make_rng(derive_seed(seed, kIsometryStream));
  double worst = 0.0;
  for (int t = 0; t < kIsometryPairs; ++t) {
    const TracelessHermitian a = random_hermitian_traceless(n, rng);
    const TracelessHermitian b = random_hermitian_traceless(n, rng);
    const CoordinateVector image_gap = vectorize(l(a, basis), basis) - vectorize(l(b, basis), basis);
    const double before = norm_value(TracelessHermitian::unchecked(a.matrix() - b.matrix()), spec);
    const double after = norm_value(devectorize_hermitian(image_gap, basis), spec);
    worst = std::max(worst, std::abs(after - before) / before);
  }
  if (worst > kIsometryTol) throw Error(ErrorCode::NotIsometry, "distances are not preserved", worst);

  int eta = 1;
  bool sigma_flag = false;
  if (n == 2) {
    eta = m.matrix.determinant() > 0.0 ? 1 : -1;
  } else {
    const EtaSigma cls = classify_eta_sigma(m, seed);
    eta = cls.eta;
    sigma_flag = cls.sigma_flag;
  }

  RealLinearMap core = sigma_flag ? compose(m, cartan_matrix(basis)) : m;
  core = scale(core, static_cast<double>(eta));
  UnitaryRecovery rec = [&] {
    try {
      return recover_unitary_from_ad(core);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotAdjointImage || e.code() == ErrorCode::RecoveryFailed)
        throw Error(ErrorCode::NotInClassifiedForm, std::string("linear part is not eta Ad(U) sigma^f: ") + e.what(),
                    e.value());
      throw;
    }
  }();

  IsometryDecomposition out{eta, sigma_flag, std::move(rec.u), devectorize_hermitian(l.offset, basis), 0.0};
  out.residual = map_distance(canonical_hermitian_map(eta, sigma_flag, out.u), m);
  return out;
}

OrthogonalRecoveryAttempt try_recover_orthogonal_from_adso(const RealLinearMap& m) {
  OrthogonalRecoveryAttempt out;
  if (m.space != SpaceTag::skew_real) {
    out.error = ErrorCode::InvalidDimension;
    return out;
  }
  const int n = m.n;
  const OrthonormalBasis basis = skew_basis(n);

  RMatrix q = RMatrix::Identity(n, n);
  if (n == 2) {
    // SO(2) acts trivially on K_2; reflections act by -1.
    if (m.matrix(0, 0) < 0.0) q(1, 1) = -1.0;
  } else {
    // Basis index j-1 holds F_{1j}; its image spans the plane <q_1, q_j>.
    auto image = [&](int j) { return devectorize_skew(m.matrix.col(j - 1), basis).matrix(); };
    const RMatrix w2 = image(1);
    const RMatrix w3 = image(2);
    RMatrix stacked(2 * n, n);
    stacked.topRows(n) = RMatrix::Identity(n, n) - 2.0 * w2 * w2.transpose();
    stacked.bottomRows(n) = RMatrix::Identity(n, n) - 2.0 * w3 * w3.transpose();
    Eigen::JacobiSVD<RMatrix> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(n - 2) < kProjectionTol) {
      out.error = ErrorCode::RecoveryFailed;
      out.residual = sv(n - 2);
      return out;
    }
    const RVector q1 = svd.matrixV().col(n - 1);
    q.col(0) = q1;
    for (int j = 1; j < n; ++j) q.col(j) = std::sqrt(2.0) * image(j).transpose() * q1;
  }

  out.residual = raw_adso_residual(q, m, basis);
  if (!(out.residual <= kAcceptResidual)) {
    out.error = ErrorCode::NotAdjointImage;
    return out;
  }
  q = nearest_orthogonal(q);
  if (n % 2 == 1 && q.determinant() < 0.0) q = -q;
  OrthogonalMatrix qm(std::move(q));
  out.residual = map_distance(so_adjoint_matrix(qm, basis, true), m);
  if (out.residual > kAcceptResidual) {
    out.error = ErrorCode::NotAdjointImage;
    return out;
  }
  out.q = std::move(qm);
  return out;
}

OrthogonalRecovery recover_orthogonal_from_adso(const RealLinearMap& m) {
  OrthogonalRecoveryAttempt attempt = try_recover_orthogonal_from_adso(m);
  if (attempt.error) {
    const ErrorCode code = *attempt.error;
    throw Error(code,
                code == ErrorCode::RecoveryFailed ? "planes of F_12 and F_13 do not meet in a line"
                                                  : "map is not a congruence Q A Q^T",
                attempt.residual);
  }
  return {std::move(*attempt.q), attempt.residual};
}

RealLinearMap SkewIsometryDecomposition::rebuild() const { return canonical_skew_map(sign, psi_flag, q); }

SkewIsometryDecomposition decompose_skew_isometry(const RealLinearMap& l, const NormSpec& spec, std::uint64_t seed) {
  if (l.space != SpaceTag::skew_real || spec.space != SpaceTag::skew_real)
    throw Error(ErrorCode::SpecMismatch, "decompose_skew_isometry works on K_n with a skew norm");
  const int n = l.n;
  spec.validate_for(n);
  const OrthonormalBasis basis = skew_basis(n);

  Rng rng = make_rng(derive_seed(seed, kIsometryStream));
  double worst = 0.0;
  for (int t = 0; t < kIsometryPairs; ++t) {
    const SkewSymmetricReal a = random_skew(n, rng);
    const SkewSymmetricReal b = random_skew(n, rng);
    const SkewSymmetricReal gap = SkewSymmetricReal::unchecked(a.matrix() - b.matrix());
    const double before = norm_value(gap, spec);
    const double after = norm_value(apply(l, gap, basis), spec);
    worst = std::max(worst, std::abs(after - before) / before);
  }
  if (worst > kIsometryTol) throw Error(ErrorCode::NotIsometry, "distances are not preserved", worst);

  struct Branch {
    int sign;
    bool psi;
  };
  std::vector<Branch> branches{{1, false}, {-1, false}};
  if (n == 4) {
    branches.push_back({1, true});
    branches.push_back({-1, true});
  }
  double best_residual = INFINITY;
  for (const Branch& br : branches) {
    RealLinearMap candidate = scale(br.psi ? compose(l, psi_matrix()) : l, static_cast<double>(br.sign));
    OrthogonalRecoveryAttempt attempt = try_recover_orthogonal_from_adso(candidate);
    best_residual = std::min(best_residual, attempt.residual);
    if (attempt.q && attempt.residual < kBranchResidual) {
      SkewIsometryDecomposition out{br.sign, br.psi, std::move(*attempt.q), 0.0};
      out.residual = map_distance(out.rebuild(), l);
      return out;
    }
  }
  throw Error(ErrorCode::NotInClassifiedForm, "no branch of <Ad SO(n), tau, psi> matches", best_residual);
}

}  // namespace isomlab
