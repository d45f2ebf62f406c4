#include "blinksig/substitution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace blinksig {

double unitarity_defect(const ComplexMatrix& u) {
  const ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
  return d.size() == 0 ? 0.0 : d.cwiseAbs().maxCoeff();
}

ComplexMatrix polar_projection(const ComplexMatrix& u) {
  Eigen::JacobiSVD<ComplexMatrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

ComplexMatrix haar_unitary(int k, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) z(r, c) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(k, k);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < k; ++c) {
    const double mag = std::abs(r(c, c));
    if (mag > 0) q.col(c) *= r(c, c) / mag;
  }
  return q;
}

UnitaryTuple::UnitaryTuple(int k, std::vector<ComplexMatrix> unitaries, double unitarity_tol)
    : k_(k), us_(std::move(unitaries)) {
  if (k_ < 1) throw ValidationError("representation dimension k must be >= 1");
  if (us_.empty()) throw ValidationError("representation point needs at least one unitary");
  for (std::size_t r = 0; r < us_.size(); ++r) {
    ComplexMatrix& u = us_[r];
    if (u.rows() != k_ || u.cols() != k_)
      throw ValidationError("U_" + std::to_string(r + 1) + " is not " + std::to_string(k_) + "x" + std::to_string(k_));
    if (!u.allFinite()) throw ValidationError("U_" + std::to_string(r + 1) + " has non-finite entries");
    const double defect = unitarity_defect(u);
    if (defect <= unitarity_tol) continue;
    if (defect > std::max(kProjectionTol, unitarity_tol))
      throw ValidationError("U_" + std::to_string(r + 1) + " is not unitary (defect " + std::to_string(defect) + ")");
    u = polar_projection(u);
  }
}

UnitaryTuple UnitaryTuple::from_angles(const std::vector<double>& angles) {
  std::vector<ComplexMatrix> us;
  us.reserve(angles.size());
  for (double theta : angles) {
    if (!std::isfinite(theta)) throw ValidationError("non-finite angle");
    ComplexMatrix u(1, 1);
    u(0, 0) = std::polar(1.0, theta);
    us.push_back(std::move(u));
  }
  return UnitaryTuple(1, std::move(us));
}

UnitaryTuple UnitaryTuple::trivial(int m, int k) {
  return UnitaryTuple(k, std::vector<ComplexMatrix>(static_cast<std::size_t>(m), ComplexMatrix::Identity(k, k)));
}

UnitaryTuple UnitaryTuple::haar(int m, int k, Rng& rng) {
  std::vector<ComplexMatrix> us;
  for (int r = 0; r < m; ++r) us.push_back(haar_unitary(k, rng));
  return UnitaryTuple(k, std::move(us));
}

UnitaryTuple UnitaryTuple::with(int r, ComplexMatrix u) const {
  std::vector<ComplexMatrix> us = us_;
  us.at(static_cast<std::size_t>(r)) = std::move(u);
  return UnitaryTuple(k_, std::move(us));
}

namespace {

ComplexMatrix matrix_power(const ComplexMatrix& u, int d) {
  const int k = static_cast<int>(u.rows());
  ComplexMatrix base = d >= 0 ? u : ComplexMatrix(u.adjoint());
  ComplexMatrix out = ComplexMatrix::Identity(k, k);
  for (int e = std::abs(d); e > 0; --e) out = out * base;
  return out;
}

}  // namespace

ComplexMatrix substitute(const PresentationLevel& p, const UnitaryTuple& alpha) {
  const int m = p.matrix.vars();
  if (alpha.m() != m)
    throw ValidationError("representation has " + std::to_string(alpha.m()) + " components, presentation has " +
                          std::to_string(m) + " variables");
  const int k = alpha.k();
  const int g = p.matrix.rows();
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(g) * k, static_cast<Eigen::Index>(g) * k);
  for (int r = 0; r < g; ++r)
    for (int c = 0; c < g; ++c) {
      auto block = out.block(static_cast<Eigen::Index>(r) * k, static_cast<Eigen::Index>(c) * k, k, k);
      for (const auto& [deg, coef] : p.matrix(r, c).terms()) {
        int var = -1;
        for (int j = 0; j < m; ++j) {
          if (deg[static_cast<std::size_t>(j)] == 0) continue;
          if (var >= 0) throw ValidationError("cannot substitute a monomial in two non-commuting variables");
          var = j;
        }
        const double a = coef.get_d();
        if (var < 0)
          block.diagonal().array() += a;
        else
          block += a * matrix_power(alpha[var], deg[static_cast<std::size_t>(var)]);
      }
    }
  return out;
}

HadamardResult hadamard(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("Hadamard margin of a non-square matrix");
  if (m.rows() == 0) return {Complex(1.0, 0.0), 1.0};
  const Complex det = m.partialPivLu().determinant();
  // Compare in log space; row-norm products over- or underflow for large sides.
  double log_rows = 0.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double norm = m.row(r).norm();
    if (norm == 0.0) return {det, 0.0};
    log_rows += std::log(norm);
  }
  const double mag = std::abs(det);
  if (mag == 0.0) return {det, 0.0};
  return {det, std::clamp(std::exp(std::log(mag) - log_rows), 0.0, 1.0)};
}

std::vector<DiscriminantMargin> discriminant_margins(const BoundaryLinkData& link, const UnitaryTuple& alpha,
                                                     Convention conv) {
  std::vector<DiscriminantMargin> out;
  for (int level : discriminant_levels(link)) {
    const HadamardResult h = hadamard(substitute(presentation_matrix(link, level, conv), alpha));
    out.push_back({level, h.det, h.margin});
  }
  return out;
}

double DiscriminantMembership::min_margin() const {
  double out = 1.0;
  for (const auto& mg : margins) out = std::min(out, mg.margin);
  return out;
}

DiscriminantMembership in_discriminant(const BoundaryLinkData& link, const UnitaryTuple& alpha, double tol,
                                       Convention conv) {
  if (!(tol > 0)) throw ValidationError("discriminant tolerance must be positive");
  DiscriminantMembership out;
  out.margins = discriminant_margins(link, alpha, conv);
  out.member = out.min_margin() < tol;
  return out;
}

}  // namespace blinksig
