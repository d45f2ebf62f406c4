#include "blinksig/twisted_signature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "blinksig/parallel.hpp"

namespace blinksig {

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("Hermitian matrix must be square");
  h_ = (m + m.adjoint()) * 0.5;
}

namespace {

Eigen::VectorXd eigenvalues(const HermitianMatrix& h) {
  if (h.size() == 0) return {};
  if (!h.matrix().allFinite()) throw std::domain_error("Hermitian matrix has non-finite entries");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigenvalue solver did not converge");
  return solver.eigenvalues();
}

InertiaResult count_inertia(const Eigen::VectorXd& ev, double tol_rel) {
  InertiaResult out;
  out.spectral_norm = ev.size() == 0 ? 0.0 : ev.cwiseAbs().maxCoeff();
  out.min_abs_eigenvalue = ev.size() == 0 ? 0.0 : ev.cwiseAbs().minCoeff();
  const double tau = out.spectral_norm > 0 ? tol_rel * out.spectral_norm : tol_rel;
  out.tol_used = tau;
  for (double lambda : ev) {
    const double mag = std::abs(lambda);
    if (lambda > tau)
      ++out.signature;
    else if (lambda < -tau)
      --out.signature;
    else
      ++out.nullity;
    if (mag > tau / 16 && mag < 16 * tau) out.ambiguous = true;
  }
  return out;
}

}  // namespace

InertiaResult inertia(const HermitianMatrix& h, double tol_rel) {
  if (!(tol_rel > 0)) throw std::invalid_argument("inertia tolerance must be positive");
  return count_inertia(eigenvalues(h), tol_rel);
}

HermitianMatrix twisted_form(const BoundaryLinkData& link, const UnitaryTuple& alpha) {
  const int q = link.q();
  if (q % 2 == 0)
    throw UnsupportedConfiguration("twisted form for n = " + std::to_string(link.n()) +
                                   " (q even) needs a skew-Hermitian convention and is not supported");
  if (alpha.m() != link.m())
    throw ValidationError("representation has " + std::to_string(alpha.m()) + " components, link has " +
                          std::to_string(link.m()));
  const SeifertLevel& lvl = link.level(q);
  const IntMatrix& a = lvl.matrix;
  const int k = alpha.k();
  const int g = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(k, k);
  std::vector<ComplexMatrix> left;   // I - U_i^dag
  std::vector<ComplexMatrix> right;  // I - U_j
  for (int r = 0; r < link.m(); ++r) {
    left.push_back(id - alpha[r].adjoint());
    right.push_back(id - alpha[r]);
  }
  ComplexMatrix h = ComplexMatrix::Zero(static_cast<Eigen::Index>(g) * k, static_cast<Eigen::Index>(g) * k);
  for (int r = 0; r < g; ++r) {
    const int i = lvl.blocks.component_of(r);
    for (int c = 0; c < g; ++c) {
      const int j = lvl.blocks.component_of(c);
      const double a_rc = static_cast<double>(a(r, c));
      const double a_cr = static_cast<double>(a(c, r));
      if (a_rc == 0 && a_cr == 0) continue;
      h.block(static_cast<Eigen::Index>(r) * k, static_cast<Eigen::Index>(c) * k, k, k) =
          a_rc * left[static_cast<std::size_t>(i)] + a_cr * right[static_cast<std::size_t>(j)];
    }
  }
  return HermitianMatrix(h);
}

InertiaResult rho_hat(const BoundaryLinkData& link, const UnitaryTuple& alpha, double tol_rel) {
  return inertia(twisted_form(link, alpha), tol_rel);
}

Path circle_on_component(const UnitaryTuple& base, int component) {
  if (component < 0 || component >= base.m())
    throw ValidationError("component " + std::to_string(component + 1) + " outside 1.." + std::to_string(base.m()));
  return [base, component](double s) {
    return base.with(component, std::polar(1.0, 2 * std::numbers::pi * s) * base[component]);
  };
}

Path random_circle(int m, int k, Rng& rng) {
  struct Factor {
    ComplexMatrix b, v;
    std::vector<int> winding;
  };
  std::vector<Factor> factors;
  static constexpr int kWindings[] = {-2, -1, 1, 2};
  for (int j = 0; j < m; ++j) {
    Factor f{haar_unitary(k, rng), haar_unitary(k, rng), {}};
    for (int a = 0; a < k; ++a) f.winding.push_back(kWindings[uniform_int(rng, 0, 3)]);
    factors.push_back(std::move(f));
  }
  return [factors, k](double s) {
    std::vector<ComplexMatrix> us;
    for (const auto& f : factors) {
      Eigen::VectorXcd phases(k);
      for (int a = 0; a < k; ++a) phases(a) = std::polar(1.0, 2 * std::numbers::pi * s * f.winding[static_cast<std::size_t>(a)]);
      us.push_back(f.b * f.v * phases.asDiagonal() * f.v.adjoint());
    }
    return UnitaryTuple(k, std::move(us));
  };
}

namespace {

struct Evaluation {
  InertiaResult inertia;
  int bisect_class = 0;
  double margin_h = 0.0;
};

Evaluation evaluate(const BoundaryLinkData& link, const UnitaryTuple& alpha, double tol_rel) {
  const HermitianMatrix h = twisted_form(link, alpha);
  const Eigen::VectorXd ev = eigenvalues(h);
  Evaluation out{count_inertia(ev, tol_rel), 0, hadamard(h.matrix()).margin};
  if (out.inertia.nullity == 0) {
    out.bisect_class = out.inertia.signature;
  } else {
    // Inside the threshold band use raw eigenvalue signs so bisection still converges.
    for (double lambda : ev) out.bisect_class += lambda > 0 ? 1 : (lambda < 0 ? -1 : 0);
  }
  return out;
}

double min_margin(const std::vector<DiscriminantMargin>& margins) {
  double out = 1.0;
  for (const auto& m : margins) out = std::min(out, m.margin);
  return out;
}

}  // namespace

JumpReport scan_path(const BoundaryLinkData& link, const Path& path, const ScanOptions& options) {
  if (options.samples < 2) throw ValidationError("scan needs at least 2 samples");
  if (!(options.refine_tol > 0)) throw ValidationError("refine tolerance must be positive");
  const std::size_t n = static_cast<std::size_t>(options.samples);
  JumpReport report;
  report.samples.resize(n);
  std::vector<int> classes(n);
  parallel_for(n, [&](std::size_t i) {
    const double s = static_cast<double>(i) / static_cast<double>(n - 1);
    const UnitaryTuple alpha = path(s);
    const Evaluation e = evaluate(link, alpha, options.inertia_tol);
    report.samples[i] = {s, e.inertia.signature, e.inertia.nullity, e.inertia.ambiguous, e.margin_h,
                         min_margin(discriminant_margins(link, alpha, options.convention))};
    classes[i] = e.bisect_class;
  });
  for (const auto& s : report.samples)
    if (s.ambiguous) ++report.ambiguous_samples;

  std::vector<std::size_t> brackets;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (report.samples[i].signature != report.samples[i + 1].signature) brackets.push_back(i);
  report.jumps.resize(brackets.size());
  parallel_for(brackets.size(), [&](std::size_t b) {
    const std::size_t i = brackets[b];
    double lo = report.samples[i].s;
    double hi = report.samples[i + 1].s;
    const int left_class = classes[i];
    while (hi - lo > options.refine_tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (evaluate(link, path(mid), options.inertia_tol).bisect_class == left_class)
        lo = mid;
      else
        hi = mid;
    }
    const double s = 0.5 * (lo + hi);
    const UnitaryTuple alpha = path(s);
    report.jumps[b] = {s,
                       hi - lo,
                       report.samples[i].signature,
                       report.samples[i + 1].signature,
                       hadamard(twisted_form(link, alpha).matrix()).margin,
                       discriminant_margins(link, alpha, options.convention)};
  });
  return report;
}

std::vector<GridPoint> torus_grid(const BoundaryLinkData& link, int resolution, Convention conv, double inertia_tol) {
  if (resolution < 2) throw ValidationError("grid resolution must be >= 2");
  const int m = link.m();
  if (m > 3) throw ValidationError("torus grid supports m <= 3");
  std::size_t total = 1;
  for (int j = 0; j < m; ++j) total *= static_cast<std::size_t>(resolution);
  std::vector<GridPoint> grid(total);
  parallel_for(total, [&](std::size_t idx) {
    std::vector<double> angles(static_cast<std::size_t>(m));
    std::size_t rest = idx;
    for (int j = m - 1; j >= 0; --j) {
      const auto step = static_cast<double>(rest % static_cast<std::size_t>(resolution));
      angles[static_cast<std::size_t>(j)] = 2 * std::numbers::pi * step / resolution;
      rest /= static_cast<std::size_t>(resolution);
    }
    const UnitaryTuple alpha = UnitaryTuple::from_angles(angles);
    const Evaluation e = evaluate(link, alpha, inertia_tol);
    grid[idx] = {angles, e.inertia, e.margin_h, min_margin(discriminant_margins(link, alpha, conv))};
  });
  return grid;
}

}  // namespace blinksig
