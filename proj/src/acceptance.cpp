#include "blinksig/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "blinksig/catalog.hpp"
#include "blinksig/lab.hpp"
#include "blinksig/oracle.hpp"
#include "blinksig/presentation.hpp"
#include "blinksig/substitution.hpp"
#include "blinksig/twisted_signature.hpp"

namespace blinksig::acceptance {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kJumpLocationTol = 1e-6;
constexpr double kFigureEightMargin = 0.01;
constexpr double kJumpMarginTol = 1e-6;
constexpr double kConsistencyRelTol = 1e-9;
// Both determinants count as zero below this fraction of the Hadamard bound.
constexpr double kZeroDetFloor = 1e-12;

struct RecordedScan {
  std::string label;
  bool one_by_one = false;  // m = k = 1
  JumpReport report;
};

struct Context {
  std::vector<RecordedScan> scans;
};

// Accumulates sub-check failures into one detail string.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok && failed_.size() < 6) failed_.push_back(what);
    if (!ok) ++failures_;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  CriterionResult result(int id, std::string title) const {
    std::ostringstream os;
    os << (total_ - failures_) << "/" << total_ << " checks";
    if (!notes_.empty()) os << "; " << notes_;
    for (const auto& f : failed_) os << "; FAILED " << f;
    return {id, std::move(title), failures_ == 0 && total_ > 0, os.str()};
  }

 private:
  long total_ = 0;
  long failures_ = 0;
  std::vector<std::string> failed_;
  std::string notes_;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

UnitaryTuple angle_point(std::initializer_list<double> angles) { return UnitaryTuple::from_angles(angles); }

CriterionResult trefoil_profile(Context& ctx) {
  Checker c;
  const BoundaryLinkData trefoil = catalog::trefoil();
  ScanOptions opts;
  opts.samples = 1024;
  const JumpReport scan = scan_path(trefoil, circle_on_component(angle_point({0.0}), 0), opts);
  ctx.scans.push_back({"trefoil circle", true, scan});

  c.expect(scan.jumps.size() == 2, "expected 2 jumps, got " + std::to_string(scan.jumps.size()));
  if (scan.jumps.size() == 2) {
    c.expect(std::abs(scan.jumps[0].s - 1.0 / 6) <= kJumpLocationTol, "first jump at s=" + num(scan.jumps[0].s));
    c.expect(std::abs(scan.jumps[1].s - 5.0 / 6) <= kJumpLocationTol, "second jump at s=" + num(scan.jumps[1].s));
    c.note("jumps at s=" + num(scan.jumps[0].s) + ", " + num(scan.jumps[1].s));
  }
  int bad_profile = 0;
  int in_disc = 0;
  for (const auto& smp : scan.samples) {
    const bool inside = smp.s > 1.0 / 6 && smp.s < 5.0 / 6;
    if (smp.ambiguous) continue;
    if (smp.signature != (inside ? -2 : 0)) ++bad_profile;
    if (smp.margin_p < kDiscriminantTol) ++in_disc;
  }
  c.expect(bad_profile == 0, std::to_string(bad_profile) + " samples off the -2/0 profile");
  c.expect(in_disc == 0, std::to_string(in_disc) + " samples inside the discriminant away from the roots");
  for (double theta : {kPi / 3, -kPi / 3})
    c.expect(in_discriminant(trefoil, angle_point({theta})).member, "e^{i" + num(theta) + "} not in discriminant");

  const InertiaResult at_minus_one = rho_hat(trefoil, angle_point({kPi}));
  c.expect(at_minus_one.signature == -2 && at_minus_one.nullity == 0 && !at_minus_one.ambiguous,
           "omega=-1 gave (" + std::to_string(at_minus_one.signature) + ", " + std::to_string(at_minus_one.nullity) + ")");
  return c.result(1, "trefoil Levine-Tristram profile");
}

CriterionResult figure_eight(Context& ctx) {
  Checker c;
  const BoundaryLinkData fig8 = catalog::figure_eight();
  ScanOptions opts;
  opts.samples = 1000;
  const JumpReport scan = scan_path(fig8, circle_on_component(angle_point({0.0}), 0), opts);
  ctx.scans.push_back({"figure-eight circle", true, scan});
  double min_margin = 1.0;
  int nonzero = 0;
  for (const auto& smp : scan.samples) {
    min_margin = std::min(min_margin, smp.margin_p);
    if (smp.signature != 0) ++nonzero;
  }
  c.expect(min_margin > kFigureEightMargin, "min discriminant margin " + num(min_margin));
  c.expect(nonzero == 0, std::to_string(nonzero) + " samples with nonzero signature");
  c.expect(scan.jumps.empty(), std::to_string(scan.jumps.size()) + " jumps");
  c.note("min margin " + num(min_margin));
  return c.result(2, "figure-eight empty circle discriminant");
}

CriterionResult split_trefoils(Context& ctx) {
  Checker c;
  const BoundaryLinkData split = catalog::split_trefoils();
  // (t1^2 - t1 + 1)(t2^2 - t2 + 1) assembled term by term.
  LaurentPoly f1(2), f2(2);
  f1.add_term({2, 0}, 1);
  f1.add_term({1, 0}, -1);
  f1.add_term({0, 0}, 1);
  f2.add_term({0, 2}, 1);
  f2.add_term({0, 1}, -1);
  f2.add_term({0, 0}, 1);
  const LaurentPoly expected = normalize(f1 * f2);
  const LaurentPoly got = alexander_polynomial(split, 1, Convention::classical);
  c.expect(got == expected, "discriminant polynomial " + got.to_string());

  const InertiaResult r = rho_hat(split, angle_point({kPi, kPi}));
  c.expect(r.signature == -4 && r.nullity == 0, "rho_hat(-1,-1) = " + std::to_string(r.signature));

  const BoundaryLinkData trefoil = catalog::trefoil();
  const auto grid = torus_grid(split, 8);
  c.expect(grid.size() == 64, "grid has " + std::to_string(grid.size()) + " points");
  int mismatches = 0;
  for (const auto& gp : grid) {
    const int s1 = rho_hat(trefoil, angle_point({gp.angles[0]})).signature;
    const int s2 = rho_hat(trefoil, angle_point({gp.angles[1]})).signature;
    if (gp.inertia.signature != s1 + s2) ++mismatches;
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " grid points violate additivity");

  for (int component = 0; component < 2; ++component) {
    ScanOptions opts;
    opts.samples = 512;
    ctx.scans.push_back({"split-trefoils component " + std::to_string(component + 1), false,
                         scan_path(split, circle_on_component(angle_point({kPi, kPi}), component), opts)});
  }
  return c.result(3, "split union of two trefoils");
}

CriterionResult metabolic_vanishing(Context& ctx) {
  Checker c;
  LabParams p = default_params(Suite::metabolic_vanishing);
  p.trials = 200;
  p.points = 50;
  const PropertyReport report = run_suite(Suite::metabolic_vanishing, p, 7);
  c.expect(report.passed(), std::to_string(report.failures.size()) + " failing trials");
  c.expect(report.checks > 0, "no non-ambiguous points checked");
  c.note(std::to_string(report.checks) + " points checked, " + std::to_string(report.skipped_ambiguous) +
         " ambiguous, " + std::to_string(report.skipped_singular) + " singular skipped");

  ScanOptions opts;
  opts.samples = 512;
  ctx.scans.push_back({"hyperbolic pair circle", true,
                       scan_path(catalog::hyperbolic_pair(), circle_on_component(angle_point({0.0}), 0), opts)});
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const BoundaryLinkData link = random_metabolic_link(2, 2, seed);
    const JumpReport scan = scan_path(link, circle_on_component(angle_point({0.0, 2.0}), 0), opts);
    c.expect(scan.jumps.empty(), "metabolic scan " + std::to_string(seed) + " has jumps");
    ctx.scans.push_back({"metabolic " + std::to_string(seed), false, scan});
  }
  return c.result(4, "metabolic-vanishing suite");
}

CriterionResult congruence_invariance() {
  Checker c;
  LabParams p = default_params(Suite::congruence_invariance);
  p.trials = 100;
  const PropertyReport report = run_suite(Suite::congruence_invariance, p, 3);
  c.expect(report.passed(), std::to_string(report.failures.size()) + " failing trials");
  c.note(std::to_string(report.checks) + " checks, " + std::to_string(report.skipped_ambiguous) + " ambiguous skipped");
  return c.result(5, "congruence-invariance suite");
}

CriterionResult augmentation_identity() {
  Checker c;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(derive_seed(606, seed));
    const int m = uniform_int(rng, 1, 3);
    const int n = seed % 5 == 4 ? 3 : 1;
    const int k = uniform_int(rng, 1, 3);
    const BoundaryLinkData link = random_link(m, n, 3, rng());
    for (Convention conv : {Convention::paper, Convention::classical})
      for (int level = 1; level <= n; ++level) {
        const ComplexMatrix substituted = substitute(presentation_matrix(link, level, conv), UnitaryTuple::trivial(m, k));
        // Integer expectation built from the Seifert matrices directly.
        const IntMatrix& a = link.level(level).matrix;
        const IntMatrix& dual = link.level(n + 1 - level).matrix;
        const int parity = level % 2 == 0 ? 1 : -1;
        const int sign = conv == Convention::paper ? -parity : parity;
        bool exact = substituted.rows() == static_cast<Eigen::Index>(a.rows()) * k;
        for (int r = 0; exact && r < a.rows(); ++r)
          for (int col = 0; exact && col < a.cols(); ++col)
            for (int x = 0; x < k; ++x)
              for (int y = 0; y < k; ++y) {
                const double want = x == y ? static_cast<double>(a(r, col) + sign * dual(col, r)) : 0.0;
                if (substituted(r * k + x, col * k + y) != Complex(want, 0.0)) exact = false;
              }
        c.expect(exact, "seed " + std::to_string(seed) + " level " + std::to_string(level) + " " +
                            std::string(to_string(conv)));
      }
  }
  return c.result(6, "augmentation identity at the trivial representation");
}

CriterionResult symbolic_numeric_consistency() {
  Checker c;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(derive_seed(707, seed));
    const int m = uniform_int(rng, 1, 3);
    const BoundaryLinkData link = random_link(m, 1, 3, rng());
    const PresentationLevel p = presentation_matrix(link, 1, Convention::classical);
    const LaurentPoly det = det_bareiss(p.matrix);
    for (int i = 0; i < 100; ++i) {
      std::vector<double> angles(static_cast<std::size_t>(m));
      for (double& a : angles) a = uniform_real(rng, 0.0, 2 * kPi);
      const UnitaryTuple alpha = UnitaryTuple::from_angles(angles);
      std::vector<Complex> z;
      for (int r = 0; r < m; ++r) z.push_back(alpha[r](0, 0));
      const ComplexMatrix numeric = substitute(p, alpha);
      const double lhs = std::abs(numeric.partialPivLu().determinant());
      const double rhs = std::abs(eval(det, z));
      double bound = 1.0;
      for (Eigen::Index r = 0; r < numeric.rows(); ++r) bound *= numeric.row(r).norm();
      const double scale = std::max(lhs, rhs);
      const bool both_zero = scale <= kZeroDetFloor * bound;
      const double rel = scale == 0 ? 0.0 : std::abs(lhs - rhs) / scale;
      if (!both_zero) worst = std::max(worst, rel);
      c.expect(both_zero || rel <= kConsistencyRelTol, "seed " + std::to_string(seed) + " rel error " + num(rel));
    }
  }
  c.note("worst relative error " + num(worst));
  return c.result(7, "k=1 symbolic/numeric determinant consistency");
}

CriterionResult jump_containment(const Context& ctx) {
  Checker c;
  int jumps = 0;
  for (const auto& scan : ctx.scans)
    for (const auto& j : scan.report.jumps) {
      ++jumps;
      c.expect(j.margin_h < kJumpMarginTol, scan.label + " jump at s=" + num(j.s) + " margin_H " + num(j.margin_h));
      if (scan.one_by_one) {
        double min_p = 1.0;
        for (const auto& mg : j.margins_p) min_p = std::min(min_p, mg.margin);
        c.expect(min_p < kJumpMarginTol, scan.label + " jump at s=" + num(j.s) + " margin_P " + num(min_p));
      }
    }
  c.expect(jumps > 0, "no jumps recorded by criteria 1-4");
  c.note(std::to_string(ctx.scans.size()) + " scans, " + std::to_string(jumps) + " jumps");
  return c.result(8, "jump-locus containment");
}

CriterionResult mirror_and_additivity() {
  Checker c;
  for (Suite suite : {Suite::mirror, Suite::additivity}) {
    LabParams p = default_params(suite);
    p.trials = 100;
    p.points = 1;
    const PropertyReport report = run_suite(suite, p, 9);
    c.expect(report.passed(), std::string(to_string(suite)) + ": " + std::to_string(report.failures.size()) + " failures");
    c.note(std::string(to_string(suite)) + " " + std::to_string(report.checks) + " checks, " +
           std::to_string(report.skipped_ambiguous) + " ambiguous skipped");
  }
  return c.result(9, "mirror antisymmetry and block-sum additivity");
}

LaurentMatrix random_laurent_matrix(Rng& rng) {
  const int n = uniform_int(rng, 1, 4);
  const int vars = uniform_int(rng, 1, 3);
  LaurentMatrix m(n, n, vars);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int terms = uniform_int(rng, 0, 2);
      for (int t = 0; t < terms; ++t) {
        Multidegree deg(static_cast<std::size_t>(vars));
        for (int& d : deg) d = uniform_int(rng, -2, 2);
        m(r, c).add_term(deg, uniform_int(rng, -3, 3));
      }
    }
  return m;
}

CriterionResult determinant_oracle() {
  Checker c;
  Rng rng(1010);
  for (int trial = 0; trial < 200; ++trial) {
    const LaurentMatrix m = random_laurent_matrix(rng);
    c.expect(det_bareiss(m) == oracle::cofactor_det(m), "trial " + std::to_string(trial));
  }
  return c.result(10, "det_bareiss vs cofactor expansion");
}

}  // namespace

std::vector<CriterionResult> run_all() {
  Context ctx;
  std::vector<CriterionResult> out;
  out.push_back(trefoil_profile(ctx));
  out.push_back(figure_eight(ctx));
  out.push_back(split_trefoils(ctx));
  out.push_back(metabolic_vanishing(ctx));
  out.push_back(congruence_invariance());
  out.push_back(augmentation_identity());
  out.push_back(symbolic_numeric_consistency());
  out.push_back(jump_containment(ctx));
  out.push_back(mirror_and_additivity());
  out.push_back(determinant_oracle());
  return out;
}

std::string format(const CriterionResult& r) {
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + ". " + r.title + ": " + r.detail;
}

}  // namespace blinksig::acceptance
