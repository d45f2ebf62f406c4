#include "blinksig/lab.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "blinksig/parallel.hpp"
#include "blinksig/presentation.hpp"

namespace blinksig {
namespace {

constexpr std::array<std::pair<Suite, std::string_view>, 6> kSuiteNames{{
    {Suite::metabolic_vanishing, "metabolic-vanishing"},
    {Suite::congruence_invariance, "congruence-invariance"},
    {Suite::additivity, "additivity"},
    {Suite::mirror, "mirror"},
    {Suite::local_constancy, "local-constancy"},
    {Suite::alexander_consistency, "alexander-consistency"},
}};

constexpr double kDetRelTol = 1e-9;
// Absolute floor for determinant comparisons, relative to the Hadamard bound.
constexpr double kDetBoundFloor = 1e-13;
constexpr double kLocalStep = 1e-4;
constexpr double kLocalMargin = 1e-2;

// Outcome of one trial, merged in trial order after the parallel run.
struct TrialOutcome {
  long checks = 0;
  long skipped_ambiguous = 0;
  long skipped_singular = 0;
  long rejected_moves = 0;
  std::optional<json> failure;
  json observations = json::object();
};

double hadamard_bound(const ComplexMatrix& m) {
  double out = 1.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) out *= m.row(r).norm();
  return out;
}

LaurentPoly invert_variables(const LaurentPoly& p) {
  LaurentPoly out(p.vars());
  for (const auto& [deg, c] : p.terms()) {
    Multidegree d = deg;
    for (int& x : d) x = -x;
    out.add_term(d, c);
  }
  return out;
}

json point_payload(const UnitaryTuple& alpha) { return rep_to_json(alpha); }

void add_observation(json& obs, const std::string& key, long delta) {
  obs[key] = obs.value(key, 0L) + delta;
}

TrialOutcome metabolic_trial(const LabParams& p, Rng& rng, int trial) {
  TrialOutcome out;
  const int m = uniform_int(rng, 1, p.m_max);
  const int k = uniform_int(rng, 1, p.k_max);
  const int half = std::max(1, p.block_max / 2);
  // Alternate two metabolic families: enlargement towers and L # mirror(L).
  BoundaryLinkData data = BoundaryLinkData::empty(m);
  if (trial % 2 == 0) {
    data = random_metabolic_link(m, half, rng());
  } else {
    const BoundaryLinkData base = random_link(m, 1, half, rng());
    data = block_sum(base, mirror(base));
  }
  for (int i = 0; i < p.points; ++i) {
    const UnitaryTuple alpha = UnitaryTuple::haar(m, k, rng);
    const InertiaResult r = rho_hat(data, alpha);
    if (r.ambiguous) {
      ++out.skipped_ambiguous;
      continue;
    }
    if (r.nullity > 0) {
      ++out.skipped_singular;
      continue;
    }
    ++out.checks;
    if (r.signature != 0 && !out.failure)
      out.failure = json{{"link", link_to_json(data)}, {"point", point_payload(alpha)}, {"rho_hat", inertia_to_json(r)},
                         {"expected_signature", 0}};
  }
  return out;
}

TrialOutcome congruence_trial(const LabParams& p, Rng& rng, int trial) {
  TrialOutcome out;
  const int m = uniform_int(rng, 1, p.m_max);
  const int k = uniform_int(rng, 1, p.k_max);
  const BoundaryLinkData link = trial % 2 == 0 ? random_link(m, 1, p.block_max, rng())
                                               : random_seifert_link(m, std::max(1, p.block_max / 2), rng());
  const BlockStructure& blocks = link.level(1).blocks;
  const auto [q, q_inv] = random_unimodular(blocks, 2 * blocks.total(), rng());
  const BoundaryLinkData moved = congruence_transform(link, q);
  const json move = json{{"Q", q.to_rows()}, {"Q_inverse", q_inv.to_rows()}};
  ++out.checks;
  if (!(congruence_transform(moved, q_inv) == link))
    out.failure = json{{"link", link_to_json(link)}, {"move", move}, {"reason", "Q^-1 did not restore the link"}};

  if (p.inject_bad_q && blocks.total() > 0) {
    IntMatrix bad = IntMatrix::identity(blocks.total());
    bad(0, 0) = 2;
    try {
      (void)congruence_transform(link, bad);
      if (!out.failure)
        out.failure = json{{"link", link_to_json(link)}, {"move", json{{"Q", bad.to_rows()}}},
                           {"reason", "non-unimodular Q was accepted"}};
    } catch (const ValidationError&) {
      ++out.rejected_moves;
    }
  }

  for (int i = 0; i < p.points; ++i) {
    const UnitaryTuple alpha = UnitaryTuple::haar(m, k, rng);
    const InertiaResult a = rho_hat(link, alpha);
    const InertiaResult b = rho_hat(moved, alpha);
    const auto ma = discriminant_margins(link, alpha, p.convention);
    const auto mb = discriminant_margins(moved, alpha, p.convention);
    double bound = 0.0;
    for (int level : discriminant_levels(link)) {
      bound = std::max(bound, hadamard_bound(substitute(presentation_matrix(link, level, p.convention), alpha)));
      bound = std::max(bound, hadamard_bound(substitute(presentation_matrix(moved, level, p.convention), alpha)));
    }
    bool det_ok = true;
    for (std::size_t l = 0; l < ma.size(); ++l) {
      const double diff = std::abs(ma[l].det_value - mb[l].det_value);
      const double scale = std::max(std::abs(ma[l].det_value), std::abs(mb[l].det_value));
      if (diff > kDetRelTol * scale + kDetBoundFloor * bound) det_ok = false;
    }
    ++out.checks;
    bool sig_ok = true;
    if (a.ambiguous || b.ambiguous) {
      ++out.skipped_ambiguous;
    } else {
      ++out.checks;
      sig_ok = a.signature == b.signature && a.nullity == b.nullity;
    }
    if ((!det_ok || !sig_ok) && !out.failure)
      out.failure = json{{"link", link_to_json(link)},         {"move", move},
                         {"point", point_payload(alpha)},       {"rho_hat", inertia_to_json(a)},
                         {"rho_hat_moved", inertia_to_json(b)}, {"margins", margins_to_json(ma)},
                         {"margins_moved", margins_to_json(mb)}};
  }
  return out;
}

TrialOutcome additivity_trial(const LabParams& p, Rng& rng, int) {
  TrialOutcome out;
  const int m = uniform_int(rng, 1, p.m_max);
  const int k = uniform_int(rng, 1, p.k_max);
  const BoundaryLinkData first = random_link(m, 1, p.block_max, rng());
  const BoundaryLinkData second = random_link(m, 1, p.block_max, rng());
  const BoundaryLinkData sum = block_sum(first, second);
  for (int i = 0; i < p.points; ++i) {
    const UnitaryTuple alpha = UnitaryTuple::haar(m, k, rng);
    const InertiaResult a = rho_hat(first, alpha);
    const InertiaResult b = rho_hat(second, alpha);
    const InertiaResult s = rho_hat(sum, alpha);
    if (a.ambiguous || b.ambiguous || s.ambiguous) {
      ++out.skipped_ambiguous;
      continue;
    }
    ++out.checks;
    if (s.signature != a.signature + b.signature && !out.failure)
      out.failure = json{{"link", link_to_json(first)},    {"second", link_to_json(second)},
                         {"point", point_payload(alpha)},  {"rho_hat", inertia_to_json(a)},
                         {"rho_hat_second", inertia_to_json(b)}, {"rho_hat_sum", inertia_to_json(s)}};
  }
  return out;
}

TrialOutcome mirror_trial(const LabParams& p, Rng& rng, int) {
  TrialOutcome out;
  const int m = uniform_int(rng, 1, p.m_max);
  const int k = uniform_int(rng, 1, p.k_max);
  const BoundaryLinkData link = random_link(m, 1, p.block_max, rng());
  const BoundaryLinkData image = mirror(link);
  const BoundaryLinkData inverse = mirror(reverse(link));
  ++out.checks;
  if (!(mirror(image) == link))
    out.failure = json{{"link", link_to_json(link)}, {"reason", "mirror is not an involution"}};
  for (int i = 0; i < p.points; ++i) {
    const UnitaryTuple alpha = UnitaryTuple::haar(m, k, rng);
    const InertiaResult a = rho_hat(link, alpha);
    const InertiaResult b = rho_hat(image, alpha);
    if (a.ambiguous || b.ambiguous) {
      ++out.skipped_ambiguous;
      continue;
    }
    ++out.checks;
    if ((b.signature != -a.signature || b.nullity != a.nullity) && !out.failure)
      out.failure = json{{"link", link_to_json(link)}, {"point", point_payload(alpha)}, {"rho_hat", inertia_to_json(a)},
                         {"rho_hat_mirror", inertia_to_json(b)}};
    // Open question: does the concordance inverse -A^T behave like the reflection?
    const InertiaResult c = rho_hat(inverse, alpha);
    if (!c.ambiguous) {
      add_observation(out.observations, "inverse_points", 1);
      add_observation(out.observations, "inverse_antisymmetric", c.signature == -a.signature ? 1 : 0);
    }
  }
  return out;
}

TrialOutcome local_constancy_trial(const LabParams& p, Rng& rng, int) {
  TrialOutcome out;
  const int m = uniform_int(rng, 1, p.m_max);
  const int k = uniform_int(rng, 1, p.k_max);
  const BoundaryLinkData link = random_link(m, 1, p.block_max, rng());
  for (int i = 0; i < p.points; ++i) {
    const UnitaryTuple alpha = UnitaryTuple::haar(m, k, rng);
    const HermitianMatrix h = twisted_form(link, alpha);
    const InertiaResult a = inertia(h);
    if (a.ambiguous) {
      ++out.skipped_ambiguous;
      continue;
    }
    if (a.nullity > 0 || hadamard(h.matrix()).margin <= kLocalMargin) {
      ++out.skipped_singular;
      continue;
    }
    const UnitaryTuple moved = perturb(alpha, kLocalStep, rng);
    const InertiaResult b = rho_hat(link, moved);
    ++out.checks;
    if (b.signature != a.signature && !out.failure)
      out.failure = json{{"link", link_to_json(link)},  {"point", point_payload(alpha)},
                         {"perturbed", point_payload(moved)}, {"rho_hat", inertia_to_json(a)},
                         {"rho_hat_perturbed", inertia_to_json(b)}};
  }
  return out;
}

TrialOutcome alexander_trial(const LabParams& p, Rng& rng, int) {
  TrialOutcome out;
  const int m = uniform_int(rng, 1, p.m_max);
  const BoundaryLinkData link = random_link(m, 1, p.block_max, rng());
  auto fail = [&](const char* reason, json extra) {
    if (out.failure) return;
    extra["link"] = link_to_json(link);
    extra["reason"] = reason;
    out.failure = std::move(extra);
  };
  for (Convention conv : {Convention::classical, Convention::paper}) {
    const LaurentPoly base = alexander_polynomial(link, 1, conv);
    const std::string conv_name(to_string(conv));

    const BlockStructure& blocks = link.level(1).blocks;
    const auto [q, q_inv] = random_unimodular(blocks, 2 * blocks.total(), rng());
    const LaurentPoly moved = alexander_polynomial(congruence_transform(link, q), 1, conv);
    ++out.checks;
    if (!(moved == base))
      fail("congruence changed the Alexander polynomial",
           json{{"move", json{{"Q", q.to_rows()}}}, {"convention", conv_name}, {"expected", poly_to_json(base)},
                {"got", poly_to_json(moved)}});

    const int component = uniform_int(rng, 0, m - 1);
    const std::uint64_t enlarge_seed = rng();
    const LaurentPoly enlarged = alexander_polynomial(metabolic_enlargement(link, component, enlarge_seed), 1, conv);
    ++out.checks;
    if (!(enlarged == base))
      fail("metabolic enlargement changed the Alexander polynomial",
           json{{"move", json{{"component", component}, {"seed", enlarge_seed}}}, {"convention", conv_name},
                {"expected", poly_to_json(base)}, {"got", poly_to_json(enlarged)}});

    const BoundaryLinkData other = random_link(m, 1, std::max(1, p.block_max - 1), rng());
    const LaurentPoly product = normalize(base * alexander_polynomial(other, 1, conv));
    const LaurentPoly summed = alexander_polynomial(block_sum(link, other), 1, conv);
    ++out.checks;
    if (!(summed == product))
      fail("block sum is not multiplicative",
           json{{"second", link_to_json(other)}, {"convention", conv_name}, {"expected", poly_to_json(product)},
                {"got", poly_to_json(summed)}});
  }
  // Symmetry t -> 1/t holds for genuine (unimodular) knot data.
  const BoundaryLinkData knot = random_seifert_link(1, std::max(1, p.block_max / 2), rng());
  const LaurentPoly delta = alexander_polynomial(knot, 1, Convention::classical);
  ++out.checks;
  if (!(normalize(invert_variables(delta)) == delta))
    fail("Alexander polynomial of unimodular knot data is not symmetric",
         json{{"knot", link_to_json(knot)}, {"polynomial", poly_to_json(delta)}});
  return out;
}

}  // namespace

std::string_view to_string(Suite s) {
  for (const auto& [suite, name] : kSuiteNames)
    if (suite == s) return name;
  return "unknown";
}

Suite parse_suite(std::string_view name) {
  for (const auto& [suite, n] : kSuiteNames)
    if (n == name) return suite;
  std::string known;
  for (const auto& [suite, n] : kSuiteNames) known += (known.empty() ? "" : ", ") + std::string(n);
  throw ValidationError("unknown suite '" + std::string(name) + "' (known: " + known + ")");
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = [] {
    std::vector<Suite> out;
    for (const auto& [suite, name] : kSuiteNames) out.push_back(suite);
    return out;
  }();
  return suites;
}

void LabParams::check() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ValidationError("lab parameter out of bounds: " + what);
  };
  require(trials >= 1 && trials <= 1000, "trials in 1..1000");
  require(m_max >= 1 && m_max <= 3, "m in 1..3");
  require(k_max >= 1 && k_max <= 3, "k in 1..3");
  require(block_max >= 1 && block_max <= 5, "block size in 1..5");
  require(points >= 1 && points <= 1000, "points in 1..1000");
}

json LabParams::to_json() const {
  return json{{"trials", trials}, {"m_max", m_max},   {"k_max", k_max},
              {"block_max", block_max}, {"points", points}, {"inject_bad_q", inject_bad_q},
              {"convention", std::string(blinksig::to_string(convention))}};
}

LabParams default_params(Suite s) {
  LabParams p;
  if (s == Suite::metabolic_vanishing) {
    p.points = 50;
    p.block_max = 4;
  }
  return p;
}

json PropertyReport::to_json() const {
  json fails = json::array();
  for (const auto& f : failures) fails.push_back(json{{"trial", f.trial}, {"payload", f.payload}});
  return json{{"suite", suite},
              {"seed", seed},
              {"params", params.to_json()},
              {"trials", params.trials},
              {"checks", checks},
              {"skipped_ambiguous", skipped_ambiguous},
              {"skipped_singular", skipped_singular},
              {"rejected_moves", rejected_moves},
              {"failures", std::move(fails)},
              {"observations", observations},
              {"passed", passed()}};
}

PropertyReport run_suite(Suite suite, const LabParams& params, std::uint64_t seed) {
  params.check();
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(params.trials));
  parallel_for(outcomes.size(), [&](std::size_t t) {
    const int trial = static_cast<int>(t);
    Rng rng(derive_seed(seed, t));
    switch (suite) {
      case Suite::metabolic_vanishing: outcomes[t] = metabolic_trial(params, rng, trial); break;
      case Suite::congruence_invariance: outcomes[t] = congruence_trial(params, rng, trial); break;
      case Suite::additivity: outcomes[t] = additivity_trial(params, rng, trial); break;
      case Suite::mirror: outcomes[t] = mirror_trial(params, rng, trial); break;
      case Suite::local_constancy: outcomes[t] = local_constancy_trial(params, rng, trial); break;
      case Suite::alexander_consistency: outcomes[t] = alexander_trial(params, rng, trial); break;
    }
  });
  PropertyReport report;
  report.suite = std::string(to_string(suite));
  report.seed = seed;
  report.params = params;
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    const TrialOutcome& o = outcomes[t];
    report.checks += o.checks;
    report.skipped_ambiguous += o.skipped_ambiguous;
    report.skipped_singular += o.skipped_singular;
    report.rejected_moves += o.rejected_moves;
    if (o.failure) report.failures.push_back({static_cast<int>(t), *o.failure});
    for (const auto& [key, value] : o.observations.items()) add_observation(report.observations, key, value.get<long>());
  }
  return report;
}

int LocusReport::agreements() const {
  return static_cast<int>(std::count_if(crossings.begin(), crossings.end(), [](const auto& c) { return c.agree; }));
}

json LocusReport::to_json() const {
  json rows = json::array();
  for (const auto& c : crossings)
    rows.push_back(json{{"scan", c.scan},         {"s", c.s},
                        {"before", c.before},     {"after", c.after},
                        {"margin_h", c.margin_h}, {"margins_p", margins_to_json(c.margins_p)},
                        {"agree", c.agree}});
  return json{{"link", link},
              {"k", k},
              {"scans", scans},
              {"samples", samples},
              {"seed", seed},
              {"tolerance", kLocusTol},
              {"ambiguous_samples", ambiguous_samples},
              {"crossings_examined", crossings.size()},
              {"agreements", agreements()},
              {"crossings", std::move(rows)}};
}

LocusReport compare_loci(const BoundaryLinkData& link, int k, int scans, std::uint64_t seed, Convention conv,
                         int samples) {
  if (k < 1) throw ValidationError("k must be >= 1");
  if (scans < 0) throw ValidationError("scan count must be non-negative");
  LocusReport report;
  report.link = link.name();
  report.k = k;
  report.scans = scans;
  report.samples = samples;
  report.seed = seed;
  ScanOptions options;
  options.samples = samples;
  options.convention = conv;
  for (int scan = 0; scan < scans; ++scan) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(scan)));
    const JumpReport jr = scan_path(link, random_circle(link.m(), k, rng), options);
    report.ambiguous_samples += jr.ambiguous_samples;
    for (const Jump& j : jr.jumps) {
      double min_p = 1.0;
      for (const auto& mg : j.margins_p) min_p = std::min(min_p, mg.margin);
      report.crossings.push_back({scan, j.s, j.before, j.after, j.margin_h, j.margins_p,
                                  j.margin_h < kLocusTol && min_p < kLocusTol});
    }
  }
  return report;
}

UnitaryTuple perturb(const UnitaryTuple& alpha, double eps, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int k = alpha.k();
  std::vector<ComplexMatrix> us;
  for (int r = 0; r < alpha.m(); ++r) {
    ComplexMatrix z(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) z(i, j) = Complex(normal(rng), normal(rng));
    const ComplexMatrix x = (z + z.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(x);
    const Eigen::VectorXd lambda = eig.eigenvalues();
    const double scale = std::max(lambda.cwiseAbs().maxCoeff(), 1e-300);
    Eigen::VectorXcd phases(k);
    for (int i = 0; i < k; ++i) phases(i) = std::polar(1.0, eps * lambda(i) / scale);
    us.push_back(alpha[r] * eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint());
  }
  return UnitaryTuple(k, std::move(us));
}

}  // namespace blinksig
