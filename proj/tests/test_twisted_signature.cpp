#include <gtest/gtest.h>

#include <numbers>

#include "blinksig/catalog.hpp"
#include "blinksig/oracle.hpp"
#include "blinksig/random.hpp"
#include "blinksig/twisted_signature.hpp"

using namespace blinksig;

namespace {

constexpr double kPi = std::numbers::pi;

UnitaryTuple at(std::initializer_list<double> a) { return UnitaryTuple::from_angles(a); }

HermitianMatrix diag(std::initializer_list<double> d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<int>(d.size()), static_cast<int>(d.size()));
  int i = 0;
  for (double x : d) {
    m(i, i) = x;
    ++i;
  }
  return HermitianMatrix(m);
}

// Levine-Tristram signature of the trefoil: -2 on the open arc between e^{+-i pi/3} through -1.
int trefoil_sigma(double theta) {
  const double t = std::fmod(theta, 2 * kPi);
  return (t > kPi / 3 && t < 5 * kPi / 3) ? -2 : 0;
}

}  // namespace

TEST(Inertia, Examples) {
  const auto d = inertia(diag({2, -3, 0}));
  EXPECT_EQ(d.signature, 0);
  EXPECT_EQ(d.nullity, 1);
  for (int k = 1; k <= 4; ++k) {
    const auto r = inertia(HermitianMatrix(ComplexMatrix::Identity(k, k)));
    EXPECT_EQ(r.signature, k);
    EXPECT_EQ(r.nullity, 0);
  }
  ComplexMatrix h(2, 2);
  h << 0.0, Complex(1, -1), Complex(1, 1), 0.0;
  const auto ev = oracle::hermitian_2x2_eigenvalues(0.0, Complex(1, -1), 0.0);
  EXPECT_NEAR(ev[0], -std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(ev[1], std::sqrt(2.0), 1e-14);
  const auto r = inertia(HermitianMatrix(h));
  EXPECT_EQ(r.signature, 0);
  EXPECT_EQ(r.nullity, 0);
  EXPECT_NEAR(r.spectral_norm, std::sqrt(2.0), 1e-14);
}

TEST(Inertia, ZeroMatrixAndAmbiguityBand) {
  const auto z = inertia(HermitianMatrix(ComplexMatrix::Zero(3, 3)));
  EXPECT_EQ(z.nullity, 3);
  EXPECT_EQ(z.tol_used, kInertiaTol);
  EXPECT_FALSE(inertia(diag({1, -1, 1e-3})).ambiguous);
  EXPECT_TRUE(inertia(diag({1, -1, 1e-8})).ambiguous);
  EXPECT_FALSE(inertia(diag({1, -1, 1e-14})).ambiguous);
}

TEST(Inertia, ParityAndBoundOnRandomForms) {
  Rng rng(derive_seed(3, 0));
  for (int trial = 0; trial < 100; ++trial) {
    const auto l = random_link(1 + trial % 3, 1, 3, static_cast<std::uint64_t>(trial));
    const int k = 1 + trial % 2;
    const auto r = rho_hat(l, UnitaryTuple::haar(l.m(), k, rng));
    const int size = l.level(1).blocks.total() * k;
    EXPECT_LE(std::abs(r.signature) + r.nullity, size);
    EXPECT_EQ((size - r.nullity - r.signature) % 2, 0);
  }
}

TEST(TwistedForm, Examples) {
  const ComplexMatrix h = twisted_form(catalog::trefoil(), at({kPi})).matrix();
  ComplexMatrix expected(2, 2);
  expected << -4.0, 2.0, 2.0, -4.0;
  EXPECT_LE((h - expected).norm(), 1e-14);

  const auto l = random_link(3, 1, 3, 8);
  EXPECT_TRUE(twisted_form(l, UnitaryTuple::trivial(3, 2)).matrix().isZero(0.0));

  const Complex w = std::polar(1.0, 0.7);
  const ComplexMatrix hm = twisted_form(catalog::hyperbolic_pair(), at({0.7})).matrix();
  EXPECT_LE(std::abs(hm(0, 0)) + std::abs(hm(1, 1)), 1e-15);
  EXPECT_LE(std::abs(hm(0, 1) - (1.0 - std::conj(w))), 1e-15);
  EXPECT_LE(std::abs(hm(1, 0) - (1.0 - w)), 1e-15);
}

TEST(TwistedForm, EvenQIsUnsupported) {
  SeifertLevel a{IntMatrix{{1}}, BlockStructure({1})};
  const BoundaryLinkData l(1, 3, {{1, a}, {2, a}, {3, a}});
  EXPECT_THROW(twisted_form(l, at({1.0})), UnsupportedConfiguration);
}

TEST(RhoHat, TrefoilValues) {
  const auto i = rho_hat(catalog::trefoil(), at({kPi / 2}));
  EXPECT_EQ(i.signature, -2);
  const ComplexMatrix h = twisted_form(catalog::trefoil(), at({kPi / 2})).matrix();
  const auto ev = oracle::hermitian_2x2_eigenvalues(h(0, 0).real(), h(0, 1), h(1, 1).real());
  EXPECT_NEAR(ev[0] * ev[1], 2.0, 1e-12);
  EXPECT_NEAR(ev[0] + ev[1], -4.0, 1e-12);
  EXPECT_EQ(rho_hat(catalog::trefoil(), at({kPi / 6})).signature, 0);
  const auto m1 = rho_hat(catalog::trefoil(), at({kPi}));
  EXPECT_EQ(m1.signature, -2);
  EXPECT_EQ(m1.nullity, 0);
  EXPECT_EQ(rho_hat(catalog::split_trefoils(), at({kPi, kPi})).signature, -4);
}

TEST(RhoHat, ConjugationSymmetryAtKOne) {
  Rng rng(derive_seed(41, 0));
  for (int trial = 0; trial < 100; ++trial) {
    const auto l = random_link(1 + trial % 3, 1, 3, static_cast<std::uint64_t>(trial) + 7);
    std::vector<double> th, neg;
    for (int r = 0; r < l.m(); ++r) {
      th.push_back(uniform_real(rng, 0.0, 2 * kPi));
      neg.push_back(-th.back());
    }
    const auto a = rho_hat(l, UnitaryTuple::from_angles(th));
    const auto b = rho_hat(l, UnitaryTuple::from_angles(neg));
    if (a.ambiguous || b.ambiguous) continue;
    EXPECT_EQ(a.signature, b.signature);
  }
}

TEST(RhoHat, AdditivityAndMirror) {
  Rng rng(derive_seed(43, 0));
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 3;
    const auto a = random_link(m, 1, 3, static_cast<std::uint64_t>(trial));
    const auto b = random_link(m, 1, 3, static_cast<std::uint64_t>(trial) + 1000);
    const UnitaryTuple alpha = UnitaryTuple::haar(m, 1 + trial % 3, rng);
    const auto ra = rho_hat(a, alpha);
    const auto rb = rho_hat(b, alpha);
    if (ra.ambiguous || rb.ambiguous) continue;
    EXPECT_EQ(rho_hat(block_sum(a, b), alpha).signature, ra.signature + rb.signature);
    EXPECT_EQ(rho_hat(mirror(a), alpha).signature, -ra.signature);
  }
}

TEST(RhoHat, CongruenceInvariant) {
  Rng rng(derive_seed(47, 0));
  for (int trial = 0; trial < 100; ++trial) {
    const auto l = random_link(1 + trial % 3, 1, 3, static_cast<std::uint64_t>(trial));
    const auto [q, qinv] = random_unimodular(l.level(1).blocks, 10, static_cast<std::uint64_t>(trial));
    const UnitaryTuple alpha = UnitaryTuple::haar(l.m(), 1 + trial % 3, rng);
    const auto before = rho_hat(l, alpha);
    if (before.ambiguous) continue;
    const auto after = rho_hat(congruence_transform(l, q), alpha);
    EXPECT_EQ(after.signature, before.signature);
    EXPECT_EQ(after.nullity, before.nullity);
  }
}

TEST(Scan, TrefoilJumps) {
  const auto report = scan_path(catalog::trefoil(), circle_on_component(at({0.0}), 0));
  ASSERT_EQ(report.samples.size(), 1024u);
  ASSERT_EQ(report.jumps.size(), 2u);
  EXPECT_NEAR(report.jumps[0].s, 1.0 / 6, 1e-6);
  EXPECT_NEAR(report.jumps[1].s, 5.0 / 6, 1e-6);
  EXPECT_EQ(report.jumps[0].before, 0);
  EXPECT_EQ(report.jumps[0].after, -2);
  for (const auto& j : report.jumps) {
    EXPECT_LE(j.bracket, kRefineTol);
    EXPECT_LT(j.margin_h, 1e-6);
    EXPECT_LT(j.margins_p.at(0).margin, 1e-6);
  }
  for (const auto& s : report.samples)
    if (s.nullity == 0) EXPECT_EQ(s.signature, trefoil_sigma(2 * kPi * s.s));
}

TEST(Scan, NoJumpsWithoutCircleRoots) {
  const auto fig = scan_path(catalog::figure_eight(), circle_on_component(at({0.0}), 0));
  EXPECT_TRUE(fig.jumps.empty());
  const auto hyp = scan_path(catalog::hyperbolic_pair(), circle_on_component(at({0.0}), 0));
  EXPECT_TRUE(hyp.jumps.empty());
  for (const auto& s : hyp.samples) EXPECT_EQ(s.signature, 0);
}

TEST(Scan, JumpsStrictlyIncreasing) {
  Rng rng(derive_seed(53, 0));
  for (int trial = 0; trial < 10; ++trial) {
    const auto l = random_link(2, 1, 3, static_cast<std::uint64_t>(trial));
    ScanOptions opts;
    opts.samples = 128;
    const auto report = scan_path(l, random_circle(2, 2, rng), opts);
    for (std::size_t i = 1; i < report.jumps.size(); ++i) EXPECT_GT(report.jumps[i].s, report.jumps[i - 1].s);
    for (const auto& j : report.jumps) EXPECT_GE(std::abs(j.after - j.before), 1);
  }
}

TEST(Grid, TrefoilProfile) {
  const auto grid = torus_grid(catalog::trefoil(), 12);
  ASSERT_EQ(grid.size(), 12u);
  for (const auto& g : grid) {
    if (g.inertia.nullity > 0) continue;
    EXPECT_EQ(g.inertia.signature, trefoil_sigma(g.angles[0]));
  }
}

TEST(Grid, SplitAdditivity) {
  const auto grid = torus_grid(catalog::split_trefoils(), 8);
  ASSERT_EQ(grid.size(), 64u);
  for (const auto& g : grid) {
    const int expected = rho_hat(catalog::trefoil(), at({g.angles[0]})).signature +
                         rho_hat(catalog::trefoil(), at({g.angles[1]})).signature;
    EXPECT_EQ(g.inertia.signature, expected);
  }
  EXPECT_NEAR(grid[9].angles[0], 2 * kPi / 8, 1e-15);
  EXPECT_NEAR(grid[9].angles[1], 2 * kPi / 8, 1e-15);
}

TEST(Grid, EmptyLinkIsZero) {
  for (const auto& g : torus_grid(BoundaryLinkData::empty(2), 5)) {
    EXPECT_EQ(g.inertia.signature, 0);
    EXPECT_EQ(g.inertia.nullity, 0);
  }
  EXPECT_THROW(torus_grid(random_link(4, 1, 1, 0), 4), ValidationError);
}
