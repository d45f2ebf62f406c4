#include <gtest/gtest.h>

#include <numbers>

#include "blinksig/catalog.hpp"
#include "blinksig/presentation.hpp"
#include "blinksig/random.hpp"
#include "blinksig/substitution.hpp"

using namespace blinksig;

namespace {

constexpr double kPi = std::numbers::pi;

UnitaryTuple angles(std::initializer_list<double> a) { return UnitaryTuple::from_angles(a); }

// Kronecker product of an integer matrix with I_k.
ComplexMatrix kron_identity(const IntMatrix& a, int k) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() * k, a.cols() * k);
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      for (int i = 0; i < k; ++i) out(r * k + i, c * k + i) = static_cast<double>(a(r, c));
  return out;
}

}  // namespace

TEST(UnitaryTuple, AcceptsProjectsRejects) {
  ComplexMatrix u = ComplexMatrix::Identity(2, 2);
  EXPECT_NO_THROW(UnitaryTuple(2, {u}));
  ComplexMatrix near = u;
  near(0, 0) += 1e-8;
  const UnitaryTuple projected(2, {near});
  EXPECT_LE(unitarity_defect(projected[0]), 1e-12);
  ComplexMatrix far = u;
  far(0, 0) = 1.5;
  EXPECT_THROW(UnitaryTuple(2, {far}), ValidationError);
  EXPECT_THROW(UnitaryTuple(2, {ComplexMatrix::Identity(3, 3)}), ValidationError);
}

TEST(UnitaryTuple, HaarPointsAreUnitary) {
  Rng rng(derive_seed(1, 0));
  for (int k = 1; k <= 3; ++k) {
    const UnitaryTuple a = UnitaryTuple::haar(3, k, rng);
    for (int r = 0; r < 3; ++r) EXPECT_LE(unitarity_defect(a[r]), 1e-12);
  }
}

TEST(Substitute, TrefoilAtMinusOne) {
  const auto p = presentation_matrix(catalog::trefoil(), 1, Convention::classical);
  const ComplexMatrix m = substitute(p, angles({kPi}));
  EXPECT_NEAR(std::abs(m(0, 0) - 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(0, 1) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 0) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 1) - 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(hadamard(m).det - 3.0), 0.0, 1e-12);
}

TEST(Substitute, TrivialRepIsAugmentationExactly) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto l = random_link(1 + static_cast<int>(seed % 3), 1, 3, seed);
    const int k = 1 + static_cast<int>(seed % 3);
    for (Convention conv : {Convention::classical, Convention::paper}) {
      const ComplexMatrix m = substitute(presentation_matrix(l, 1, conv), UnitaryTuple::trivial(l.m(), k));
      EXPECT_TRUE(m == kron_identity(augmentation(l, 1, conv), k));
    }
  }
}

TEST(Substitute, TrefoilTwoDimensionalTrivial) {
  const auto p = presentation_matrix(catalog::trefoil(), 1, Convention::classical);
  // det(A - A^T)^2 = 1.
  EXPECT_NEAR(std::abs(hadamard(substitute(p, UnitaryTuple::trivial(1, 2))).det - 1.0), 0.0, 1e-12);
}

TEST(Substitute, VariableMismatch) {
  const auto p = presentation_matrix(catalog::split_trefoils(), 1, Convention::classical);
  EXPECT_THROW(substitute(p, angles({0.3})), ValidationError);
}

TEST(Substitute, KOneMatchesSymbolicDeterminant) {
  Rng rng(derive_seed(17, 0));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto l = random_link(1 + static_cast<int>(seed % 3), 1, 3, seed);
    const auto p = presentation_matrix(l, 1, Convention::classical);
    const LaurentPoly d = det_bareiss(p.matrix);
    for (int i = 0; i < 20; ++i) {
      std::vector<double> th;
      std::vector<Complex> z;
      for (int r = 0; r < l.m(); ++r) {
        th.push_back(uniform_real(rng, 0.0, 2 * kPi));
        z.push_back(std::polar(1.0, th.back()));
      }
      const ComplexMatrix m = substitute(p, UnitaryTuple::from_angles(th));
      double bound = 1.0;
      for (int r = 0; r < m.rows(); ++r) bound *= std::max(m.row(r).norm(), 1.0);
      EXPECT_LE(std::abs(std::abs(hadamard(m).det) - std::abs(eval(d, z))), 1e-9 * bound);
    }
  }
}

TEST(Hadamard, MarginProperties) {
  EXPECT_EQ(hadamard(ComplexMatrix(0, 0)).margin, 1.0);
  ComplexMatrix z(2, 2);
  z << 1.0, 2.0, 0.0, 0.0;
  EXPECT_EQ(hadamard(z).margin, 0.0);
  ComplexMatrix a(2, 2);
  a << 3.0, 1.0, 1.0, 2.0;
  const double base = hadamard(a).margin;
  // 5 / (sqrt(10) * sqrt(5)).
  EXPECT_NEAR(base, 5.0 / std::sqrt(50.0), 1e-15);
  ComplexMatrix scaled = a;
  scaled.row(0) *= 1e6;
  scaled.row(1) *= Complex(0.0, 1e-3);
  EXPECT_NEAR(hadamard(scaled).margin, base, 1e-12);
}

TEST(Discriminant, TrefoilMargins) {
  const auto t = catalog::trefoil();
  const auto on = in_discriminant(t, angles({kPi / 3}));
  EXPECT_TRUE(on.member);
  EXPECT_LE(on.min_margin(), 1e-9);
  const auto off = in_discriminant(t, angles({kPi}));
  EXPECT_FALSE(off.member);
  EXPECT_NEAR(std::abs(off.margins.at(0).det_value - 3.0), 0.0, 1e-12);
  EXPECT_GT(off.min_margin(), 0.5);
  EXPECT_FALSE(in_discriminant(t, UnitaryTuple::trivial(1, 1)).member);
  EXPECT_FALSE(in_discriminant(BoundaryLinkData::empty(2), UnitaryTuple::trivial(2, 2)).member);
}

TEST(Discriminant, FigureEightAvoidsCircle) {
  const auto f = catalog::figure_eight();
  double worst = 1.0;
  for (int i = 0; i < 1000; ++i)
    worst = std::min(worst, in_discriminant(f, angles({2 * kPi * i / 1000.0})).min_margin());
  EXPECT_GT(worst, 0.01);
}

TEST(Discriminant, CongruenceInvariantValues) {
  Rng rng(derive_seed(23, 0));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto l = random_link(2, 1, 3, seed);
    const auto [q, qinv] = random_unimodular(l.level(1).blocks, 10, seed);
    const auto moved = congruence_transform(l, q);
    const UnitaryTuple a = UnitaryTuple::haar(2, 2, rng);
    const auto before = discriminant_margins(l, a, Convention::classical).at(0).det_value;
    const auto after = discriminant_margins(moved, a, Convention::classical).at(0).det_value;
    EXPECT_LE(std::abs(before - after), 1e-9 * std::max(1.0, std::abs(before)));
  }
}

TEST(Discriminant, BlockSumMultiplicative) {
  Rng rng(derive_seed(31, 0));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto a = random_link(2, 1, 2, seed);
    const auto b = random_link(2, 1, 2, seed + 500);
    const UnitaryTuple alpha = UnitaryTuple::haar(2, 2, rng);
    const auto da = discriminant_margins(a, alpha, Convention::classical).at(0);
    const auto db = discriminant_margins(b, alpha, Convention::classical).at(0);
    const auto ds = discriminant_margins(block_sum(a, b), alpha, Convention::classical).at(0);
    const double scale = std::max(1.0, std::abs(da.det_value * db.det_value));
    EXPECT_LE(std::abs(std::abs(ds.det_value) - std::abs(da.det_value * db.det_value)), 1e-9 * scale);
    EXPECT_EQ(ds.margin < 1e-12, da.margin < 1e-12 || db.margin < 1e-12);
  }
}
