#include <gtest/gtest.h>

#include "blinksig/catalog.hpp"
#include "blinksig/seifert.hpp"

using namespace blinksig;

namespace {

IntMatrix trefoil_a() { return {{-1, 1}, {0, -1}}; }

// Entrywise block-diagonal join, written independently of block_sum.
IntMatrix diag_join(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
  return out;
}

void expect_block_shapes(const BoundaryLinkData& link) {
  for (const auto& [i, lvl] : link.levels()) {
    ASSERT_EQ(lvl.matrix.rows(), lvl.blocks.total());
    ASSERT_EQ(lvl.matrix.cols(), lvl.blocks.total());
    ASSERT_EQ(lvl.blocks.m(), link.m());
  }
}

}  // namespace

TEST(IntMatrix, ArithmeticAndDeterminant) {
  const IntMatrix a = trefoil_a();
  EXPECT_EQ(a.transposed(), (IntMatrix{{-1, 0}, {1, -1}}));
  EXPECT_EQ(a * IntMatrix::identity(2), a);
  EXPECT_EQ(determinant(a - a.transposed()), 1);
  EXPECT_EQ(determinant(IntMatrix{}), 1);
  // 2*7 - 3*28 + 1*20 by first-row expansion.
  EXPECT_EQ(determinant(IntMatrix{{2, 3, 1}, {4, 1, 0}, {0, 5, 7}}), -50);
}

TEST(IntMatrix, OverflowIsReported) {
  const std::int64_t big = std::int64_t{1} << 62;
  const IntMatrix a{{big, big}, {0, 1}};
  EXPECT_THROW(a + a, std::overflow_error);
  EXPECT_THROW(a * a, std::overflow_error);
}

TEST(Validate, TrefoilIsValid) {
  const auto link = BoundaryLinkData::classical(trefoil_a(), {2}, "trefoil");
  EXPECT_EQ(link.m(), 1);
  EXPECT_EQ(link.q(), 1);
  EXPECT_TRUE(link.warnings().empty());
  EXPECT_EQ(link.level(1).matrix, trefoil_a());
}

TEST(Validate, Errors) {
  SeifertLevel rect{IntMatrix(2, 3), BlockStructure({2})};
  EXPECT_THROW(BoundaryLinkData(1, 1, {{1, rect}}), ValidationError);
  SeifertLevel sq{trefoil_a(), BlockStructure({2})};
  EXPECT_THROW(BoundaryLinkData(1, 2, {{1, sq}}), ValidationError);
  EXPECT_THROW(BoundaryLinkData(0, 1, {}), ValidationError);
  EXPECT_THROW(BoundaryLinkData::classical(trefoil_a(), {1}), ValidationError);
  EXPECT_THROW(BoundaryLinkData::classical(trefoil_a(), {1, 2}), ValidationError);
  EXPECT_THROW(BoundaryLinkData(1, 1, {{2, sq}}), ValidationError);
  EXPECT_THROW(catalog::trefoil().level(3), ValidationError);
}

TEST(Validate, NonUnimodularIntersectionFormWarns) {
  const auto link = BoundaryLinkData::classical(IntMatrix{{2, 0}, {0, 1}}, {2});
  EXPECT_EQ(link.warnings().size(), 1u);
}

TEST(Validate, SplitTrefoils) {
  const auto link = BoundaryLinkData::classical(diag_join(trefoil_a(), trefoil_a()), {2, 2});
  EXPECT_EQ(link, catalog::split_trefoils().renamed(""));
  EXPECT_EQ(link.level(1).blocks.component_of(1), 0);
  EXPECT_EQ(link.level(1).blocks.component_of(2), 1);
}

TEST(Validate, HigherDimensionLevels) {
  // n = 3: levels 1 and 3 are paired and must share block sizes.
  SeifertLevel a1{IntMatrix{{1, 2}, {0, 1}}, BlockStructure({1, 1})};
  SeifertLevel a2{IntMatrix{{1, 0}, {3, 1}}, BlockStructure({1, 1})};
  const BoundaryLinkData link(2, 3, {{1, a1}, {2, a2}, {3, a1}});
  EXPECT_EQ(link.q(), 2);
  SeifertLevel bad{IntMatrix{{1, 0}, {0, 1}}, BlockStructure({2, 0})};
  EXPECT_THROW(BoundaryLinkData(2, 3, {{1, a1}, {2, a2}, {3, bad}}), ValidationError);
}

TEST(BlockSum, EmptyIsIdentity) {
  const auto t = catalog::trefoil();
  EXPECT_EQ(block_sum(t, BoundaryLinkData::empty(1)).level(1).matrix, t.level(1).matrix);
  EXPECT_EQ(block_sum(BoundaryLinkData::empty(1), t).level(1).matrix, t.level(1).matrix);
}

TEST(BlockSum, TrefoilTwice) {
  const auto t = catalog::trefoil();
  const auto s = block_sum(t, t);
  EXPECT_EQ(s.level(1).blocks.sizes(), std::vector<int>{4});
  EXPECT_EQ(s.level(1).matrix, diag_join(trefoil_a(), trefoil_a()));
}

TEST(BlockSum, SplitSizesAdd) {
  const auto s = block_sum(catalog::split_trefoils(), catalog::split_trefoils());
  EXPECT_EQ(s.level(1).blocks.sizes(), (std::vector<int>{4, 4}));
  expect_block_shapes(s);
  // Component 1 of the sum carries both copies of component 1's block.
  EXPECT_EQ(s.level(1).matrix(0, 1), 1);
  EXPECT_EQ(s.level(1).matrix(2, 3), 1);
  EXPECT_EQ(s.level(1).matrix(0, 4), 0);
}

TEST(BlockSum, AssociativeUpToRelabeling) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = random_link(2, 1, 2, seed);
    const auto b = random_link(2, 1, 2, seed + 100);
    const auto c = random_link(2, 1, 2, seed + 200);
    const auto left = block_sum(block_sum(a, b), c);
    const auto right = block_sum(a, block_sum(b, c));
    // Basis order within each block is (a, b, c) in both, so they agree exactly.
    EXPECT_EQ(left.level(1).matrix, right.level(1).matrix);
  }
}

TEST(Mirror, NegatesEveryLevelAndIsInvolution) {
  EXPECT_EQ(mirror(catalog::trefoil()).level(1).matrix, (IntMatrix{{1, -1}, {0, 1}}));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto l = random_link(3, 3, 3, seed);
    EXPECT_EQ(mirror(mirror(l)), l);
  }
}

TEST(Reverse, Transposes) {
  EXPECT_EQ(reverse(catalog::trefoil()).level(1).matrix, trefoil_a().transposed());
}

TEST(Congruence, Examples) {
  const auto t = catalog::trefoil();
  EXPECT_EQ(congruence_transform(t, IntMatrix::identity(2)), t);
  // Q A Q^T by hand: Q = [[1,1],[0,1]].
  EXPECT_EQ(congruence_transform(t, IntMatrix{{1, 1}, {0, 1}}).level(1).matrix, (IntMatrix{{-1, 0}, {-1, -1}}));
  EXPECT_THROW(congruence_transform(t, IntMatrix{{2, 0}, {0, 1}}), ValidationError);
  const auto split = catalog::split_trefoils();
  IntMatrix mix = IntMatrix::identity(4);
  mix(0, 2) = 1;
  EXPECT_THROW(congruence_transform(split, mix), ValidationError);
  EXPECT_FALSE(preserves_blocks(mix, split.level(1).blocks));
}

TEST(Congruence, InverseRestoresExactly) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto l = random_link(1 + static_cast<int>(seed % 3), 1, 4, seed);
    const auto [q, qinv] = random_unimodular(l.level(1).blocks, 12, seed);
    ASSERT_EQ(q * qinv, IntMatrix::identity(q.rows()));
    EXPECT_TRUE(preserves_blocks(q, l.level(1).blocks));
    EXPECT_EQ(congruence_transform(congruence_transform(l, q), qinv), l);
  }
}

TEST(Enlargement, FromEmpty) {
  const auto e = metabolic_enlargement(BoundaryLinkData::empty(1), 0, 5);
  EXPECT_EQ(e.level(1).blocks.sizes(), std::vector<int>{2});
  EXPECT_EQ(e.level(1).matrix, (IntMatrix{{0, 1}, {0, 0}}));
  EXPECT_THROW(metabolic_enlargement(e, 1, 5), ValidationError);
}

TEST(Enlargement, ShapeOnSplitLink) {
  const auto e = metabolic_enlargement(catalog::split_trefoils(), 0, 9);
  EXPECT_EQ(e.level(1).blocks.sizes(), (std::vector<int>{4, 2}));
  expect_block_shapes(e);
  // New pair (x, y) = (2, 3) of component 1: row y and column y vanish except A[x][y] = 1,
  // and row x carries nothing else.
  const IntMatrix& a = e.level(1).matrix;
  EXPECT_EQ(a(2, 3), 1);
  for (int c = 0; c < 6; ++c) {
    EXPECT_EQ(a(3, c), 0);
    if (c != 3) EXPECT_EQ(a(2, c), 0);
  }
  for (int r = 0; r < 6; ++r)
    if (r != 2) EXPECT_EQ(a(r, 3), 0);
  EXPECT_EQ(a(4, 5), 1);
}

TEST(RandomLink, DeterministicAndValid) {
  EXPECT_EQ(random_link(2, 1, 3, 42), random_link(2, 1, 3, 42));
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto l = random_link(1 + static_cast<int>(seed % 3), 1, 4, seed);
    expect_block_shapes(l);
    for (const auto& row : l.level(1).matrix.to_rows())
      for (auto v : row) ASSERT_TRUE(v >= -3 && v <= 3);
  }
}

TEST(RandomLink, SeifertShapeIsUnimodular) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto l = random_seifert_link(2, 2, seed);
    const IntMatrix& a = l.level(1).matrix;
    EXPECT_EQ(std::abs(determinant(a - a.transposed())), 1);
    EXPECT_TRUE(l.warnings().empty());
  }
}
