#include "blinksig/seifert.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "blinksig/random.hpp"

namespace blinksig {

std::string_view to_string(Convention c) { return c == Convention::classical ? "classical" : "paper"; }

Convention parse_convention(std::string_view text) {
  if (text == "classical") return Convention::classical;
  if (text == "paper") return Convention::paper;
  throw ValidationError("unknown convention '" + std::string(text) + "' (expected classical|paper)");
}

BlockStructure::BlockStructure(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw ValidationError("block structure needs m >= 1 components");
  offsets_.reserve(sizes_.size());
  for (int s : sizes_) {
    if (s < 0) throw ValidationError("negative block size");
    offsets_.push_back(total_);
    total_ += s;
  }
}

int BlockStructure::component_of(int index) const {
  if (index < 0 || index >= total_) throw std::out_of_range("basis index outside block structure");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

BoundaryLinkData::BoundaryLinkData(int m, int n, std::map<int, SeifertLevel> levels, std::string name)
    : m_(m), n_(n), levels_(std::move(levels)), name_(std::move(name)) {
  if (m_ < 1) throw ValidationError("m must be >= 1");
  if (n_ < 1 || n_ % 2 == 0) throw ValidationError("link dimension n must be odd and positive, got " + std::to_string(n_));
  if (levels_.empty()) throw ValidationError("no Seifert matrices given");
  if (n_ == 1 && (levels_.size() != 1 || !levels_.contains(1)))
    throw ValidationError("n = 1 requires exactly one level (i = 1)");
  for (const auto& [i, lvl] : levels_) {
    const std::string where = "level " + std::to_string(i) + ": ";
    if (i < 1 || i > n_) throw ValidationError(where + "index outside 1..n");
    if (!lvl.matrix.square())
      throw ValidationError(where + "non-square matrix (" + std::to_string(lvl.matrix.rows()) + "x" +
                            std::to_string(lvl.matrix.cols()) + ")");
    if (lvl.blocks.m() != m_)
      throw ValidationError(where + "block structure has " + std::to_string(lvl.blocks.m()) + " components, expected " +
                            std::to_string(m_));
    if (lvl.blocks.total() != lvl.matrix.rows())
      throw ValidationError(where + "block sizes sum to " + std::to_string(lvl.blocks.total()) +
                            " but matrix side is " + std::to_string(lvl.matrix.rows()));
  }
  for (const auto& [i, lvl] : levels_) {
    const auto dual = levels_.find(n_ + 1 - i);
    if (dual != levels_.end() && !(dual->second.blocks == lvl.blocks))
      throw ValidationError("levels " + std::to_string(i) + " and " + std::to_string(n_ + 1 - i) +
                            " have different block sizes");
  }
  if (const auto it = levels_.find(q()); it != levels_.end()) {
    // Intersection form on the middle level; unimodular for a genuine Seifert surface.
    const IntMatrix& a = it->second.matrix;
    const IntMatrix form = q() % 2 == 1 ? a - a.transposed() : a + a.transposed();
    std::int64_t det = 0;
    try {
      det = determinant(form);
    } catch (const std::overflow_error&) {
      det = 0;
    }
    if (std::llabs(det) != 1)
      warnings_.push_back("intersection form at level " + std::to_string(q()) + " has determinant " +
                          std::to_string(det) + " (not unimodular)");
  }
}

BoundaryLinkData BoundaryLinkData::empty(int m, std::string name) {
  return classical(IntMatrix(0, 0), std::vector<int>(static_cast<std::size_t>(std::max(m, 1)), 0), std::move(name));
}

BoundaryLinkData BoundaryLinkData::classical(const IntMatrix& a, std::vector<int> block_sizes, std::string name) {
  const int m = static_cast<int>(block_sizes.size());
  std::map<int, SeifertLevel> levels;
  levels.emplace(1, SeifertLevel{a, BlockStructure(std::move(block_sizes))});
  return BoundaryLinkData(m, 1, std::move(levels), std::move(name));
}

const SeifertLevel& BoundaryLinkData::level(int i) const {
  const auto it = levels_.find(i);
  if (it == levels_.end()) throw ValidationError("missing level " + std::to_string(i));
  return it->second;
}

BoundaryLinkData BoundaryLinkData::renamed(std::string name) const {
  return BoundaryLinkData(m_, n_, levels_, std::move(name));
}

bool BoundaryLinkData::operator==(const BoundaryLinkData& other) const {
  if (m_ != other.m_ || n_ != other.n_ || levels_.size() != other.levels_.size()) return false;
  for (const auto& [i, lvl] : levels_) {
    const auto it = other.levels_.find(i);
    if (it == other.levels_.end() || !(it->second.blocks == lvl.blocks) || !(it->second.matrix == lvl.matrix))
      return false;
  }
  return true;
}

namespace {

BoundaryLinkData map_levels(const BoundaryLinkData& link, auto&& fn, std::string name) {
  std::map<int, SeifertLevel> levels;
  for (const auto& [i, lvl] : link.levels()) levels.emplace(i, SeifertLevel{fn(lvl.matrix), lvl.blocks});
  return BoundaryLinkData(link.m(), link.n(), std::move(levels), std::move(name));
}

// Position of each basis vector of `part` (0 = first, 1 = second summand) in the joined order.
std::vector<int> joined_positions(const BlockStructure& a, const BlockStructure& b, int part) {
  std::vector<int> pos;
  int cursor = 0;
  for (int c = 0; c < a.m(); ++c) {
    const int before = part == 0 ? 0 : a.size(c);
    const int count = part == 0 ? a.size(c) : b.size(c);
    for (int r = 0; r < count; ++r) pos.push_back(cursor + before + r);
    cursor += a.size(c) + b.size(c);
  }
  return pos;
}

std::string joined_name(const std::string& a, const std::string& b, std::string_view op) {
  if (a.empty() && b.empty()) return {};
  return (a.empty() ? "?" : a) + std::string(op) + (b.empty() ? "?" : b);
}

}  // namespace

BoundaryLinkData block_sum(const BoundaryLinkData& first, const BoundaryLinkData& second) {
  if (first.m() != second.m() || first.n() != second.n())
    throw ValidationError("block_sum needs equal m and n (got m=" + std::to_string(first.m()) + "/" +
                          std::to_string(second.m()) + ", n=" + std::to_string(first.n()) + "/" +
                          std::to_string(second.n()) + ")");
  std::map<int, SeifertLevel> levels;
  for (const auto& [i, a] : first.levels()) {
    const auto it = second.levels().find(i);
    if (it == second.levels().end()) throw ValidationError("block_sum: level " + std::to_string(i) + " missing in one summand");
    const SeifertLevel& b = it->second;
    std::vector<int> sizes(static_cast<std::size_t>(first.m()));
    for (int c = 0; c < first.m(); ++c) sizes[static_cast<std::size_t>(c)] = a.blocks.size(c) + b.blocks.size(c);
    const BlockStructure blocks(sizes);
    IntMatrix out(blocks.total(), blocks.total());
    const auto pa = joined_positions(a.blocks, b.blocks, 0);
    const auto pb = joined_positions(a.blocks, b.blocks, 1);
    for (int r = 0; r < a.matrix.rows(); ++r)
      for (int c = 0; c < a.matrix.cols(); ++c) out(pa[r], pa[c]) = a.matrix(r, c);
    for (int r = 0; r < b.matrix.rows(); ++r)
      for (int c = 0; c < b.matrix.cols(); ++c) out(pb[r], pb[c]) = b.matrix(r, c);
    levels.emplace(i, SeifertLevel{std::move(out), blocks});
  }
  if (levels.size() != second.levels().size()) throw ValidationError("block_sum: summands have different level sets");
  return BoundaryLinkData(first.m(), first.n(), std::move(levels), joined_name(first.name(), second.name(), " # "));
}

BoundaryLinkData mirror(const BoundaryLinkData& link) {
  return map_levels(link, [](const IntMatrix& a) { return -a; }, link.name().empty() ? "" : "mirror(" + link.name() + ")");
}

BoundaryLinkData reverse(const BoundaryLinkData& link) {
  return map_levels(link, [](const IntMatrix& a) { return a.transposed(); },
                    link.name().empty() ? "" : "reverse(" + link.name() + ")");
}

bool preserves_blocks(const IntMatrix& q, const BlockStructure& blocks) {
  if (q.rows() != blocks.total() || q.cols() != blocks.total()) return false;
  for (int r = 0; r < q.rows(); ++r)
    for (int c = 0; c < q.cols(); ++c)
      if (q(r, c) != 0 && blocks.component_of(r) != blocks.component_of(c)) return false;
  return true;
}

BoundaryLinkData congruence_transform(const BoundaryLinkData& link, const IntMatrix& q) {
  const BlockStructure& blocks = link.levels().begin()->second.blocks;
  for (const auto& [i, lvl] : link.levels())
    if (!(lvl.blocks == blocks)) throw ValidationError("congruence_transform: levels have different block structures");
  if (!q.square() || q.rows() != blocks.total())
    throw ValidationError("congruence_transform: Q must be " + std::to_string(blocks.total()) + "x" +
                          std::to_string(blocks.total()));
  if (!preserves_blocks(q, blocks)) throw ValidationError("congruence_transform: Q mixes blocks");
  const std::int64_t det = determinant(q);
  if (det != 1 && det != -1)
    throw ValidationError("congruence_transform: Q is not unimodular (det " + std::to_string(det) + ")");
  const IntMatrix qt = q.transposed();
  return map_levels(link, [&](const IntMatrix& a) { return q * a * qt; }, link.name());
}

BoundaryLinkData metabolic_enlargement(const BoundaryLinkData& link, int component, std::uint64_t seed) {
  if (link.n() != 1) throw ValidationError("metabolic_enlargement supports n = 1 only");
  if (component < 0 || component >= link.m())
    throw ValidationError("metabolic_enlargement: component " + std::to_string(component) + " outside 0.." +
                          std::to_string(link.m() - 1));
  const SeifertLevel& lvl = link.level(1);
  const int g = lvl.blocks.total();
  std::vector<int> sizes = lvl.blocks.sizes();
  sizes[static_cast<std::size_t>(component)] += 2;
  const BlockStructure blocks(sizes);

  // Old index r keeps its place unless it sits after the insertion point.
  const int insert_at = lvl.blocks.offset(component) + lvl.blocks.size(component);
  auto old_pos = [&](int r) { return r < insert_at ? r : r + 2; };
  const int x = insert_at;
  const int y = insert_at + 1;

  Rng rng(seed);
  IntMatrix out(g + 2, g + 2);
  for (int r = 0; r < g; ++r)
    for (int c = 0; c < g; ++c) out(old_pos(r), old_pos(c)) = lvl.matrix(r, c);
  for (int r = 0; r < g; ++r) out(old_pos(r), x) = uniform_int(rng, -3, 3);
  out(x, y) = 1;
  std::map<int, SeifertLevel> levels;
  levels.emplace(1, SeifertLevel{std::move(out), blocks});
  return BoundaryLinkData(link.m(), 1, std::move(levels), link.name());
}

BoundaryLinkData random_link(int m, int n, int max_block, std::uint64_t seed) {
  if (m < 1 || max_block < 1) throw ValidationError("random_link needs m >= 1 and max_block >= 1");
  if (n < 1 || n % 2 == 0) throw ValidationError("random_link needs odd n");
  Rng rng(seed);
  std::vector<int> sizes(static_cast<std::size_t>(m));
  for (int& s : sizes) s = uniform_int(rng, 1, max_block);
  const BlockStructure blocks(sizes);
  std::map<int, SeifertLevel> levels;
  for (int i = 1; i <= n; ++i) {
    IntMatrix a(blocks.total(), blocks.total());
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c) a(r, c) = uniform_int(rng, -3, 3);
    levels.emplace(i, SeifertLevel{std::move(a), blocks});
  }
  return BoundaryLinkData(m, n, std::move(levels), "random-" + std::to_string(seed));
}

BoundaryLinkData random_seifert_link(int m, int max_genus, std::uint64_t seed) {
  if (m < 1 || max_genus < 1) throw ValidationError("random_seifert_link needs m >= 1 and max_genus >= 1");
  Rng rng(seed);
  std::vector<int> sizes(static_cast<std::size_t>(m));
  for (int& s : sizes) s = 2 * uniform_int(rng, 1, max_genus);
  const BlockStructure blocks(sizes);
  const int g = blocks.total();
  IntMatrix a(g, g);
  for (int r = 0; r < g; ++r)
    for (int c = r; c < g; ++c) a(r, c) = a(c, r) = uniform_int(rng, -2, 2);
  for (int r = 0; r < g; r += 2) a(r, r + 1) += 1;
  return BoundaryLinkData::classical(a, sizes, "seifert-" + std::to_string(seed));
}

BoundaryLinkData random_metabolic_link(int m, int max_pairs, std::uint64_t seed) {
  if (m < 1 || max_pairs < 0) throw ValidationError("random_metabolic_link needs m >= 1 and max_pairs >= 0");
  Rng rng(seed);
  std::vector<int> order;
  for (int c = 0; c < m; ++c) {
    const int pairs = uniform_int(rng, 0, max_pairs);
    order.insert(order.end(), static_cast<std::size_t>(pairs), c);
  }
  std::shuffle(order.begin(), order.end(), rng);
  BoundaryLinkData link = BoundaryLinkData::empty(m);
  for (int c : order) link = metabolic_enlargement(link, c, rng());
  const auto [q, q_inv] = random_unimodular(link.level(1).blocks, 2 * link.level(1).blocks.total(), rng());
  return congruence_transform(link, q).renamed("metabolic-" + std::to_string(seed));
}

std::pair<IntMatrix, IntMatrix> random_unimodular(const BlockStructure& blocks, int steps, std::uint64_t seed) {
  const int g = blocks.total();
  IntMatrix q = IntMatrix::identity(g);
  IntMatrix q_inv = IntMatrix::identity(g);
  std::vector<int> usable;
  for (int c = 0; c < blocks.m(); ++c)
    if (blocks.size(c) >= 1) usable.push_back(c);
  if (usable.empty()) return {q, q_inv};
  Rng rng(seed);
  for (int s = 0; s < steps; ++s) {
    const int c = usable[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(usable.size()) - 1))];
    const int lo = blocks.offset(c);
    const int hi = lo + blocks.size(c) - 1;
    const int i = uniform_int(rng, lo, hi);
    const int j = uniform_int(rng, lo, hi);
    IntMatrix e = IntMatrix::identity(g);
    IntMatrix e_inv = IntMatrix::identity(g);
    if (i == j) {
      e(i, i) = -1;  // sign flip, self-inverse
      e_inv(i, i) = -1;
    } else {
      const int k = uniform_int(rng, 0, 1) == 0 ? -1 : 1;
      e(i, j) = k;
      e_inv(i, j) = -k;
    }
    q = e * q;
    q_inv = q_inv * e_inv;
  }
  return {q, q_inv};
}

}  // namespace blinksig
