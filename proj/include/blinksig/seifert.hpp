#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blinksig/int_matrix.hpp"

namespace blinksig {

/// Raised for malformed link data, representation points and command input.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How level-i presentation matrices are signed.
///   classical: T_i A_i + (-1)^i A_{n+1-i}^T  (n = 1: tA - A^T, the usual Alexander matrix)
///   paper:     T_i A_i - (-1)^i A_{n+1-i}^T  (n = 1: tA + A^T)
enum class Convention { classical, paper };

std::string_view to_string(Convention c);
Convention parse_convention(std::string_view text);

/// Partition of a square matrix into m x m blocks; block (i, j) is sizes[i] x sizes[j].
class BlockStructure {
 public:
  BlockStructure() = default;
  explicit BlockStructure(std::vector<int> sizes);

  int m() const { return static_cast<int>(sizes_.size()); }
  int total() const { return total_; }
  int size(int component) const { return sizes_.at(static_cast<std::size_t>(component)); }
  int offset(int component) const { return offsets_.at(static_cast<std::size_t>(component)); }
  /// Component owning basis index `index`.
  int component_of(int index) const;
  const std::vector<int>& sizes() const { return sizes_; }

  bool operator==(const BlockStructure& other) const { return sizes_ == other.sizes_; }

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  int total_ = 0;
};

/// One Seifert matrix A_i with its block decomposition.
struct SeifertLevel {
  IntMatrix matrix;
  BlockStructure blocks;
};

/// Integer Seifert data of an m-component boundary link of odd dimension n.
/// Instances are validated on construction and immutable afterwards.
class BoundaryLinkData {
 public:
  BoundaryLinkData(int m, int n, std::map<int, SeifertLevel> levels, std::string name = {});

  /// Empty data (all blocks of size zero) for n = 1.
  static BoundaryLinkData empty(int m, std::string name = {});
  /// n = 1 data from a single Seifert matrix.
  static BoundaryLinkData classical(const IntMatrix& a, std::vector<int> block_sizes, std::string name = {});

  int m() const { return m_; }
  int n() const { return n_; }
  int q() const { return (n_ + 1) / 2; }
  const std::string& name() const { return name_; }
  const std::map<int, SeifertLevel>& levels() const { return levels_; }
  bool has_level(int i) const { return levels_.contains(i); }
  /// Throws ValidationError when level i is absent.
  const SeifertLevel& level(int i) const;

  /// Non-fatal findings, e.g. a non-unimodular intersection form at level q.
  const std::vector<std::string>& warnings() const { return warnings_; }

  BoundaryLinkData renamed(std::string name) const;

  bool operator==(const BoundaryLinkData& other) const;

 private:
  int m_;
  int n_;
  std::map<int, SeifertLevel> levels_;
  std::string name_;
  std::vector<std::string> warnings_;
};

/// Per level, joins each (i, j) block diagonally; block sizes add componentwise.
BoundaryLinkData block_sum(const BoundaryLinkData& first, const BoundaryLinkData& second);

/// Ambient reflection: every A_i becomes -A_i.
BoundaryLinkData mirror(const BoundaryLinkData& link);

/// Orientation reversal: every A_i becomes A_i^T.
BoundaryLinkData reverse(const BoundaryLinkData& link);

/// True when q is block-diagonal with respect to `blocks`.
bool preserves_blocks(const IntMatrix& q, const BlockStructure& blocks);

/// A_i -> Q A_i Q^T at every level. Q must be unimodular and block-preserving,
/// and all levels must share one block structure.
BoundaryLinkData congruence_transform(const BoundaryLinkData& link, const IntMatrix& q);

/// Appends a hyperbolic pair (x, y) at the end of block `component`:
/// A'[r][x] = xi_r for existing rows r (xi drawn from `seed`, entries in [-3, 3]),
/// A'[x][y] = 1, everything else in the new rows/columns zero. n = 1 only.
BoundaryLinkData metabolic_enlargement(const BoundaryLinkData& link, int component, std::uint64_t seed);

/// Random n-level data with block sizes in [1, max_block] and entries uniform in [-3, 3].
BoundaryLinkData random_link(int m, int n, int max_block, std::uint64_t seed);

/// Random n = 1 data that is a genuine Seifert matrix shape: each block has even
/// size 2g (g in [1, max_genus]) and A - A^T is the standard symplectic form,
/// so the intersection form is unimodular.
BoundaryLinkData random_seifert_link(int m, int max_genus, std::uint64_t seed);

/// Random metabolic n = 1 data: a sequence of metabolic enlargements starting
/// from empty data (at most max_pairs per component), hidden by a random
/// block-preserving unimodular congruence.
BoundaryLinkData random_metabolic_link(int m, int max_pairs, std::uint64_t seed);

/// Block-preserving unimodular Q together with its exact inverse, built from
/// `steps` random elementary operations inside single blocks.
std::pair<IntMatrix, IntMatrix> random_unimodular(const BlockStructure& blocks, int steps, std::uint64_t seed);

}  // namespace blinksig
