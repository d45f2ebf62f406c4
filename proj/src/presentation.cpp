#include "blinksig/presentation.hpp"

namespace blinksig {
namespace {

// Coefficient s in T_i A_i + s * A_{n+1-i}^T.
int transpose_sign(int level, Convention conv) {
  const int parity = level % 2 == 0 ? 1 : -1;  // (-1)^i
  return conv == Convention::paper ? -parity : parity;
}

}  // namespace

PresentationLevel presentation_matrix(const BoundaryLinkData& link, int level, Convention conv) {
  if (level < 1 || level > link.n())
    throw ValidationError("level " + std::to_string(level) + " outside 1.." + std::to_string(link.n()));
  const SeifertLevel& a = link.level(level);
  const SeifertLevel& dual = link.level(link.n() + 1 - level);
  const int m = link.m();
  const int g = a.blocks.total();
  const int s = transpose_sign(level, conv);

  PresentationLevel out{level, conv, a.blocks, LaurentMatrix(g, g, m)};
  const Multidegree constant(static_cast<std::size_t>(m), 0);
  for (int r = 0; r < g; ++r) {
    Multidegree t_row(static_cast<std::size_t>(m), 0);
    t_row[static_cast<std::size_t>(a.blocks.component_of(r))] = 1;
    for (int c = 0; c < g; ++c) {
      LaurentPoly& e = out.matrix(r, c);
      e.add_term(t_row, static_cast<long>(a.matrix(r, c)));
      e.add_term(constant, static_cast<long>(s * dual.matrix(c, r)));
    }
  }
  return out;
}

IntMatrix augmentation(const BoundaryLinkData& link, int level, Convention conv) {
  const IntMatrix& a = link.level(level).matrix;
  const IntMatrix dual_t = link.level(link.n() + 1 - level).matrix.transposed();
  return transpose_sign(level, conv) > 0 ? a + dual_t : a - dual_t;
}

LaurentPoly alexander_polynomial(const BoundaryLinkData& link, int level, Convention conv) {
  return normalize(det_bareiss(presentation_matrix(link, level, conv).matrix));
}

std::vector<int> discriminant_levels(const BoundaryLinkData& link) {
  const int q = link.q();
  if (q - 1 >= 1) return {q - 1, q};
  return {q};
}

}  // namespace blinksig
