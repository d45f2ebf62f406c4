#pragma once

#include "blinksig/int_matrix.hpp"
#include "blinksig/laurent.hpp"
#include "blinksig/seifert.hpp"

namespace blinksig {

/// Presentation matrix of level i over Z[t_1^{+-1}..t_m^{+-1}].
/// Entry (r, c) is a * t_j + b where j is the component owning row r.
struct PresentationLevel {
  int level = 0;
  Convention convention = Convention::classical;
  BlockStructure blocks;
  LaurentMatrix matrix{0, 0, 0};
};

/// T_i A_i -+ A_{n+1-i}^T with T_i = diag(t_1 I, ..., t_m I) on the left.
/// The sign in front of the transpose is -(-1)^i (paper) or +(-1)^i (classical).
PresentationLevel presentation_matrix(const BoundaryLinkData& link, int level, Convention conv);

/// The presentation matrix at t_1 = ... = t_m = 1.
IntMatrix augmentation(const BoundaryLinkData& link, int level, Convention conv);

/// normalize(det presentation_matrix(link, level, conv)).
LaurentPoly alexander_polynomial(const BoundaryLinkData& link, int level, Convention conv);

/// Levels whose presentation matrices cut out the discriminant: q, and q - 1 when q - 1 >= 1.
std::vector<int> discriminant_levels(const BoundaryLinkData& link);

}  // namespace blinksig
