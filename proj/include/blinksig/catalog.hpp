#pragma once

#include "blinksig/seifert.hpp"

namespace blinksig::catalog {

/// A = [[-1, 1], [0, -1]]; Alexander polynomial t^2 - t + 1.
BoundaryLinkData trefoil();
/// A = [[1, 1], [0, -1]]; Alexander polynomial t^2 - 3t + 1.
BoundaryLinkData figure_eight();
/// Two-component split link of two trefoils, block sizes [2, 2].
BoundaryLinkData split_trefoils();
/// A = [[0, 1], [0, 0]].
BoundaryLinkData hyperbolic_pair();

}  // namespace blinksig::catalog
