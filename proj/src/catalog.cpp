#include "blinksig/catalog.hpp"

namespace blinksig::catalog {

BoundaryLinkData trefoil() { return BoundaryLinkData::classical(IntMatrix{{-1, 1}, {0, -1}}, {2}, "trefoil"); }

BoundaryLinkData figure_eight() {
  return BoundaryLinkData::classical(IntMatrix{{1, 1}, {0, -1}}, {2}, "figure-eight");
}

BoundaryLinkData split_trefoils() {
  return BoundaryLinkData::classical(
      IntMatrix{{-1, 1, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 1}, {0, 0, 0, -1}}, {2, 2}, "split-trefoils");
}

BoundaryLinkData hyperbolic_pair() { return BoundaryLinkData::classical(IntMatrix{{0, 1}, {0, 0}}, {2}, "hyperbolic"); }

}  // namespace blinksig::catalog
