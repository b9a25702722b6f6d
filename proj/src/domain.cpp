#include "fracsim/domain.hpp"

#include <algorithm>

namespace fracsim {

std::string to_string(BoundarySide s) {
  switch (s) {
    case BoundarySide::Bottom: return "bottom";
    case BoundarySide::Right: return "right";
    case BoundarySide::Top: return "top";
    case BoundarySide::Left: return "left";
  }
  return "?";
}

BoundarySide boundary_side_from_string(const std::string& s) {
  if (s == "bottom") return BoundarySide::Bottom;
  if (s == "right") return BoundarySide::Right;
  if (s == "top") return BoundarySide::Top;
  if (s == "left") return BoundarySide::Left;
  throw ConfigError("unknown boundary side '" + s + "'");
}

void DomainSpec::validate() const {
  if (!(rect.x1 > rect.x0) || !(rect.y1 > rect.y0))
    throw ConfigError("domain rectangle is degenerate");
  std::vector<std::vector<std::pair<double, double>>> per_side(4);
  for (const BoundaryInterval& bi : dirichlet) {
    const bool horizontal = bi.side == BoundarySide::Bottom || bi.side == BoundarySide::Top;
    const double lo_lim = horizontal ? rect.x0 : rect.y0;
    const double hi_lim = horizontal ? rect.x1 : rect.y1;
    if (!(bi.hi > bi.lo))
      throw ConfigError("dirichlet interval on side '" + to_string(bi.side) + "' is degenerate");
    if (bi.lo < lo_lim - 1e-12 || bi.hi > hi_lim + 1e-12)
      throw ConfigError("dirichlet interval [" + std::to_string(bi.lo) + "," +
                        std::to_string(bi.hi) + "] on side '" + to_string(bi.side) +
                        "' leaves the domain");
    per_side[static_cast<int>(bi.side)].push_back({bi.lo, bi.hi});
  }
  for (int s = 0; s < 4; ++s) {
    auto& iv = per_side[s];
    std::sort(iv.begin(), iv.end());
    for (std::size_t i = 1; i < iv.size(); ++i)
      if (iv[i].first < iv[i - 1].second - 1e-12)
        throw ConfigError("overlapping dirichlet intervals on side '" +
                          to_string(static_cast<BoundarySide>(s)) + "' near " +
                          std::to_string(iv[i].first));
  }
}

DomainSpec example_domain() {
  DomainSpec d;
  d.rect = {0.0, 1.0, -1.0, 1.0};
  d.dirichlet = {{BoundarySide::Bottom, 0.0, 1.0}, {BoundarySide::Top, 0.0, 1.0}};
  return d;
}

}  // namespace fracsim
