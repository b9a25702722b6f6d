#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fracsim/geometry.hpp"

namespace fracsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class BoundarySide { Bottom = 0, Right = 1, Top = 2, Left = 3 };

std::string to_string(BoundarySide s);
BoundarySide boundary_side_from_string(const std::string& s);

/// Interval on one side of the rectangle, in the coordinate running along
/// that side (x for bottom/top, y for left/right).
struct BoundaryInterval {
  BoundarySide side = BoundarySide::Bottom;
  double lo = 0.0;
  double hi = 0.0;
};

/// Rectangular domain with a Dirichlet part of the boundary; the Neumann
/// part is the complement.
struct DomainSpec {
  Rect rect;
  std::vector<BoundaryInterval> dirichlet;

  double diameter() const { return rect.diameter(); }
  /// Throws ConfigError on degenerate or overlapping Dirichlet intervals.
  void validate() const;
};

/// The reference domain (0,1)x(-1,1) with Dirichlet data on the top
/// and bottom sides.
DomainSpec example_domain();

}  // namespace fracsim
