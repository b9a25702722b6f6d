#pragma once

#include <vector>

#include "fracsim/crack_set.hpp"
#include "fracsim/geometry.hpp"

namespace fracsim {

/// sup over x in A of dist(x, B). Both unions must be nonempty.
/// Exact on segment unions: the supremum is located among segment
/// endpoints, projection feet, clamp-region boundaries, and points
/// equidistant from two features of B.
double directed_hausdorff(const std::vector<Segment>& a, const std::vector<Segment>& b);

/// Hausdorff distance with the empty-set conventions
/// d_H(∅,∅)=0 and d_H(∅,K)=empty_distance (= diam Ω) for K nonempty.
double hausdorff_distance(const std::vector<Segment>& a, const std::vector<Segment>& b,
                          double empty_distance);

double hausdorff_distance(const CrackSet& a, const CrackSet& b, double empty_distance);

/// Closed ε-neighborhood of a crack set as a membership predicate.
class DilatedSet {
 public:
  DilatedSet(std::vector<Segment> segs, double eps) : segs_(std::move(segs)), eps_(eps) {}
  bool contains(const Vec2& p) const {
    if (segs_.empty()) return false;
    return point_set_distance(p, segs_) <= eps_;
  }
  double eps() const { return eps_; }

 private:
  std::vector<Segment> segs_;
  double eps_;
};

DilatedSet dilate(const CrackSet& k, double eps);

}  // namespace fracsim
