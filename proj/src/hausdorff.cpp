#include "fracsim/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracsim {

namespace {

// Elementary squared-distance functions along p(t) = a + t*d:
// to a point q, and to the supporting line of a segment. Each is a
// quadratic q2*t^2 + q1*t + q0.
struct Quadratic {
  double q2 = 0.0, q1 = 0.0, q0 = 0.0;
};

Quadratic point_feature(const Vec2& a, const Vec2& d, const Vec2& q) {
  const Vec2 w = a - q;
  return {d.norm2(), 2.0 * d.dot(w), w.norm2()};
}

Quadratic line_feature(const Vec2& a, const Vec2& d, const Segment& s) {
  Vec2 n = rot90(s.b - s.a);
  const double nn = n.norm();
  if (nn == 0.0) return point_feature(a, d, s.a);  // degenerate segment
  n = n * (1.0 / nn);
  const double c0 = (a - s.a).dot(n);
  const double c1 = d.dot(n);
  return {c1 * c1, 2.0 * c0 * c1, c0 * c0};
}

// Candidate parameters on one source segment for the max of dist(p(t), B).
void collect_candidates(const Segment& src, const std::vector<Segment>& b,
                        std::vector<double>& ts) {
  ts.clear();
  ts.push_back(0.0);
  ts.push_back(1.0);
  const Vec2 a = src.a;
  const Vec2 d = src.b - src.a;
  const double dd = d.norm2();
  if (dd == 0.0) return;

  std::vector<Quadratic> feats;
  feats.reserve(b.size() * 3);
  for (const Segment& s : b) {
    feats.push_back(point_feature(a, d, s.a));
    feats.push_back(point_feature(a, d, s.b));
    feats.push_back(line_feature(a, d, s));

    // Clamp-region boundaries: projection of p(t) onto s passes an endpoint.
    const Vec2 db = s.b - s.a;
    const double denom = d.dot(db);
    if (denom != 0.0) {
      ts.push_back((s.a - a).dot(db) / denom);
      ts.push_back(((s.a - a).dot(db) + db.norm2()) / denom);
    }
    // Feet of perpendiculars from the endpoints of s onto the source.
    ts.push_back((s.a - a).dot(d) / dd);
    ts.push_back((s.b - a).dot(d) / dd);
  }

  // Equidistance of two elementary features (closest-feature switches).
  std::vector<double> roots;
  for (std::size_t i = 0; i < feats.size(); ++i) {
    for (std::size_t j = i + 1; j < feats.size(); ++j) {
      roots.clear();
      quadratic_roots(feats[i].q2 - feats[j].q2, feats[i].q1 - feats[j].q1,
                      feats[i].q0 - feats[j].q0, roots);
      for (double t : roots) ts.push_back(t);
    }
  }
}

}  // namespace

double directed_hausdorff(const std::vector<Segment>& a, const std::vector<Segment>& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("directed_hausdorff: sets must be nonempty");
  const std::vector<Segment> am = merge_collinear(a);
  const std::vector<Segment> bm = merge_collinear(b);

  double best = 0.0;
  std::vector<double> ts;
  for (const Segment& src : am) {
    collect_candidates(src, bm, ts);
    const Vec2 d = src.b - src.a;
    for (double t : ts) {
      if (!(t >= 0.0 && t <= 1.0)) continue;
      best = std::max(best, point_set_distance(src.a + t * d, bm));
    }
  }
  return best;
}

double hausdorff_distance(const std::vector<Segment>& a, const std::vector<Segment>& b,
                          double empty_distance) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return empty_distance;
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double hausdorff_distance(const CrackSet& a, const CrackSet& b, double empty_distance) {
  return hausdorff_distance(a.segments(), b.segments(), empty_distance);
}

DilatedSet dilate(const CrackSet& k, double eps) {
  if (eps < 0.0) throw std::invalid_argument("dilate: eps must be >= 0");
  return DilatedSet(k.segments(), eps);
}

}  // namespace fracsim
