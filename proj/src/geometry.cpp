#include "fracsim/geometry.hpp"

#include <algorithm>
#include <limits>

namespace fracsim {

double point_segment_distance(const Vec2& p, const Segment& s) {
  const Vec2 d = s.b - s.a;
  const double dd = d.norm2();
  if (dd == 0.0) return (p - s.a).norm();
  double t = (p - s.a).dot(d) / dd;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (s.a + t * d)).norm();
}

double point_set_distance(const Vec2& p, const std::vector<Segment>& segs) {
  double best = std::numeric_limits<double>::infinity();
  for (const Segment& s : segs) best = std::min(best, point_segment_distance(p, s));
  return best;
}

std::optional<Segment> clip_segment(const Segment& s, const Rect& r) {
  // Liang-Barsky.
  const Vec2 d = s.b - s.a;
  double t0 = 0.0, t1 = 1.0;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {s.a.x - r.x0, r.x1 - s.a.x, s.a.y - r.y0, r.y1 - s.a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return std::nullopt;
    } else {
      const double t = q[i] / p[i];
      if (p[i] < 0.0) {
        if (t > t1) return std::nullopt;
        t0 = std::max(t0, t);
      } else {
        if (t < t0) return std::nullopt;
        t1 = std::min(t1, t);
      }
    }
  }
  if (t0 > t1) return std::nullopt;
  return Segment{s.a + t0 * d, s.a + t1 * d};
}

std::vector<Segment> merge_collinear(std::vector<Segment> segs, double tol) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < segs.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < segs.size() && !changed; ++j) {
        Segment& s = segs[i];
        Segment& t = segs[j];
        const Vec2 ds = s.b - s.a;
        const Vec2 dt = t.b - t.a;
        if (std::abs(ds.cross(dt)) > tol) continue;
        // Shared endpoint and same line?
        auto near = [&](const Vec2& p, const Vec2& q) {
          return std::abs(p.x - q.x) <= tol && std::abs(p.y - q.y) <= tol;
        };
        Vec2 na, nb;
        bool hit = false;
        if (near(s.b, t.a)) { na = s.a; nb = t.b; hit = true; }
        else if (near(s.b, t.b)) { na = s.a; nb = t.a; hit = true; }
        else if (near(s.a, t.a)) { na = s.b; nb = t.b; hit = true; }
        else if (near(s.a, t.b)) { na = s.b; nb = t.a; hit = true; }
        if (!hit) continue;
        // The merged span must stay collinear (exclude kinks at the joint).
        if (std::abs((nb - na).cross(ds)) > tol * std::max(1.0, (nb - na).norm())) continue;
        s = Segment{na, nb};
        segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
      }
    }
  }
  return segs;
}

void quadratic_roots(double a, double b, double c, std::vector<double>& out) {
  if (std::abs(a) < 1e-300) {
    if (std::abs(b) > 1e-300) out.push_back(-c / b);
    return;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  // Numerically stable pair.
  const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  out.push_back(q / a);
  if (q != 0.0) out.push_back(c / q);
  else out.push_back(0.0);
}

}  // namespace fracsim
