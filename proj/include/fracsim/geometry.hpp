#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace fracsim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double xx, double yy) : x(xx), y(yy) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// 90-degree counterclockwise rotation, (y1,y2) -> (-y2,y1).
inline Vec2 rot90(const Vec2& v) { return {-v.y, v.x}; }

struct Segment {
  Vec2 a, b;
  double length() const { return (b - a).norm(); }
  bool degenerate() const { return a.x == b.x && a.y == b.y; }
};

struct Rect {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  double diameter() const { return std::hypot(width(), height()); }
  bool contains(const Vec2& p, double tol = 0.0) const {
    return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
  }
  bool intersects(const Rect& o) const {
    return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1;
  }
};

/// Distance from point p to the closed segment s.
double point_segment_distance(const Vec2& p, const Segment& s);

/// Distance from p to a finite union of segments; +inf convention not used,
/// caller handles the empty case.
double point_set_distance(const Vec2& p, const std::vector<Segment>& segs);

/// Clip s to the closed rectangle r. Empty result if no overlap.
std::optional<Segment> clip_segment(const Segment& s, const Rect& r);

/// Merge chains of collinear segments sharing endpoints into maximal
/// segments. Preserves the union as a point set.
std::vector<Segment> merge_collinear(std::vector<Segment> segs, double tol = 1e-12);

/// Real roots of a t^2 + b t + c = 0 appended to out.
void quadratic_roots(double a, double b, double c, std::vector<double>& out);

}  // namespace fracsim
