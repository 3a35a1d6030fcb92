#include "persys/geometry.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace persys {

namespace {

using Kind = ValidationError::Kind;

constexpr double kAreaEps = 1e-12;
constexpr double kSideEps = 1e-12;

double signed_area(const std::vector<Vec2>& v) {
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    twice += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * twice;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3)
    throw ValidationError(Kind::DegenerateGeometry,
                          "polygon needs at least 3 vertices");
  double a = signed_area(vertices_);
  if (std::abs(a) <= kAreaEps)
    throw ValidationError(Kind::DegenerateGeometry, "polygon area is zero");
  if (a < 0) {
    std::reverse(vertices_.begin(), vertices_.end());
    a = -a;
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    Vec2 p0 = vertices_[i];
    Vec2 p1 = vertices_[(i + 1) % vertices_.size()];
    Vec2 p2 = vertices_[(i + 2) % vertices_.size()];
    if (cross(p1 - p0, p2 - p1) < -kSideEps)
      throw ValidationError(Kind::DegenerateGeometry, "polygon is not convex");
  }
  area_ = a;
  Vec2 c{0.0, 0.0};
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    Vec2 p = vertices_[i];
    Vec2 q = vertices_[(i + 1) % vertices_.size()];
    double w = cross(p, q);
    c = c + w * (p + q);
  }
  centroid_ = (1.0 / (6.0 * area_)) * c;
}

ConvexPolygon ConvexPolygon::axis_aligned_box(Vec2 lo, Vec2 hi) {
  if (!(lo.x < hi.x) || !(lo.y < hi.y))
    throw ValidationError(Kind::DegenerateGeometry, "box corners are not ordered");
  return ConvexPolygon({{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}});
}

double ConvexPolygon::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j)
      best = std::max(best, distance(vertices_[i], vertices_[j]));
  return best;
}

bool ConvexPolygon::contains(Vec2 p) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    Vec2 a = vertices_[i];
    Vec2 b = vertices_[(i + 1) % vertices_.size()];
    if (cross(b - a, p - a) < -kSideEps) return false;
  }
  return true;
}

double intersection_area(const ConvexPolygon& a, const ConvexPolygon& b) {
  // Clip a's vertex ring against each directed edge of b.
  std::vector<Vec2> poly = a.vertices();
  const auto& clip = b.vertices();
  for (std::size_t i = 0; i < clip.size() && !poly.empty(); ++i) {
    Vec2 e0 = clip[i];
    Vec2 e1 = clip[(i + 1) % clip.size()];
    std::vector<Vec2> next;
    next.reserve(poly.size() + 2);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      Vec2 cur = poly[j];
      Vec2 prev = poly[(j + poly.size() - 1) % poly.size()];
      double side_cur = cross(e1 - e0, cur - e0);
      double side_prev = cross(e1 - e0, prev - e0);
      bool in_cur = side_cur >= 0.0;
      bool in_prev = side_prev >= 0.0;
      if (in_cur != in_prev) {
        double t = side_prev / (side_prev - side_cur);
        next.push_back(prev + t * (cur - prev));
      }
      if (in_cur) next.push_back(cur);
    }
    poly = std::move(next);
  }
  if (poly.size() < 3) return 0.0;
  return std::abs(signed_area(poly));
}

double iou(const ConvexPolygon& a, const ConvexPolygon& b) {
  double inter = intersection_area(a, b);
  double uni = a.area() + b.area() - inter;
  return inter / uni;
}

bool intersects(const ConvexPolygon& a, const ConvexPolygon& b) {
  return intersection_area(a, b) > 1e-9;
}

}  // namespace persys
