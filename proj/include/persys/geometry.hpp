#pragma once

// Small 2D convex-polygon toolkit for obstacle footprints, sensor fields of
// view, and lane regions.

#include <cmath>
#include <vector>

#include "persys/graph.hpp"  // ValidationError

namespace persys {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Convex polygon with nonzero area.  Vertices are normalized to
// counterclockwise order; clockwise input is reversed.  Collinear (but not
// reflex) vertices are allowed.  Throws ValidationError{DegenerateGeometry}
// on fewer than 3 vertices, non-convex chains, or (near-)zero area.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  static ConvexPolygon axis_aligned_box(Vec2 lo, Vec2 hi);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  double area() const { return area_; }
  Vec2 centroid() const { return centroid_; }
  // Largest vertex-to-vertex distance.
  double diameter() const;
  // Boundary points count as inside.
  bool contains(Vec2 p) const;

 private:
  std::vector<Vec2> vertices_;
  double area_ = 0.0;
  Vec2 centroid_;
};

// Area of the intersection (Sutherland–Hodgman clip); 0 when disjoint.
double intersection_area(const ConvexPolygon& a, const ConvexPolygon& b);

// intersection_area / union area; both polygons have positive area, so the
// denominator never vanishes.
double iou(const ConvexPolygon& a, const ConvexPolygon& b);

// True when the intersection has meaningfully positive area.
bool intersects(const ConvexPolygon& a, const ConvexPolygon& b);

}  // namespace persys
