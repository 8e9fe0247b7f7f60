#ifndef CZT_ORACLE2D_HPP
#define CZT_ORACLE2D_HPP

#include "czt/rcset.hpp"
#include "czt/types.hpp"

#include <optional>
#include <vector>

namespace czt {

// Exact convex-polygon computations used to verify the constrained-zonotope
// pipeline at n = 2. Vertices are counter-clockwise; one- and two-vertex
// polygons stand for points and segments (they arise as Minkowski summands
// and degenerate results).
struct ConvexPolygon {
  std::vector<Eigen::Vector2d> v;

  bool degenerate() const { return v.size() < 3; }
};

// Vertex enumeration by pairwise halfplane intersection, feasibility
// filtering, dedup, and CCW sort. Throws UnboundedError / DegenerateError.
ConvexPolygon polygon_from_hpoly(const HPolyhedron& P);

// Outward unit normals and offsets of a (non-degenerate) polygon.
HPolyhedron hpoly_from_polygon(const ConvexPolygon& P);

ConvexPolygon poly2d_minkowski_sum(const ConvexPolygon& P, const ConvexPolygon& Q);

// Erosion by a symmetric set: per-edge support offsets, then re-enumeration.
std::optional<ConvexPolygon> poly2d_pdiff(const ConvexPolygon& P, const SymmetricSet& S);

std::optional<ConvexPolygon> poly2d_intersect(const ConvexPolygon& P, const ConvexPolygon& Q);

ConvexPolygon poly2d_affine(const Eigen::Matrix2d& R, const ConvexPolygon& P);

double polygon_area(const ConvexPolygon& P);

bool polygon_contains(const ConvexPolygon& P, const Eigen::Vector2d& x, double tol = 1e-9);

// Exact polygon of a 2-D constrained zonotope: generator walk for zonotopes,
// the closed-form H-Rep for square-stack representations.
ConvexPolygon polygon_from_czono(const ConstrainedZonotope& C);

// Exact T-step recursion at n = 2 with polygon arithmetic; element t is K_t.
std::vector<ConvexPolygon> exact_rc_2d(const RcScenario& sc);

// Grid-based volume estimate of a bounded constrained zonotope over its
// support-function bounding box.
double volume_estimate(const ConstrainedZonotope& C, int resolution);

}  // namespace czt

#endif  // CZT_ORACLE2D_HPP
