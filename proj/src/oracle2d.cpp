#include "czt/oracle2d.hpp"

#include "czt/czops.hpp"
#include "czt/sets.hpp"

#include <algorithm>
#include <cmath>

namespace czt {

namespace {

constexpr double kGeomTol = 1e-9;
constexpr double kDedupTol = 1e-8;

using V2 = Eigen::Vector2d;

double cross2(const V2& a, const V2& b) { return a.x() * b.y() - a.y() * b.x(); }

std::vector<V2> dedup_and_sort_ccw(std::vector<V2> pts) {
  std::vector<V2> uniq;
  for (const V2& p : pts) {
    bool seen = false;
    for (const V2& q : uniq)
      if ((p - q).lpNorm<Eigen::Infinity>() <= kDedupTol) {
        seen = true;
        break;
      }
    if (!seen) uniq.push_back(p);
  }
  if (uniq.size() < 3) return uniq;
  V2 centroid = V2::Zero();
  for (const V2& p : uniq) centroid += p;
  centroid /= static_cast<double>(uniq.size());
  std::sort(uniq.begin(), uniq.end(), [&](const V2& a, const V2& b) {
    return std::atan2(a.y() - centroid.y(), a.x() - centroid.x()) <
           std::atan2(b.y() - centroid.y(), b.x() - centroid.x());
  });
  // drop middle points of collinear runs
  std::vector<V2> out;
  size_t m = uniq.size();
  for (size_t i = 0; i < m; ++i) {
    const V2& prev = uniq[(i + m - 1) % m];
    const V2& cur = uniq[i];
    const V2& next = uniq[(i + 1) % m];
    if (std::abs(cross2(cur - prev, next - cur)) > 1e-12 ||
        (cur - prev).dot(next - cur) < 0.0)
      out.push_back(cur);
  }
  return out.size() >= 3 ? out : uniq;
}

struct Enumerated {
  std::vector<V2> pts;
};

// Pairwise halfplane intersections filtered for feasibility.
Enumerated enumerate_feasible_vertices(const Mat& H, const Vec& k) {
  Enumerated res;
  const Eigen::Index L = H.rows();
  double ktol = kGeomTol * std::max(1.0, k.size() > 0 ? k.lpNorm<Eigen::Infinity>() : 1.0);
  for (Eigen::Index i = 0; i < L; ++i) {
    for (Eigen::Index j = i + 1; j < L; ++j) {
      double det = H(i, 0) * H(j, 1) - H(i, 1) * H(j, 0);
      double scale = H.row(i).norm() * H.row(j).norm();
      if (std::abs(det) <= 1e-12 * std::max(1.0, scale)) continue;
      V2 p((k(i) * H(j, 1) - k(j) * H(i, 1)) / det, (H(i, 0) * k(j) - H(j, 0) * k(i)) / det);
      if (((H * p - k).array() <= ktol).all()) res.pts.push_back(p);
    }
  }
  return res;
}

// Normals must leave no angular gap of pi or more, otherwise a recession
// direction exists.
bool normals_positively_span(const Mat& H) {
  std::vector<double> angles;
  for (Eigen::Index i = 0; i < H.rows(); ++i) {
    if (H.row(i).norm() <= 1e-14) continue;
    angles.push_back(std::atan2(H(i, 1), H(i, 0)));
  }
  if (angles.size() < 3) return false;
  std::sort(angles.begin(), angles.end());
  double max_gap = 0.0;
  for (size_t i = 0; i + 1 < angles.size(); ++i) max_gap = std::max(max_gap, angles[i + 1] - angles[i]);
  max_gap = std::max(max_gap, angles.front() + 2.0 * M_PI - angles.back());
  return max_gap < M_PI - 1e-12;
}

std::vector<V2> clip_halfplane(const std::vector<V2>& poly, const V2& n, double off) {
  std::vector<V2> out;
  const size_t m = poly.size();
  if (m == 0) return out;
  double tol = kGeomTol * std::max(1.0, std::abs(off));
  for (size_t i = 0; i < m; ++i) {
    const V2& a = poly[i];
    const V2& b = poly[(i + 1) % m];
    double da = n.dot(a) - off;
    double db = n.dot(b) - off;
    if (da <= tol) out.push_back(a);
    if ((da > tol && db < -tol) || (da < -tol && db > tol)) {
      double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

ConvexPolygon make_polygon(std::vector<V2> pts) {
  ConvexPolygon P;
  P.v = dedup_and_sort_ccw(std::move(pts));
  return P;
}

}  // namespace

ConvexPolygon polygon_from_hpoly(const HPolyhedron& P) {
  if (P.dim() != 2) throw DimensionError("polygon_from_hpoly: dimension must be 2");
  // rows with a vanishing normal are vacuous or infeasible
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < P.num_rows(); ++i) {
    if (P.H.row(i).norm() <= 1e-14) {
      if (P.k(i) < -kGeomTol) throw DegenerateError("polygon_from_hpoly: infeasible zero row");
      continue;
    }
    rows.push_back(i);
  }
  Mat H(static_cast<Eigen::Index>(rows.size()), 2);
  Vec k(static_cast<Eigen::Index>(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    double nrm = P.H.row(rows[r]).norm();
    H.row(static_cast<Eigen::Index>(r)) = P.H.row(rows[r]) / nrm;
    k(static_cast<Eigen::Index>(r)) = P.k(rows[r]) / nrm;
  }
  if (!normals_positively_span(H)) throw UnboundedError("polygon_from_hpoly: polyhedron unbounded");
  Enumerated en = enumerate_feasible_vertices(H, k);
  ConvexPolygon out = make_polygon(std::move(en.pts));
  if (out.v.size() < 3) throw DegenerateError("polygon_from_hpoly: fewer than three vertices");
  return out;
}

HPolyhedron hpoly_from_polygon(const ConvexPolygon& P) {
  if (P.degenerate()) throw DegenerateError("hpoly_from_polygon: degenerate polygon");
  const size_t m = P.v.size();
  Mat H(static_cast<Eigen::Index>(m), 2);
  Vec k(static_cast<Eigen::Index>(m));
  for (size_t i = 0; i < m; ++i) {
    V2 e = P.v[(i + 1) % m] - P.v[i];
    V2 n(e.y(), -e.x());
    double nrm = n.norm();
    if (nrm <= 1e-14) throw DegenerateError("hpoly_from_polygon: zero-length edge");
    n /= nrm;
    H.row(static_cast<Eigen::Index>(i)) = n.transpose();
    k(static_cast<Eigen::Index>(i)) = n.dot(P.v[i]);
  }
  return HPolyhedron(std::move(H), std::move(k), true);
}

ConvexPolygon poly2d_minkowski_sum(const ConvexPolygon& P, const ConvexPolygon& Q) {
  if (P.v.empty() || Q.v.empty()) throw DegenerateError("poly2d_minkowski_sum: empty polygon");
  if (P.v.size() == 1) {
    ConvexPolygon out = Q;
    for (V2& p : out.v) p += P.v[0];
    return out;
  }
  if (Q.v.size() == 1) return poly2d_minkowski_sum(Q, P);

  auto bottommost = [](const std::vector<V2>& v) {
    size_t best = 0;
    for (size_t i = 1; i < v.size(); ++i)
      if (v[i].y() < v[best].y() - 1e-15 ||
          (std::abs(v[i].y() - v[best].y()) <= 1e-15 && v[i].x() < v[best].x()))
        best = i;
    return best;
  };
  auto edge_angle = [](const V2& e) {
    double a = std::atan2(e.y(), e.x());
    if (a < -1e-15) a += 2.0 * M_PI;
    return a;
  };

  const size_t na = P.v.size(), nb = Q.v.size();
  size_t ia = bottommost(P.v), ib = bottommost(Q.v);
  std::vector<V2> verts;
  verts.reserve(na + nb + 1);
  V2 cur = P.v[ia] + Q.v[ib];
  verts.push_back(cur);
  size_t i = 0, j = 0;
  while (i < na || j < nb) {
    V2 step;
    if (i >= na) {
      step = Q.v[(ib + j + 1) % nb] - Q.v[(ib + j) % nb];
      ++j;
    } else if (j >= nb) {
      step = P.v[(ia + i + 1) % na] - P.v[(ia + i) % na];
      ++i;
    } else {
      V2 ea = P.v[(ia + i + 1) % na] - P.v[(ia + i) % na];
      V2 eb = Q.v[(ib + j + 1) % nb] - Q.v[(ib + j) % nb];
      double da = edge_angle(ea), db = edge_angle(eb);
      if (std::abs(da - db) <= 1e-12) {
        step = ea + eb;
        ++i;
        ++j;
      } else if (da < db) {
        step = ea;
        ++i;
      } else {
        step = eb;
        ++j;
      }
    }
    cur += step;
    verts.push_back(cur);
  }
  verts.pop_back();  // closes back onto the start
  return make_polygon(std::move(verts));
}

std::optional<ConvexPolygon> poly2d_pdiff(const ConvexPolygon& P, const SymmetricSet& S) {
  if (S.dim() != 2) throw DimensionError("poly2d_pdiff: subtrahend must be 2-D");
  HPolyhedron h = hpoly_from_polygon(P);
  Vec k = h.k;
  for (Eigen::Index i = 0; i < h.num_rows(); ++i) {
    Vec n = h.H.row(i).transpose();
    k(i) -= n.dot(S.c) + support_symmetric_centered(S, n);
  }
  Enumerated en = enumerate_feasible_vertices(h.H, k);
  if (en.pts.empty()) return std::nullopt;
  return make_polygon(std::move(en.pts));
}

std::optional<ConvexPolygon> poly2d_intersect(const ConvexPolygon& P, const ConvexPolygon& Q) {
  if (P.degenerate() || Q.degenerate()) throw DegenerateError("poly2d_intersect: degenerate input");
  HPolyhedron hq = hpoly_from_polygon(Q);
  std::vector<V2> cur = P.v;
  for (Eigen::Index i = 0; i < hq.num_rows(); ++i) {
    cur = clip_halfplane(cur, hq.H.row(i).transpose(), hq.k(i));
    if (cur.empty()) return std::nullopt;
  }
  ConvexPolygon out = make_polygon(std::move(cur));
  if (out.v.empty()) return std::nullopt;
  return out;
}

ConvexPolygon poly2d_affine(const Eigen::Matrix2d& R, const ConvexPolygon& P) {
  if (std::abs(R.determinant()) <= 1e-14) throw DegenerateError("poly2d_affine: singular map");
  ConvexPolygon out;
  out.v.reserve(P.v.size());
  for (const V2& p : P.v) out.v.push_back(R * p);
  if (R.determinant() < 0.0) std::reverse(out.v.begin(), out.v.end());
  return out;
}

double polygon_area(const ConvexPolygon& P) {
  if (P.v.size() < 3) return 0.0;
  double twice = 0.0;
  const size_t m = P.v.size();
  for (size_t i = 0; i < m; ++i) twice += cross2(P.v[i], P.v[(i + 1) % m]);
  return 0.5 * twice;
}

bool polygon_contains(const ConvexPolygon& P, const V2& x, double tol) {
  if (P.v.empty()) return false;
  if (P.v.size() == 1) return (x - P.v[0]).norm() <= tol;
  if (P.v.size() == 2) {
    V2 d = P.v[1] - P.v[0];
    double t = d.squaredNorm() > 0 ? (x - P.v[0]).dot(d) / d.squaredNorm() : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return (x - (P.v[0] + t * d)).norm() <= tol;
  }
  const size_t m = P.v.size();
  for (size_t i = 0; i < m; ++i) {
    V2 e = P.v[(i + 1) % m] - P.v[i];
    V2 n(e.y(), -e.x());
    double nrm = n.norm();
    if (nrm <= 1e-14) continue;
    if (n.dot(x - P.v[i]) / nrm > tol) return false;
  }
  return true;
}

ConvexPolygon polygon_from_czono(const ConstrainedZonotope& C) {
  if (C.dim() != 2) throw DimensionError("polygon_from_czono: set must be 2-D");
  if (C.is_canonical_empty()) throw DegenerateError("polygon_from_czono: empty set");
  if (C.num_constraints() == 0) {
    // generator walk: orient into the upper halfplane, sort by angle, trace
    std::vector<V2> gens;
    for (Eigen::Index j = 0; j < C.num_generators(); ++j) {
      V2 g = C.G.col(j);
      if (g.norm() <= 1e-14) continue;
      if (g.y() < 0.0 || (g.y() == 0.0 && g.x() < 0.0)) g = -g;
      gens.push_back(g);
    }
    V2 c(C.c(0), C.c(1));
    if (gens.empty()) {
      ConvexPolygon out;
      out.v.push_back(c);
      return out;
    }
    std::sort(gens.begin(), gens.end(),
              [](const V2& a, const V2& b) { return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x()); });
    V2 start = c;
    for (const V2& g : gens) start -= g;
    std::vector<V2> verts;
    V2 cur = start;
    verts.push_back(cur);
    for (const V2& g : gens) {
      cur += 2.0 * g;
      verts.push_back(cur);
    }
    for (const V2& g : gens) {
      cur -= 2.0 * g;
      verts.push_back(cur);
    }
    verts.pop_back();
    return make_polygon(std::move(verts));
  }
  if (is_invertible_rep(C)) return polygon_from_hpoly(hpoly_from_invertible(C));
  throw DegenerateError(
      "polygon_from_czono: exact conversion needs a zonotope or a square-stack representation");
}

std::vector<ConvexPolygon> exact_rc_2d(const RcScenario& sc) {
  sc.validate();
  if (sc.state_dim() != 2) throw DimensionError("exact_rc_2d: state dimension must be 2");
  if (sc.X_hrep.empty()) throw DimensionError("exact_rc_2d: scenario lacks H-Rep state constraints");
  const int T = sc.horizon;
  std::vector<ConvexPolygon> K(static_cast<size_t>(T) + 1);
  K[static_cast<size_t>(T)] = polygon_from_czono(sc.goal);

  for (int t = T - 1; t >= 0; --t) {
    const size_t st = static_cast<size_t>(t);
    const Mat& At = RcScenario::at(sc.A, t);
    const Mat& Bt = RcScenario::at(sc.B, t);
    const Mat& Ft = RcScenario::at(sc.F, t);

    auto eroded = poly2d_pdiff(K[st + 1], map_symmetric(Ft, RcScenario::at(sc.W, t)));
    if (!eroded || eroded->degenerate())
      throw DegenerateError("exact_rc_2d: erosion emptied the set at t=" + std::to_string(t));
    ConvexPolygon mbu = polygon_from_czono(affine_map(-Bt, RcScenario::at(sc.U, t)));
    ConvexPolygon reach = poly2d_minkowski_sum(*eroded, mbu);
    HPolyhedron hr = hpoly_from_polygon(reach);

    const HPolyhedron& X = RcScenario::at(sc.X_hrep, t);
    Mat H(hr.num_rows() + X.num_rows(), 2);
    Vec k(hr.num_rows() + X.num_rows());
    H << hr.H * At, X.H;
    k << hr.k, X.k;
    K[st] = polygon_from_hpoly(HPolyhedron(std::move(H), std::move(k)));
  }
  return K;
}

double volume_estimate(const ConstrainedZonotope& C, int resolution) {
  if (resolution < 1) throw DimensionError("volume_estimate: resolution must be positive");
  const Eigen::Index n = C.dim();
  Vec lo(n), hi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e(i) = 1.0;
    auto up = support_czono(C, e);
    auto dn = support_czono(C, -e);
    if (!up || !dn) return 0.0;
    hi(i) = up->value;
    lo(i) = -dn->value;
  }
  double cells = std::pow(static_cast<double>(resolution), static_cast<double>(n));
  if (cells > 2e7) throw DimensionError("volume_estimate: grid too large");

  double box_vol = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) box_vol *= std::max(0.0, hi(i) - lo(i));
  if (box_vol == 0.0) return 0.0;

  long count = 0, total = 0;
  std::vector<int> idx(static_cast<size_t>(n), 0);
  Vec x(n);
  while (true) {
    for (Eigen::Index i = 0; i < n; ++i)
      x(i) = lo(i) + (hi(i) - lo(i)) * (idx[static_cast<size_t>(i)] + 0.5) / resolution;
    if (membership_czono(C, x, 1e-8)) ++count;
    ++total;
    Eigen::Index d = 0;
    while (d < n && ++idx[static_cast<size_t>(d)] == resolution) idx[static_cast<size_t>(d++)] = 0;
    if (d == n) break;
  }
  return box_vol * static_cast<double>(count) / static_cast<double>(total);
}

}  // namespace czt
