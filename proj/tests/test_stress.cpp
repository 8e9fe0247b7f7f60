#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "czt/czops.hpp"
#include "czt/linalg.hpp"
#include "czt/lp.hpp"
#include "czt/oracle2d.hpp"
#include "czt/pdiff.hpp"
#include "czt/sets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

using namespace czt;

namespace {

// Reference optimum by active-set enumeration for fully box-bounded problems:
// every vertex of the feasible polytope activates n constraints (equalities
// always included), so trying all n-subsets is exact.
struct EnumResult {
  bool feasible = false;
  double value = -1e300;
};

EnumResult enumerate_reference(const LpProblem& p) {
  const int n = static_cast<int>(p.num_vars());
  const int me = static_cast<int>(p.eq_lhs.rows());
  const int mi = static_cast<int>(p.ineq_lhs.rows());
  EnumResult res;

  // candidate active rows: inequalities, lower bounds, upper bounds
  const int cand = mi + 2 * n;
  auto row_of = [&](int c, Vec& r, double& rhs) {
    if (c < mi) {
      r = p.ineq_lhs.row(c).transpose();
      rhs = p.ineq_rhs(c);
    } else if (c < mi + n) {
      r = Vec::Zero(n);
      r(c - mi) = 1.0;
      rhs = p.lower(c - mi);
    } else {
      r = Vec::Zero(n);
      r(c - mi - n) = 1.0;
      rhs = p.upper(c - mi - n);
    }
  };

  int need = n - me;
  if (need < 0) return res;
  std::vector<int> pick(static_cast<size_t>(need));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == need) {
      Mat A(n, n);
      Vec b(n);
      for (int i = 0; i < me; ++i) {
        A.row(i) = p.eq_lhs.row(i);
        b(i) = p.eq_rhs(i);
      }
      for (int i = 0; i < need; ++i) {
        Vec r;
        double rhs;
        row_of(pick[static_cast<size_t>(i)], r, rhs);
        if (!std::isfinite(rhs)) return;  // bound at infinity cannot be active
        A.row(me + i) = r.transpose();
        b(me + i) = rhs;
      }
      Eigen::FullPivLU<Mat> lu(A);
      if (!lu.isInvertible()) return;
      Vec x = lu.solve(b);
      const double tol = 1e-7;
      if (me > 0 && (p.eq_lhs * x - p.eq_rhs).lpNorm<Eigen::Infinity>() > tol) return;
      if (mi > 0 && ((p.ineq_lhs * x - p.ineq_rhs).array() > tol).any()) return;
      for (int j = 0; j < n; ++j)
        if (x(j) < p.lower(j) - tol || x(j) > p.upper(j) + tol) return;
      res.feasible = true;
      res.value = std::max(res.value, p.objective.dot(x));
      return;
    }
    for (int c = start; c < cand; ++c) {
      pick[static_cast<size_t>(depth)] = c;
      rec(c + 1, depth + 1);
    }
  };
  rec(0, 0);
  return res;
}

Vec random_vec(std::mt19937& rng, int n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

Mat random_mat(std::mt19937& rng, int r, int c, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Mat M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M(i, j) = u(rng);
  return M;
}

}  // namespace

TEST_CASE("simplex agrees with active-set enumeration on random boxed LPs") {
  std::mt19937 rng(91);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);        // 2..4
    int me = static_cast<int>(rng() % 2);           // 0..1
    int mi = static_cast<int>(rng() % 4);           // 0..3
    LpProblem p = LpProblem::maximize(random_vec(rng, n, 1.0));
    p.eq_lhs = random_mat(rng, me, n, 1.0);
    p.ineq_lhs = random_mat(rng, mi, n, 1.0);
    p.lower = random_vec(rng, n, 1.0).array() - 1.5;
    p.upper = p.lower + (random_vec(rng, n, 1.0).array() + 1.5).matrix();
    // right-hand sides sometimes anchored at a feasible point, sometimes not
    if (rng() % 3 != 0) {
      Vec x0(n);
      for (int j = 0; j < n; ++j)
        x0(j) = p.lower(j) + (p.upper(j) - p.lower(j)) *
                                 std::uniform_real_distribution<double>(0.1, 0.9)(rng);
      p.eq_rhs = p.eq_lhs * x0;
      p.ineq_rhs = p.ineq_lhs * x0 + random_vec(rng, mi, 0.5).cwiseAbs();
    } else {
      p.eq_rhs = random_vec(rng, me, 1.0);
      p.ineq_rhs = random_vec(rng, mi, 1.0);
    }

    EnumResult ref = enumerate_reference(p);
    LpOutcome out = lp_solve(p);
    if (ref.feasible) {
      ++feasible_seen;
      REQUIRE(out.optimal());
      CHECK(out.value == doctest::Approx(ref.value).epsilon(1e-8));
      CHECK(((p.ineq_lhs * out.point - p.ineq_rhs).array() <= 1e-8).all());
      for (int j = 0; j < n; ++j) {
        CHECK(out.point(j) >= p.lower(j) - 1e-8);
        CHECK(out.point(j) <= p.upper(j) + 1e-8);
      }
    } else {
      ++infeasible_seen;
      CHECK(out.status == LpStatus::Infeasible);
    }
  }
  CHECK(feasible_seen > 200);
  CHECK(infeasible_seen > 20);
}

TEST_CASE("unbounded rays are classified as unbounded") {
  std::mt19937 rng(92);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    // feasible cone x >= x0 (componentwise), objective with positive weights:
    // always unbounded along 1
    LpProblem p = LpProblem::maximize(random_vec(rng, n, 1.0).cwiseAbs() +
                                      Vec::Constant(n, 0.1));
    p.ineq_lhs = -Mat::Identity(n, n);
    p.ineq_rhs = -random_vec(rng, n, 1.0);
    LpOutcome out = lp_solve(p);
    CHECK(out.status == LpStatus::Unbounded);
  }
}

TEST_CASE("warm-started support queries equal cold solves") {
  std::mt19937 rng(93);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    int N = n + 3 + static_cast<int>(rng() % 4);
    int M = 1 + static_cast<int>(rng() % 3);
    Mat G = random_mat(rng, n, N, 1.0);
    Mat A = random_mat(rng, M, N, 1.0);
    Vec xi0 = random_vec(rng, N, 0.6);
    ConstrainedZonotope C(G, Vec::Zero(n), A, Vec(A * xi0));
    SupportOracle oracle(C);
    for (int q = 0; q < 60; ++q) {
      Vec nu = random_vec(rng, n, 1.0);
      auto warm = oracle.query(nu);
      auto cold = support_czono(C, nu);
      REQUIRE(warm.has_value() == cold.has_value());
      if (warm) {
        CHECK(warm->value == doctest::Approx(cold->value).epsilon(1e-9));
        CHECK(membership_czono(C, warm->point, 1e-7));
      }
    }
  }
}

TEST_CASE("sparse and dense min-norm agree on recursion-shaped stacks") {
  std::mt19937 rng(94);
  for (int trial = 0; trial < 4; ++trial) {
    // block-bidiagonal structure similar to long recursions
    int blocks = 4, bs = 12;
    int rows = blocks * bs, cols = rows + 20;
    Mat B = Mat::Zero(rows, cols);
    for (int k = 0; k < blocks; ++k) {
      B.block(k * bs, k * bs, bs, bs) = random_mat(rng, bs, bs, 1.0) + 2.0 * Mat::Identity(bs, bs);
      if (k > 0) B.block(k * bs, (k - 1) * bs, bs, bs) = random_mat(rng, bs, bs, 0.3);
    }
    B.rightCols(20) = random_mat(rng, rows, 20, 0.2);
    Mat rhs = random_mat(rng, rows, 3, 1.0);
    Mat Xd = min_norm_solve(B, rhs);
    Mat Xs = min_norm_solve_sparse(B.sparseView(), rhs);
    CHECK((Xd - Xs).norm() < 1e-8 * (1.0 + Xd.norm()));
    CHECK((B * Xs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
  }
}

TEST_CASE("inner difference equals the exact erosion for square-stack planar sets") {
  std::mt19937 rng(95);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    // random bounded polytope around the origin
    int extra = 2 + static_cast<int>(rng() % 4);
    Mat H(4 + extra, 2);
    Vec k(4 + extra);
    H.topRows(4) << 1, 0, -1, 0, 0, 1, 0, -1;
    k.head(4).setConstant(1.0 + std::abs(u(rng)));
    for (int i = 0; i < extra; ++i) {
      double th = 2.0 * M_PI * i / extra + 0.4 * u(rng);
      H.row(4 + i) << std::cos(th), std::sin(th);
      k(4 + i) = 0.6 + std::abs(u(rng));
    }
    HPolyhedron P(H, k, true);
    ConstrainedZonotope C = invertible_from_hpoly(P);
    ConvexPolygon poly = polygon_from_hpoly(P);

    for (int kind = 0; kind < 3; ++kind) {
      Mat GS = 0.06 * (random_mat(rng, 2, 2, 1.0) + 2.0 * Mat::Identity(2, 2));
      Vec cs = random_vec(rng, 2, 0.05);
      SymmetricSet S = kind == 0   ? SymmetricSet::zonotope(GS, cs)
                       : kind == 1 ? SymmetricSet::ellipsoid(GS, cs)
                                   : SymmetricSet::l1_ball_image(GS, cs);
      ConstrainedZonotope inner = inner_pdiff(C, S);
      auto exact = poly2d_pdiff(poly, S);
      REQUIRE(exact.has_value());
      REQUIRE_FALSE(inner.is_canonical_empty());

      auto pts = boundary_sample(inner, 48);
      REQUIRE(pts.has_value());
      for (const auto& pnt : *pts) CHECK(polygon_contains(*exact, pnt, 1e-7));
      for (const auto& v : exact->v) {
        Vec x(2);
        x << v.x(), v.y();
        CHECK(membership_czono(inner, x, 1e-7));
      }
    }
  }
}

TEST_CASE("tangent cuts and degenerate boxes") {
  ConstrainedZonotope box(Mat::Identity(2, 2), Vec::Zero(2));
  // exactly tangent halfspace: the resulting set is the touching face
  Vec p(2);
  p << 1.0, 0.0;
  ConstrainedZonotope face = intersect_halfspace(box, Halfspace(p, -1.0));
  CHECK_FALSE(is_empty(face));
  auto s = support_czono(face, p);
  REQUIRE(s.has_value());
  CHECK(s->value == doctest::Approx(-1.0).epsilon(1e-9));

  // zero-width polytopes are rejected by the square-stack conversion
  Mat H(4, 2);
  H << 1, 0, -1, 0, 0, 1, 0, -1;
  Vec k(4);
  k << 1.0, -1.0, 1.0, 1.0;  // forces x1 = 1
  CHECK_THROWS_AS(invertible_from_hpoly(HPolyhedron(H, k)), DegenerateError);
}
