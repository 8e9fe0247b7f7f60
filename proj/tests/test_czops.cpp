#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "czt/czops.hpp"
#include "czt/linalg.hpp"
#include "czt/oracle2d.hpp"
#include "czt/sets.hpp"

#include <cmath>
#include <random>

using namespace czt;

namespace {

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

HPolyhedron random_polytope_2d(std::mt19937& rng, int extra_rows = 4) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat H(4 + extra_rows, 2);
  Vec k(4 + extra_rows);
  H.topRows(4) << 1, 0, -1, 0, 0, 1, 0, -1;
  k.head(4).setConstant(1.5 + u(rng));
  for (int i = 0; i < extra_rows; ++i) {
    double th = 2.0 * M_PI * i / extra_rows + 0.3 * u(rng);
    H.row(4 + i) << std::cos(th), std::sin(th);
    k(4 + i) = 0.7 + 0.8 * std::abs(u(rng));
  }
  return HPolyhedron(H, k, true);
}

double czono_support(const ConstrainedZonotope& C, const Vec& nu) {
  auto s = support_czono(C, nu);
  REQUIRE(s.has_value());
  return s->value;
}

void check_support_equal(const ConstrainedZonotope& A, const ConstrainedZonotope& B, double tol,
                         int dirs = 100) {
  for (int j = 0; j < dirs; ++j) {
    double th = 2.0 * M_PI * j / dirs;
    Vec nu = vec2(std::cos(th), std::sin(th));
    CHECK(czono_support(A, nu) == doctest::Approx(czono_support(B, nu)).epsilon(tol));
  }
}

}  // namespace

TEST_CASE("affine_map basics and support identity") {
  ConstrainedZonotope box(Mat::Identity(2, 2), Vec::Zero(2));
  ConstrainedZonotope same = affine_map(Mat::Identity(2, 2), box);
  CHECK((same.G - box.G).norm() == 0.0);

  ConstrainedZonotope scaled = affine_map(2.0 * Mat::Identity(2, 2), box);
  CHECK(czono_support(scaled, vec2(1, 0)) == doctest::Approx(2.0));

  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    ConstrainedZonotope C = invertible_from_hpoly(random_polytope_2d(rng));
    Mat R(2, 2);
    R << u(rng), u(rng), u(rng), u(rng);
    ConstrainedZonotope RC = affine_map(R, C);
    Vec nu = vec2(u(rng), u(rng));
    CHECK(czono_support(RC, nu) == doctest::Approx(czono_support(C, R.transpose() * nu)).epsilon(1e-9));
  }
}

TEST_CASE("minkowski_sum translation, box sum, support additivity") {
  ConstrainedZonotope box(Mat::Identity(2, 2), Vec::Zero(2));
  ConstrainedZonotope shifted = minkowski_sum(box, ConstrainedZonotope::singleton(vec2(0.5, -1)));
  CHECK(czono_support(shifted, vec2(1, 0)) == doctest::Approx(1.5));
  CHECK(czono_support(shifted, vec2(0, 1)) == doctest::Approx(0.0));

  CHECK(czono_support(minkowski_sum(box, box), vec2(1, 0)) == doctest::Approx(2.0));

  std::mt19937 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    ConstrainedZonotope C = invertible_from_hpoly(random_polytope_2d(rng));
    ConstrainedZonotope S = invertible_from_hpoly(random_polytope_2d(rng));
    ConstrainedZonotope sum = minkowski_sum(C, S);
    for (int j = 0; j < 100; ++j) {
      double th = 2.0 * M_PI * j / 100;
      Vec nu = vec2(std::cos(th), std::sin(th));
      CHECK(czono_support(sum, nu) ==
            doctest::Approx(czono_support(C, nu) + czono_support(S, nu)).epsilon(1e-8));
    }
  }
}

TEST_CASE("intersect_inverse_affine") {
  std::mt19937 rng(43);
  ConstrainedZonotope C = invertible_from_hpoly(random_polytope_2d(rng));
  ConstrainedZonotope self = intersect_inverse_affine(C, Mat::Identity(2, 2), C);
  check_support_equal(self, C, 1e-8);

  ConstrainedZonotope box(Mat::Identity(2, 2), Vec::Zero(2));
  ConstrainedZonotope other = ConstrainedZonotope::interval_box(vec2(0, 0), vec2(2, 2));
  ConstrainedZonotope inter = intersect_inverse_affine(box, Mat::Identity(2, 2), other);
  CHECK(czono_support(inter, vec2(-1, 0)) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(czono_support(inter, vec2(1, 0)) == doctest::Approx(1.0).epsilon(1e-9));

  ConstrainedZonotope far = ConstrainedZonotope::interval_box(vec2(5, 5), vec2(6, 6));
  CHECK(is_empty(intersect_inverse_affine(box, Mat::Identity(2, 2), far)));
}

TEST_CASE("intersect_halfspace") {
  ConstrainedZonotope box(Mat::Identity(2, 2), Vec::Zero(2));

  ConstrainedZonotope inactive = intersect_halfspace(box, Halfspace(vec2(1, 0), 5.0));
  check_support_equal(inactive, box, 1e-9);
  CHECK(inactive.num_generators() == box.num_generators() + 1);
  CHECK(inactive.num_constraints() == box.num_constraints() + 1);

  ConstrainedZonotope half = intersect_halfspace(box, Halfspace(vec2(1, 0), 0.0));
  CHECK(czono_support(half, vec2(1, 0)) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(czono_support(half, vec2(-1, 0)) == doctest::Approx(1.0).epsilon(1e-9));

  CHECK(is_empty(intersect_halfspace(box, Halfspace(vec2(1, 0), -2.0))));
}

TEST_CASE("halfspace clipping matches polygon oracle") {
  std::mt19937 rng(44);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    HPolyhedron P = random_polytope_2d(rng);
    ConstrainedZonotope C = invertible_from_hpoly(P);
    Vec p = vec2(u(rng), u(rng));
    if (p.norm() < 0.1) continue;
    double q = 0.4 * u(rng);
    ConstrainedZonotope cut = intersect_halfspace(C, Halfspace(p, q));

    Mat H2(P.H.rows() + 1, 2);
    Vec k2(P.k.size() + 1);
    H2 << P.H, p.transpose();
    k2 << P.k, q;
    ConvexPolygon clipped = polygon_from_hpoly(HPolyhedron(H2, k2));
    for (int j = 0; j < 50; ++j) {
      double th = 2.0 * M_PI * j / 50;
      Vec nu = vec2(std::cos(th), std::sin(th));
      double ref = -1e300;
      for (const auto& v : clipped.v) ref = std::max(ref, nu(0) * v.x() + nu(1) * v.y());
      CHECK(czono_support(cut, nu) == doctest::Approx(ref).epsilon(1e-7));
    }
  }
}

TEST_CASE("min_row drops duplicates and is idempotent") {
  Mat A(2, 3);
  A << 1, 1, 0, 1, 1, 0;  // duplicated row
  Mat G(2, 3);
  G << 1, 0, 0.3, 0, 1, -0.2;
  ConstrainedZonotope C(G, Vec::Zero(2), A, Vec::Zero(2));
  ConstrainedZonotope R = min_row(C);
  CHECK(R.num_constraints() == 1);
  check_support_equal(R, C, 1e-9, 32);

  ConstrainedZonotope R2 = min_row(R);
  CHECK(R2.num_constraints() == R.num_constraints());
  CHECK((R2.dense_A() - R.dense_A()).norm() == 0.0);
}

TEST_CASE("min_row rank property on planted dependencies") {
  std::mt19937 rng(45);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    int N = 7;
    Mat G(2, N);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < N; ++j) G(i, j) = u(rng);
    Mat A(3, N);
    for (int j = 0; j < N; ++j) A(0, j) = u(rng);
    A.row(1) = 2.0 * A.row(0);
    for (int j = 0; j < N; ++j) A(2, j) = u(rng);
    Vec xi0(N);
    for (int j = 0; j < N; ++j) xi0(j) = 0.5 * u(rng);
    ConstrainedZonotope C(G, Vec::Zero(2), A, A * xi0);
    ConstrainedZonotope R = min_row(C);
    Mat stack(2 + R.num_constraints(), N);
    stack << R.G, R.dense_A();
    CHECK(numerical_rank(stack) == stack.rows());
    CHECK(R.minrow_verified());
  }
}

TEST_CASE("square-stack representation from H-Rep") {
  Vec one2 = Vec::Ones(2);
  HPolyhedron box = HPolyhedron::box(-one2, one2);
  ConstrainedZonotope C = invertible_from_hpoly(box);
  CHECK(is_invertible_rep(C));
  CHECK(repr_complexity(C).dof_value() == doctest::Approx(1.0));
  ConstrainedZonotope plain(Mat::Identity(2, 2), Vec::Zero(2));
  check_support_equal(C, plain, 1e-9);

  Mat Ht(3, 2);
  Ht << -1, 0, 0, -1, 1, 1;
  Vec kt(3);
  kt << 0, 0, 1;
  ConstrainedZonotope tri = invertible_from_hpoly(HPolyhedron(Ht, kt));
  ConvexPolygon ref = polygon_from_hpoly(HPolyhedron(Ht, kt));
  auto pts = boundary_sample(tri, 64);
  REQUIRE(pts.has_value());
  for (const auto& p : *pts) CHECK(polygon_contains(ref, p, 1e-7));
  for (const auto& v : ref.v) CHECK(membership_czono(tri, vec2(v.x(), v.y()), 1e-7));

  Mat Hu(1, 2);
  Hu << 1, 0;
  CHECK_THROWS_AS(invertible_from_hpoly(HPolyhedron(Hu, Vec::Zero(1))), UnboundedError);
}

TEST_CASE("closed-form H-Rep of a square-stack representation") {
  Vec one2 = Vec::Ones(2);
  ConstrainedZonotope box = invertible_from_hpoly(HPolyhedron::box(-one2, one2));
  HPolyhedron back = hpoly_from_invertible(box);
  CHECK(back.num_rows() == 2 * box.num_generators());
  HPolyhedron reduced = remove_redundant_rows(back);
  CHECK(reduced.num_rows() == 4);
  ConvexPolygon poly = polygon_from_hpoly(back);
  CHECK(polygon_area(poly) == doctest::Approx(4.0).epsilon(1e-9));

  std::mt19937 rng(46);
  for (int trial = 0; trial < 10; ++trial) {
    HPolyhedron P = random_polytope_2d(rng);
    ConstrainedZonotope C = invertible_from_hpoly(P);
    HPolyhedron Q = hpoly_from_invertible(C);
    ConstrainedZonotope C2 = invertible_from_hpoly(Q);
    check_support_equal(C, C2, 1e-8);
  }

  ConstrainedZonotope wide(Mat::Identity(2, 3).eval(), Vec::Zero(2));
  CHECK_THROWS_AS(hpoly_from_invertible(wide), NotInvertibleError);
}

TEST_CASE("is_invertible_rep") {
  ConstrainedZonotope box(Mat::Identity(2, 2), Vec::Zero(2));
  CHECK(is_invertible_rep(box));
  Mat G3(2, 3);
  G3 << 1, 0, 0.5, 0, 1, 0.5;
  CHECK_FALSE(is_invertible_rep(ConstrainedZonotope(G3, Vec::Zero(2))));
  std::mt19937 rng(47);
  CHECK(is_invertible_rep(invertible_from_hpoly(random_polytope_2d(rng))));
}

TEST_CASE("complexity bookkeeping of the closed forms") {
  std::mt19937 rng(48);
  ConstrainedZonotope C = invertible_from_hpoly(random_polytope_2d(rng));
  ConstrainedZonotope S = invertible_from_hpoly(random_polytope_2d(rng));
  auto cc = repr_complexity(C), cs = repr_complexity(S);

  auto sum = repr_complexity(minkowski_sum(C, S));
  CHECK(sum.constraints == cc.constraints + cs.constraints);
  CHECK(minkowski_sum(C, S).num_generators() == C.num_generators() + S.num_generators());

  auto half = repr_complexity(intersect_halfspace(C, Halfspace(vec2(1, 0), 10.0)));
  CHECK(half.constraints == cc.constraints + 1);
  CHECK(intersect_halfspace(C, Halfspace(vec2(1, 0), 10.0)).num_generators() ==
        C.num_generators() + 1);

  Mat R(2, 2);
  R << 1, 0.2, 0, 1;
  auto inter = intersect_inverse_affine(C, R, S);
  CHECK(inter.num_generators() == C.num_generators() + S.num_generators());
  CHECK(inter.num_constraints() == C.num_constraints() + S.num_constraints() + 2);

  // emptiness preserved under the closed forms
  ConstrainedZonotope empty = ConstrainedZonotope::empty_set(2);
  CHECK(affine_map(R, empty).is_canonical_empty());
  CHECK(minkowski_sum(C, empty).is_canonical_empty());
  CHECK(intersect_inverse_affine(empty, R, S).is_canonical_empty());
}
