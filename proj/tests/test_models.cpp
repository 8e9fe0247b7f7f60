#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "czt/czops.hpp"
#include "czt/models.hpp"

#include <cmath>

using namespace czt;

TEST_CASE("double integrator matrices at the nominal sampling period") {
  RcScenario sc = double_integrator();
  const Mat& A = sc.A.front();
  const Mat& B = sc.B.front();
  CHECK(A(0, 0) == doctest::Approx(1.0));
  CHECK(A(0, 1) == doctest::Approx(0.1));
  CHECK(A(1, 0) == doctest::Approx(0.0));
  CHECK(A(1, 1) == doctest::Approx(1.0));
  CHECK(B(0, 0) == doctest::Approx(0.005));
  CHECK(B(1, 0) == doctest::Approx(0.1));
  sc.validate();
}

TEST_CASE("degenerate sampling period still yields a well-formed scenario") {
  DoubleIntegratorOptions opt;
  opt.dt = 0.0;
  RcScenario sc = double_integrator(opt);
  CHECK((sc.A.front() - Mat::Identity(2, 2)).norm() == 0.0);
  CHECK(sc.B.front().norm() == 0.0);
  sc.validate();
}

TEST_CASE("axis-box cover of the disturbance") {
  DoubleIntegratorOptions opt;
  opt.w_shape = DisturbanceShape::Ellipsoid;
  opt.w_zono_outer = true;
  RcScenario sc = double_integrator(opt);
  const SymmetricSet& W = sc.W.front();
  CHECK(W.kind == SymmetricSet::Kind::Zonotope);
  CHECK(W.G(0, 0) == doctest::Approx(0.2));
  CHECK(W.G(1, 1) == doctest::Approx(0.04));
  CHECK(W.G(0, 1) == doctest::Approx(0.0));
  CHECK(W.c(0) == doctest::Approx(0.1));

  // covering property along random directions
  DoubleIntegratorOptions base = opt;
  base.w_zono_outer = false;
  SymmetricSet E = double_integrator(base).W.front();
  for (int j = 0; j < 32; ++j) {
    double th = 2.0 * M_PI * j / 32;
    Vec nu(2);
    nu << std::cos(th), std::sin(th);
    CHECK(support_symmetric(W, nu) >= support_symmetric(E, nu) - 1e-12);
  }
}

TEST_CASE("stable planar system") {
  RcScenario sc = stable_2d_system();
  CHECK(sc.horizon == 100);
  CHECK(sc.variant == RcScenario::Variant::InvertibleA);
  const Mat& A = sc.A.front();
  double det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  CHECK(det == doctest::Approx(0.9831));
  sc.validate();

  // its state constraints are an unbounded polyhedron: the square-stack
  // conversion must refuse them
  CHECK_THROWS_AS(invertible_from_hpoly(sc.X_hrep.front()), UnboundedError);
}

TEST_CASE("zero-order hold reproduces the double integrator closed form") {
  Mat Ac(2, 2), Bc(2, 1);
  Ac << 0, 1, 0, 0;
  Bc << 0, 1;
  for (double dt : {0.05, 0.1, 0.7}) {
    ZohResult z = zoh_discretize(Ac, Bc, dt);
    CHECK(std::abs(z.Ad(0, 1) - dt) < 1e-12);
    CHECK(std::abs(z.Ad(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(z.Bd(0, 0) - dt * dt / 2.0) < 1e-12);
    CHECK(std::abs(z.Bd(1, 0) - dt) < 1e-12);
  }
}

TEST_CASE("chain coupling and stiffness symmetry") {
  ChainOptions opt;
  opt.num_masses = 2;
  RcScenario sc = spring_mass_chain(opt);
  CHECK(sc.state_dim() == 4);

  // rebuild the continuous matrix to inspect coupling: k/m = 1.0
  Mat Ac = Mat::Zero(4, 4);
  Ac.topRightCorner(2, 2) = Mat::Identity(2, 2);
  Mat S(2, 2);
  S << -2.0, 1.0, 1.0, -2.0;
  Ac.bottomLeftCorner(2, 2) = S;
  Ac.bottomRightCorner(2, 2) = -0.1 * Mat::Identity(2, 2);
  ZohResult z = zoh_discretize(Ac, (Mat(4, 2) << Mat::Zero(2, 2), Mat::Identity(2, 2)).finished(),
                               opt.dt);
  CHECK((sc.A.front() - z.Ad).norm() < 1e-12);
  CHECK((sc.B.front() - z.Bd).norm() < 1e-12);

  // symmetric stiffness coupling for a longer chain
  ChainOptions big;
  big.num_masses = 6;
  RcScenario sc6 = spring_mass_chain(big);
  sc6.validate();
  Mat S6 = Mat::Zero(6, 6);
  for (int j = 0; j < 6; ++j) {
    S6(j, j) = -2.0;
    if (j > 0) S6(j, j - 1) = 1.0;
    if (j + 1 < 6) S6(j, j + 1) = 1.0;
  }
  CHECK((S6 - S6.transpose()).norm() == 0.0);
  Mat Ac6 = Mat::Zero(12, 12);
  Ac6.topRightCorner(6, 6) = Mat::Identity(6, 6);
  Ac6.bottomLeftCorner(6, 6) = S6;
  Ac6.bottomRightCorner(6, 6) = -0.1 * Mat::Identity(6, 6);
  ZohResult z6 = zoh_discretize(
      Ac6, (Mat(12, 6) << Mat::Zero(6, 6), Mat::Identity(6, 6)).finished(), big.dt);
  CHECK((sc6.A.front() - z6.Ad).norm() < 1e-12);
  CHECK((sc6.F.front() - z6.Bd).norm() < 1e-12);
}

TEST_CASE("uncoupled chain stays block diagonal through discretization") {
  ChainOptions opt;
  opt.num_masses = 3;
  opt.stiffness = 0.0;
  RcScenario sc = spring_mass_chain(opt);
  const Mat& Ad = sc.A.front();
  const int nm = 3;
  // positions couple only to their own velocities when springs vanish
  for (int i = 0; i < nm; ++i)
    for (int j = 0; j < nm; ++j)
      if (i != j) {
        CHECK(std::abs(Ad(i, j)) < 1e-14);
        CHECK(std::abs(Ad(i, nm + j)) < 1e-14);
        CHECK(std::abs(Ad(nm + i, nm + j)) < 1e-14);
        CHECK(std::abs(Ad(nm + i, j)) < 1e-14);
      }
}

TEST_CASE("chain scenario dimensions are consistent") {
  ChainOptions opt;
  opt.num_masses = 4;
  opt.goal_rep = GoalRep::Zonotope;
  RcScenario sc = spring_mass_chain(opt);
  sc.validate();
  CHECK(sc.goal.num_constraints() == 0);

  opt.goal_rep = GoalRep::SquareStack;
  RcScenario sc2 = spring_mass_chain(opt);
  CHECK(sc2.goal.num_constraints() == 4 * opt.num_masses);
  CHECK(is_invertible_rep(sc2.goal));

  CHECK_THROWS_AS(spring_mass_chain(ChainOptions{.num_masses = 1}), DimensionError);
}
