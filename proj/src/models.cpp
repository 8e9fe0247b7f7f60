#include "czt/models.hpp"

#include "czt/czops.hpp"
#include "czt/linalg.hpp"

namespace czt {

ZohResult zoh_discretize(const Mat& Ac, const Mat& Bc, double dt) {
  if (Ac.rows() != Ac.cols()) throw DimensionError("zoh_discretize: Ac must be square");
  if (Bc.rows() != Ac.rows()) throw DimensionError("zoh_discretize: Bc rows != Ac rows");
  const Eigen::Index n = Ac.rows(), m = Bc.cols();
  Mat aug = Mat::Zero(n + m, n + m);
  aug.topLeftCorner(n, n) = Ac;
  aug.topRightCorner(n, m) = Bc;
  Mat E = expm(aug * dt);
  return ZohResult{E.topLeftCorner(n, n), E.topRightCorner(n, m)};
}

SymmetricSet zono_outer_box(const SymmetricSet& S) {
  Vec half(S.dim());
  for (Eigen::Index i = 0; i < S.dim(); ++i) {
    Vec e = Vec::Zero(S.dim());
    e(i) = 1.0;
    half(i) = support_symmetric_centered(S, e);
  }
  return SymmetricSet::zonotope(Mat(half.asDiagonal()), S.c);
}

namespace {

ConstrainedZonotope interval_input(double half_width, Eigen::Index m) {
  ConstrainedZonotope U =
      ConstrainedZonotope::interval_box(Vec::Constant(m, -half_width), Vec::Constant(m, half_width));
  U.set_minrow_verified(true);
  return U;
}

}  // namespace

RcScenario double_integrator(const DoubleIntegratorOptions& options) {
  if (options.dt < 0.0) throw DimensionError("double_integrator: negative sampling period");
  const double dt = options.dt;
  RcScenario sc;
  sc.variant = RcScenario::Variant::PolytopicX;
  sc.horizon = options.horizon;
  Mat A(2, 2), B(2, 1);
  A << 1.0, dt, 0.0, 1.0;
  B << dt * dt / 2.0, dt;
  sc.A = {A};
  sc.B = {B};
  sc.F = {Mat::Identity(2, 2)};
  sc.U = {interval_input(2.0, 1)};

  SymmetricSet W;
  switch (options.w_shape) {
    case DisturbanceShape::Ball:
      W = SymmetricSet::ellipsoid(0.1 * Mat::Identity(2, 2), Vec::Zero(2));
      break;
    case DisturbanceShape::Ellipsoid: {
      Vec semi(2);
      semi << 0.2, 0.04;
      Vec cw(2);
      cw << 0.1, 0.1;
      W = SymmetricSet::ellipsoid(Mat(semi.asDiagonal()), cw);
      break;
    }
    case DisturbanceShape::Box:
      W = SymmetricSet::zonotope(0.1 * Mat::Identity(2, 2), Vec::Zero(2));
      break;
  }
  if (options.w_zono_outer) W = zono_outer_box(W);
  sc.W = {W};

  Vec lo(2), hi(2);
  lo << -2.0, -3.0;
  hi << 2.0, 3.0;
  HPolyhedron Xbox = HPolyhedron::box(lo, hi);
  sc.X_hrep = {Xbox};
  sc.X_cz = {invertible_from_hpoly(Xbox)};

  ConstrainedZonotope goal = ConstrainedZonotope::interval_box(lo, hi);
  goal.set_minrow_verified(true);
  sc.goal = goal;
  return sc;
}

RcScenario stable_2d_system(int horizon) {
  RcScenario sc;
  sc.variant = RcScenario::Variant::InvertibleA;
  sc.horizon = horizon;
  Mat A(2, 2), B(2, 1);
  A << 0.99, 0.02, -0.15, 0.99;
  B << -0.01, 0.08;
  sc.A = {A};
  sc.B = {B};
  sc.F = {Mat::Identity(2, 2)};
  sc.U = {interval_input(1.5, 1)};
  sc.W = {SymmetricSet::zonotope(0.01 * Mat::Identity(2, 2), Vec::Zero(2))};

  Mat Hx(2, 2);
  Hx << -1.0, 0.0, 2.0, 1.0;
  Vec kx(2);
  kx << 2.0, 5.0;
  sc.X_hrep = {HPolyhedron(Hx, kx, false)};

  Vec cg(2);
  cg << 1.5, 0.0;
  ConstrainedZonotope goal(0.5 * Mat::Identity(2, 2), cg);
  goal.set_minrow_verified(true);
  sc.goal = goal;
  return sc;
}

RcScenario spring_mass_chain(const ChainOptions& options) {
  const int nm = options.num_masses;
  if (nm < 2) throw DimensionError("spring_mass_chain: need at least two masses");
  const Eigen::Index n = 2 * nm;
  const double km = options.stiffness / options.mass;
  const double mum = options.damping / options.mass;

  Mat S = Mat::Zero(nm, nm);
  for (int j = 0; j < nm; ++j) {
    S(j, j) = -2.0 * km;
    if (j > 0) S(j, j - 1) = km;
    if (j + 1 < nm) S(j, j + 1) = km;
  }
  Mat Ac = Mat::Zero(n, n);
  Ac.topRightCorner(nm, nm) = Mat::Identity(nm, nm);
  Ac.bottomLeftCorner(nm, nm) = S;
  Ac.bottomRightCorner(nm, nm) = -mum * Mat::Identity(nm, nm);
  Mat Bc = Mat::Zero(n, nm);
  Bc.bottomRows(nm) = Mat::Identity(nm, nm);

  ZohResult zoh = zoh_discretize(Ac, Bc, options.dt);

  RcScenario sc;
  sc.variant = RcScenario::Variant::PolytopicX;
  sc.horizon = options.horizon;
  sc.A = {zoh.Ad};
  sc.B = {zoh.Bd};
  sc.F = {zoh.Bd};
  sc.U = {interval_input(0.1, nm)};
  if (options.w_shape == DisturbanceShape::Ellipsoid)
    sc.W = {SymmetricSet::ellipsoid(1e-4 * Mat::Identity(nm, nm), Vec::Zero(nm))};
  else
    sc.W = {SymmetricSet::zonotope(1e-4 * Mat::Identity(nm, nm), Vec::Zero(nm))};

  Vec lo(n), hi(n);
  lo.head(nm).setConstant(-0.2);
  lo.tail(nm).setConstant(-0.5);
  hi = -lo;
  HPolyhedron Xbox = HPolyhedron::box(lo, hi);
  sc.X_hrep = {Xbox};
  sc.X_cz = {invertible_from_hpoly(Xbox)};

  if (options.goal_rep == GoalRep::SquareStack) {
    sc.goal = sc.X_cz.front();
  } else {
    ConstrainedZonotope goal = ConstrainedZonotope::interval_box(lo, hi);
    goal.set_minrow_verified(true);
    sc.goal = goal;
  }
  return sc;
}

}  // namespace czt
