#include "czt/sets.hpp"

#include <cmath>

namespace czt {

namespace {

// Factor-box LP skeleton: variables xi in [-1,1]^N with A xi = b.
LpProblem factor_problem(const ConstrainedZonotope& C, const Vec& objective) {
  LpProblem p = LpProblem::maximize(objective);
  p.eq_lhs = C.dense_A();
  p.eq_rhs = C.b;
  p.lower = Vec::Constant(C.num_generators(), -1.0);
  p.upper = Vec::Constant(C.num_generators(), 1.0);
  return p;
}

}  // namespace

std::optional<SupportResult> support_czono(const ConstrainedZonotope& C, const Vec& nu) {
  SupportOracle oracle(C);
  return oracle.query(nu);
}

SupportOracle::SupportOracle(const ConstrainedZonotope& C) : C_(&C) {
  if (C.is_canonical_empty()) {
    trivially_empty_ = true;
    return;
  }
  if (C.num_generators() == 0) {
    trivially_empty_ = C.b.size() > 0 && C.b.lpNorm<Eigen::Infinity>() > 1e-12;
    return;
  }
  solver_.emplace(factor_problem(C, Vec::Zero(C.num_generators())));
}

std::optional<SupportResult> SupportOracle::query(const Vec& nu) {
  const ConstrainedZonotope& C = *C_;
  if (nu.size() != C.dim()) throw DimensionError("support_czono: direction size");
  if (trivially_empty_) return std::nullopt;
  if (!solver_) return SupportResult{nu.dot(C.c), C.c};
  LpOutcome out = solver_->solve_with_objective(C.G.transpose() * nu);
  if (out.status == LpStatus::Infeasible) return std::nullopt;
  if (out.status != LpStatus::Optimal) throw NumericalError("support_czono: LP did not converge");
  return SupportResult{nu.dot(C.c) + out.value, C.c + C.G * out.point};
}

bool membership_czono(const ConstrainedZonotope& C, const Vec& x, double tol) {
  if (x.size() != C.dim()) throw DimensionError("membership_czono: point size");
  if (C.is_canonical_empty()) return false;
  const Eigen::Index N = C.num_generators();
  const Eigen::Index n = C.dim();
  if (N == 0) {
    if (C.b.size() > 0 && C.b.lpNorm<Eigen::Infinity>() > 1e-12) return false;
    return (C.c - x).lpNorm<Eigen::Infinity>() <= tol;
  }
  // min t  s.t.  |G xi + c - x|_inf <= t, A xi = b, |xi|_inf <= 1
  Vec obj = Vec::Zero(N + 1);
  obj(N) = -1.0;
  LpProblem p = LpProblem::maximize(obj);
  p.eq_lhs = Mat::Zero(C.num_constraints(), N + 1);
  p.eq_lhs.leftCols(N) = C.dense_A();
  p.eq_rhs = C.b;
  p.ineq_lhs = Mat::Zero(2 * n, N + 1);
  p.ineq_lhs.topLeftCorner(n, N) = C.G;
  p.ineq_lhs.bottomLeftCorner(n, N) = -C.G;
  p.ineq_lhs.col(N).setConstant(-1.0);
  p.ineq_rhs.resize(2 * n);
  p.ineq_rhs << x - C.c, C.c - x;
  p.lower = Vec::Constant(N + 1, -1.0);
  p.lower(N) = 0.0;
  p.upper = Vec::Constant(N + 1, kInf);
  p.upper.head(N).setConstant(1.0);
  LpOutcome out = lp_solve(p);
  if (out.status == LpStatus::Infeasible) return false;
  if (out.status != LpStatus::Optimal) throw NumericalError("membership_czono: LP did not converge");
  return -out.value <= tol;
}

bool is_empty(const ConstrainedZonotope& C) {
  if (C.is_canonical_empty()) return true;
  if (C.num_constraints() == 0) return false;
  if (C.num_generators() == 0) return C.b.lpNorm<Eigen::Infinity>() > 1e-12;
  LpOutcome out = lp_solve(factor_problem(C, Vec::Zero(C.num_generators())));
  return out.status == LpStatus::Infeasible;
}

std::optional<std::vector<Eigen::Vector2d>> boundary_sample(const ConstrainedZonotope& C,
                                                            int num_directions) {
  if (C.dim() != 2) throw DimensionError("boundary_sample: set must be 2-D");
  SupportOracle oracle(C);
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(static_cast<size_t>(num_directions));
  for (int j = 0; j < num_directions; ++j) {
    double theta = 2.0 * M_PI * j / num_directions;
    Vec nu(2);
    nu << std::cos(theta), std::sin(theta);
    auto sup = oracle.query(nu);
    if (!sup) return std::nullopt;
    pts.emplace_back(sup->point(0), sup->point(1));
  }
  return pts;
}

std::optional<double> support_hpoly(const HPolyhedron& P, const Vec& nu) {
  if (nu.size() != P.dim()) throw DimensionError("support_hpoly: direction size");
  // Dual form min k'y s.t. H'y = nu, y >= 0: its basis has n rows instead of
  // one per halfspace.
  LpProblem dual = LpProblem::maximize(-P.k);
  dual.eq_lhs = P.H.transpose();
  dual.eq_rhs = nu;
  dual.lower = Vec::Zero(P.num_rows());
  dual.upper = Vec::Constant(P.num_rows(), kInf);
  LpOutcome out = lp_solve(dual);
  if (out.status == LpStatus::Optimal) return -out.value;
  if (out.status == LpStatus::Unbounded) return std::nullopt;  // primal empty
  // Dual infeasible: the primal is unbounded or empty; the primal form
  // distinguishes the two.
  LpProblem primal = LpProblem::maximize(nu);
  primal.ineq_lhs = P.H;
  primal.ineq_rhs = P.k;
  LpOutcome pout = lp_solve(primal);
  if (pout.status == LpStatus::Infeasible) return std::nullopt;
  if (pout.status == LpStatus::Unbounded)
    throw UnboundedError("support_hpoly: polyhedron unbounded in requested direction");
  return pout.value;
}

}  // namespace czt
