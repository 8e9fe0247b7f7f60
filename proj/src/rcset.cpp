#include "czt/rcset.hpp"

#include "czt/sets.hpp"

#include <Eigen/LU>

#include <chrono>

namespace czt {

namespace {

// Factor-space interior radius check (debug aid): max r with A xi = b and
// |xi|_inf <= 1 - r. A vanishing radius flags a degenerate intermediate set.
void check_interior(const ConstrainedZonotope& C, int t) {
  const Eigen::Index N = C.num_generators();
  Vec obj = Vec::Zero(N + 1);
  obj(N) = 1.0;
  LpProblem p = LpProblem::maximize(obj);
  p.eq_lhs = Mat::Zero(C.num_constraints(), N + 1);
  p.eq_lhs.leftCols(N) = C.dense_A();
  p.eq_rhs = C.b;
  p.ineq_lhs = Mat::Zero(2 * N, N + 1);
  p.ineq_lhs.topLeftCorner(N, N) = Mat::Identity(N, N);
  p.ineq_lhs.bottomLeftCorner(N, N) = -Mat::Identity(N, N);
  p.ineq_lhs.col(N).setConstant(1.0);
  p.ineq_rhs = Vec::Ones(2 * N);
  p.lower = Vec::Constant(N + 1, -1.0);
  p.lower(N) = 0.0;
  p.upper = Vec::Constant(N + 1, 1.0);
  LpOutcome out = lp_solve(p);
  if (!out.optimal() || out.value < 1e-10)
    throw NotFullDimensionalError("rc_recursion: intermediate set at t=" + std::to_string(t) +
                                  " has no factor-space interior");
}

}  // namespace

void RcScenario::validate() const {
  if (horizon < 0) throw DimensionError("RcScenario: negative horizon");
  if (A.empty() || B.empty() || F.empty() || U.empty() || W.empty())
    throw DimensionError("RcScenario: missing system data");
  const Eigen::Index n = state_dim();
  auto check_count = [&](size_t sz, const char* what) {
    if (sz != 1 && sz != static_cast<size_t>(horizon) && !(horizon == 0 && sz <= 1))
      throw DimensionError(std::string("RcScenario: ") + what + " count must be 1 or T");
  };
  check_count(A.size(), "A");
  check_count(B.size(), "B");
  check_count(F.size(), "F");
  check_count(U.size(), "U");
  check_count(W.size(), "W");
  if (variant == Variant::InvertibleA || !X_hrep.empty()) check_count(X_hrep.size(), "X");
  if (variant == Variant::PolytopicX) check_count(X_cz.size(), "X (converted)");
  for (int t = 0; t < std::max(1, horizon); ++t) {
    const Mat& At = at(A, horizon == 0 ? 0 : std::min(t, horizon - 1));
    const Mat& Bt = at(B, horizon == 0 ? 0 : std::min(t, horizon - 1));
    const Mat& Ft = at(F, horizon == 0 ? 0 : std::min(t, horizon - 1));
    if (At.rows() != n || At.cols() != n) throw DimensionError("RcScenario: A must be n x n");
    if (Bt.rows() != n) throw DimensionError("RcScenario: B rows != n");
    if (Ft.rows() != n) throw DimensionError("RcScenario: F rows != n");
    if (at(U, 0).dim() != Bt.cols()) throw DimensionError("RcScenario: U dim != B cols");
    if (at(W, 0).dim() != Ft.cols()) throw DimensionError("RcScenario: W dim != F cols");
    if (horizon == 0) break;
  }
  if (variant == Variant::PolytopicX) {
    if (X_cz.empty()) throw DimensionError("RcScenario: PolytopicX requires converted X");
    for (const auto& X : X_cz)
      if (X.dim() != n) throw DimensionError("RcScenario: X dim != n");
  } else {
    if (X_hrep.empty()) throw DimensionError("RcScenario: InvertibleA requires H-Rep X");
    for (const auto& X : X_hrep)
      if (X.dim() != n) throw DimensionError("RcScenario: X dim != n");
  }
}

RcResult rc_recursion(const RcScenario& sc, const RcOptions& options) {
  sc.validate();
  const int T = sc.horizon;
  RcResult res;
  res.sets.resize(static_cast<size_t>(T) + 1);
  res.complexities.resize(static_cast<size_t>(T) + 1);
  res.step_seconds.assign(static_cast<size_t>(T) + 1, 0.0);
  res.empty.assign(static_cast<size_t>(T) + 1, false);

  res.sets[static_cast<size_t>(T)] = sc.goal;
  res.complexities[static_cast<size_t>(T)] = repr_complexity(sc.goal);
  res.empty[static_cast<size_t>(T)] = sc.goal.is_canonical_empty();

  for (int t = T - 1; t >= 0; --t) {
    const size_t st = static_cast<size_t>(t);
    const ConstrainedZonotope& K_next = res.sets[st + 1];
    if (res.empty[st + 1]) {
      res.sets[st] = ConstrainedZonotope::empty_set(sc.state_dim());
      res.complexities[st] = repr_complexity(res.sets[st]);
      res.empty[st] = true;
      continue;
    }

    auto t0 = std::chrono::steady_clock::now();
    const Mat& At = RcScenario::at(sc.A, t);
    const Mat& Bt = RcScenario::at(sc.B, t);
    const Mat& Ft = RcScenario::at(sc.F, t);
    SymmetricSet FW = map_symmetric(Ft, RcScenario::at(sc.W, t));

    ConstrainedZonotope eroded;
    switch (options.method) {
      case PdiffMethod::Inner:
        eroded = inner_pdiff(K_next, FW);
        break;
      case PdiffMethod::Outer:
        eroded = outer_pdiff(K_next, FW, options.outer);
        break;
      case PdiffMethod::TwoStage:
        eroded = two_stage_inner_pdiff(K_next, FW);
        break;
    }

    ConstrainedZonotope K_t;
    if (eroded.is_canonical_empty()) {
      K_t = eroded;
    } else {
      ConstrainedZonotope reach = minkowski_sum(eroded, affine_map(-Bt, RcScenario::at(sc.U, t)));
      if (sc.variant == RcScenario::Variant::InvertibleA) {
        Eigen::PartialPivLU<Mat> lu(At);
        if (lu.rcond() < 1e-12)
          throw NotInvertibleError("rc_recursion: A_t is numerically singular at t=" +
                                   std::to_string(t));
        ConstrainedZonotope pre = affine_map(lu.inverse(), reach);
        K_t = intersect_hpoly(pre, RcScenario::at(sc.X_hrep, t));
      } else {
        K_t = intersect_inverse_affine(RcScenario::at(sc.X_cz, t), At, reach);
      }
      if (options.check_full_dimensional && !is_empty(K_t)) check_interior(K_t, t);
    }
    auto t1 = std::chrono::steady_clock::now();

    res.step_seconds[st] = std::chrono::duration<double>(t1 - t0).count();
    res.empty[st] = K_t.is_canonical_empty();
    res.complexities[st] = repr_complexity(K_t);
    res.sets[st] = std::move(K_t);
  }
  return res;
}

ReprComplexity predicted_complexity(const RcScenario& sc) {
  sc.validate();
  const long n = static_cast<long>(sc.state_dim());
  long M = sc.goal.num_constraints();
  long dof_num = static_cast<long>(sc.goal.num_generators()) - M;
  for (int t = 0; t < sc.horizon; ++t) {
    const auto& Ut = RcScenario::at(sc.U, t);
    M += Ut.num_constraints();
    dof_num += static_cast<long>(Ut.num_generators()) - Ut.num_constraints();
    if (sc.variant == RcScenario::Variant::InvertibleA) {
      M += RcScenario::at(sc.X_hrep, t).num_rows();
    } else {
      const auto& Xt = RcScenario::at(sc.X_cz, t);
      M += Xt.num_constraints() + n;
      dof_num += static_cast<long>(Xt.num_generators()) - Xt.num_constraints() - n;
    }
  }
  return ReprComplexity(M, dof_num, n);
}

}  // namespace czt
