#ifndef CZT_LP_HPP
#define CZT_LP_HPP

#include "czt/types.hpp"

#include <limits>
#include <memory>

namespace czt {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// max objective' x  s.t.  eq_lhs x = eq_rhs,  ineq_lhs x <= ineq_rhs,
// lower <= x <= upper (entries may be +-inf).
struct LpProblem {
  Vec objective;
  Mat eq_lhs;
  Vec eq_rhs;
  Mat ineq_lhs;
  Vec ineq_rhs;
  Vec lower;
  Vec upper;

  static LpProblem maximize(const Vec& c) {
    LpProblem p;
    p.objective = c;
    p.eq_lhs = Mat(0, c.size());
    p.eq_rhs = Vec(0);
    p.ineq_lhs = Mat(0, c.size());
    p.ineq_rhs = Vec(0);
    p.lower = Vec::Constant(c.size(), -kInf);
    p.upper = Vec::Constant(c.size(), kInf);
    return p;
  }

  Eigen::Index num_vars() const { return objective.size(); }

  void validate() const {
    Eigen::Index n = num_vars();
    if (eq_lhs.cols() != n && eq_lhs.rows() > 0) throw DimensionError("LpProblem: eq_lhs cols");
    if (eq_rhs.size() != eq_lhs.rows()) throw DimensionError("LpProblem: eq_rhs size");
    if (ineq_lhs.cols() != n && ineq_lhs.rows() > 0) throw DimensionError("LpProblem: ineq_lhs cols");
    if (ineq_rhs.size() != ineq_lhs.rows()) throw DimensionError("LpProblem: ineq_rhs size");
    if (lower.size() != n || upper.size() != n) throw DimensionError("LpProblem: bound sizes");
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Vec point;

  bool optimal() const { return status == LpStatus::Optimal; }
};

// Dense bounded-variable primal simplex (phase 1 on artificials, Dantzig
// pricing with a Bland fallback against cycling). Throws NumericalError when
// the basis cannot be kept numerically sound.
LpOutcome lp_solve(const LpProblem& p);

// Reusable solver over a fixed feasible region: repeated objective changes
// re-optimize from the previous basis and skip phase 1 entirely. The workhorse
// behind support-function sweeps.
class LpSolver {
 public:
  explicit LpSolver(const LpProblem& p);
  LpSolver(LpSolver&&) noexcept;
  LpSolver& operator=(LpSolver&&) noexcept;
  ~LpSolver();

  LpOutcome solve();
  LpOutcome solve_with_objective(const Vec& objective);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace czt

#endif  // CZT_LP_HPP
