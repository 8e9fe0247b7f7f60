#include "czt/lp.hpp"

#include <Eigen/LU>

#include <memory>

#include <algorithm>
#include <cmath>
#include <vector>

namespace czt {

namespace {

enum VarState : unsigned char { kAtLower, kAtUpper, kBasic };

// Standard computational form: max c'y, As y = bs, 0 <= y <= ub (ub may be
// inf). Original variables are recovered through an affine per-variable map,
// with free variables split into positive/negative parts.
struct StandardForm {
  Mat As;
  Vec bs;
  Vec cs;
  Vec ub;
  double obj_offset = 0.0;
  // x_j = sign * y[idx] + shift, or y[idx] - y[idx2] when split.
  struct BackMap {
    Eigen::Index idx = -1;
    Eigen::Index idx2 = -1;
    double sign = 1.0;
    double shift = 0.0;
  };
  std::vector<BackMap> back;
  Eigen::Index num_eq = 0;
  bool trivially_infeasible = false;
};

StandardForm build_standard_form(const LpProblem& p) {
  StandardForm sf;
  const Eigen::Index n0 = p.num_vars();
  const Eigen::Index me = p.eq_lhs.rows();
  const Eigen::Index mi = p.ineq_lhs.rows();
  sf.num_eq = me;

  std::vector<Eigen::Index> col_of(n0);
  std::vector<Eigen::Index> col2_of(n0, -1);
  Eigen::Index ny = 0;
  for (Eigen::Index j = 0; j < n0; ++j) {
    col_of[j] = ny++;
    if (!std::isfinite(p.lower(j)) && !std::isfinite(p.upper(j))) col2_of[j] = ny++;
  }
  const Eigen::Index n_struct = ny + mi;  // slacks appended

  sf.As = Mat::Zero(me + mi, n_struct);
  sf.bs = Vec(me + mi);
  sf.cs = Vec::Zero(n_struct);
  sf.ub = Vec::Constant(n_struct, kInf);
  sf.back.resize(n0);

  for (Eigen::Index j = 0; j < n0; ++j) {
    double lo = p.lower(j), hi = p.upper(j);
    StandardForm::BackMap bm;
    bm.idx = col_of[j];
    if (std::isfinite(lo)) {
      bm.sign = 1.0;
      bm.shift = lo;
      if (std::isfinite(hi)) {
        if (hi < lo) sf.trivially_infeasible = true;
        sf.ub(bm.idx) = hi - lo;
      }
    } else if (std::isfinite(hi)) {
      bm.sign = -1.0;
      bm.shift = hi;
    } else {
      bm.idx2 = col2_of[j];
    }
    sf.back[j] = bm;
  }

  auto fill_rows = [&](const Mat& L, const Vec& r, Eigen::Index row0) {
    for (Eigen::Index i = 0; i < L.rows(); ++i) {
      double rhs = r(i);
      for (Eigen::Index j = 0; j < n0; ++j) {
        double a = L(i, j);
        if (a == 0.0) continue;
        const auto& bm = sf.back[j];
        if (bm.idx2 >= 0) {
          sf.As(row0 + i, bm.idx) += a;
          sf.As(row0 + i, bm.idx2) -= a;
        } else {
          sf.As(row0 + i, bm.idx) += a * bm.sign;
          rhs -= a * bm.shift;
        }
      }
      sf.bs(row0 + i) = rhs;
    }
  };
  fill_rows(p.eq_lhs, p.eq_rhs, 0);
  fill_rows(p.ineq_lhs, p.ineq_rhs, me);
  for (Eigen::Index i = 0; i < mi; ++i) sf.As(me + i, ny + i) = 1.0;

  return sf;
}

void set_objective(StandardForm& sf, const Vec& objective) {
  sf.cs.setZero();
  sf.obj_offset = 0.0;
  for (size_t j = 0; j < sf.back.size(); ++j) {
    double cj = objective(static_cast<Eigen::Index>(j));
    if (cj == 0.0) continue;
    const auto& bm = sf.back[j];
    if (bm.idx2 >= 0) {
      sf.cs(bm.idx) += cj;
      sf.cs(bm.idx2) -= cj;
    } else {
      sf.cs(bm.idx) += cj * bm.sign;
      sf.obj_offset += cj * bm.shift;
    }
  }
}

class Simplex {
 public:
  explicit Simplex(const StandardForm& sf)
      : As_(sf.As), bs_(sf.bs), ub_(sf.ub), m_(sf.As.rows()), ns_(sf.As.cols()) {
    feas_tol_ = 1e-9 * (1.0 + bs_.lpNorm<Eigen::Infinity>());
    // Initial basis: slack for inequality rows with nonnegative rhs,
    // artificial otherwise.
    basis_.resize(m_);
    state_.assign(static_cast<size_t>(ns_ + m_), kAtLower);
    art_sign_ = Vec::Ones(m_);
    Binv_ = Mat::Identity(m_, m_);
    xB_ = Vec::Zero(m_);
    has_artificial_ = false;
    for (Eigen::Index i = 0; i < m_; ++i) {
      bool slack_ok = i >= sf.num_eq && bs_(i) >= 0.0;
      Eigen::Index slack_col = ns_ - (m_ - sf.num_eq) + (i - sf.num_eq);
      if (slack_ok && ub_(slack_col) == kInf) {
        basis_[i] = slack_col;
        xB_(i) = bs_(i);
      } else {
        basis_[i] = ns_ + i;
        art_sign_(i) = bs_(i) >= 0.0 ? 1.0 : -1.0;
        Binv_(i, i) = art_sign_(i);
        xB_(i) = std::abs(bs_(i));
        has_artificial_ = true;
      }
      state_[static_cast<size_t>(basis_[i])] = kBasic;
    }
    art_allowed_ = true;
  }

  // Returns false when phase 1 proves infeasibility.
  bool run_phase1() {
    if (!has_artificial_) return true;
    Vec c = Vec::Zero(ns_ + m_);
    c.tail(m_).setConstant(-1.0);
    iterate(c);
    double infeas = 0.0;
    for (Eigen::Index i = 0; i < m_; ++i)
      if (basis_[i] >= ns_) infeas += xB_(i);
    if (infeas > 10.0 * feas_tol_) return false;
    // Pivot artificials out of the basis where a structural column can take
    // their place; rows with no candidate are redundant and keep a pinned
    // artificial at value zero.
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < ns_) continue;
      Eigen::Index enter = -1;
      Vec row = Binv_.row(i) * As_;
      double best = 1e-7;
      for (Eigen::Index j = 0; j < ns_; ++j) {
        if (state_[static_cast<size_t>(j)] == kBasic) continue;
        if (std::abs(row(j)) > best) {
          best = std::abs(row(j));
          enter = j;
        }
      }
      if (enter >= 0) degenerate_replace(i, enter);
    }
    art_allowed_ = false;
    return true;
  }

  // Returns false on unboundedness.
  bool run_phase2(const Vec& cs) {
    Vec c = Vec::Zero(ns_ + m_);
    c.head(ns_) = cs;
    return iterate(c);
  }

  Vec solution() {
    // Rebuild basic values from a fresh factorization and verify feasibility
    // before reporting anything.
    refactorize();
    double tol = 1e-6 * (1.0 + bs_.lpNorm<Eigen::Infinity>());
    for (Eigen::Index i = 0; i < m_; ++i) {
      double ui = upper_of(basis_[i]);
      if (xB_(i) < -tol || (std::isfinite(ui) && xB_(i) > ui + tol))
        throw NumericalError("lp_solve: basic solution escaped its bounds");
      if (basis_[i] >= ns_ && xB_(i) > tol)
        throw NumericalError("lp_solve: artificial variable left positive");
    }
    Vec y = Vec::Zero(ns_);
    for (Eigen::Index j = 0; j < ns_; ++j)
      if (state_[static_cast<size_t>(j)] == kAtUpper) y(j) = ub_(j);
    for (Eigen::Index i = 0; i < m_; ++i)
      if (basis_[i] < ns_) y(basis_[i]) = std::max(0.0, xB_(i));
    return y;
  }

 private:
  Vec column(Eigen::Index j) const {
    if (j < ns_) return As_.col(j);
    Vec e = Vec::Zero(m_);
    e(j - ns_) = art_sign_(j - ns_);
    return e;
  }

  double upper_of(Eigen::Index j) const {
    if (j < ns_) return ub_(j);
    return art_allowed_ ? kInf : 0.0;
  }

  // Degenerate basis swap used to drive artificials out: membership changes,
  // values do not, so the entering variable keeps the value of the bound it
  // rested at.
  void degenerate_replace(Eigen::Index row, Eigen::Index enter) {
    Vec w = Binv_ * column(enter);
    if (std::abs(w(row)) < 1e-9) return;
    double v_enter = state_[static_cast<size_t>(enter)] == kAtUpper ? ub_(enter) : 0.0;
    apply_pivot(row, enter, w, kAtLower);
    xB_(row) = v_enter;
  }

  // The leaving variable's rest state must be recorded before any
  // refactorization, which rebuilds basic values from variable states.
  void apply_pivot(Eigen::Index row, Eigen::Index enter, const Vec& w, VarState leave_state) {
    Eigen::Index leave = basis_[row];
    state_[static_cast<size_t>(leave)] = leave_state;
    double piv = w(row);
    Binv_.row(row) /= piv;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (i == row) continue;
      double f = w(i);
      if (f != 0.0) Binv_.row(i) -= f * Binv_.row(row);
    }
    basis_[row] = enter;
    state_[static_cast<size_t>(enter)] = kBasic;
    if (++pivots_since_refactor_ >= 128) refactorize();
  }

  void refactorize() {
    pivots_since_refactor_ = 0;
    Mat B(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i) B.col(i) = column(basis_[i]);
    Eigen::PartialPivLU<Mat> lu(B);
    Mat Binv_new = lu.inverse();
    if (!Binv_new.allFinite()) throw NumericalError("lp_solve: singular basis on refactorization");
    Binv_ = Binv_new;
    Vec rhs = bs_;
    for (Eigen::Index j = 0; j < ns_; ++j)
      if (state_[static_cast<size_t>(j)] == kAtUpper) rhs -= As_.col(j) * ub_(j);
    xB_ = Binv_ * rhs;
  }

  bool iterate(const Vec& c) {
    const Eigen::Index total = ns_ + m_;
    const double d_tol = 1e-9 * (1.0 + c.cwiseAbs().maxCoeff());
    const Eigen::Index bland_after = 4 * (m_ + ns_) + 50;
    const Eigen::Index max_iters = 200 * (m_ + ns_) + 20000;
    Eigen::Index stall = 0;
    double last_obj = -kInf;

    for (Eigen::Index iter = 0; iter < max_iters; ++iter) {
      bool bland = stall > bland_after;
      // pricing
      Vec cB(m_);
      for (Eigen::Index i = 0; i < m_; ++i) cB(i) = c(basis_[i]);
      Vec y = Binv_.transpose() * cB;
      Vec d = c.head(ns_) - As_.transpose() * y;

      Eigen::Index enter = -1;
      double best = d_tol;
      double enter_dir = 1.0;
      for (Eigen::Index j = 0; j < total; ++j) {
        auto st = state_[static_cast<size_t>(j)];
        if (st == kBasic) continue;
        if (j >= ns_ && !art_allowed_) continue;
        double dj = j < ns_ ? d(j) : c(j) - y(j - ns_) * art_sign_(j - ns_);
        double score = 0.0, dir = 1.0;
        if (st == kAtLower && dj > d_tol && upper_of(j) > 0.0) {
          score = dj;
          dir = 1.0;
        } else if (st == kAtUpper && dj < -d_tol) {
          score = -dj;
          dir = -1.0;
        } else {
          continue;
        }
        if (bland) {
          enter = j;
          enter_dir = dir;
          break;
        }
        if (score > best) {
          best = score;
          enter = j;
          enter_dir = dir;
        }
      }
      if (enter < 0) return true;  // optimal for this phase

      Vec w = Binv_ * column(enter);
      // ratio test (two passes: find the minimum, then the most stable pivot)
      double t_star = upper_of(enter);
      for (Eigen::Index i = 0; i < m_; ++i) {
        double sw = enter_dir * w(i);
        if (sw > 1e-11) {
          t_star = std::min(t_star, std::max(0.0, xB_(i)) / sw);
        } else if (sw < -1e-11) {
          double ui = upper_of(basis_[i]);
          if (std::isfinite(ui)) t_star = std::min(t_star, (ui - std::min(xB_(i), ui)) / -sw);
        }
      }
      if (!std::isfinite(t_star)) return false;  // unbounded

      Eigen::Index leave_row = -1;
      double best_piv = 0.0;
      bool leave_at_upper = false;
      for (Eigen::Index i = 0; i < m_; ++i) {
        double sw = enter_dir * w(i);
        if (sw > 1e-11) {
          double ti = std::max(0.0, xB_(i)) / sw;
          if (ti <= t_star + feas_tol_ && std::abs(w(i)) > best_piv) {
            best_piv = std::abs(w(i));
            leave_row = i;
            leave_at_upper = false;
          }
        } else if (sw < -1e-11) {
          double ui = upper_of(basis_[i]);
          if (std::isfinite(ui)) {
            double ti = (ui - std::min(xB_(i), ui)) / -sw;
            if (ti <= t_star + feas_tol_ && std::abs(w(i)) > best_piv) {
              best_piv = std::abs(w(i));
              leave_row = i;
              leave_at_upper = true;
            }
          }
        }
      }

      double upper_e = upper_of(enter);
      bool flip = std::isfinite(upper_e) && (leave_row < 0 || upper_e <= t_star + feas_tol_);
      double t = flip ? upper_e : t_star;
      if (t < 0.0) t = 0.0;

      xB_ -= enter_dir * t * w;
      for (Eigen::Index i = 0; i < m_; ++i)
        if (xB_(i) < 0.0 && xB_(i) > -10 * feas_tol_) xB_(i) = 0.0;

      double obj = 0.0;
      for (Eigen::Index i = 0; i < m_; ++i) obj += c(basis_[i]) * xB_(i);
      if (obj > last_obj + 1e-12 * (1.0 + std::abs(last_obj))) {
        last_obj = obj;
        stall = 0;
      } else {
        ++stall;
      }

      if (flip) {
        auto& st = state_[static_cast<size_t>(enter)];
        st = st == kAtLower ? kAtUpper : kAtLower;
        continue;
      }
      // entering variable's new value
      double v_enter = (state_[static_cast<size_t>(enter)] == kAtLower ? 0.0 : upper_e) +
                       enter_dir * t;
      apply_pivot(leave_row, enter, w, leave_at_upper ? kAtUpper : kAtLower);
      xB_(leave_row) = v_enter;
    }
    throw NumericalError("lp_solve: iteration limit exceeded");
  }

  Mat As_;
  Vec bs_;
  Vec ub_;
  Eigen::Index m_;
  Eigen::Index ns_;
  std::vector<Eigen::Index> basis_;
  std::vector<unsigned char> state_;
  Vec art_sign_;
  Mat Binv_;
  Vec xB_;
  double feas_tol_ = 1e-9;
  bool has_artificial_ = false;
  bool art_allowed_ = true;
  Eigen::Index pivots_since_refactor_ = 0;
};

}  // namespace

struct LpSolver::Impl {
  StandardForm sf;
  Vec objective;
  Vec lower, upper;
  Eigen::Index n_vars = 0;
  std::unique_ptr<Simplex> simplex;
  bool feasibility_known = false;
  bool feasible = false;

  explicit Impl(const LpProblem& p)
      : sf(build_standard_form(p)),
        objective(p.objective),
        lower(p.lower),
        upper(p.upper),
        n_vars(p.num_vars()) {
    set_objective(sf, objective);
  }

  LpOutcome box_only() const {
    // No rows at all: each variable sits at whichever bound the objective
    // prefers; unbounded when a profitable direction has no finite bound.
    LpOutcome out;
    Vec x(n_vars);
    for (Eigen::Index j = 0; j < n_vars; ++j) {
      double cj = objective(j);
      double lo = lower(j), hi = upper(j);
      double v = cj > 0.0 ? hi : (cj < 0.0 ? lo : (std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0)));
      if (!std::isfinite(v)) {
        if (cj != 0.0) {
          out.status = LpStatus::Unbounded;
          return out;
        }
        v = 0.0;
      }
      x(j) = v;
    }
    out.status = LpStatus::Optimal;
    out.point = x;
    out.value = objective.dot(x);
    return out;
  }

  LpOutcome run() {
    LpOutcome out;
    if (sf.trivially_infeasible) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    if (sf.As.rows() == 0) return box_only();

    if (!feasibility_known) {
      simplex = std::make_unique<Simplex>(sf);
      feasible = simplex->run_phase1();
      feasibility_known = true;
    }
    if (!feasible) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    if (!simplex->run_phase2(sf.cs)) {
      out.status = LpStatus::Unbounded;
      return out;
    }
    Vec y = simplex->solution();
    Vec x(n_vars);
    for (Eigen::Index j = 0; j < n_vars; ++j) {
      const auto& bm = sf.back[static_cast<size_t>(j)];
      x(j) = bm.idx2 >= 0 ? y(bm.idx) - y(bm.idx2) : bm.sign * y(bm.idx) + bm.shift;
    }
    out.status = LpStatus::Optimal;
    out.point = x;
    out.value = objective.dot(x);
    return out;
  }
};

LpSolver::LpSolver(const LpProblem& p) {
  p.validate();
  impl_ = std::make_unique<Impl>(p);
}
LpSolver::LpSolver(LpSolver&&) noexcept = default;
LpSolver& LpSolver::operator=(LpSolver&&) noexcept = default;
LpSolver::~LpSolver() = default;

LpOutcome LpSolver::solve() { return impl_->run(); }

LpOutcome LpSolver::solve_with_objective(const Vec& objective) {
  if (objective.size() != impl_->n_vars)
    throw DimensionError("LpSolver: objective size changed");
  impl_->objective = objective;
  set_objective(impl_->sf, objective);
  return impl_->run();
}

LpOutcome lp_solve(const LpProblem& p) { return LpSolver(p).solve(); }

}  // namespace czt
