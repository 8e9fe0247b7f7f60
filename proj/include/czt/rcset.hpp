#ifndef CZT_RCSET_HPP
#define CZT_RCSET_HPP

#include "czt/pdiff.hpp"
#include "czt/types.hpp"

#include <vector>

namespace czt {

// Backward recursion data for the T-step robust controllable set
// K_t = Pre(K_{t+1}) /\ X_t,  Pre(K) = {x : A_t x in (K (-) F_t W_t) (+) (-B_t U_t)}.
//
// Per-step data may be time-invariant (vectors of size 1) or per-step
// (vectors of size T). State constraints are carried in H-Rep; the PolytopicX
// variant additionally carries their square-stack constrained-zonotope
// conversions.
struct RcScenario {
  enum class Variant { InvertibleA, PolytopicX };

  Variant variant = Variant::PolytopicX;
  int horizon = 0;
  std::vector<Mat> A, B, F;
  std::vector<ConstrainedZonotope> U;
  std::vector<SymmetricSet> W;
  std::vector<HPolyhedron> X_hrep;
  std::vector<ConstrainedZonotope> X_cz;
  ConstrainedZonotope goal;

  template <typename T>
  static const T& at(const std::vector<T>& v, int t) {
    return v.size() == 1 ? v.front() : v.at(static_cast<size_t>(t));
  }

  Eigen::Index state_dim() const { return goal.dim(); }
  bool time_invariant() const {
    return A.size() == 1 && B.size() == 1 && F.size() == 1 && U.size() == 1 && W.size() == 1 &&
           X_hrep.size() <= 1 && X_cz.size() <= 1;
  }

  void validate() const;
};

struct RcResult {
  std::vector<ConstrainedZonotope> sets;  // index t = 0..T, sets[T] = goal
  std::vector<ReprComplexity> complexities;
  std::vector<double> step_seconds;  // wall time spent computing K_t
  std::vector<bool> empty;

  const ConstrainedZonotope& initial_set() const { return sets.front(); }
};

enum class PdiffMethod { Inner, Outer, TwoStage };

struct RcOptions {
  PdiffMethod method = PdiffMethod::Inner;
  // Outer recursions keep the per-step cover minimal; without this the
  // representation grows geometrically with the horizon.
  OuterPdiffOptions outer{true, true};
  bool check_full_dimensional = false;
};

RcResult rc_recursion(const RcScenario& sc, const RcOptions& options);

inline RcResult rc_inner(const RcScenario& sc) { return rc_recursion(sc, RcOptions{}); }
inline RcResult rc_outer(const RcScenario& sc) {
  RcOptions o;
  o.method = PdiffMethod::Outer;
  return rc_recursion(sc, o);
}

// Closed-form representation complexity of the inner recursion's final set
// (per-step increments summed, so time-varying scenarios are handled too).
ReprComplexity predicted_complexity(const RcScenario& sc);

}  // namespace czt

#endif  // CZT_RCSET_HPP
