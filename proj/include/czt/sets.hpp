#ifndef CZT_SETS_HPP
#define CZT_SETS_HPP

#include "czt/lp.hpp"
#include "czt/types.hpp"

#include <optional>
#include <vector>

namespace czt {

struct SupportResult {
  double value = 0.0;
  Vec point;
};

// Support function and a support vector of a constrained zonotope, by linear
// programming over the factor box. Empty optional when B_inf(A, b) is
// infeasible.
std::optional<SupportResult> support_czono(const ConstrainedZonotope& C, const Vec& nu);

// Point membership via an LP minimizing the l-inf reconstruction mismatch.
bool membership_czono(const ConstrainedZonotope& C, const Vec& x, double tol = 1e-8);

// Feasibility of B_inf(A, b).
bool is_empty(const ConstrainedZonotope& C);

// Support points in k equi-spaced directions theta_j = 2*pi*j/k (2-D only).
std::optional<std::vector<Eigen::Vector2d>> boundary_sample(const ConstrainedZonotope& C,
                                                            int num_directions);

// Support function of {x : H x <= k} in direction nu via LP (solved in dual
// form, whose basis has only n rows). Throws UnboundedError when the
// polyhedron is unbounded in that direction, and returns nullopt when it is
// empty.
std::optional<double> support_hpoly(const HPolyhedron& P, const Vec& nu);

// Repeated support queries against one constrained zonotope; consecutive
// directions re-optimize from the previous basis.
class SupportOracle {
 public:
  explicit SupportOracle(const ConstrainedZonotope& C);
  std::optional<SupportResult> query(const Vec& nu);

 private:
  const ConstrainedZonotope* C_;
  std::optional<LpSolver> solver_;
  bool trivially_empty_ = false;
};

}  // namespace czt

#endif  // CZT_SETS_HPP
