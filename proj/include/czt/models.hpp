#ifndef CZT_MODELS_HPP
#define CZT_MODELS_HPP

#include "czt/rcset.hpp"
#include "czt/types.hpp"

namespace czt {

struct ZohResult {
  Mat Ad;
  Mat Bd;
};

// Zero-order-hold discretization via the augmented matrix exponential
// exp([[Ac, Bc], [0, 0]] dt).
ZohResult zoh_discretize(const Mat& Ac, const Mat& Bc, double dt);

enum class DisturbanceShape { Ball, Ellipsoid, Box };

// Tightest axis-aligned zonotope covering an ellipsoidal set.
SymmetricSet zono_outer_box(const SymmetricSet& S);

struct DoubleIntegratorOptions {
  double dt = 0.1;
  DisturbanceShape w_shape = DisturbanceShape::Ball;
  bool w_zono_outer = false;
  int horizon = 20;
};

// Planar double integrator, interval input, rectangular state and goal sets,
// circular or ellipsoidal disturbance (optionally replaced by its axis box).
RcScenario double_integrator(const DoubleIntegratorOptions& options = {});

// Stable planar system over a long horizon with unbounded polyhedral state
// constraints and invertible dynamics.
RcScenario stable_2d_system(int horizon = 100);

enum class GoalRep { SquareStack, Zonotope };

struct ChainOptions {
  int num_masses = 5;
  double stiffness = 0.1;
  double mass = 0.1;
  double damping = 0.01;
  double dt = 0.1;
  int horizon = 20;
  GoalRep goal_rep = GoalRep::SquareStack;
  DisturbanceShape w_shape = DisturbanceShape::Box;
};

// Chain of homogeneous mass-spring-damper systems (state: positions then
// velocities), discretized by zero-order hold.
RcScenario spring_mass_chain(const ChainOptions& options);

}  // namespace czt

#endif  // CZT_MODELS_HPP
