#ifndef CZT_CZOPS_HPP
#define CZT_CZOPS_HPP

#include "czt/sets.hpp"
#include "czt/types.hpp"

namespace czt {

// Closed-form set algebra on constrained zonotopes. All operations are exact;
// representation growth follows the block formulas (affine map: none,
// Minkowski sum: constraints and generators of both operands, inverse-affine
// intersection: N_W + (M_W + m), halfspace: one generator and one constraint).

ConstrainedZonotope affine_map(const Mat& R, const ConstrainedZonotope& C);
ConstrainedZonotope translate(const ConstrainedZonotope& C, const Vec& shift);
ConstrainedZonotope minkowski_sum(const ConstrainedZonotope& C, const ConstrainedZonotope& S);

// {u in C : R u in W}
ConstrainedZonotope intersect_inverse_affine(const ConstrainedZonotope& C, const Mat& R,
                                             const ConstrainedZonotope& W);

ConstrainedZonotope intersect_halfspace(const ConstrainedZonotope& C, const Halfspace& H);

// Fold of intersect_halfspace over the rows of P, in row order.
ConstrainedZonotope intersect_hpoly(const ConstrainedZonotope& C, const HPolyhedron& P);

// Row-reduced representation: keeps a maximal independent subset of the rows
// of [A, b]; the result has full-row-rank [G; A] for full-dimensional inputs.
// Throws NotFullDimensionalError when the reduced stack fails the rank check.
ConstrainedZonotope min_row(const ConstrainedZonotope& C,
                            double rank_tol = 2.220446049250313e-16);

// Square-stack representation of a bounded, full-dimensional H-Rep polytope:
// bounding box from support LPs, then one constraint per halfspace. [G; A] of
// the result is square and invertible.
ConstrainedZonotope invertible_from_hpoly(const HPolyhedron& P);

// Exact H-Rep of a constrained zonotope whose [G; A] is square invertible
// (2N rows).
HPolyhedron hpoly_from_invertible(const ConstrainedZonotope& C);

bool is_invertible_rep(const ConstrainedZonotope& C);

// LP-based removal of redundant halfspaces.
HPolyhedron remove_redundant_rows(const HPolyhedron& P);

namespace detail {
// Ensures the pseudoinverse-based constructions see a full-row-rank [G; A]:
// passes verified representations through, row-reduces otherwise.
ConstrainedZonotope ensure_min_row(const ConstrainedZonotope& C);
}  // namespace detail

}  // namespace czt

#endif  // CZT_CZOPS_HPP
