#ifndef CZT_PDIFF_HPP
#define CZT_PDIFF_HPP

#include "czt/czops.hpp"
#include "czt/types.hpp"

#include <vector>

namespace czt {

// Diagonal of the generator-shrinking matrix D. Entries are at most one;
// a negative entry signals an empty difference.
struct ShrinkDiag {
  Vec d;

  double min() const { return d.size() > 0 ? d.minCoeff() : 1.0; }
};

// Entries D_ii = 1 - rho_{S-c_S}(Gamma' e_i) where Gamma is the least-squares
// solution of [G; A] Gamma = [I; 0]. Closed forms (a row norm of
// Gamma * G_S) for zonotope / ellipsoid / l1-ball subtrahends; the generic
// kind evaluates the caller's support function per generator. Requires a
// full-row-rank [G; A].
ShrinkDiag shrink_diag(const ConstrainedZonotope& C, const SymmetricSet& S);

// Inner approximation (G D, c - c_S, A D, b) of C (-) S; canonical empty set
// when some D_ii is negative beyond the clamp tolerance. Representation
// complexity of the result equals that of C.
ConstrainedZonotope inner_pdiff(const ConstrainedZonotope& C, const SymmetricSet& S);

// Prior optimization-based baseline for zonotopic subtrahends: Gamma from the
// sum-of-absolute-values LP, then the same block form. Fills d_out with the
// diagonal when requested.
ConstrainedZonotope two_stage_inner_pdiff(const ConstrainedZonotope& C, const SymmetricSet& S,
                                          Vec* d_out = nullptr);

// Convex polyhedral cover of C from the least-squares dual rows, at most 2N
// halfspaces. Rows whose projection onto the row space of [G; A] vanishes are
// dropped; dropped_rows reports how many when non-null.
HPolyhedron outer_polyhedron(const ConstrainedZonotope& C, int* dropped_rows = nullptr);

// Cover intersected with the support-function bounding box; always bounded,
// at most 2(N + n) rows.
HPolyhedron outer_polyhedron_boxed(const ConstrainedZonotope& C);

// Appends supporting hyperplanes of C along the given directions.
HPolyhedron ray_shoot_tighten(const HPolyhedron& P, const ConstrainedZonotope& C,
                              const std::vector<Vec>& directions);

// Closed-form H-Rep Pontryagin difference: offsets reduced by the support of
// the subtrahend.
HPolyhedron hpoly_pdiff(const HPolyhedron& P, const SymmetricSet& S);

struct OuterPdiffOptions {
  bool boxed = true;
  bool remove_redundancy = false;
};

// Outer approximation of C (-) S: polyhedral cover, H-Rep difference, then
// intersection with the recentred minuend.
ConstrainedZonotope outer_pdiff(const ConstrainedZonotope& C, const SymmetricSet& S,
                                const OuterPdiffOptions& options = {});

}  // namespace czt

#endif  // CZT_PDIFF_HPP
