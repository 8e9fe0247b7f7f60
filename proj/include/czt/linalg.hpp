#ifndef CZT_LINALG_HPP
#define CZT_LINALG_HPP

#include "czt/types.hpp"

#include <vector>

namespace czt {

// Default relative tolerance for rank decisions. The effective threshold is
// tol * (largest singular value) * max(rows, cols).
inline constexpr double kDefaultRankTol = 2.220446049250313e-16;

// Minimum-Frobenius-norm solution X of A X = B for A with full row rank
// (m <= n), via a complete orthogonal decomposition. Throws RankError when the
// numerical rank of A is below m, DimensionError on shape mismatch.
Mat min_norm_solve(const Mat& A, const Mat& B, double rank_tol = kDefaultRankTol);

// Minimum-norm least-squares solution of A X = B (no rank requirement); the
// rank-deficient analogue used by the polyhedral cover construction.
Mat min_norm_lstsq(const Mat& A, const Mat& B, double rank_tol = kDefaultRankTol);

// Sparse minimum-norm solve of A X = B for full-row-rank A, via normal
// equations A A' z = B factored with a sparse Cholesky, plus one step of
// iterative refinement. Intended for the large block-structured systems of
// long set recursions. Throws RankError if the factorization fails.
Mat min_norm_solve_sparse(const SpMat& A, const Mat& B);

// Count of singular values exceeding tol * sigma_max * max(rows, cols).
Eigen::Index numerical_rank(const Mat& A, double rank_tol = kDefaultRankTol);

// Indices of a maximal linearly independent subset of rows, greedy in
// ascending row order. Cardinality equals numerical_rank(M).
std::vector<Eigen::Index> independent_row_subset(const Mat& M,
                                                 double rank_tol = kDefaultRankTol);

// Matrix exponential by scaling and squaring with a degree-13 Pade
// approximant.
Mat expm(const Mat& A);

}  // namespace czt

#endif  // CZT_LINALG_HPP
