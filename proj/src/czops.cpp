#include "czt/czops.hpp"

#include "czt/linalg.hpp"

#include <Eigen/LU>

#include <cmath>
#include <vector>

namespace czt {

namespace {

void append_sparse_block(std::vector<Triplet>& trips, const SpMat& M, Eigen::Index row0,
                         Eigen::Index col0) {
  for (Eigen::Index k = 0; k < M.outerSize(); ++k)
    for (SpMat::InnerIterator it(M, k); it; ++it)
      trips.emplace_back(row0 + it.row(), col0 + it.col(), it.value());
}

void append_dense_block(std::vector<Triplet>& trips, const Mat& M, Eigen::Index row0,
                        Eigen::Index col0, double scale = 1.0) {
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (M(i, j) != 0.0) trips.emplace_back(row0 + i, col0 + j, scale * M(i, j));
}

bool full_row_rank_A_known(const ConstrainedZonotope& C) {
  // Rows of A are a subset of the rows of [G; A], so a verified row-reduced
  // representation certifies A itself; so does the absence of constraints.
  return C.num_constraints() == 0 || C.minrow_verified();
}

}  // namespace

ConstrainedZonotope affine_map(const Mat& R, const ConstrainedZonotope& C) {
  if (R.cols() != C.dim()) throw DimensionError("affine_map: R cols != set dim");
  if (C.is_canonical_empty()) return ConstrainedZonotope::empty_set(R.rows());
  ConstrainedZonotope out(R * C.G, R * C.c, C.A, C.b);
  if (C.minrow_verified() && R.rows() == R.cols()) {
    Eigen::PartialPivLU<Mat> lu(R);
    if (lu.rcond() > 1e-12) out.set_minrow_verified(true);
  }
  return out;
}

ConstrainedZonotope translate(const ConstrainedZonotope& C, const Vec& shift) {
  if (shift.size() != C.dim()) throw DimensionError("translate: shift size");
  if (C.is_canonical_empty()) return C;
  ConstrainedZonotope out(C.G, C.c + shift, C.A, C.b);
  out.set_minrow_verified(C.minrow_verified());
  return out;
}

ConstrainedZonotope minkowski_sum(const ConstrainedZonotope& C, const ConstrainedZonotope& S) {
  if (C.dim() != S.dim()) throw DimensionError("minkowski_sum: dimension mismatch");
  if (C.is_canonical_empty() || S.is_canonical_empty())
    return ConstrainedZonotope::empty_set(C.dim());
  const Eigen::Index NC = C.num_generators(), NS = S.num_generators();
  const Eigen::Index MC = C.num_constraints(), MS = S.num_constraints();

  Mat G(C.dim(), NC + NS);
  G << C.G, S.G;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(C.A.nonZeros() + S.A.nonZeros()));
  append_sparse_block(trips, C.A, 0, 0);
  append_sparse_block(trips, S.A, MC, NC);
  SpMat A(MC + MS, NC + NS);
  A.setFromTriplets(trips.begin(), trips.end());
  Vec b(MC + MS);
  b << C.b, S.b;

  ConstrainedZonotope out(std::move(G), C.c + S.c, std::move(A), std::move(b));
  out.set_minrow_verified((C.minrow_verified() && full_row_rank_A_known(S)) ||
                          (S.minrow_verified() && full_row_rank_A_known(C)));
  return out;
}

ConstrainedZonotope intersect_inverse_affine(const ConstrainedZonotope& C, const Mat& R,
                                             const ConstrainedZonotope& W) {
  if (R.cols() != C.dim()) throw DimensionError("intersect_inverse_affine: R cols != dim(C)");
  if (R.rows() != W.dim()) throw DimensionError("intersect_inverse_affine: R rows != dim(W)");
  if (C.is_canonical_empty() || W.is_canonical_empty())
    return ConstrainedZonotope::empty_set(C.dim());
  const Eigen::Index NC = C.num_generators(), NW = W.num_generators();
  const Eigen::Index MC = C.num_constraints(), MW = W.num_constraints();
  const Eigen::Index m = R.rows();

  Mat G = Mat::Zero(C.dim(), NC + NW);
  G.leftCols(NC) = C.G;

  std::vector<Triplet> trips;
  Mat RGc = R * C.G;
  trips.reserve(static_cast<size_t>(C.A.nonZeros() + W.A.nonZeros() + RGc.size() + W.G.size()));
  append_sparse_block(trips, C.A, 0, 0);
  append_sparse_block(trips, W.A, MC, NC);
  append_dense_block(trips, RGc, MC + MW, 0);
  append_dense_block(trips, W.G, MC + MW, NC, -1.0);
  SpMat A(MC + MW + m, NC + NW);
  A.setFromTriplets(trips.begin(), trips.end());

  Vec b(MC + MW + m);
  b << C.b, W.b, W.c - R * C.c;

  ConstrainedZonotope out(std::move(G), C.c, std::move(A), std::move(b));
  out.set_minrow_verified(C.minrow_verified() && W.minrow_verified());
  return out;
}

ConstrainedZonotope intersect_halfspace(const ConstrainedZonotope& C, const Halfspace& H) {
  if (H.p.size() != C.dim()) throw DimensionError("intersect_halfspace: normal size");
  if (C.is_canonical_empty()) return C;
  const Eigen::Index N = C.num_generators(), M = C.num_constraints();

  Vec pG = C.G.transpose() * H.p;
  double pc = H.p.dot(C.c);
  double reach = pG.lpNorm<1>();
  double d_m = H.q - pc + reach;
  // The slack interval [0, d_m] collapses for d_m < 0: the cut misses even
  // the unconstrained zonotope, so the intersection is empty.
  if (d_m < 0.0) return ConstrainedZonotope::empty_set(C.dim());

  Mat G = Mat::Zero(C.dim(), N + 1);
  G.leftCols(N) = C.G;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(C.A.nonZeros() + N + 1));
  append_sparse_block(trips, C.A, 0, 0);
  for (Eigen::Index j = 0; j < N; ++j)
    if (pG(j) != 0.0) trips.emplace_back(M, j, pG(j));
  trips.emplace_back(M, N, d_m / 2.0);
  SpMat A(M + 1, N + 1);
  A.setFromTriplets(trips.begin(), trips.end());
  Vec b(M + 1);
  b << C.b, (H.q - pc - reach) / 2.0;

  ConstrainedZonotope out(std::move(G), C.c, std::move(A), std::move(b));
  out.set_minrow_verified(C.minrow_verified() &&
                          d_m > 1e-12 * (1.0 + std::abs(H.q) + std::abs(pc) + reach));
  return out;
}

ConstrainedZonotope intersect_hpoly(const ConstrainedZonotope& C, const HPolyhedron& P) {
  if (P.dim() != C.dim()) throw DimensionError("intersect_hpoly: dimension mismatch");
  ConstrainedZonotope out = C;
  for (Eigen::Index i = 0; i < P.num_rows(); ++i)
    out = intersect_halfspace(out, Halfspace(P.H.row(i).transpose(), P.k(i)));
  return out;
}

ConstrainedZonotope min_row(const ConstrainedZonotope& C, double rank_tol) {
  if (C.is_canonical_empty()) return C;
  const Eigen::Index M = C.num_constraints();
  Mat Ab(M, C.num_generators() + 1);
  if (M > 0) {
    Ab.leftCols(C.num_generators()) = C.dense_A();
    Ab.col(C.num_generators()) = C.b;
  }
  std::vector<Eigen::Index> keep = M > 0 ? independent_row_subset(Ab, rank_tol)
                                         : std::vector<Eigen::Index>{};
  Mat Ap(static_cast<Eigen::Index>(keep.size()), C.num_generators());
  Vec bp(static_cast<Eigen::Index>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i) {
    Ap.row(static_cast<Eigen::Index>(i)) = Ab.row(keep[i]).head(C.num_generators());
    bp(static_cast<Eigen::Index>(i)) = Ab(keep[i], C.num_generators());
  }

  Mat stack(C.dim() + Ap.rows(), C.num_generators());
  stack << C.G, Ap;
  if (numerical_rank(stack, rank_tol) < stack.rows())
    throw NotFullDimensionalError("min_row: [G; A'] is rank deficient (set not full-dimensional?)");

  ConstrainedZonotope out(C.G, C.c, Ap, std::move(bp));
  out.set_minrow_verified(true);
  return out;
}

ConstrainedZonotope invertible_from_hpoly(const HPolyhedron& P) {
  const Eigen::Index n = P.dim();
  const Eigen::Index L = P.num_rows();
  if (n == 0) throw DimensionError("invertible_from_hpoly: zero-dimensional polytope");

  Vec l(n), u(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e(i) = 1.0;
    auto up = support_hpoly(P, e);
    auto lo = support_hpoly(P, -e);
    if (!up || !lo) throw DegenerateError("invertible_from_hpoly: polytope is empty");
    u(i) = *up;
    l(i) = -*lo;
  }
  double tol = 1e-9 * std::max({1.0, u.lpNorm<Eigen::Infinity>(), l.lpNorm<Eigen::Infinity>()});
  if (((u - l).array() < tol).any())
    throw DegenerateError("invertible_from_hpoly: polytope is not full-dimensional");

  Vec gz = (u - l) / 2.0;
  Vec cz = (u + l) / 2.0;
  Vec sigma(L);
  for (Eigen::Index i = 0; i < L; ++i) {
    Vec h = P.H.row(i).transpose();
    sigma(i) = h.dot(cz) - (gz.asDiagonal() * h).lpNorm<1>();
  }
  if (((P.k - sigma).array() < tol).any())
    throw DegenerateError("invertible_from_hpoly: tangential halfspace (degenerate slack)");

  Mat G = Mat::Zero(n, n + L);
  G.leftCols(n) = gz.asDiagonal();
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(L * n + L));
  Mat HGz = P.H * gz.asDiagonal();
  append_dense_block(trips, HGz, 0, 0);
  for (Eigen::Index i = 0; i < L; ++i) trips.emplace_back(i, n + i, (sigma(i) - P.k(i)) / 2.0);
  SpMat A(L, n + L);
  A.setFromTriplets(trips.begin(), trips.end());
  Vec b = (sigma + P.k) / 2.0 - P.H * cz;

  ConstrainedZonotope out(std::move(G), std::move(cz), std::move(A), std::move(b));
  out.set_minrow_verified(true);
  return out;
}

HPolyhedron hpoly_from_invertible(const ConstrainedZonotope& C) {
  const Eigen::Index n = C.dim(), N = C.num_generators(), M = C.num_constraints();
  if (N != n + M)
    throw NotInvertibleError("hpoly_from_invertible: [G; A] is not square");
  Mat B(N, N);
  B.topRows(n) = C.G;
  B.bottomRows(M) = C.dense_A();
  if (numerical_rank(B) < N)
    throw NotInvertibleError("hpoly_from_invertible: [G; A] is numerically singular");
  Eigen::PartialPivLU<Mat> lu(B);
  Mat X = lu.solve(Mat::Identity(N, N).leftCols(n));  // B^{-1} [I_n; 0]
  Vec cb(N);
  cb << -C.c, C.b;
  Vec y = lu.solve(cb);

  Mat H(2 * N, n);
  H << X, -X;
  Vec k(2 * N);
  k << Vec::Ones(N) - y, Vec::Ones(N) + y;
  return HPolyhedron(std::move(H), std::move(k), true);
}

bool is_invertible_rep(const ConstrainedZonotope& C) {
  if (C.is_canonical_empty()) return false;
  if (C.num_generators() != C.dim() + C.num_constraints()) return false;
  Mat B(C.num_generators(), C.num_generators());
  B.topRows(C.dim()) = C.G;
  B.bottomRows(C.num_constraints()) = C.dense_A();
  return numerical_rank(B) == C.num_generators();
}

HPolyhedron remove_redundant_rows(const HPolyhedron& P) {
  const Eigen::Index L = P.num_rows();
  std::vector<bool> keep(static_cast<size_t>(L), true);
  for (Eigen::Index i = 0; i < L; ++i) {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index j = 0; j < L; ++j)
      if (j != i && keep[static_cast<size_t>(j)]) rows.push_back(j);
    Mat Hs(static_cast<Eigen::Index>(rows.size()) + 1, P.dim());
    Vec ks(static_cast<Eigen::Index>(rows.size()) + 1);
    for (size_t r = 0; r < rows.size(); ++r) {
      Hs.row(static_cast<Eigen::Index>(r)) = P.H.row(rows[r]);
      ks(static_cast<Eigen::Index>(r)) = P.k(rows[r]);
    }
    // keep the tested row, relaxed, so the subproblem stays bounded
    Hs.row(Hs.rows() - 1) = P.H.row(i);
    ks(ks.size() - 1) = P.k(i) + 1.0;

    std::optional<double> reach;
    try {
      reach = support_hpoly(HPolyhedron(std::move(Hs), std::move(ks)), P.H.row(i).transpose());
    } catch (const UnboundedError&) {
      continue;  // unbounded without this row: certainly not redundant
    }
    if (reach && *reach <= P.k(i) + 1e-9 * (1.0 + std::abs(P.k(i))))
      keep[static_cast<size_t>(i)] = false;
  }
  Eigen::Index count = 0;
  for (bool v : keep) count += v ? 1 : 0;
  Mat H(count, P.dim());
  Vec k(count);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < L; ++i)
    if (keep[static_cast<size_t>(i)]) {
      H.row(r) = P.H.row(i);
      k(r) = P.k(i);
      ++r;
    }
  return HPolyhedron(std::move(H), std::move(k), P.bounded_hint);
}

namespace detail {

ConstrainedZonotope ensure_min_row(const ConstrainedZonotope& C) {
  if (C.is_canonical_empty() || C.minrow_verified()) return C;
  return min_row(C);
}

}  // namespace detail

}  // namespace czt
