#include "czt/pdiff.hpp"

#include "czt/linalg.hpp"

#include <cmath>
#include <random>

namespace czt {

namespace {

constexpr double kClampTol = 1e-10;

// Large, sparse stacks go through the sparse normal-equations kernel; small
// ones use the dense orthogonal decomposition.
bool use_sparse_path(const ConstrainedZonotope& C) {
  Eigen::Index rows = C.dim() + C.num_constraints();
  if (rows <= 400) return false;
  SpMat B = C.stacked();
  double density = static_cast<double>(B.nonZeros()) /
                   (static_cast<double>(B.rows()) * static_cast<double>(B.cols()));
  return density < 0.25;
}

Mat stacked_dense(const ConstrainedZonotope& C) {
  Mat B(C.dim() + C.num_constraints(), C.num_generators());
  B.topRows(C.dim()) = C.G;
  B.bottomRows(C.num_constraints()) = C.dense_A();
  return B;
}

// Minimum-norm solve of [G; A] X = [T; 0] with T an n-row block.
Mat solve_stacked(const ConstrainedZonotope& C, const Mat& T) {
  Mat rhs = Mat::Zero(C.dim() + C.num_constraints(), T.cols());
  rhs.topRows(C.dim()) = T;
  if (use_sparse_path(C)) return min_norm_solve_sparse(C.stacked(), rhs);
  return min_norm_solve(stacked_dense(C), rhs);
}

void check_generic_symmetry(const SymmetricSet& S) {
  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec nu(S.dim());
  for (Eigen::Index i = 0; i < nu.size(); ++i) nu(i) = gauss(rng);
  double plus = S.centered_support(nu);
  double minus = S.centered_support(-nu);
  if (std::abs(plus - minus) > 1e-8 * (1.0 + std::abs(plus)))
    throw DimensionError("shrink_diag: generic support evaluator is not symmetric");
}

ConstrainedZonotope shrink_apply(const ConstrainedZonotope& C, const SymmetricSet& S, Vec d) {
  bool strictly_positive = true;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) < -kClampTol) return ConstrainedZonotope::empty_set(C.dim());
    if (d(i) < 0.0) d(i) = 0.0;
    if (d(i) <= 1e-12) strictly_positive = false;
  }
  ConstrainedZonotope out(C.G * d.asDiagonal(), C.c - S.c, SpMat(C.A * d.asDiagonal()), C.b);
  out.set_minrow_verified(C.minrow_verified() && strictly_positive);
  return out;
}

}  // namespace

ShrinkDiag shrink_diag(const ConstrainedZonotope& C, const SymmetricSet& S) {
  if (S.dim() != C.dim()) throw DimensionError("shrink_diag: dimension mismatch");
  const Eigen::Index N = C.num_generators();

  if (S.kind == SymmetricSet::Kind::Generic) {
    check_generic_symmetry(S);
    Mat Gamma = solve_stacked(C, Mat::Identity(C.dim(), C.dim()));
    Vec d(N);
    for (Eigen::Index i = 0; i < N; ++i)
      d(i) = 1.0 - S.centered_support(Gamma.row(i).transpose());
    return ShrinkDiag{std::move(d)};
  }

  if (S.G.cols() == 0) return ShrinkDiag{Vec::Ones(N)};
  Mat Y = solve_stacked(C, S.G);  // = Gamma * G_S
  Vec d(N);
  switch (S.kind) {
    case SymmetricSet::Kind::Zonotope:
      for (Eigen::Index i = 0; i < N; ++i) d(i) = 1.0 - Y.row(i).lpNorm<1>();
      break;
    case SymmetricSet::Kind::Ellipsoid:
      for (Eigen::Index i = 0; i < N; ++i) d(i) = 1.0 - Y.row(i).norm();
      break;
    case SymmetricSet::Kind::CrossPolytope:
      for (Eigen::Index i = 0; i < N; ++i) d(i) = 1.0 - Y.row(i).lpNorm<Eigen::Infinity>();
      break;
    default:
      throw std::logic_error("shrink_diag: unreachable");
  }
  return ShrinkDiag{std::move(d)};
}

ConstrainedZonotope inner_pdiff(const ConstrainedZonotope& C, const SymmetricSet& S) {
  if (S.dim() != C.dim()) throw DimensionError("inner_pdiff: dimension mismatch");
  if (C.is_canonical_empty()) return C;

  // A subtrahend of larger affine dimension makes the difference empty.
  if (S.kind != SymmetricSet::Kind::Generic && !C.minrow_verified()) {
    Eigen::Index rank_S = numerical_rank(S.G);
    if (rank_S > numerical_rank(C.G)) return ConstrainedZonotope::empty_set(C.dim());
  }

  ConstrainedZonotope Cm = detail::ensure_min_row(C);
  ShrinkDiag D = shrink_diag(Cm, S);
  return shrink_apply(Cm, S, std::move(D.d));
}

ConstrainedZonotope two_stage_inner_pdiff(const ConstrainedZonotope& C, const SymmetricSet& S,
                                          Vec* d_out) {
  if (S.kind != SymmetricSet::Kind::Zonotope)
    throw DimensionError("two_stage_inner_pdiff: subtrahend must be a zonotope");
  if (S.dim() != C.dim()) throw DimensionError("two_stage_inner_pdiff: dimension mismatch");
  if (C.is_canonical_empty()) return C;

  const Eigen::Index N = C.num_generators();
  const Eigen::Index NS = S.G.cols();
  if (NS == 0) {
    if (d_out) *d_out = Vec::Ones(N);
    return translate(C, -S.c);
  }

  // Variables: Gamma split into positive and negative parts, row-major.
  const Eigen::Index nv = 2 * N * NS;
  Mat B = stacked_dense(C);
  const Eigen::Index mr = B.rows();

  LpProblem lp = LpProblem::maximize(Vec::Constant(nv, -1.0));
  lp.lower = Vec::Zero(nv);
  lp.upper = Vec::Constant(nv, kInf);

  lp.eq_lhs = Mat::Zero(mr * NS, nv);
  lp.eq_rhs = Vec::Zero(mr * NS);
  for (Eigen::Index s = 0; s < NS; ++s) {
    for (Eigen::Index r = 0; r < mr; ++r) {
      Eigen::Index row = s * mr + r;
      for (Eigen::Index i = 0; i < N; ++i) {
        double v = B(r, i);
        if (v == 0.0) continue;
        lp.eq_lhs(row, i * NS + s) = v;
        lp.eq_lhs(row, N * NS + i * NS + s) = -v;
      }
      lp.eq_rhs(row) = r < C.dim() ? S.G(r, s) : 0.0;
    }
  }
  lp.ineq_lhs = Mat::Zero(N, nv);
  lp.ineq_rhs = Vec::Ones(N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index s = 0; s < NS; ++s) {
      lp.ineq_lhs(i, i * NS + s) = 1.0;
      lp.ineq_lhs(i, N * NS + i * NS + s) = 1.0;
    }

  LpOutcome out = lp_solve(lp);
  if (out.status == LpStatus::Infeasible) return ConstrainedZonotope::empty_set(C.dim());
  if (out.status != LpStatus::Optimal)
    throw NumericalError("two_stage_inner_pdiff: containment LP did not converge");

  Vec d(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    double sum = 0.0;
    for (Eigen::Index s = 0; s < NS; ++s)
      sum += std::abs(out.point(i * NS + s) - out.point(N * NS + i * NS + s));
    d(i) = 1.0 - sum;
  }
  if (d_out) *d_out = d;
  return shrink_apply(C, S, std::move(d));
}

namespace {

// Tolerant row reduction: callers of the cover construction may hand over a
// representation that is not actually full-dimensional; the least-squares
// rows still yield a valid (possibly unbounded) cover.
ConstrainedZonotope min_row_or_keep(const ConstrainedZonotope& C) {
  if (C.minrow_verified()) return C;
  try {
    return min_row(C);
  } catch (const NotFullDimensionalError&) {
    return C;
  }
}

}  // namespace

HPolyhedron outer_polyhedron(const ConstrainedZonotope& C, int* dropped_rows) {
  if (C.is_canonical_empty()) throw DegenerateError("outer_polyhedron: empty input");
  ConstrainedZonotope Cm = min_row_or_keep(C);
  const Eigen::Index n = Cm.dim(), N = Cm.num_generators();
  Mat B = stacked_dense(Cm);
  Mat V = min_norm_lstsq(B.transpose(), Mat::Identity(N, N)).transpose();  // rows e_i' B^dagger
  Mat W = V * B;

  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < N; ++i) {
    double nrm = W.row(i).lpNorm<1>();
    if (nrm < 1e-9) continue;  // direction invisible to the row space: drop
    V.row(i) /= nrm;
    kept.push_back(i);
  }
  if (dropped_rows) *dropped_rows = static_cast<int>(N - static_cast<Eigen::Index>(kept.size()));
  const Eigen::Index K = static_cast<Eigen::Index>(kept.size());
  Vec cb(n + Cm.num_constraints());
  cb << -Cm.c, Cm.b;
  Mat H(2 * K, n);
  Vec k(2 * K);
  for (Eigen::Index r = 0; r < K; ++r) {
    Vec v = V.row(kept[r]).transpose();
    H.row(r) = v.head(n).transpose();
    H.row(K + r) = -v.head(n).transpose();
    double off = v.dot(cb);
    k(r) = 1.0 - off;
    k(K + r) = 1.0 + off;
  }
  return HPolyhedron(std::move(H), std::move(k));
}

HPolyhedron outer_polyhedron_boxed(const ConstrainedZonotope& C) {
  HPolyhedron P = outer_polyhedron(C);
  const Eigen::Index n = C.dim();
  SupportOracle oracle(C);
  Vec l(n), u(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e(i) = 1.0;
    auto up = oracle.query(e);
    auto lo = oracle.query(-e);
    if (!up || !lo) throw DegenerateError("outer_polyhedron_boxed: empty input");
    u(i) = up->value;
    l(i) = -lo->value;
  }
  Mat H(P.H.rows() + 2 * n, n);
  Vec k(P.k.size() + 2 * n);
  H << P.H, Mat::Identity(n, n), -Mat::Identity(n, n);
  k << P.k, u, -l;
  return HPolyhedron(std::move(H), std::move(k), true);
}

HPolyhedron ray_shoot_tighten(const HPolyhedron& P, const ConstrainedZonotope& C,
                              const std::vector<Vec>& directions) {
  Mat H(P.H.rows() + static_cast<Eigen::Index>(directions.size()), P.dim());
  Vec k(P.k.size() + static_cast<Eigen::Index>(directions.size()));
  H.topRows(P.H.rows()) = P.H;
  k.head(P.k.size()) = P.k;
  Eigen::Index r = P.H.rows();
  for (const Vec& nu : directions) {
    auto sup = support_czono(C, nu);
    if (!sup) throw DegenerateError("ray_shoot_tighten: empty set");
    H.row(r) = nu.transpose();
    k(r) = sup->value;
    ++r;
  }
  return HPolyhedron(std::move(H), std::move(k), P.bounded_hint);
}

HPolyhedron hpoly_pdiff(const HPolyhedron& P, const SymmetricSet& S) {
  if (S.dim() != P.dim()) throw DimensionError("hpoly_pdiff: dimension mismatch");
  Vec k = P.k;
  for (Eigen::Index i = 0; i < P.num_rows(); ++i) {
    Vec h = P.H.row(i).transpose();
    k(i) -= h.dot(S.c) + support_symmetric_centered(S, h);
  }
  return HPolyhedron(P.H, std::move(k), P.bounded_hint);
}

ConstrainedZonotope outer_pdiff(const ConstrainedZonotope& C, const SymmetricSet& S,
                                const OuterPdiffOptions& options) {
  if (S.dim() != C.dim()) throw DimensionError("outer_pdiff: dimension mismatch");
  if (C.is_canonical_empty()) return C;
  ConstrainedZonotope Cm = min_row_or_keep(C);
  HPolyhedron P = options.boxed ? outer_polyhedron_boxed(Cm) : outer_polyhedron(Cm);
  if (options.remove_redundancy) P = remove_redundant_rows(P);
  HPolyhedron Pm = hpoly_pdiff(P, S);
  return intersect_hpoly(translate(Cm, -S.c), Pm);
}

}  // namespace czt
