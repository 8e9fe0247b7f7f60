#include "czt/linalg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>

namespace czt {

namespace {

// Threshold matching numerical_rank: tol * sigma_max * max(rows, cols), with
// the R diagonal of a column-pivoted QR standing in for singular values.
double rank_threshold(double largest, Eigen::Index rows, Eigen::Index cols, double tol) {
  return tol * largest * static_cast<double>(std::max(rows, cols));
}

}  // namespace

Mat min_norm_solve(const Mat& A, const Mat& B, double rank_tol) {
  if (A.rows() != B.rows()) throw DimensionError("min_norm_solve: A and B row counts differ");
  if (A.rows() > A.cols()) throw DimensionError("min_norm_solve: A has more rows than columns");
  if (A.rows() == 0) return Mat::Zero(A.cols(), B.cols());

  // Eigen's rank test compares pivots against threshold * |max pivot|, so the
  // relative part of the numerical_rank convention is what goes in here.
  Eigen::CompleteOrthogonalDecomposition<Mat> cod;
  cod.setThreshold(rank_tol * static_cast<double>(std::max(A.rows(), A.cols())));
  cod.compute(A);
  if (cod.rank() < A.rows()) throw RankError("min_norm_solve: coefficient matrix is rank deficient");
  return cod.solve(B);
}

Mat min_norm_lstsq(const Mat& A, const Mat& B, double rank_tol) {
  if (A.rows() != B.rows()) throw DimensionError("min_norm_lstsq: A and B row counts differ");
  if (A.rows() == 0 || A.cols() == 0) return Mat::Zero(A.cols(), B.cols());
  Eigen::CompleteOrthogonalDecomposition<Mat> cod;
  cod.setThreshold(rank_tol * static_cast<double>(std::max(A.rows(), A.cols())));
  cod.compute(A);
  return cod.solve(B);
}

Mat min_norm_solve_sparse(const SpMat& A, const Mat& B) {
  if (A.rows() != B.rows()) throw DimensionError("min_norm_solve_sparse: row counts differ");
  SpMat At = A.transpose();
  SpMat AAt = (A * At).pruned();
  Eigen::SimplicialLDLT<SpMat> ldlt(AAt);
  if (ldlt.info() != Eigen::Success)
    throw RankError("min_norm_solve_sparse: Cholesky factorization failed");
  Mat Z = ldlt.solve(B);
  Z += ldlt.solve(B - AAt.selfadjointView<Eigen::Lower>() * Z);
  Mat X = At * Z;
  double scale = B.norm();
  if (scale > 0.0 && (A * X - B).norm() > 1e-6 * scale)
    throw RankError("min_norm_solve_sparse: residual too large (rank deficiency?)");
  return X;
}

Eigen::Index numerical_rank(const Mat& A, double rank_tol) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd;
  Eigen::BDCSVD<Mat> bdc;
  Vec sv;
  if (std::min(A.rows(), A.cols()) <= 32) {
    svd.compute(A);
    sv = svd.singularValues();
  } else {
    bdc.compute(A);
    sv = bdc.singularValues();
  }
  if (sv.size() == 0) return 0;
  double thresh = rank_threshold(sv(0), A.rows(), A.cols(), rank_tol);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++r;
  return r;
}

std::vector<Eigen::Index> independent_row_subset(const Mat& M, double rank_tol) {
  std::vector<Eigen::Index> selected;
  if (M.size() == 0) return selected;
  double largest = M.rowwise().norm().maxCoeff();
  if (largest == 0.0) return selected;
  double thresh = rank_threshold(largest, M.rows(), M.cols(), rank_tol);

  // Grow an orthonormal basis of the selected rows; a candidate joins when its
  // residual after (twice-applied) Gram-Schmidt stays above the threshold.
  Mat Q(M.cols(), std::min(M.rows(), M.cols()));
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    Vec v = M.row(i).transpose();
    if (r > 0) {
      v -= Q.leftCols(r) * (Q.leftCols(r).transpose() * v);
      v -= Q.leftCols(r) * (Q.leftCols(r).transpose() * v);
    }
    double nrm = v.norm();
    if (nrm > thresh) {
      Q.col(r) = v / nrm;
      ++r;
      selected.push_back(i);
      if (r == std::min(M.rows(), M.cols())) break;
    }
  }
  return selected;
}

Mat expm(const Mat& A) {
  if (A.rows() != A.cols()) throw DimensionError("expm: matrix must be square");
  if (!A.allFinite()) throw DimensionError("expm: non-finite entry");
  const Eigen::Index n = A.rows();
  if (n == 0) return Mat(0, 0);

  // Scale so that the 1-norm falls below the degree-13 Pade bound.
  const double theta13 = 5.371920351148152;
  double nrm = A.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  Mat As = A;
  if (nrm > theta13) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / theta13))));
    As /= std::ldexp(1.0, squarings);
  }

  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  Mat I = Mat::Identity(n, n);
  Mat A2 = As * As;
  Mat A4 = A2 * A2;
  Mat A6 = A2 * A4;
  Mat U = As * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 +
                b[1] * I);
  Mat V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
  Mat E = (V - U).partialPivLu().solve(V + U);
  for (int s = 0; s < squarings; ++s) E = E * E;
  return E;
}

}  // namespace czt
