#ifndef CZT_TYPES_HPP
#define CZT_TYPES_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace czt {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct RankError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInvertibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnboundedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotFullDimensionalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Representation complexity (constraint count, degrees-of-freedom order)
// ---------------------------------------------------------------------------

// The degrees-of-freedom order (N - M)/n is kept as an exact rational so that
// complexity bookkeeping across recursions can be compared without rounding.
struct ReprComplexity {
  long constraints = 0;
  long dof_num = 0;
  long dof_den = 1;

  ReprComplexity() = default;
  ReprComplexity(long m, long num, long den) : constraints(m), dof_num(num), dof_den(den) {
    normalize();
  }

  void normalize() {
    if (dof_den < 0) {
      dof_den = -dof_den;
      dof_num = -dof_num;
    }
    long g = std::gcd(dof_num < 0 ? -dof_num : dof_num, dof_den);
    if (g > 1) {
      dof_num /= g;
      dof_den /= g;
    }
  }

  double dof_value() const { return static_cast<double>(dof_num) / static_cast<double>(dof_den); }

  friend bool operator==(const ReprComplexity& a, const ReprComplexity& b) {
    return a.constraints == b.constraints && a.dof_num == b.dof_num && a.dof_den == b.dof_den;
  }
  friend bool operator!=(const ReprComplexity& a, const ReprComplexity& b) { return !(a == b); }
};

// ---------------------------------------------------------------------------
// Constrained zonotope  {G xi + c : ||xi||_inf <= 1, A xi = b}
// ---------------------------------------------------------------------------

// The generator matrix is dense (n stays moderate); the constraint matrix is
// sparse because long recursions accumulate thousands of block-structured
// constraint rows.
class ConstrainedZonotope {
 public:
  Mat G;
  Vec c;
  SpMat A;
  Vec b;

  ConstrainedZonotope() : G(0, 0), c(0), A(0, 0), b(0) {}

  ConstrainedZonotope(Mat G_in, Vec c_in, SpMat A_in, Vec b_in)
      : G(std::move(G_in)), c(std::move(c_in)), A(std::move(A_in)), b(std::move(b_in)) {
    validate();
  }

  ConstrainedZonotope(Mat G_in, Vec c_in, const Mat& A_in, Vec b_in)
      : G(std::move(G_in)), c(std::move(c_in)), A(A_in.sparseView()), b(std::move(b_in)) {
    validate();
  }

  // Zonotope (no constraints).
  ConstrainedZonotope(Mat G_in, Vec c_in)
      : G(std::move(G_in)), c(std::move(c_in)), A(0, G.cols()), b(0) {
    validate();
  }

  static ConstrainedZonotope singleton(const Vec& x) {
    return ConstrainedZonotope(Mat(x.size(), 0), x);
  }

  // Axis-aligned box [lo, hi] as a zonotope.
  static ConstrainedZonotope interval_box(const Vec& lo, const Vec& hi) {
    if (lo.size() != hi.size()) throw DimensionError("interval_box: bound sizes differ");
    Mat G = ((hi - lo) / 2.0).asDiagonal();
    return ConstrainedZonotope(G, (hi + lo) / 2.0);
  }

  // Canonical empty set in R^n: zero generators with an unsatisfiable
  // constraint 0 = 1, plus a flag for O(1) detection.
  static ConstrainedZonotope empty_set(Eigen::Index n) {
    ConstrainedZonotope C;
    C.G = Mat::Zero(n, 0);
    C.c = Vec::Zero(n);
    C.A = SpMat(1, 0);
    C.b = Vec::Ones(1);
    C.canonical_empty_ = true;
    return C;
  }

  Eigen::Index dim() const { return c.size(); }
  Eigen::Index num_generators() const { return G.cols(); }
  Eigen::Index num_constraints() const { return A.rows(); }

  bool is_canonical_empty() const { return canonical_empty_; }

  // True when [G; A] is known to have full row rank (verified or preserved by
  // an operation that provably keeps it). Avoids re-running the row-reduction
  // inside every Pontryagin-difference call.
  bool minrow_verified() const { return minrow_; }
  void set_minrow_verified(bool v) { minrow_ = v; }

  Mat dense_A() const { return Mat(A); }

  // Stacked [G; A] as a sparse matrix, exact zeros pruned.
  SpMat stacked() const {
    SpMat B(G.rows() + A.rows(), G.cols());
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(A.nonZeros()) + static_cast<size_t>(G.size()));
    for (Eigen::Index i = 0; i < G.rows(); ++i)
      for (Eigen::Index j = 0; j < G.cols(); ++j)
        if (G(i, j) != 0.0) trips.emplace_back(i, j, G(i, j));
    for (Eigen::Index k = 0; k < A.outerSize(); ++k)
      for (SpMat::InnerIterator it(A, k); it; ++it)
        trips.emplace_back(G.rows() + it.row(), it.col(), it.value());
    B.setFromTriplets(trips.begin(), trips.end());
    return B;
  }

  void validate() const {
    if (G.rows() != c.size()) throw DimensionError("ConstrainedZonotope: G rows != c size");
    if (A.cols() != G.cols()) throw DimensionError("ConstrainedZonotope: A cols != G cols");
    if (b.size() != A.rows()) throw DimensionError("ConstrainedZonotope: b size != A rows");
    if (!G.allFinite() || !c.allFinite() || !b.allFinite())
      throw DimensionError("ConstrainedZonotope: non-finite entry");
    for (Eigen::Index k = 0; k < A.outerSize(); ++k)
      for (SpMat::InnerIterator it(A, k); it; ++it)
        if (!std::isfinite(it.value()))
          throw DimensionError("ConstrainedZonotope: non-finite entry in A");
  }

 private:
  bool canonical_empty_ = false;
  bool minrow_ = false;
};

inline ReprComplexity repr_complexity(const ConstrainedZonotope& C) {
  return ReprComplexity(C.num_constraints(), C.num_generators() - C.num_constraints(),
                        C.dim() > 0 ? C.dim() : 1);
}

// ---------------------------------------------------------------------------
// Symmetric, convex, compact sets (affine images of unit balls)
// ---------------------------------------------------------------------------

// Zonotope / ellipsoid / cross-polytope image are (G, c) with the unit ball
// taken in the l-inf / l-2 / l-1 norm. Generic carries a caller-supplied
// support function of the centered set S - c; the caller guarantees it is the
// exact support of a symmetric, convex, compact set.
class SymmetricSet {
 public:
  enum class Kind { Zonotope, Ellipsoid, CrossPolytope, Generic };

  Kind kind = Kind::Zonotope;
  Mat G;
  Vec c;
  std::function<double(const Vec&)> centered_support;

  SymmetricSet() : G(0, 0), c(0) {}

  static SymmetricSet zonotope(Mat G, Vec c) { return SymmetricSet(Kind::Zonotope, std::move(G), std::move(c)); }
  static SymmetricSet ellipsoid(Mat G, Vec c) { return SymmetricSet(Kind::Ellipsoid, std::move(G), std::move(c)); }
  static SymmetricSet l1_ball_image(Mat G, Vec c) {
    return SymmetricSet(Kind::CrossPolytope, std::move(G), std::move(c));
  }
  static SymmetricSet generic(Eigen::Index n, Vec c, std::function<double(const Vec&)> rho0) {
    SymmetricSet S;
    S.kind = Kind::Generic;
    S.G = Mat::Zero(n, 0);
    S.c = std::move(c);
    S.centered_support = std::move(rho0);
    if (S.c.size() != n) throw DimensionError("SymmetricSet::generic: center size");
    return S;
  }

  Eigen::Index dim() const { return c.size(); }

 private:
  SymmetricSet(Kind k, Mat G_in, Vec c_in) : kind(k), G(std::move(G_in)), c(std::move(c_in)) {
    if (G.rows() != c.size()) throw DimensionError("SymmetricSet: G rows != c size");
    if (!G.allFinite() || !c.allFinite()) throw DimensionError("SymmetricSet: non-finite entry");
  }
};

// Support function of the centered set S - c.
inline double support_symmetric_centered(const SymmetricSet& S, const Vec& nu) {
  if (nu.size() != S.dim()) throw DimensionError("support_symmetric: direction size");
  switch (S.kind) {
    case SymmetricSet::Kind::Zonotope:
      return (S.G.transpose() * nu).lpNorm<1>();
    case SymmetricSet::Kind::Ellipsoid:
      return (S.G.transpose() * nu).norm();
    case SymmetricSet::Kind::CrossPolytope:
      return (S.G.transpose() * nu).lpNorm<Eigen::Infinity>();
    case SymmetricSet::Kind::Generic:
      return S.centered_support(nu);
  }
  throw std::logic_error("support_symmetric: unreachable");
}

inline double support_symmetric(const SymmetricSet& S, const Vec& nu) {
  return nu.dot(S.c) + support_symmetric_centered(S, nu);
}

// A maximizer of nu' s over S (closed-form kinds only).
inline Vec support_vector_symmetric(const SymmetricSet& S, const Vec& nu) {
  Vec g = S.G.transpose() * nu;
  switch (S.kind) {
    case SymmetricSet::Kind::Zonotope: {
      Vec xi = g.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
      return S.c + S.G * xi;
    }
    case SymmetricSet::Kind::Ellipsoid: {
      double nrm = g.norm();
      if (nrm <= 0.0) return S.c;
      return S.c + S.G * (g / nrm);
    }
    case SymmetricSet::Kind::CrossPolytope: {
      if (g.size() == 0) return S.c;
      Eigen::Index imax;
      g.cwiseAbs().maxCoeff(&imax);
      Vec xi = Vec::Zero(g.size());
      xi(imax) = g(imax) >= 0.0 ? 1.0 : -1.0;
      return S.c + S.G * xi;
    }
    case SymmetricSet::Kind::Generic:
      throw std::logic_error("support_vector_symmetric: no closed form for Generic");
  }
  throw std::logic_error("support_vector_symmetric: unreachable");
}

// Linear image F * S, kind-preserving.
inline SymmetricSet map_symmetric(const Mat& F, const SymmetricSet& S) {
  if (F.cols() != S.dim()) throw DimensionError("map_symmetric: F cols != set dim");
  switch (S.kind) {
    case SymmetricSet::Kind::Zonotope:
      return SymmetricSet::zonotope(F * S.G, F * S.c);
    case SymmetricSet::Kind::Ellipsoid:
      return SymmetricSet::ellipsoid(F * S.G, F * S.c);
    case SymmetricSet::Kind::CrossPolytope:
      return SymmetricSet::l1_ball_image(F * S.G, F * S.c);
    case SymmetricSet::Kind::Generic: {
      auto inner = S.centered_support;
      Mat Ft = F.transpose();
      return SymmetricSet::generic(F.rows(), F * S.c,
                                   [inner, Ft](const Vec& nu) { return inner(Ft * nu); });
    }
  }
  throw std::logic_error("map_symmetric: unreachable");
}

inline SymmetricSet scale_symmetric(double alpha, const SymmetricSet& S) {
  SymmetricSet R = S;
  R.G *= alpha;
  if (S.kind == SymmetricSet::Kind::Generic) {
    auto inner = S.centered_support;
    R.centered_support = [inner, alpha](const Vec& nu) { return alpha * inner(nu); };
  }
  return R;
}

// ---------------------------------------------------------------------------
// H-Rep polyhedron {x : H x <= k} and a single halfspace {x : p'x <= q}
// ---------------------------------------------------------------------------

struct HPolyhedron {
  Mat H;
  Vec k;
  std::optional<bool> bounded_hint;

  HPolyhedron() : H(0, 0), k(0) {}
  HPolyhedron(Mat H_in, Vec k_in, std::optional<bool> hint = std::nullopt)
      : H(std::move(H_in)), k(std::move(k_in)), bounded_hint(hint) {
    if (H.rows() != k.size()) throw DimensionError("HPolyhedron: H rows != k size");
    if (!H.allFinite() || !k.allFinite()) throw DimensionError("HPolyhedron: non-finite entry");
  }

  Eigen::Index dim() const { return H.cols(); }
  Eigen::Index num_rows() const { return H.rows(); }

  static HPolyhedron box(const Vec& lo, const Vec& hi) {
    Eigen::Index n = lo.size();
    if (hi.size() != n) throw DimensionError("HPolyhedron::box: bound sizes differ");
    Mat H(2 * n, n);
    H << Mat::Identity(n, n), -Mat::Identity(n, n);
    Vec k(2 * n);
    k << hi, -lo;
    return HPolyhedron(std::move(H), std::move(k), true);
  }
};

struct Halfspace {
  Vec p;
  double q = 0.0;

  Halfspace() = default;
  Halfspace(Vec p_in, double q_in) : p(std::move(p_in)), q(q_in) {
    if (p.size() == 0 || p.lpNorm<Eigen::Infinity>() == 0.0)
      throw DimensionError("Halfspace: normal must be nonzero");
    if (!p.allFinite() || !std::isfinite(q)) throw DimensionError("Halfspace: non-finite entry");
  }
};

}  // namespace czt

#endif  // CZT_TYPES_HPP
