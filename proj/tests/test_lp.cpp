#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "czt/lp.hpp"

#include <algorithm>
#include <random>
#include <vector>

using namespace czt;

namespace {

// Brute-force optimum of max c'xi over {|xi|_inf <= 1, A xi = b}: every
// vertex fixes N-k coordinates at +-1 and solves the rest.
double vertex_enumeration_optimum(const Mat& A, const Vec& b, const Vec& c, bool& feasible) {
  const int N = static_cast<int>(A.cols());
  const int k = static_cast<int>(A.rows());
  double best = -1e300;
  feasible = false;
  std::vector<int> free_idx(static_cast<size_t>(k));
  std::vector<int> comb;
  for (int i = 0; i < k; ++i) comb.push_back(i);

  // iterate over all k-subsets (free coordinates) of 0..N-1
  std::vector<bool> select(static_cast<size_t>(N), false);
  std::fill(select.begin(), select.begin() + k, true);
  std::sort(select.begin(), select.end());
  do {
    std::vector<int> freev, fixed;
    for (int i = 0; i < N; ++i)
      if (select[static_cast<size_t>(i)]) freev.push_back(i);
      else fixed.push_back(i);
    Mat Af(k, k);
    for (int j = 0; j < k; ++j) Af.col(j) = A.col(freev[static_cast<size_t>(j)]);
    Eigen::FullPivLU<Mat> lu(Af);
    if (!lu.isInvertible()) continue;
    const int nfix = static_cast<int>(fixed.size());
    for (long mask = 0; mask < (1L << nfix); ++mask) {
      Vec xi = Vec::Zero(N);
      Vec rhs = b;
      for (int t = 0; t < nfix; ++t) {
        double s = (mask >> t) & 1 ? 1.0 : -1.0;
        xi(fixed[static_cast<size_t>(t)]) = s;
        rhs -= s * A.col(fixed[static_cast<size_t>(t)]);
      }
      Vec xf = lu.solve(rhs);
      if (xf.lpNorm<Eigen::Infinity>() > 1.0 + 1e-9) continue;
      for (int j = 0; j < k; ++j) xi(freev[static_cast<size_t>(j)]) = xf(j);
      feasible = true;
      best = std::max(best, c.dot(xi));
    }
  } while (std::next_permutation(select.begin(), select.end()));
  return best;
}

}  // namespace

TEST_CASE("interval maximization") {
  LpProblem p = LpProblem::maximize(Vec::Ones(1));
  p.lower = Vec::Constant(1, -1.0);
  p.upper = Vec::Constant(1, 1.0);
  LpOutcome out = lp_solve(p);
  REQUIRE(out.optimal());
  CHECK(out.value == doctest::Approx(1.0));
  CHECK(out.point(0) == doctest::Approx(1.0));
}

TEST_CASE("equality pins the objective") {
  LpProblem p = LpProblem::maximize(Vec::Ones(2));
  p.eq_lhs = Mat::Ones(1, 2);
  p.eq_rhs = Vec::Zero(1);
  p.lower = Vec::Constant(2, -1.0);
  p.upper = Vec::Constant(2, 1.0);
  LpOutcome out = lp_solve(p);
  REQUIRE(out.optimal());
  CHECK(out.value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(out.point.sum() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("infeasible and unbounded statuses") {
  LpProblem p = LpProblem::maximize(Vec::Zero(2));
  p.eq_lhs = Mat::Zero(1, 2);
  p.eq_lhs(0, 0) = 1.0;
  p.eq_rhs = Vec::Constant(1, 2.0);
  p.lower = Vec::Constant(2, -1.0);
  p.upper = Vec::Constant(2, 1.0);
  CHECK(lp_solve(p).status == LpStatus::Infeasible);

  LpProblem q = LpProblem::maximize(Vec::Ones(1));
  CHECK(lp_solve(q).status == LpStatus::Unbounded);

  LpProblem h = LpProblem::maximize(Vec::Ones(2));
  h.ineq_lhs = Mat::Identity(2, 2);
  h.ineq_rhs = Vec::Zero(2);
  CHECK(lp_solve(h).optimal());  // bounded above by the inequalities
}

TEST_CASE("matches exhaustive vertex enumeration on factor boxes") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int tested = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int N = 4 + static_cast<int>(rng() % 3);  // 4..6
    int k = 1 + static_cast<int>(rng() % 3);  // 1..3
    Mat A(k, N);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < N; ++j) A(i, j) = u(rng);
    Vec xi0(N);
    for (int j = 0; j < N; ++j) xi0(j) = 0.9 * u(rng);
    Vec b = A * xi0;
    Vec c(N);
    for (int j = 0; j < N; ++j) c(j) = u(rng);

    bool feasible = false;
    double ref = vertex_enumeration_optimum(A, b, c, feasible);
    if (!feasible) continue;
    ++tested;

    LpProblem p = LpProblem::maximize(c);
    p.eq_lhs = A;
    p.eq_rhs = b;
    p.lower = Vec::Constant(N, -1.0);
    p.upper = Vec::Constant(N, 1.0);
    LpOutcome out = lp_solve(p);
    REQUIRE(out.optimal());
    CHECK(out.value == doctest::Approx(ref).epsilon(1e-9));
    CHECK((A * out.point - b).lpNorm<Eigen::Infinity>() < 1e-9);
    CHECK(out.point.lpNorm<Eigen::Infinity>() < 1.0 + 1e-9);
  }
  CHECK(tested >= 40);
}

TEST_CASE("optimal value is invariant under row permutation") {
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    int N = 6, m = 4;
    Mat L(m, N);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < N; ++j) L(i, j) = u(rng);
    Vec r = L * Vec::Zero(N) + Vec::Ones(m);  // contains the origin
    Vec c(N);
    for (int j = 0; j < N; ++j) c(j) = u(rng);

    LpProblem p = LpProblem::maximize(c);
    p.ineq_lhs = L;
    p.ineq_rhs = r;
    p.lower = Vec::Constant(N, -2.0);
    p.upper = Vec::Constant(N, 2.0);
    LpOutcome a = lp_solve(p);

    std::vector<int> perm(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) perm[static_cast<size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    LpProblem q = p;
    for (int i = 0; i < m; ++i) {
      q.ineq_lhs.row(i) = L.row(perm[static_cast<size_t>(i)]);
      q.ineq_rhs(i) = r(perm[static_cast<size_t>(i)]);
    }
    LpOutcome bq = lp_solve(q);
    REQUIRE(a.optimal());
    REQUIRE(bq.optimal());
    CHECK(a.value == doctest::Approx(bq.value).epsilon(1e-9));
  }
}
