#pragma once

#include <vector>

#include "tpoly/linalg.hpp"
#include "tpoly/rational.hpp"

namespace tpoly {

enum class LpSense { Min, Max };
enum class LpStatus { Optimal, Infeasible, Unbounded };

/// A linear program in equality standard form: optimize c·x subject to
/// Ax = b, x ≥ 0.
struct LpProblem {
  RatMatrix A;
  RatVector b;
  RatVector objective;
  LpSense sense = LpSense::Max;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  RatVector x;        // only meaningful when status == Optimal
  Rational value{0};  // likewise
};

/// Exact two-phase simplex with Bland's smallest-index rule for both the
/// entering and the leaving variable, which makes the solver deterministic
/// and immune to cycling under the degenerate right-hand sides that show up
/// on chamber walls.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LpProblem& p) : prob_(p) {
    if (p.A.cols() != p.objective.size())
      throw InputError("simplex: objective length must match column count");
    if (p.A.rows() != p.b.size())
      throw InputError("simplex: right-hand side length must match row count");
  }

  LpSolution solve() {
    const Eigen::Index m = prob_.A.rows(), n = prob_.A.cols();
    // Phase I tableau: real variables then one artificial per row. Rows that
    // already contain a unit column (slack-style) use it as the initial basic
    // variable instead of an artificial.
    T_.resize(m + 1, n + m + 1);
    T_.setZero();
    for (Eigen::Index i = 0; i < m; ++i) {
      const int row_sign = prob_.b(i) < 0 ? -1 : 1;
      for (Eigen::Index j = 0; j < n; ++j) T_(i, j) = row_sign * prob_.A(i, j);
      T_(i, n + m) = row_sign * prob_.b(i);
    }
    basis_.assign(m, -1);
    {
      // Columns that are ±unit vectors give the row a ready-made basic
      // variable (a −1 entry is usable when the right-hand side is zero,
      // by negating the row).
      std::vector<bool> row_done(m, false);
      for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::Index row = -1;
        int unit = 0;
        for (Eigen::Index i = 0; i < m; ++i) {
          if (T_(i, j) == 0) continue;
          if (row >= 0 || (T_(i, j) != 1 && T_(i, j) != -1)) { unit = 0; break; }
          row = i;
          unit = T_(i, j) == 1 ? 1 : -1;
        }
        if (unit == 0 || row < 0 || row_done[row]) continue;
        if (unit == -1) {
          if (T_(row, n + m) != 0) continue;
          T_.row(row) = -T_.row(row);
        }
        basis_[row] = static_cast<int>(j);
        row_done[row] = true;
      }
    }
    for (Eigen::Index i = 0; i < m; ++i)
      if (basis_[i] < 0) {
        T_(i, n + i) = 1;
        basis_[i] = static_cast<int>(n + i);
      }
    // Phase I objective: minimize the sum of artificials, written in terms of
    // the nonbasic columns.
    for (Eigen::Index j = 0; j <= n + m; ++j) {
      Rational s = 0;
      for (Eigen::Index i = 0; i < m; ++i)
        if (basis_[i] >= n) s += T_(i, j);
      T_(m, j) = (j >= n && j < n + m) ? Rational(0) : -s;
    }
    ncols_ = n + m;
    run_pivots(static_cast<int>(n + m));
    if (T_(m, n + m) != 0) return {LpStatus::Infeasible, {}, 0};

    // Drive artificials out of the basis; rows that cannot be pivoted on a
    // real column are redundant equations and get dropped.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (basis_[i] < n) { keep.push_back(i); continue; }
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < n; ++j)
        if (T_(i, j) != 0) { enter = j; break; }
      if (enter >= 0) {
        pivot(i, enter);
        keep.push_back(i);
      }
    }
    if (static_cast<Eigen::Index>(keep.size()) < m) {
      RatMatrix T2(static_cast<Eigen::Index>(keep.size()) + 1, T_.cols());
      std::vector<int> basis2;
      for (size_t k = 0; k < keep.size(); ++k) {
        T2.row(static_cast<Eigen::Index>(k)) = T_.row(keep[k]);
        basis2.push_back(basis_[keep[k]]);
      }
      T2.row(static_cast<Eigen::Index>(keep.size())) = T_.row(m);
      T_ = T2;
      basis_ = basis2;
    }
    const Eigen::Index m2 = static_cast<Eigen::Index>(basis_.size());

    // Phase II objective (always minimize internally).
    for (Eigen::Index j = 0; j <= n + m; ++j) T_(m2, j) = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      T_(m2, j) = prob_.sense == LpSense::Min ? prob_.objective(j) : -prob_.objective(j);
    for (Eigen::Index i = 0; i < m2; ++i) {
      const Rational f = T_(m2, basis_[i]);
      if (f != 0)
        for (Eigen::Index j = 0; j <= n + m; ++j) T_(m2, j) -= f * T_(i, j);
    }
    ncols_ = n;  // artificials may not re-enter
    if (!run_pivots(static_cast<int>(n + m))) return {LpStatus::Unbounded, {}, 0};

    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.x = RatVector::Zero(n);
    for (Eigen::Index i = 0; i < m2; ++i)
      if (basis_[i] < n) sol.x(basis_[i]) = T_(i, n + m);
    sol.value = -T_(m2, n + m);
    if (prob_.sense == LpSense::Max) sol.value = -sol.value;
    return sol;
  }

 private:
  // Runs Bland pivots until optimality (true) or unboundedness (false).
  bool run_pivots(int rhs_col) {
    const Eigen::Index m = T_.rows() - 1;
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < ncols_; ++j)
        if (T_(m, j) < 0) { enter = j; break; }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      Rational best;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (T_(i, enter) <= 0) continue;
        Rational ratio = T_(i, rhs_col) / T_(i, enter);
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const Rational inv = 1 / T_(row, col);
    T_.row(row) *= inv;
    for (Eigen::Index i = 0; i < T_.rows(); ++i) {
      if (i == row || T_(i, col) == 0) continue;
      const Rational f = T_(i, col);
      T_.row(i) -= f * T_.row(row);
    }
    basis_[row] = static_cast<int>(col);
  }

  LpProblem prob_;
  RatMatrix T_;
  std::vector<int> basis_;
  Eigen::Index ncols_ = 0;
};

inline LpSolution simplex_solve(const LpProblem& p) { return SimplexSolver(p).solve(); }

/// Feasibility of {x ≥ 0 : Ax = b} with a witness point.
inline std::optional<RatVector> lp_feasible_point(const RatMatrix& A, const RatVector& b) {
  LpProblem p{A, b, RatVector::Zero(A.cols()), LpSense::Min};
  auto sol = simplex_solve(p);
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  return sol.x;
}

/// Maximal slack eps such that {x ≥ 0, Ax = b, x_i ≥ eps for i in strict}
/// is feasible, capped at 1. Nothing when even eps ≤ 0 is infeasible.
/// Used for "strict interior" tests: the answer is positive iff a point with
/// all strict coordinates positive exists.
inline std::optional<Rational> max_strict_slack(const RatMatrix& A, const RatVector& b,
                                                const std::vector<Eigen::Index>& strict) {
  const Eigen::Index m = A.rows(), n = A.cols(), k = static_cast<Eigen::Index>(strict.size());
  // Variables: x (n), eps, surplus s_i (k), slack for eps ≤ 1.
  RatMatrix A2 = RatMatrix::Zero(m + k + 1, n + 1 + k + 1);
  RatVector b2 = RatVector::Zero(m + k + 1);
  A2.block(0, 0, m, n) = A;
  b2.head(m) = b;
  for (Eigen::Index i = 0; i < k; ++i) {
    A2(m + i, strict[i]) = 1;
    A2(m + i, n) = -1;
    A2(m + i, n + 1 + i) = -1;
  }
  A2(m + k, n) = 1;
  A2(m + k, n + 1 + k) = 1;
  b2(m + k) = 1;
  RatVector c = RatVector::Zero(n + 1 + k + 1);
  c(n) = 1;
  auto sol = simplex_solve({A2, b2, c, LpSense::Max});
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  return sol.value;
}

}  // namespace tpoly
