#pragma once

#include <optional>
#include <vector>

#include "tpoly/rational.hpp"

namespace tpoly {
namespace detail {

/// Advances a k-combination of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  for (int i = k - 1; i >= 0; --i) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Reduces M to row echelon form in place with exact arithmetic and returns
/// the pivot column indices. Pivot choice is the first nonzero entry in each
/// column, so the result is deterministic.
inline std::vector<Eigen::Index> row_echelon(RatMatrix& M) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < M.cols() && row < M.rows(); ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index r = row; r < M.rows(); ++r)
      if (M(r, col) != 0) { p = r; break; }
    if (p < 0) continue;
    if (p != row) M.row(p).swap(M.row(row));
    const Rational inv = 1 / M(row, col);
    for (Eigen::Index c = col; c < M.cols(); ++c) M(row, c) *= inv;
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
      if (r == row || M(r, col) == 0) continue;
      const Rational f = M(r, col);
      for (Eigen::Index c = col; c < M.cols(); ++c) M(r, c) -= f * M(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Reduced row echelon form (canonical for a given row space).
inline RatMatrix rref(RatMatrix M, std::vector<Eigen::Index>* pivots_out = nullptr) {
  auto pivots = row_echelon(M);
  if (pivots_out) *pivots_out = pivots;
  return M.topRows(static_cast<Eigen::Index>(pivots.size()));
}

inline Eigen::Index rank(const RatMatrix& M) {
  RatMatrix copy = M;
  return static_cast<Eigen::Index>(row_echelon(copy).size());
}

inline Eigen::Index rank(const IntMatrix& M) { return rank(to_rational(M)); }

/// True when the two matrices span the same row space.
inline bool same_row_space(const RatMatrix& A, const RatMatrix& B) {
  if (A.cols() != B.cols()) return false;
  RatMatrix ra = rref(A), rb = rref(B);
  return ra.rows() == rb.rows() && ra == rb;
}

/// Solves Ax = b exactly for square A. Returns nothing when A is singular.
inline std::optional<RatVector> solve_square(const RatMatrix& A, const RatVector& b) {
  if (A.rows() != A.cols()) throw InputError("solve_square: matrix is not square");
  if (A.rows() != b.size()) throw InputError("solve_square: dimension mismatch");
  const Eigen::Index n = A.rows();
  RatMatrix M(n, n + 1);
  M.leftCols(n) = A;
  M.col(n) = b;
  auto pivots = row_echelon(M);
  // Invertible iff the pivots are exactly the n coefficient columns.
  if (static_cast<Eigen::Index>(pivots.size()) != n || pivots.back() >= n)
    return std::nullopt;
  return RatVector(M.col(n));
}

/// Exact inverse; nothing when singular.
inline std::optional<RatMatrix> inverse(const RatMatrix& A) {
  if (A.rows() != A.cols()) throw InputError("inverse: matrix is not square");
  const Eigen::Index n = A.rows();
  RatMatrix M(n, 2 * n);
  M.leftCols(n) = A;
  M.rightCols(n) = RatMatrix::Identity(n, n);
  auto pivots = row_echelon(M);
  if (static_cast<Eigen::Index>(pivots.size()) != n || pivots.back() >= n)
    return std::nullopt;
  return RatMatrix(M.rightCols(n));
}

/// Columns of the result form the canonical (RREF-derived) basis of the exact
/// right-nullspace of A. A·N = 0 and the column count is cols − rank.
inline RatMatrix nullspace_basis(const RatMatrix& A) {
  RatMatrix M = A;
  auto pivots = row_echelon(M);
  const Eigen::Index n = A.cols();
  const Eigen::Index r = static_cast<Eigen::Index>(pivots.size());
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  RatMatrix N = RatMatrix::Zero(n, n - r);
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    N(free, k) = 1;
    for (Eigen::Index i = 0; i < r; ++i) N(pivots[i], k) = -M(i, free);
    ++k;
  }
  return N;
}

/// Exact determinant by fraction-free (Bareiss) elimination on integers.
inline Int determinant(const IntMatrix& A) {
  const Eigen::Index n = A.rows();
  if (n != A.cols()) throw InputError("determinant: matrix is not square");
  if (n == 0) return 1;
  IntMatrix M = A;
  Int prev = 1;
  int sgn = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      Eigen::Index p = -1;
      for (Eigen::Index r = k + 1; r < n; ++r)
        if (M(r, k) != 0) { p = r; break; }
      if (p < 0) return 0;
      M.row(p).swap(M.row(k));
      sgn = -sgn;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sgn > 0 ? M(n - 1, n - 1) : Int(-M(n - 1, n - 1));
}

inline Rational determinant(const RatMatrix& A) {
  const Eigen::Index n = A.rows();
  if (n != A.cols()) throw InputError("determinant: matrix is not square");
  RatMatrix M = A;
  Rational det = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = -1;
    for (Eigen::Index r = k; r < n; ++r)
      if (M(r, k) != 0) { p = r; break; }
    if (p < 0) return 0;
    if (p != k) { M.row(p).swap(M.row(k)); det = -det; }
    det *= M(k, k);
    const Rational inv = 1 / M(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (M(i, k) == 0) continue;
      const Rational f = M(i, k) * inv;
      for (Eigen::Index j = k; j < n; ++j) M(i, j) -= f * M(k, j);
    }
  }
  return det;
}

/// Selects a deterministic maximal independent subset of the rows of A
/// (greedy in row order).
inline std::vector<Eigen::Index> independent_rows(const RatMatrix& A) {
  std::vector<Eigen::Index> chosen;
  RatMatrix W(A.cols(), std::min(A.rows(), A.cols()));
  Eigen::Index r = 0;
  RatMatrix probe;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    probe.resize(r + 1, A.cols());
    for (Eigen::Index k = 0; k < r; ++k) probe.row(k) = A.row(chosen[k]);
    probe.row(r) = A.row(i);
    if (rank(probe) == r + 1) {
      chosen.push_back(i);
      ++r;
      if (r == std::min(A.rows(), A.cols())) break;
    }
  }
  return chosen;
}

/// The unique (up to sign) primitive integer normal of the hyperplane spanned
/// by the given d−1 independent columns of V (each of dimension d).
/// Sign convention: first nonzero coordinate positive.
inline std::optional<IntVector> hyperplane_normal(const IntMatrix& V,
                                                  const std::vector<int>& subset) {
  const Eigen::Index d = V.rows();
  if (static_cast<Eigen::Index>(subset.size()) != d - 1)
    throw InputError("hyperplane_normal: need d-1 vectors");
  RatMatrix S(d - 1, d);
  for (Eigen::Index i = 0; i < d - 1; ++i)
    for (Eigen::Index j = 0; j < d; ++j) S(i, j) = Rational(V(j, subset[i]));
  RatMatrix N = nullspace_basis(S);
  if (N.cols() != 1) return std::nullopt;  // subset does not span a hyperplane
  IntVector n = to_primitive_integer(RatVector(N.col(0)));
  for (Eigen::Index i = 0; i < n.size(); ++i) {
    if (n(i) == 0) continue;
    if (n(i) < 0) n = -n;
    break;
  }
  return n;
}

}  // namespace tpoly
