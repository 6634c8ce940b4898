#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tpoly/linalg.hpp"
#include "tpoly/rational.hpp"

namespace tpoly {

enum class FamilyKind { Classical, Axial, Planar };

/// One of the three transportation-polytope families with its shape
/// parameters. Classical tables are m×n; the 3-way families are l×m×n.
struct Family {
  FamilyKind kind = FamilyKind::Classical;
  int l = 1, m = 1, n = 1;

  static Family classical(int m, int n) { return {FamilyKind::Classical, 1, m, n}; }
  static Family axial(int l, int m, int n) { return {FamilyKind::Axial, l, m, n}; }
  static Family planar(int l, int m, int n) { return {FamilyKind::Planar, l, m, n}; }

  bool is_3way() const { return kind != FamilyKind::Classical; }
  Eigen::Index num_columns() const {
    return kind == FamilyKind::Classical ? Eigen::Index(m) * n : Eigen::Index(l) * m * n;
  }
  Eigen::Index num_rows() const {
    switch (kind) {
      case FamilyKind::Classical: return m + n;
      case FamilyKind::Axial: return l + m + n;
      case FamilyKind::Planar: return Eigen::Index(l) * m + Eigen::Index(l) * n + Eigen::Index(m) * n;
    }
    return 0;
  }
  /// Exact rank of the constraint matrix.
  Eigen::Index system_rank() const {
    switch (kind) {
      case FamilyKind::Classical: return m + n - 1;
      case FamilyKind::Axial: return l + m + n - 2;
      case FamilyKind::Planar:
        return Eigen::Index(l) * m + Eigen::Index(l) * n + Eigen::Index(m) * n - l - m - n + 1;
    }
    return 0;
  }
  std::string str() const {
    switch (kind) {
      case FamilyKind::Classical:
        return "classical " + std::to_string(m) + "x" + std::to_string(n);
      case FamilyKind::Axial:
        return "axial " + std::to_string(l) + "x" + std::to_string(m) + "x" + std::to_string(n);
      case FamilyKind::Planar:
        return "planar " + std::to_string(l) + "x" + std::to_string(m) + "x" + std::to_string(n);
    }
    return "?";
  }
  std::string shape_str() const {
    return kind == FamilyKind::Classical
               ? std::to_string(m) + "x" + std::to_string(n)
               : std::to_string(l) + "x" + std::to_string(m) + "x" + std::to_string(n);
  }
  bool operator==(const Family&) const = default;
};

/// 1-based cell index. Classical tables use (i,j) and leave k at 0.
struct TableIndex {
  int i = 0, j = 0, k = 0;
  bool operator==(const TableIndex&) const = default;
  auto operator<=>(const TableIndex&) const = default;
};

/// Column position of a cell in the canonical (lexicographic) column order.
inline Eigen::Index column_of(const Family& f, const TableIndex& t) {
  if (f.kind == FamilyKind::Classical) return Eigen::Index(t.i - 1) * f.n + (t.j - 1);
  return (Eigen::Index(t.i - 1) * f.m + (t.j - 1)) * f.n + (t.k - 1);
}

inline TableIndex cell_of(const Family& f, Eigen::Index col) {
  if (f.kind == FamilyKind::Classical)
    return {static_cast<int>(col / f.n) + 1, static_cast<int>(col % f.n) + 1, 0};
  const int k = static_cast<int>(col % f.n);
  const int j = static_cast<int>((col / f.n) % f.m);
  const int i = static_cast<int>(col / (Eigen::Index(f.m) * f.n));
  return {i + 1, j + 1, k + 1};
}

/// Marginal data. Classical uses x (row sums) and y (column sums); axial uses
/// x, y, z; planar uses the three line-sum matrices U (m×n), V (l×n), W (l×m).
struct Marginals {
  RatVector x, y, z;
  RatMatrix U, V, W;
};

/// The system {a ≥ 0 : B a = c} for one family and one choice of marginals,
/// with B in the canonical 0/1 form and c assembled in row order.
struct ConstraintSystem {
  Family fam;
  RatMatrix B;
  RatVector c;
  std::vector<std::string> row_labels;
  Eigen::Index rank = 0;
};

namespace detail {

inline void require_nonnegative(const RatVector& v, const char* name) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) < 0) throw InputError(std::string("negative entry in marginal ") + name);
}

inline void require_nonnegative(const RatMatrix& m, const char* name) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) < 0) throw InputError(std::string("negative entry in marginal ") + name);
}

}  // namespace detail

/// Validates marginal shapes and the exact consistency identities for the
/// family; throws InputError / InfeasibleMarginalsError.
inline void check_marginals(const Family& f, const Marginals& mg) {
  switch (f.kind) {
    case FamilyKind::Classical: {
      if (mg.x.size() != f.m || mg.y.size() != f.n)
        throw InputError("classical marginals must have shapes m and n");
      detail::require_nonnegative(mg.x, "x");
      detail::require_nonnegative(mg.y, "y");
      if (mg.x.sum() != mg.y.sum())
        throw InfeasibleMarginalsError("row and column sums disagree");
      break;
    }
    case FamilyKind::Axial: {
      if (mg.x.size() != f.l || mg.y.size() != f.m || mg.z.size() != f.n)
        throw InputError("axial marginals must have shapes l, m and n");
      detail::require_nonnegative(mg.x, "x");
      detail::require_nonnegative(mg.y, "y");
      detail::require_nonnegative(mg.z, "z");
      if (mg.x.sum() != mg.y.sum() || mg.y.sum() != mg.z.sum())
        throw InfeasibleMarginalsError("axis sums of x, y, z disagree");
      break;
    }
    case FamilyKind::Planar: {
      if (mg.U.rows() != f.m || mg.U.cols() != f.n || mg.V.rows() != f.l ||
          mg.V.cols() != f.n || mg.W.rows() != f.l || mg.W.cols() != f.m)
        throw InputError("planar marginals must have shapes m×n, l×n, l×m");
      detail::require_nonnegative(mg.U, "U");
      detail::require_nonnegative(mg.V, "V");
      detail::require_nonnegative(mg.W, "W");
      const Rational total = mg.U.sum();
      if (mg.V.sum() != total || mg.W.sum() != total)
        throw InfeasibleMarginalsError("grand totals of U, V, W disagree");
      for (int j = 0; j < f.m; ++j)
        if (mg.U.row(j).sum() != mg.W.col(j).sum())
          throw InfeasibleMarginalsError("line sums of U and W disagree");
      for (int i = 0; i < f.l; ++i)
        if (mg.V.row(i).sum() != mg.W.row(i).sum())
          throw InfeasibleMarginalsError("line sums of V and W disagree");
      for (int k = 0; k < f.n; ++k)
        if (mg.U.col(k).sum() != mg.V.col(k).sum())
          throw InfeasibleMarginalsError("line sums of U and V disagree");
      break;
    }
  }
}

/// Builds the constraint system for the family. Columns follow the canonical
/// lexicographic cell order; rows follow the marginal order documented on
/// each case.
inline ConstraintSystem build_system(const Family& f, const Marginals& mg) {
  check_marginals(f, mg);
  ConstraintSystem sys;
  sys.fam = f;
  const Eigen::Index cols = f.num_columns(), rows = f.num_rows();
  sys.B = RatMatrix::Zero(rows, cols);
  sys.c = RatVector::Zero(rows);
  sys.row_labels.resize(rows);
  switch (f.kind) {
    case FamilyKind::Classical: {
      // rows: x_1..x_m then y_1..y_n
      for (int i = 1; i <= f.m; ++i) {
        sys.c(i - 1) = mg.x(i - 1);
        sys.row_labels[i - 1] = "x" + std::to_string(i);
      }
      for (int j = 1; j <= f.n; ++j) {
        sys.c(f.m + j - 1) = mg.y(j - 1);
        sys.row_labels[f.m + j - 1] = "y" + std::to_string(j);
      }
      for (int i = 1; i <= f.m; ++i)
        for (int j = 1; j <= f.n; ++j) {
          const Eigen::Index col = column_of(f, {i, j, 0});
          sys.B(i - 1, col) = 1;
          sys.B(f.m + j - 1, col) = 1;
        }
      break;
    }
    case FamilyKind::Axial: {
      // rows: x_1..x_l, y_1..y_m, z_1..z_n
      for (int i = 1; i <= f.l; ++i) {
        sys.c(i - 1) = mg.x(i - 1);
        sys.row_labels[i - 1] = "x" + std::to_string(i);
      }
      for (int j = 1; j <= f.m; ++j) {
        sys.c(f.l + j - 1) = mg.y(j - 1);
        sys.row_labels[f.l + j - 1] = "y" + std::to_string(j);
      }
      for (int k = 1; k <= f.n; ++k) {
        sys.c(f.l + f.m + k - 1) = mg.z(k - 1);
        sys.row_labels[f.l + f.m + k - 1] = "z" + std::to_string(k);
      }
      for (int i = 1; i <= f.l; ++i)
        for (int j = 1; j <= f.m; ++j)
          for (int k = 1; k <= f.n; ++k) {
            const Eigen::Index col = column_of(f, {i, j, k});
            sys.B(i - 1, col) = 1;
            sys.B(f.l + j - 1, col) = 1;
            sys.B(f.l + f.m + k - 1, col) = 1;
          }
      break;
    }
    case FamilyKind::Planar: {
      // rows: U_{1,1}..U_{m,n}, V_{1,1}..V_{l,n}, W_{1,1}..W_{l,m}, each block
      // in lexicographic order of its own index pair.
      const Eigen::Index uoff = 0, voff = Eigen::Index(f.m) * f.n,
                         woff = voff + Eigen::Index(f.l) * f.n;
      for (int j = 1; j <= f.m; ++j)
        for (int k = 1; k <= f.n; ++k) {
          const Eigen::Index r = uoff + Eigen::Index(j - 1) * f.n + (k - 1);
          sys.c(r) = mg.U(j - 1, k - 1);
          sys.row_labels[r] = "U" + std::to_string(j) + "," + std::to_string(k);
        }
      for (int i = 1; i <= f.l; ++i)
        for (int k = 1; k <= f.n; ++k) {
          const Eigen::Index r = voff + Eigen::Index(i - 1) * f.n + (k - 1);
          sys.c(r) = mg.V(i - 1, k - 1);
          sys.row_labels[r] = "V" + std::to_string(i) + "," + std::to_string(k);
        }
      for (int i = 1; i <= f.l; ++i)
        for (int j = 1; j <= f.m; ++j) {
          const Eigen::Index r = woff + Eigen::Index(i - 1) * f.m + (j - 1);
          sys.c(r) = mg.W(i - 1, j - 1);
          sys.row_labels[r] = "W" + std::to_string(i) + "," + std::to_string(j);
        }
      for (int i = 1; i <= f.l; ++i)
        for (int j = 1; j <= f.m; ++j)
          for (int k = 1; k <= f.n; ++k) {
            const Eigen::Index col = column_of(f, {i, j, k});
            sys.B(uoff + Eigen::Index(j - 1) * f.n + (k - 1), col) = 1;
            sys.B(voff + Eigen::Index(i - 1) * f.n + (k - 1), col) = 1;
            sys.B(woff + Eigen::Index(i - 1) * f.m + (j - 1), col) = 1;
          }
      break;
    }
  }
  sys.rank = f.system_rank();
  return sys;
}

/// Marginals of a full table given in canonical column order.
inline Marginals marginals_of_table(const Family& f, const RatVector& table) {
  if (table.size() != f.num_columns()) throw InputError("table has wrong length");
  Marginals mg;
  if (f.kind == FamilyKind::Classical) {
    mg.x = RatVector::Zero(f.m);
    mg.y = RatVector::Zero(f.n);
    for (int i = 1; i <= f.m; ++i)
      for (int j = 1; j <= f.n; ++j) {
        const Rational& v = table(column_of(f, {i, j, 0}));
        mg.x(i - 1) += v;
        mg.y(j - 1) += v;
      }
    return mg;
  }
  if (f.kind == FamilyKind::Axial) {
    mg.x = RatVector::Zero(f.l);
    mg.y = RatVector::Zero(f.m);
    mg.z = RatVector::Zero(f.n);
  } else {
    mg.U = RatMatrix::Zero(f.m, f.n);
    mg.V = RatMatrix::Zero(f.l, f.n);
    mg.W = RatMatrix::Zero(f.l, f.m);
  }
  for (int i = 1; i <= f.l; ++i)
    for (int j = 1; j <= f.m; ++j)
      for (int k = 1; k <= f.n; ++k) {
        const Rational& v = table(column_of(f, {i, j, k}));
        if (f.kind == FamilyKind::Axial) {
          mg.x(i - 1) += v;
          mg.y(j - 1) += v;
          mg.z(k - 1) += v;
        } else {
          mg.U(j - 1, k - 1) += v;
          mg.V(i - 1, k - 1) += v;
          mg.W(i - 1, j - 1) += v;
        }
      }
  return mg;
}

/// Polytope dimension for generic (non-degenerate) marginals.
inline int dimension(const Family& f) {
  switch (f.kind) {
    case FamilyKind::Classical: return (f.m - 1) * (f.n - 1);
    case FamilyKind::Axial: return f.l * f.m * f.n - f.l - f.m - f.n + 2;
    case FamilyKind::Planar: return (f.l - 1) * (f.m - 1) * (f.n - 1);
  }
  return 0;
}

/// splitmix64; fixed algorithm so sampling is reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

 private:
  std::uint64_t state_;
};

/// Marginals of a random strictly positive integer table with entries in
/// [1, 10^6]; always feasible by construction and deterministic per seed.
inline Marginals sample_marginals(const Family& f, std::uint64_t seed) {
  Rng rng(seed);
  RatVector table(f.num_columns());
  for (Eigen::Index t = 0; t < table.size(); ++t) table(t) = Rational(rng.uniform(1, 1000000));
  return marginals_of_table(f, table);
}

/// Constraint system of the family with placeholder (uniform-table)
/// marginals; used where only the matrix B matters.
inline ConstraintSystem shape_system(const Family& f) {
  return build_system(f, marginals_of_table(f, RatVector::Ones(f.num_columns())));
}

}  // namespace tpoly
