#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tpoly/models.hpp"
#include "tpoly/simplex.hpp"

namespace tpoly {

/// Sorted set of column indices of B; a basis when the columns are
/// independent and the set has full rank size.
using Basis = std::vector<int>;

/// A vertex of P_c with its exact point, support, and every basis discovered
/// for it (one basis in the non-degenerate case).
struct Vertex {
  RatVector point;
  std::vector<int> support;
  std::vector<Basis> bases;
};

/// The vertex-edge graph of P_c.
struct SkeletonGraph {
  Family fam;
  int dim = 0;
  std::vector<Vertex> vertices;
  std::vector<std::vector<int>> adj;
  bool degenerate = false;  // some vertex has a zero basic variable
  bool is_simple = false;   // every degree equals dim
  /// For degenerate polytopes the point-level adjacency is derived from a
  /// perturbed polytope and is reported as a best-effort feature.
  bool adjacency_exact = true;
};

/// Full-row-rank restriction of a constraint system (deterministic greedy
/// choice of independent rows). All enumeration runs on this form.
struct ReducedSystem {
  Family fam;
  RatMatrix B;  // rank x cols, full row rank
  RatVector c;
  std::vector<Eigen::Index> row_choice;
};

inline ReducedSystem reduce_system(const ConstraintSystem& sys) {
  ReducedSystem rs;
  rs.fam = sys.fam;
  rs.row_choice = independent_rows(sys.B);
  if (static_cast<Eigen::Index>(rs.row_choice.size()) != sys.rank)
    throw InputError("constraint matrix rank does not match the family formula");
  rs.B.resize(sys.rank, sys.B.cols());
  rs.c.resize(sys.rank);
  for (Eigen::Index i = 0; i < sys.rank; ++i) {
    rs.B.row(i) = sys.B.row(rs.row_choice[i]);
    rs.c(i) = sys.c(rs.row_choice[i]);
  }
  return rs;
}

namespace detail {

inline RatMatrix columns(const RatMatrix& B, const Basis& b) {
  RatMatrix M(B.rows(), static_cast<Eigen::Index>(b.size()));
  for (size_t k = 0; k < b.size(); ++k) M.col(static_cast<Eigen::Index>(k)) = B.col(b[k]);
  return M;
}

inline std::string point_key(const RatVector& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    s += v(i).str();
    s += ';';
  }
  return s;
}

struct VectorIntHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ULL;
    for (int x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b9;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

}  // namespace detail

/// Basic solution of the basis b: the unique x supported on b with Bx = c,
/// returned when feasible (x ≥ 0), std::nullopt otherwise.
inline std::optional<Vertex> basic_solution(const ReducedSystem& rs, const Basis& b) {
  if (static_cast<Eigen::Index>(b.size()) != rs.B.rows())
    throw InputError("basis has wrong size");
  auto xb = solve_square(detail::columns(rs.B, b), rs.c);
  if (!xb) throw InputError("column set is not a basis");
  Vertex v;
  v.point = RatVector::Zero(rs.B.cols());
  for (size_t k = 0; k < b.size(); ++k) {
    if ((*xb)(static_cast<Eigen::Index>(k)) < 0) return std::nullopt;
    v.point(b[k]) = (*xb)(static_cast<Eigen::Index>(k));
  }
  for (Eigen::Index i = 0; i < v.point.size(); ++i)
    if (v.point(i) != 0) v.support.push_back(static_cast<int>(i));
  v.bases.push_back(b);
  return v;
}

inline std::optional<Vertex> basic_solution(const ConstraintSystem& sys, const Basis& b) {
  return basic_solution(reduce_system(sys), b);
}

/// Scans every rank-sized column subset and returns one Vertex per distinct
/// feasible basic point, bases grouped per point. Vertices are ordered by
/// their lexicographically smallest basis.
inline std::vector<Vertex> enumerate_vertices_exhaustive(const ConstraintSystem& sys) {
  const ReducedSystem rs = reduce_system(sys);
  const int n = static_cast<int>(rs.B.cols());
  const int r = static_cast<int>(rs.B.rows());
  std::vector<int> comb(r);
  for (int i = 0; i < r; ++i) comb[i] = i;
  std::map<std::string, size_t> by_point;
  std::vector<Vertex> out;
  do {
    RatMatrix M = detail::columns(rs.B, comb);
    auto xb = solve_square(M, rs.c);
    if (!xb) continue;  // singular: not a basis
    bool feasible = true;
    for (Eigen::Index i = 0; i < xb->size(); ++i)
      if ((*xb)(i) < 0) { feasible = false; break; }
    if (!feasible) continue;
    RatVector point = RatVector::Zero(n);
    for (int k = 0; k < r; ++k) point(comb[k]) = (*xb)(k);
    const std::string key = detail::point_key(point);
    auto it = by_point.find(key);
    if (it == by_point.end()) {
      Vertex v;
      v.point = point;
      for (Eigen::Index i = 0; i < point.size(); ++i)
        if (point(i) != 0) v.support.push_back(static_cast<int>(i));
      v.bases.push_back(comb);
      by_point.emplace(key, out.size());
      out.push_back(std::move(v));
    } else {
      out[it->second].bases.push_back(comb);
    }
  } while (detail::next_combination(comb, n));
  if (out.empty()) throw InfeasibleMarginalsError("polytope is empty");
  std::sort(out.begin(), out.end(),
            [](const Vertex& a, const Vertex& b) { return a.bases.front() < b.bases.front(); });
  return out;
}

// ---------------------------------------------------------------------------
// Pivot enumeration on the lexicographically perturbed polytope.
//
// The right-hand side c is replaced by the matrix [c | I]: a basis is kept
// when every row of Binv*[c | I] is lex-positive. The perturbed polytope is
// non-degenerate, its basis graph is the vertex graph, and grouping perturbed
// vertices by their unperturbed point recovers the exact vertex set of P_c.
// ---------------------------------------------------------------------------

namespace detail {

using LexRow = RatVector;  // length r+1: unperturbed value, then perturbation row

inline int lex_sign(const LexRow& row) {
  for (Eigen::Index i = 0; i < row.size(); ++i)
    if (row(i) != 0) return row(i) > 0 ? 1 : -1;
  return 0;
}

/// Dictionary of one basis of the perturbed system.
struct LexDictionary {
  Basis basis;
  RatMatrix binv;  // r x r
  RatMatrix lex;   // r x (r+1): [ binv*c | binv ]

  static LexDictionary build(const ReducedSystem& rs, const Basis& b) {
    LexDictionary d;
    d.basis = b;
    auto inv = inverse(columns(rs.B, b));
    if (!inv) throw InputError("column set is not a basis");
    d.binv = *inv;
    d.lex.resize(d.binv.rows(), d.binv.cols() + 1);
    d.lex.col(0) = d.binv * rs.c;
    d.lex.rightCols(d.binv.cols()) = d.binv;
    return d;
  }

  bool lex_feasible() const {
    for (Eigen::Index i = 0; i < lex.rows(); ++i)
      if (lex_sign(lex.row(i).transpose()) <= 0) return false;
    return true;
  }
};

/// Lexicographic ratio test for entering column e; returns the leaving row,
/// or -1 when the direction is a ray. The minimizer is unique because the
/// perturbed polytope is non-degenerate.
inline int lex_leaving_row(const LexDictionary& d, const RatVector& dir) {
  int best = -1;
  LexRow best_ratio;
  for (Eigen::Index i = 0; i < dir.size(); ++i) {
    if (dir(i) <= 0) continue;
    LexRow ratio = (d.lex.row(i) / dir(i)).transpose();
    if (best < 0) {
      best = static_cast<int>(i);
      best_ratio = ratio;
      continue;
    }
    LexRow diff = ratio - best_ratio;
    const int s = lex_sign(diff);
    if (s == 0) throw std::logic_error("lexicographic ratio tie: dictionary is singular");
    if (s < 0) {
      best = static_cast<int>(i);
      best_ratio = ratio;
    }
  }
  return best;
}

}  // namespace detail

/// A lex-feasible starting basis via exact phase-1 with lexicographic ratio
/// tests. Throws InfeasibleMarginalsError when P_c is empty and
/// DegenerateRhsError when c lies on the boundary of cone(B) (the perturbed
/// polytope is then empty and pivot enumeration cannot start).
inline Basis find_feasible_basis(const ReducedSystem& rs) {
  const Eigen::Index r = rs.B.rows(), n = rs.B.cols();
  // Tableau over [B | I]; lex right-hand side [c | I]. Marginal data is
  // nonnegative, so the artificial basis is lex-feasible as-is.
  RatMatrix T(r, n + r);
  T.leftCols(n) = rs.B;
  T.rightCols(r) = RatMatrix::Identity(r, r);
  RatMatrix L(r, 1 + r);
  L.col(0) = rs.c;
  L.rightCols(r) = RatMatrix::Identity(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    if (rs.c(i) < 0) throw InputError("marginal right-hand side must be nonnegative");
  std::vector<int> basis(r);
  for (Eigen::Index i = 0; i < r; ++i) basis[i] = static_cast<int>(n + i);
  RatVector cost = RatVector::Zero(n + r);  // reduced costs of phase-1
  for (Eigen::Index j = 0; j < n; ++j) cost(j) = -T.col(j).sum();

  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n; ++j)  // artificials may not re-enter
      if (cost(j) < 0) { enter = j; break; }
    if (enter < 0) break;
    int leave = -1;
    detail::LexRow best;
    for (Eigen::Index i = 0; i < r; ++i) {
      if (T(i, enter) <= 0) continue;
      detail::LexRow ratio = (L.row(i) / T(i, enter)).transpose();
      if (leave < 0 || detail::lex_sign(detail::LexRow(ratio - best)) < 0) {
        leave = static_cast<int>(i);
        best = ratio;
      }
    }
    if (leave < 0) throw std::logic_error("phase-1 objective unbounded");
    const Rational piv = T(leave, enter);
    T.row(leave) /= piv;
    L.row(leave) /= piv;
    for (Eigen::Index i = 0; i < r; ++i) {
      if (i == leave || T(i, enter) == 0) continue;
      const Rational f = T(i, enter);
      T.row(i) -= f * T.row(leave);
      L.row(i) -= f * L.row(leave);
    }
    const Rational fc = cost(enter);
    if (fc != 0)
      for (Eigen::Index j = 0; j < n + r; ++j) cost(j) -= fc * T(leave, j);
    basis[leave] = static_cast<int>(enter);
  }
  Basis out;
  bool boundary = false, infeasible = false;
  for (Eigen::Index i = 0; i < r; ++i) {
    if (basis[i] < n) {
      out.push_back(basis[i]);
      continue;
    }
    if (L(i, 0) != 0) infeasible = true;
    else boundary = true;  // artificial stuck at an eps-order value
  }
  if (infeasible) throw InfeasibleMarginalsError("polytope is empty");
  if (boundary)
    throw DegenerateRhsError(
        "right-hand side lies on the boundary of cone(B); the polytope is not "
        "full-dimensional and pivot enumeration cannot start");
  std::sort(out.begin(), out.end());
  return out;
}

/// Breadth-first closure over lexicographic pivots starting from a feasible
/// basis. For non-degenerate polytopes the result is exactly the 1-skeleton;
/// for degenerate (full-dimensional) polytopes all lex-feasible bases are
/// traversed, grouped by unperturbed point, and the point-level adjacency of
/// the perturbed polytope is reported with adjacency_exact = false.
inline SkeletonGraph enumerate_vertices_pivot(const ConstraintSystem& sys,
                                              std::optional<Basis> start = std::nullopt) {
  const ReducedSystem rs = reduce_system(sys);
  const Eigen::Index n = rs.B.cols();
  SkeletonGraph g;
  g.fam = sys.fam;
  g.dim = dimension(sys.fam);

  Basis b0 = start ? *start : find_feasible_basis(rs);
  {
    auto d0 = detail::LexDictionary::build(rs, b0);
    if (!d0.lex_feasible()) {
      if (start) throw InputError("start basis is not lexicographically feasible");
      throw std::logic_error("phase-1 produced a lex-infeasible basis");
    }
  }

  std::unordered_map<std::vector<int>, int, detail::VectorIntHash> seen;  // basis -> order
  std::map<std::string, int> point_ids;
  std::vector<RatVector> points;
  std::vector<std::vector<Basis>> point_bases;
  std::set<std::pair<int, int>> edges;
  std::deque<Basis> queue;
  seen.emplace(b0, 0);
  queue.push_back(b0);

  auto point_of = [&](const detail::LexDictionary& d) {
    RatVector p = RatVector::Zero(n);
    for (size_t k = 0; k < d.basis.size(); ++k)
      p(d.basis[k]) = d.lex(static_cast<Eigen::Index>(k), 0);
    return p;
  };

  while (!queue.empty()) {
    Basis b = queue.front();
    queue.pop_front();
    auto d = detail::LexDictionary::build(rs, b);
    RatVector p = point_of(d);
    const std::string key = detail::point_key(p);
    auto [it, fresh] = point_ids.emplace(key, static_cast<int>(points.size()));
    if (fresh) {
      points.push_back(p);
      point_bases.emplace_back();
    }
    point_bases[it->second].push_back(b);
    const int pid = it->second;

    std::vector<bool> in_basis(n, false);
    for (int col : b) in_basis[col] = true;
    for (Eigen::Index e = 0; e < n; ++e) {
      if (in_basis[e]) continue;
      RatVector dir = d.binv * rs.B.col(e);
      const int leave = detail::lex_leaving_row(d, dir);
      if (leave < 0) throw std::logic_error("unbounded edge in a transportation polytope");
      Basis nb = b;
      nb[leave] = static_cast<int>(e);
      std::sort(nb.begin(), nb.end());
      const bool moved = d.lex(leave, 0) != 0;  // theta has a nonzero constant part
      if (moved) {
        RatVector q = p;
        const Rational theta = d.lex(leave, 0) / dir(leave);
        for (size_t k = 0; k < b.size(); ++k)
          q(b[k]) -= theta * dir(static_cast<Eigen::Index>(k));
        q(e) = theta;
        const std::string qkey = detail::point_key(q);
        auto [qit, qfresh] = point_ids.emplace(qkey, static_cast<int>(points.size()));
        if (qfresh) {
          points.push_back(q);
          point_bases.emplace_back();
        }
        if (qit->second != pid)
          edges.emplace(std::min(pid, qit->second), std::max(pid, qit->second));
      }
      if (!seen.count(nb)) {
        seen.emplace(nb, static_cast<int>(seen.size()));
        queue.push_back(nb);
      }
    }
  }

  // Canonical vertex order: lexicographically smallest basis per point.
  std::vector<int> order(points.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  for (auto& bl : point_bases) std::sort(bl.begin(), bl.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return point_bases[a].front() < point_bases[b].front();
  });
  std::vector<int> newid(points.size());
  for (size_t i = 0; i < order.size(); ++i) newid[order[i]] = static_cast<int>(i);

  g.vertices.resize(points.size());
  g.adj.assign(points.size(), {});
  for (size_t i = 0; i < points.size(); ++i) {
    Vertex& v = g.vertices[newid[i]];
    v.point = points[i];
    for (Eigen::Index t = 0; t < v.point.size(); ++t)
      if (v.point(t) != 0) v.support.push_back(static_cast<int>(t));
    v.bases = point_bases[i];
    if (v.bases.size() > 1 ||
        v.support.size() < static_cast<size_t>(rs.B.rows()))
      g.degenerate = true;
  }
  for (auto [a, b] : edges) {
    g.adj[newid[a]].push_back(newid[b]);
    g.adj[newid[b]].push_back(newid[a]);
  }
  for (auto& lst : g.adj) std::sort(lst.begin(), lst.end());
  g.adjacency_exact = !g.degenerate;
  g.is_simple = true;
  for (auto& lst : g.adj)
    if (static_cast<int>(lst.size()) != g.dim) { g.is_simple = false; break; }
  return g;
}

/// Exact diameter by all-pairs breadth-first search.
inline int graph_diameter(const SkeletonGraph& g) {
  const int n = static_cast<int>(g.vertices.size());
  if (n == 0) throw InputError("graph is empty");
  if (n == 1) return 0;
  int diam = 0;
  std::vector<int> dist(n);
  std::deque<int> q;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    q.clear();
    q.push_back(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v : g.adj[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push_back(v);
        }
    }
    for (int d : dist) {
      if (d < 0) throw InputError("graph is disconnected");
      diam = std::max(diam, d);
    }
  }
  return diam;
}

/// Exact pairwise distance (BFS) between two vertex ids.
inline int graph_distance(const SkeletonGraph& g, int from, int to) {
  std::vector<int> dist(g.vertices.size(), -1);
  std::deque<int> q;
  dist[from] = 0;
  q.push_back(from);
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    if (u == to) return dist[u];
    for (int v : g.adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
  }
  return -1;
}

namespace detail {

/// Affine dimension of P restricted to {x_i = 0 for i in forced_zero}:
/// finds the coordinates identically zero on the face, then counts the free
/// columns modulo the row space.
inline int face_dimension(const ReducedSystem& rs, const std::vector<Eigen::Index>& forced_zero) {
  const Eigen::Index n = rs.B.cols();
  std::vector<bool> zero(n, false);
  for (auto i : forced_zero) zero[i] = true;
  auto restricted = [&](const std::vector<bool>& z) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!z[j]) cols.push_back(j);
    RatMatrix A(rs.B.rows(), static_cast<Eigen::Index>(cols.size()));
    for (size_t k = 0; k < cols.size(); ++k) A.col(static_cast<Eigen::Index>(k)) = rs.B.col(cols[k]);
    return std::make_pair(A, cols);
  };
  auto [A, cols] = restricted(zero);
  if (!lp_feasible_point(A, rs.c)) return -1;  // empty face
  // Coordinates identically zero on the face.
  bool changed = true;
  while (changed) {
    changed = false;
    auto [A2, cols2] = restricted(zero);
    for (size_t k = 0; k < cols2.size(); ++k) {
      RatVector obj = RatVector::Zero(A2.cols());
      obj(static_cast<Eigen::Index>(k)) = 1;
      auto sol = simplex_solve({A2, rs.c, obj, LpSense::Max});
      if (sol.status == LpStatus::Optimal && sol.value == 0) {
        zero[cols2[k]] = true;
        changed = true;
      }
    }
  }
  auto [A3, cols3] = restricted(zero);
  return static_cast<int>(static_cast<Eigen::Index>(cols3.size()) - rank(A3));
}

}  // namespace detail

/// Number of facets of P_c, by exact LP per coordinate: x_i supports a facet
/// iff min x_i = 0, x_i is not identically zero, and the tight face has
/// dimension dim(P) − 1.
inline int count_facets(const ConstraintSystem& sys) {
  const ReducedSystem rs = reduce_system(sys);
  const int dim_p = detail::face_dimension(rs, {});
  if (dim_p < 0) throw InfeasibleMarginalsError("polytope is empty");
  int facets = 0;
  for (Eigen::Index i = 0; i < rs.B.cols(); ++i) {
    RatVector obj = RatVector::Zero(rs.B.cols());
    obj(i) = 1;
    auto lo = simplex_solve({rs.B, rs.c, obj, LpSense::Min});
    if (lo.status != LpStatus::Optimal || lo.value != 0) continue;
    auto hi = simplex_solve({rs.B, rs.c, obj, LpSense::Max});
    if (hi.status == LpStatus::Optimal && hi.value == 0) continue;  // identically zero
    if (detail::face_dimension(rs, {i}) == dim_p - 1) ++facets;
  }
  return facets;
}

/// True iff some feasible basis has a zero basic variable or the polytope is
/// not full-dimensional. Exhaustive over bases at small sizes, early-exit
/// pivot scan otherwise.
inline bool is_degenerate(const Family& f, const Marginals& mg) {
  const ConstraintSystem sys = build_system(f, mg);
  const ReducedSystem rs = reduce_system(sys);
  auto slack = max_strict_slack(rs.B, rs.c, [&] {
    std::vector<Eigen::Index> all(rs.B.cols());
    for (Eigen::Index i = 0; i < rs.B.cols(); ++i) all[i] = i;
    return all;
  }());
  if (!slack) throw InfeasibleMarginalsError("polytope is empty");
  if (*slack <= 0) return true;  // not full-dimensional

  const int n = static_cast<int>(rs.B.cols());
  const int r = static_cast<int>(rs.B.rows());
  double log_count = 0;
  for (int i = 0; i < r; ++i) log_count += std::log2(double(n - i)) - std::log2(double(i + 1));
  if (log_count <= 18) {  // ~260k subsets: scan them all
    std::vector<int> comb(r);
    for (int i = 0; i < r; ++i) comb[i] = i;
    do {
      auto xb = solve_square(detail::columns(rs.B, comb), rs.c);
      if (!xb) continue;
      bool feasible = true, has_zero = false;
      for (Eigen::Index i = 0; i < xb->size(); ++i) {
        if ((*xb)(i) < 0) { feasible = false; break; }
        if ((*xb)(i) == 0) has_zero = true;
      }
      if (feasible && has_zero) return true;
    } while (detail::next_combination(comb, n));
    return false;
  }
  // Pivot scan with early exit: any lex-feasible basis whose unperturbed
  // point has a zero basic variable witnesses degeneracy.
  Basis b0 = find_feasible_basis(rs);
  std::unordered_set<std::vector<int>, detail::VectorIntHash> seen{b0};
  std::deque<Basis> queue{b0};
  while (!queue.empty()) {
    Basis b = queue.front();
    queue.pop_front();
    auto d = detail::LexDictionary::build(rs, b);
    for (Eigen::Index i = 0; i < d.lex.rows(); ++i)
      if (d.lex(i, 0) == 0) return true;
    std::vector<bool> in_basis(n, false);
    for (int col : b) in_basis[col] = true;
    for (Eigen::Index e = 0; e < n; ++e) {
      if (in_basis[e]) continue;
      RatVector dir = d.binv * rs.B.col(e);
      const int leave = detail::lex_leaving_row(d, dir);
      if (leave < 0) throw std::logic_error("unbounded edge in a transportation polytope");
      Basis nb = b;
      nb[leave] = static_cast<int>(e);
      std::sort(nb.begin(), nb.end());
      if (!seen.count(nb)) {
        seen.insert(nb);
        queue.push_back(nb);
      }
    }
  }
  return false;
}

}  // namespace tpoly
