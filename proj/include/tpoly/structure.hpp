#pragma once

#include <numeric>
#include <vector>

#include "tpoly/chambers.hpp"
#include "tpoly/models.hpp"
#include "tpoly/vertex_enum.hpp"

namespace tpoly {

/// An m×n transportation polytope with per-entry upper bounds.
struct CapacitatedClassical {
  RatVector row_sums;   // length m
  RatVector col_sums;   // length n
  RatMatrix capacities; // m×n
};

/// Planar 2×m×n marginals are exactly capacitated m×n marginals: the
/// projection (a_{i,j,k}) -> (a_{1,j,k}) identifies the two polytopes.
inline CapacitatedClassical planar2mn_to_capacitated(const Family& f, const Marginals& mg) {
  if (f.kind != FamilyKind::Planar || f.l != 2)
    throw InputError("expected a planar 2×m×n family");
  check_marginals(f, mg);
  CapacitatedClassical cap;
  cap.row_sums = mg.W.row(0).transpose();  // W_{1,j}
  cap.col_sums = mg.V.row(0).transpose();  // V_{1,k}
  cap.capacities = mg.U;                   // U_{j,k}
  return cap;
}

/// Inverse of planar2mn_to_capacitated: rebuilds the planar marginals with
/// x_{2,j} = (Σ_k z_{j,k}) − x_{1,j} and y_{2,k} = (Σ_j z_{j,k}) − y_{1,k}.
inline Marginals capacitated_to_planar2mn(const CapacitatedClassical& cap) {
  const int m = static_cast<int>(cap.row_sums.size());
  const int n = static_cast<int>(cap.col_sums.size());
  Marginals mg;
  mg.U = cap.capacities;
  mg.V.resize(2, n);
  mg.W.resize(2, m);
  for (int j = 0; j < m; ++j) {
    mg.W(0, j) = cap.row_sums(j);
    mg.W(1, j) = cap.capacities.row(j).sum() - cap.row_sums(j);
    if (mg.W(1, j) < 0) throw InputError("capacities too small for the row sums");
  }
  for (int k = 0; k < n; ++k) {
    mg.V(0, k) = cap.col_sums(k);
    mg.V(1, k) = cap.capacities.col(k).sum() - cap.col_sums(k);
    if (mg.V(1, k) < 0) throw InputError("capacities too small for the column sums");
  }
  return mg;
}

/// Projection of a planar 2×m×n table onto its first layer (the bounded-entry
/// m×n table).
inline RatMatrix project_first_layer(const Family& f, const RatVector& point) {
  RatMatrix b(f.m, f.n);
  for (int j = 1; j <= f.m; ++j)
    for (int k = 1; k <= f.n; ++k) b(j - 1, k - 1) = point(column_of(f, {1, j, k}));
  return b;
}

/// The affine identification of a planar 2×2×n polytope with a classical 2×n
/// polytope: vertex b_{1,k} = a_{1,1,k} − α_k, b_{2,k} = β_k − a_{1,1,k}.
struct Planar22nCorrespondence {
  Family planar_family;
  Marginals classical;   // classical 2×n marginals
  RatVector alpha, beta; // per-k translation and width

  /// Image of a planar point under the affine map.
  RatVector map_point(const RatVector& planar_point) const {
    const Family& f = planar_family;
    const Family cf = Family::classical(2, f.n);
    RatVector out(cf.num_columns());
    for (int k = 1; k <= f.n; ++k) {
      const Rational t = planar_point(column_of(f, {1, 1, k}));
      out(column_of(cf, {1, k, 0})) = t - alpha(k - 1);
      out(column_of(cf, {2, k, 0})) = beta(k - 1) - t;
    }
    return out;
  }
};

inline Planar22nCorrespondence planar22n_to_classical(const Family& f, const Marginals& mg) {
  if (f.kind != FamilyKind::Planar || f.l != 2 || f.m != 2)
    throw InputError("expected a planar 2×2×n family");
  check_marginals(f, mg);
  Planar22nCorrespondence c;
  c.planar_family = f;
  c.alpha.resize(f.n);
  c.beta.resize(f.n);
  for (int k = 0; k < f.n; ++k) {
    c.alpha(k) = std::max(Rational(0), Rational(mg.U(0, k) - mg.V(1, k)));
    c.beta(k) = std::min(mg.V(0, k), mg.U(0, k));
    if (c.beta(k) < c.alpha(k)) throw InfeasibleMarginalsError("empty planar 2×2×n polytope");
  }
  c.classical.x.resize(2);
  c.classical.y.resize(f.n);
  for (int k = 0; k < f.n; ++k) c.classical.y(k) = c.beta(k) - c.alpha(k);
  c.classical.x(0) = mg.W(0, 0) - c.alpha.sum();
  c.classical.x(1) = c.classical.y.sum() - c.classical.x(0);
  if (c.classical.x(0) < 0 || c.classical.x(1) < 0)
    throw InfeasibleMarginalsError("empty planar 2×2×n polytope");
  return c;
}

/// Reverse construction: embeds a classical 2×n polytope as the planar
/// 2×2×n polytope with a_{1,j,k} = a_{2,3-j,k} = b_{j,k}.
inline Marginals classical2n_to_planar(const Marginals& classical, int n) {
  Marginals mg;
  mg.U.resize(2, n);
  mg.V.resize(2, n);
  mg.W.resize(2, 2);
  for (int k = 0; k < n; ++k) {
    mg.U(0, k) = classical.y(k);
    mg.U(1, k) = classical.y(k);
    mg.V(0, k) = classical.y(k);
    mg.V(1, k) = classical.y(k);
  }
  mg.W(0, 0) = classical.x(0);
  mg.W(0, 1) = classical.x(1);
  mg.W(1, 0) = classical.x(1);
  mg.W(1, 1) = classical.x(0);
  return mg;
}

/// Checks that the affine map carries the planar 2×2×n skeleton bijectively
/// onto the classical 2×n skeleton, preserving edges both ways.
inline bool planar22n_graph_isomorphic(const Family& f, const Marginals& mg) {
  const auto corr = planar22n_to_classical(f, mg);
  const auto gp = enumerate_vertices_pivot(build_system(f, mg));
  const auto gc = enumerate_vertices_pivot(
      build_system(Family::classical(2, f.n), corr.classical));
  if (gp.vertices.size() != gc.vertices.size()) return false;
  std::map<std::string, int> classical_ids;
  for (size_t i = 0; i < gc.vertices.size(); ++i)
    classical_ids.emplace(detail::point_key(gc.vertices[i].point), static_cast<int>(i));
  std::vector<int> image(gp.vertices.size(), -1);
  std::vector<bool> hit(gc.vertices.size(), false);
  for (size_t i = 0; i < gp.vertices.size(); ++i) {
    auto it = classical_ids.find(detail::point_key(corr.map_point(gp.vertices[i].point)));
    if (it == classical_ids.end() || hit[it->second]) return false;
    hit[it->second] = true;
    image[i] = it->second;
  }
  auto edge_set = [](const SkeletonGraph& g, const std::vector<int>* relabel) {
    std::set<std::pair<int, int>> es;
    for (size_t u = 0; u < g.adj.size(); ++u)
      for (int v : g.adj[u]) {
        int a = relabel ? (*relabel)[u] : static_cast<int>(u);
        int b = relabel ? (*relabel)[v] : v;
        es.emplace(std::min(a, b), std::max(a, b));
      }
    return es;
  };
  return edge_set(gp, &image) == edge_set(gc, nullptr);
}

/// Representative of the lexicographic chamber of Δ_{m,n}, built by the
/// defining recursion: the chamber incident to the lexicographic chamber of
/// Δ_{m,n-1} across the wall y_n = 0. Appending a 1 after scaling the old
/// representative by K keeps every hyperplane sign: the arrangement normals
/// are integer vectors with entries bounded by the maximal minor of a 0/1
/// matrix of order ≤ 8 (Hadamard: 4096), so K = 4099 is safely larger.
inline Marginals lexicographic_chamber_marginals(int m, int n) {
  if (m < 1 || n < 1 || m > 5 || n > 5)
    throw InputError("lexicographic chamber supported for 1 ≤ m, n ≤ 5");
  const Int K = 4099;
  RatVector x(m);
  for (int i = 0; i < m; ++i) x(i) = 1;
  RatVector y(1);
  y(0) = Rational(m);
  for (int col = 2; col <= n; ++col) {
    RatVector x2 = x * Rational(K), y2(col);
    for (int k = 0; k < col - 1; ++k) y2(k) = y(k) * Rational(K);
    y2(col - 1) = 1;
    x2(m - 1) += 1;  // keep Σx = Σy: the new unit lands in the last row sum
    x = x2;
    y = y2;
  }
  Marginals mg;
  mg.x = x;
  mg.y = y;
  return mg;
}

/// The lexicographic chamber itself (signature and representative).
inline Chamber lexicographic_chamber(int m, int n) {
  auto mg = lexicographic_chamber_marginals(m, n);
  return chamber_of(build_system(Family::classical(m, n), mg));
}

/// A cut of the complete directed bipartite graph K_{m,n}.
struct BipartiteCut {
  std::vector<int> rows;  // subset of {1..m} on the plus side
  std::vector<int> cols;  // subset of {1..n} on the plus side
};

/// |C+| − |C−| for the cocircuit of a cut: |rows|·n − |cols|·m. Always a
/// multiple of gcd(m,n).
inline long cut_delta(int m, int n, const BipartiteCut& cut) {
  for (int r : cut.rows)
    if (r < 1 || r > m) throw InputError("cut row out of range");
  for (int c : cut.cols)
    if (c < 1 || c > n) throw InputError("cut column out of range");
  return static_cast<long>(cut.rows.size()) * n - static_cast<long>(cut.cols.size()) * m;
}

/// Divisibility report over a list of classical vertex counts.
struct GcdReport {
  int m = 0, n = 0, gcd = 1;
  long checked = 0;
  std::vector<long> violations;
  bool ok() const { return violations.empty(); }
};

inline GcdReport gcd_divisibility_check(int m, int n, const std::vector<long>& vertex_counts) {
  GcdReport rep;
  rep.m = m;
  rep.n = n;
  rep.gcd = std::gcd(m, n);
  for (long v : vertex_counts) {
    ++rep.checked;
    if (v % rep.gcd != 0) rep.violations.push_back(v);
  }
  return rep;
}

}  // namespace tpoly
