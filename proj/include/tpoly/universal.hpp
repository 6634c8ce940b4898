#pragma once

#include <algorithm>
#include <vector>

#include "tpoly/gale.hpp"
#include "tpoly/simplex.hpp"

namespace tpoly {

/// The linear-equality description of the universal polytope of a rank-2
/// totally cyclic configuration: coordinates are indexed by the 2-subsets of
/// the configuration, and the incidence vector of every triangulation
/// satisfies all equalities with 0/1 values.
struct UniversalSystem {
  int n_elements = 0;
  std::vector<std::pair<int, int>> coords;  // all 2-subsets {i,j}, i<j, lex order
  RatMatrix equalities;                     // rows: forced zeros, balances, coverings
  RatVector rhs;
  int n_forced_zero = 0;
  int n_balance = 0;
  int n_covering = 0;

  int coord_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    for (size_t k = 0; k < coords.size(); ++k)
      if (coords[k] == std::make_pair(i, j)) return static_cast<int>(k);
    return -1;
  }

  /// ψ(x) = Σ x_σ, the simplex-count functional.
  RatVector psi() const { return RatVector::Ones(static_cast<Eigen::Index>(coords.size())); }

  /// Affine dimension of the solution set of the equalities.
  int solution_dimension() const {
    return static_cast<int>(equalities.cols() - rank(equalities));
  }

  /// x satisfies every equality exactly.
  bool satisfied_by(const RatVector& x) const {
    return ((equalities * x) - rhs).isZero();
  }

  /// Incidence vector of a triangulation given as label pairs.
  RatVector incidence_vector(const std::vector<std::vector<int>>& simplices) const {
    RatVector v = RatVector::Zero(static_cast<Eigen::Index>(coords.size()));
    for (const auto& s : simplices) {
      if (s.size() != 2) throw InputError("rank-2 simplices must be 2-subsets");
      const int k = coord_index(s[0], s[1]);
      if (k < 0) throw InputError("unknown coordinate pair");
      v(k) = 1;
    }
    return v;
  }
};

/// Builds the universal-polytope equality system of a rank-2 totally cyclic
/// configuration with at least three distinct ray directions:
///   - x_sigma = 0 for every non-spanning pair,
///   - per element, the two sides of its line balance,
///   - per angular sector between consecutive rays, the covering pairs sum
///     to one.
inline UniversalSystem build_universal_constraints(const VectorConfig& conf) {
  if (conf.dim() != 2)
    throw UnsupportedCorankError("universal-polytope bounds are implemented for corank 2");
  const int n = static_cast<int>(conf.size());
  UniversalSystem u;
  u.n_elements = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) u.coords.emplace_back(i, j);

  auto cross = [&](int i, int j) {
    return Int(conf.V(0, i) * conf.V(1, j) - conf.V(1, i) * conf.V(0, j));
  };
  std::vector<RatVector> rows;
  std::vector<Rational> rhs;

  // Forced zeros: pairs that do not span.
  for (size_t k = 0; k < u.coords.size(); ++k) {
    auto [i, j] = u.coords[k];
    if (cross(i, j) == 0) {
      RatVector r = RatVector::Zero(static_cast<Eigen::Index>(u.coords.size()));
      r(static_cast<Eigen::Index>(k)) = 1;
      rows.push_back(r);
      rhs.push_back(0);
      ++u.n_forced_zero;
    }
  }
  // Balance per element: Σ over j on the positive side of i equals Σ over
  // the negative side (every triangulation uses i in 0 or 2 spanning pairs,
  // one on each side).
  for (int i = 0; i < n; ++i) {
    RatVector r = RatVector::Zero(static_cast<Eigen::Index>(u.coords.size()));
    bool nontrivial = false;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Int c = cross(i, j);
      if (c == 0) continue;
      r(u.coord_index(i, j)) += (c > 0 ? 1 : -1);
      nontrivial = true;
    }
    if (nontrivial) {
      rows.push_back(r);
      rhs.push_back(0);
      ++u.n_balance;
    }
  }
  // Covering per angular sector between consecutive distinct rays.
  std::vector<int> reps;  // one element per distinct ray
  for (int i = 0; i < n; ++i) {
    bool dup = false;
    for (int r : reps) {
      Int dot = conf.V(0, i) * conf.V(0, r) + conf.V(1, i) * conf.V(1, r);
      if (cross(i, r) == 0 && dot > 0) { dup = true; break; }
    }
    if (!dup) reps.push_back(i);
  }
  if (reps.size() < 3)
    throw UnsupportedCorankError("need at least three distinct ray directions");
  auto half = [&](int i) {
    return (conf.V(1, i) > 0 || (conf.V(1, i) == 0 && conf.V(0, i) > 0)) ? 0 : 1;
  };
  std::sort(reps.begin(), reps.end(), [&](int a, int b) {
    if (half(a) != half(b)) return half(a) < half(b);
    return cross(a, b) > 0;
  });
  for (size_t s = 0; s < reps.size(); ++s) {
    const int a = reps[s], b = reps[(s + 1) % reps.size()];
    // midpoint direction of the open sector
    Int mx = 0, my = 0;
    {
      // scale both rays to comparable length by cross-normalization
      mx = conf.V(0, a) + conf.V(0, b);
      my = conf.V(1, a) + conf.V(1, b);
      if (cross(a, b) <= 0)  // sector of angle >= pi cannot occur (totally cyclic fans)
        throw UnsupportedCorankError("consecutive rays span a reflex sector");
    }
    RatVector r = RatVector::Zero(static_cast<Eigen::Index>(u.coords.size()));
    for (size_t k = 0; k < u.coords.size(); ++k) {
      auto [i, j] = u.coords[k];
      if (cross(i, j) == 0) continue;
      // does cone(v_i, v_j) contain the sector midpoint?
      Int ci = conf.V(0, i) * my - conf.V(1, i) * mx;   // cross(v_i, m)
      Int cj = conf.V(0, j) * my - conf.V(1, j) * mx;
      Int cij = cross(i, j);
      // m in cone(v_i, v_j) iff cross(v_i, m) and cross(m, v_j) share the
      // sign of cross(v_i, v_j)
      bool inside = (cij > 0) ? (ci > 0 && cj < 0) : (ci < 0 && cj > 0);
      if (inside) r(static_cast<Eigen::Index>(k)) = 1;
    }
    rows.push_back(r);
    rhs.push_back(1);
    ++u.n_covering;
  }

  u.equalities.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(u.coords.size()));
  u.rhs.resize(static_cast<Eigen::Index>(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    u.equalities.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    u.rhs(static_cast<Eigen::Index>(r)) = rhs[r];
  }
  return u;
}

/// Exact LP bounds of ψ over the relaxation {x ≥ 0, equalities}: lower and
/// upper bounds for the possible numbers of vertices.
inline std::pair<Rational, Rational> vertex_count_bounds(const UniversalSystem& u) {
  auto lo = simplex_solve({u.equalities, u.rhs, u.psi(), LpSense::Min});
  auto hi = simplex_solve({u.equalities, u.rhs, u.psi(), LpSense::Max});
  if (lo.status != LpStatus::Optimal || hi.status != LpStatus::Optimal)
    throw std::logic_error("universal-polytope relaxation is not a bounded nonempty polytope");
  return {lo.value, hi.value};
}

}  // namespace tpoly
