#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tpoly/gale.hpp"
#include "tpoly/linalg.hpp"
#include "tpoly/simplex.hpp"

namespace tpoly {

/// A full-rank simplicial cone of a configuration, as sorted labels.
using Simplex = std::vector<int>;
/// A triangulation: set of simplices whose cones cover cone(V) and intersect
/// in common faces. Canonical form: each simplex sorted, list sorted.
using Triangulation = std::vector<Simplex>;

/// A minimal dependent subset with its (unique up to sign) dependence signs.
struct Circuit {
  std::vector<int> elems;
  std::vector<int> sign;  // ±1 per element, first nonzero normalized positive
};

namespace tri_detail {

inline uint32_t mask_of(const Simplex& s) {
  uint32_t m = 0;
  for (int e : s) m |= (1u << e);
  return m;
}

inline Simplex simplex_of(uint32_t mask, int n) {
  Simplex s;
  for (int e = 0; e < n; ++e)
    if (mask & (1u << e)) s.push_back(e);
  return s;
}

inline RatMatrix config_columns(const VectorConfig& conf, const std::vector<int>& labels) {
  RatMatrix M(conf.dim(), static_cast<Eigen::Index>(labels.size()));
  for (size_t k = 0; k < labels.size(); ++k)
    for (Eigen::Index i = 0; i < conf.dim(); ++i)
      M(i, static_cast<Eigen::Index>(k)) = Rational(conf.V(i, labels[k]));
  return M;
}

}  // namespace tri_detail

inline Triangulation canonical_triangulation(Triangulation t) {
  for (auto& s : t) std::sort(s.begin(), s.end());
  std::sort(t.begin(), t.end());
  return t;
}

/// All circuits (minimal dependent subsets) of the configuration; sizes range
/// from 2 to rank+1.
inline std::vector<Circuit> enumerate_circuits(const VectorConfig& conf) {
  const int n = static_cast<int>(conf.size());
  const int d = static_cast<int>(conf.dim());
  std::vector<Circuit> out;
  for (int k = 2; k <= d + 1 && k <= n; ++k) {
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    do {
      RatMatrix M = tri_detail::config_columns(conf, comb);
      RatMatrix K = nullspace_basis(M);
      if (K.cols() != 1) continue;  // independent, or contains a smaller circuit
      bool minimal = true;
      for (Eigen::Index i = 0; i < K.rows(); ++i)
        if (K(i, 0) == 0) { minimal = false; break; }
      if (!minimal) continue;
      Circuit c;
      c.elems = comb;
      int lead = K(0, 0) > 0 ? 1 : -1;
      for (Eigen::Index i = 0; i < K.rows(); ++i)
        c.sign.push_back(K(i, 0) > 0 ? lead : -lead);
      out.push_back(std::move(c));
    } while (detail::next_combination(comb, n));
  }
  return out;
}

/// Placing (beneath-beyond) triangulation in label order; the seed for the
/// flip search. Interior vectors already covered when placed are skipped.
inline Triangulation placing_triangulation(const VectorConfig& conf) {
  const int n = static_cast<int>(conf.size());
  const int d = static_cast<int>(conf.dim());
  std::vector<int> span_idx, placed;
  std::vector<Simplex> T;
  for (int t = 0; t < n; ++t) {
    bool zero = true;
    for (Eigen::Index i = 0; i < conf.dim(); ++i)
      if (conf.V(i, t) != 0) { zero = false; break; }
    if (zero) throw InputError("configuration contains a zero vector");
    if (span_idx.empty()) {
      span_idx = {t};
      T = {{t}};
      placed.push_back(t);
      continue;
    }
    const int s = static_cast<int>(span_idx.size());
    std::vector<int> probe = span_idx;
    probe.push_back(t);
    if (rank(tri_detail::config_columns(conf, probe)) == s + 1) {
      for (auto& sx : T) {
        sx.push_back(t);
        std::sort(sx.begin(), sx.end());
      }
      span_idx.push_back(t);
      placed.push_back(t);
      continue;
    }
    // Coordinates inside the current span.
    RatMatrix span_cols = tri_detail::config_columns(conf, span_idx);
    auto rowsel = independent_rows(RatMatrix(span_cols.transpose()));
    RatMatrix Msq(s, s);
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b) Msq(a, b) = span_cols(rowsel[a], b);
    auto coord = [&](int w) {
      RatVector rhs(s);
      for (int a = 0; a < s; ++a) rhs(a) = Rational(conf.V(rowsel[a], w));
      auto sol = solve_square(Msq, rhs);
      if (!sol) throw std::logic_error("span coordinate solve failed");
      return *sol;
    };
    const RatVector cv = coord(t);
    bool covered = false;
    for (const auto& sx : T) {
      RatMatrix Ms(s, s);
      for (int b = 0; b < s; ++b) Ms.col(b) = coord(sx[b]);
      auto mu = solve_square(Ms, cv);
      if (!mu) continue;
      bool nonneg = true;
      for (Eigen::Index i = 0; i < mu->size(); ++i)
        if ((*mu)(i) < 0) { nonneg = false; break; }
      if (nonneg) { covered = true; break; }
    }
    if (!covered) {
      std::set<Simplex> joins;
      for (const auto& sx : T) {
        for (int g : sx) {
          Simplex F;
          for (int e : sx)
            if (e != g) F.push_back(e);
          RatMatrix Fc(static_cast<Eigen::Index>(F.size()), s);
          for (size_t a = 0; a < F.size(); ++a)
            Fc.row(static_cast<Eigen::Index>(a)) = coord(F[a]).transpose();
          RatMatrix U = nullspace_basis(Fc);
          if (U.cols() != 1) continue;
          RatVector u = U.col(0);
          const Rational og = u.dot(coord(g));
          if (og == 0) throw std::logic_error("degenerate simplex in placing");
          if (og < 0) u = -u;
          bool supporting = true;
          for (int w : placed)
            if (u.dot(coord(w)) < 0) { supporting = false; break; }
          if (!supporting) continue;
          if (u.dot(cv) < 0) {
            F.push_back(t);
            std::sort(F.begin(), F.end());
            joins.insert(F);
          }
        }
      }
      for (auto& f : joins) T.push_back(f);
    }
    placed.push_back(t);
  }
  if (static_cast<int>(span_idx.size()) != d)
    throw InputError("configuration does not have full rank");
  return canonical_triangulation(T);
}

/// Structural validation: simplices independent and, over a deterministic set
/// of generic sample directions inside cone(V), covering multiplicity exactly
/// one.
inline bool validate_triangulation(const VectorConfig& conf, const Triangulation& t,
                                   int samples = 32) {
  const int d = static_cast<int>(conf.dim());
  std::vector<RatMatrix> mats;
  for (const auto& s : t) {
    if (static_cast<int>(s.size()) != d) return false;
    RatMatrix M = tri_detail::config_columns(conf, s);
    if (determinant(M) == 0) return false;
    mats.push_back(M);
  }
  const bool cyclic = is_totally_cyclic(conf);
  Rng rng(0x5eedf00d);
  int done = 0;
  while (done < samples) {
    RatVector x(d);
    if (cyclic) {
      for (int i = 0; i < d; ++i) x(i) = Rational(rng.uniform(-1000003, 1000003));
    } else {
      RatVector lam(conf.size());
      for (Eigen::Index j = 0; j < conf.size(); ++j) lam(j) = Rational(rng.uniform(1, 1000003));
      x = to_rational(conf.V) * lam;
    }
    int hits = 0;
    bool boundary = false;
    for (const auto& M : mats) {
      auto mu = solve_square(M, x);
      if (!mu) continue;
      bool nonneg = true, strict = true;
      for (Eigen::Index i = 0; i < mu->size(); ++i) {
        if ((*mu)(i) < 0) { nonneg = false; break; }
        if ((*mu)(i) == 0) strict = false;
      }
      if (nonneg && !strict) { boundary = true; break; }
      if (nonneg) ++hits;
    }
    if (boundary) continue;  // resample: direction hit a wall
    if (hits != 1) return false;
    ++done;
  }
  return true;
}

namespace tri_detail {

/// Label walls: pairs of simplices sharing d-1 labels (geometric walls, when
/// the configuration has no two parallel same-direction vectors).
inline std::vector<std::pair<int, int>> wall_pairs(const Triangulation& t) {
  std::map<Simplex, std::vector<int>> by_facet;
  for (size_t i = 0; i < t.size(); ++i) {
    const auto& s = t[i];
    for (size_t g = 0; g < s.size(); ++g) {
      Simplex f;
      for (size_t e = 0; e < s.size(); ++e)
        if (e != g) f.push_back(s[e]);
      by_facet[f].push_back(static_cast<int>(i));
    }
  }
  std::vector<std::pair<int, int>> out;
  for (auto& [f, owners] : by_facet) {
    if (owners.size() > 2) throw std::logic_error("wall shared by more than two simplices");
    if (owners.size() == 2) out.emplace_back(owners[0], owners[1]);
  }
  return out;
}

/// Same-ray (same-direction parallel) class id per element. Triangulations
/// that satisfy the common-face condition on labels can use at most one
/// element of each class.
inline std::vector<int> ray_classes(const VectorConfig& conf) {
  const int n = static_cast<int>(conf.size());
  std::vector<int> cls(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = next;
    for (int j = i + 1; j < n; ++j) {
      if (cls[j] >= 0) continue;
      bool parallel = true;
      for (Eigen::Index a = 0; a < conf.dim() && parallel; ++a)
        for (Eigen::Index b = a + 1; b < conf.dim(); ++b)
          if (conf.V(a, i) * conf.V(b, j) != conf.V(a, j) * conf.V(b, i)) {
            parallel = false;
            break;
          }
      if (!parallel) continue;
      Int dot = 0;
      for (Eigen::Index a = 0; a < conf.dim(); ++a) dot += conf.V(a, i) * conf.V(a, j);
      if (dot > 0) cls[j] = cls[i];
    }
    ++next;
  }
  return cls;
}

/// At most one used element per ray class (the label common-face condition).
inline bool ray_class_consistent(const std::vector<int>& cls, const Triangulation& t) {
  std::vector<bool> used_cls(cls.size(), false), used(cls.size(), false);
  for (const auto& s : t)
    for (int e : s) {
      if (used[e]) continue;
      used[e] = true;
      if (used_cls[cls[e]]) return false;
      used_cls[cls[e]] = true;
    }
  return true;
}

}  // namespace tri_detail

/// Decides regularity exactly: maximizes the strictness slack eps over height
/// vectors and reports the certificate heights when eps > 0. The constraints
/// are the convex-fold condition across every interior wall plus a
/// strictly-above condition for every unused element.
///
/// Label walls are all the geometric walls here: triangulations of a
/// configuration use at most one element per ray class, so two cells sharing
/// a geometric wall share its full label set.
inline std::optional<RatVector> regularity_heights(const VectorConfig& conf,
                                                   const Triangulation& t) {
  const int n = static_cast<int>(conf.size());
  const int d = static_cast<int>(conf.dim());
  if (!tri_detail::ray_class_consistent(tri_detail::ray_classes(conf), t))
    throw InputError("triangulation uses two elements of one ray class");
  std::vector<RatVector> rows;  // coefficients over w_0..w_{n-1}

  {
    for (auto [i1, i2] : tri_detail::wall_pairs(t)) {
      std::vector<int> uni;
      std::set_union(t[i1].begin(), t[i1].end(), t[i2].begin(), t[i2].end(),
                     std::back_inserter(uni));
      RatMatrix M = tri_detail::config_columns(conf, uni);
      RatMatrix K = nullspace_basis(M);
      if (K.cols() != 1) throw std::logic_error("wall union is not a circuit-spanning set");
      int a_pos = -1;
      for (size_t k = 0; k < uni.size(); ++k)
        if (!std::binary_search(t[i2].begin(), t[i2].end(), uni[k])) { a_pos = static_cast<int>(k); break; }
      RatVector lam = K.col(0);
      if (lam(a_pos) < 0) lam = -lam;
      if (lam(a_pos) == 0) throw std::logic_error("degenerate wall dependence");
      RatVector row = RatVector::Zero(n);
      for (size_t k = 0; k < uni.size(); ++k) row(uni[k]) = lam(static_cast<Eigen::Index>(k));
      rows.push_back(row);
    }
    std::vector<bool> used(n, false);
    for (const auto& s : t)
      for (int e : s) used[e] = true;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      RatVector vi(d);
      for (int a = 0; a < d; ++a) vi(a) = Rational(conf.V(a, i));
      bool placed = false;
      for (const auto& s : t) {
        RatMatrix M = tri_detail::config_columns(conf, s);
        auto mu = solve_square(M, vi);
        if (!mu) continue;
        bool nonneg = true;
        for (Eigen::Index k = 0; k < mu->size(); ++k)
          if ((*mu)(k) < 0) { nonneg = false; break; }
        if (!nonneg) continue;
        RatVector row = RatVector::Zero(n);
        row(i) = 1;
        for (size_t k = 0; k < s.size(); ++k) row(s[k]) -= (*mu)(static_cast<Eigen::Index>(k));
        rows.push_back(row);
        placed = true;
        break;
      }
      if (!placed) throw std::logic_error("unused element not covered by the triangulation");
    }
  }

  // Heights may be taken nonnegative: every constraint row is invariant
  // under shifting w by a linear functional of the configuration, and any
  // feasible w can be shifted into the nonnegative orthant.
  // LP: maximize eps s.t. row·w - eps - slack = 0, eps + cap = 1, w >= 0.
  const Eigen::Index R = static_cast<Eigen::Index>(rows.size());
  RatMatrix A = RatMatrix::Zero(R + 1, n + 1 + R + 1);
  RatVector b = RatVector::Zero(R + 1);
  for (Eigen::Index r = 0; r < R; ++r) {
    for (int j = 0; j < n; ++j) A(r, j) = rows[r](j);
    A(r, n) = -1;
    A(r, n + 1 + r) = -1;
  }
  A(R, n) = 1;
  A(R, n + 1 + R) = 1;
  b(R) = 1;
  RatVector obj = RatVector::Zero(A.cols());
  obj(n) = 1;
  auto sol = simplex_solve({A, b, obj, LpSense::Max});
  if (sol.status != LpStatus::Optimal || sol.value <= 0) return std::nullopt;
  return RatVector(sol.x.head(n));
}

inline bool is_regular(const VectorConfig& conf, const Triangulation& t) {
  return regularity_heights(conf, t).has_value();
}

/// All triangulations reachable from t by one bistellar flip. Flips are
/// detected circuit-by-circuit through the common-link condition; candidates
/// that would use two elements of one ray class are discarded.
inline std::vector<Triangulation> bistellar_flips(const VectorConfig& conf,
                                                  const std::vector<Circuit>& circuits,
                                                  const Triangulation& t,
                                                  const std::vector<int>& ray_cls,
                                                  long* rejected = nullptr) {
  const int n = static_cast<int>(conf.size());
  const int d = static_cast<int>(conf.dim());
  std::vector<uint32_t> tmask;
  for (const auto& s : t) tmask.push_back(tri_detail::mask_of(s));
  std::set<Triangulation> results;

  for (const auto& c : circuits) {
    const uint32_t zmask = tri_detail::mask_of(c.elems);
    for (int orient : {1, -1}) {
      std::vector<int> P, M;
      for (size_t k = 0; k < c.elems.size(); ++k)
        (c.sign[k] * orient > 0 ? P : M).push_back(c.elems[k]);
      if (P.empty() || M.empty()) continue;
      // Common link across the removal side.
      std::vector<uint32_t> link;
      bool ok = true;
      for (size_t pi = 0; pi < P.size() && ok; ++pi) {
        const uint32_t fmask = zmask & ~(1u << P[pi]);
        std::vector<uint32_t> lj;
        for (uint32_t sm : tmask)
          if ((fmask & ~sm) == 0) lj.push_back(sm & ~fmask);
        std::sort(lj.begin(), lj.end());
        if (lj.empty()) { ok = false; break; }
        if (pi == 0) link = lj;
        else if (lj != link) { ok = false; break; }
      }
      if (!ok) continue;

      Triangulation t2;
      for (size_t si = 0; si < t.size(); ++si) {
        bool removed = false;
        for (int j : P) {
          const uint32_t fmask = zmask & ~(1u << j);
          if ((fmask & ~tmask[si]) == 0) { removed = true; break; }
        }
        if (!removed) t2.push_back(t[si]);
      }
      bool valid = true;
      for (int i : M) {
        const uint32_t fmask = zmask & ~(1u << i);
        for (uint32_t lm : link) {
          Simplex s = tri_detail::simplex_of(fmask | lm, n);
          if (static_cast<int>(s.size()) != d ||
              determinant(tri_detail::config_columns(conf, s)) == 0) {
            valid = false;
            break;
          }
          t2.push_back(std::move(s));
        }
        if (!valid) break;
      }
      if (valid) {
        t2 = canonical_triangulation(std::move(t2));
        valid = tri_detail::ray_class_consistent(ray_cls, t2);
      }
      if (!valid) {
        if (rejected) ++*rejected;
        continue;
      }
      results.insert(std::move(t2));
    }
  }
  return {results.begin(), results.end()};
}

struct RegularTriangulations {
  std::vector<Triangulation> list;       // canonical order
  std::vector<RatVector> heights;        // certificate per triangulation
  bool encountered_nonregular = false;   // informational: flip graph touched one
  long rejected_flips = 0;
};

/// Breadth-first flip search over regular triangulations from the placing
/// seed. The restriction to regular triangulations keeps the search connected.
inline RegularTriangulations enumerate_regular_triangulations(const VectorConfig& conf) {
  RegularTriangulations out;
  const auto circuits = enumerate_circuits(conf);
  const auto ray_cls = tri_detail::ray_classes(conf);
  Triangulation seed = placing_triangulation(conf);
  auto seed_h = regularity_heights(conf, seed);
  if (!seed_h) throw std::logic_error("placing triangulation is not regular");
  std::map<Triangulation, bool> visited;  // -> regular?
  visited.emplace(seed, true);
  std::map<Triangulation, RatVector> hmap;
  hmap.emplace(seed, *seed_h);
  std::deque<Triangulation> queue{seed};
  while (!queue.empty()) {
    Triangulation t = queue.front();
    queue.pop_front();
    for (auto& t2 : bistellar_flips(conf, circuits, t, ray_cls, &out.rejected_flips)) {
      if (visited.count(t2)) continue;
      auto h = regularity_heights(conf, t2);
      if (h) {
        visited.emplace(t2, true);
        hmap.emplace(t2, *h);
        queue.push_back(t2);
      } else {
        visited.emplace(t2, false);
        out.encountered_nonregular = true;
      }
    }
  }
  for (auto& [t, reg] : visited)
    if (reg) {
      out.list.push_back(t);
      out.heights.push_back(hmap.at(t));
    }
  return out;
}

/// Every triangulation of a rank-2 totally cyclic configuration: choose a set
/// of ray directions with all circular gaps below pi, then one representative
/// label per chosen ray. Serves as an independent oracle for the flip search.
inline std::vector<Triangulation> rank2_all_triangulations(const VectorConfig& conf) {
  if (conf.dim() != 2) throw UnsupportedCorankError("rank-2 configuration required");
  const int n = static_cast<int>(conf.size());
  std::map<std::pair<std::string, std::string>, std::vector<int>> classes;
  std::vector<std::pair<Int, Int>> dirs;
  std::vector<std::vector<int>> members;
  for (int j = 0; j < n; ++j) {
    Int a = conf.V(0, j), b = conf.V(1, j);
    Int g = boost::multiprecision::gcd(boost::multiprecision::abs(a),
                                       boost::multiprecision::abs(b));
    if (g > 1) { a /= g; b /= g; }
    auto key = std::make_pair(a.str(), b.str());
    if (!classes.count(key)) {
      classes[key] = {static_cast<int>(dirs.size())};
      dirs.emplace_back(a, b);
      members.push_back({j});
    } else {
      members[classes[key][0]].push_back(j);
    }
  }
  const int k = static_cast<int>(dirs.size());
  if (k > 22) throw InputError("too many distinct directions for the rank-2 oracle");
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  auto half = [&](int i) {
    return (dirs[i].second > 0 || (dirs[i].second == 0 && dirs[i].first > 0)) ? 0 : 1;
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (half(a) != half(b)) return half(a) < half(b);
    Int cr = dirs[a].first * dirs[b].second - dirs[a].second * dirs[b].first;
    return cr > 0;
  });
  std::vector<Triangulation> out;
  for (uint32_t subset = 0; subset < (1u << k); ++subset) {
    std::vector<int> chosen;
    for (int i = 0; i < k; ++i)
      if (subset & (1u << i)) chosen.push_back(order[i]);
    if (chosen.size() < 3) continue;
    bool fan = true;
    for (size_t i = 0; i < chosen.size(); ++i) {
      int a = chosen[i], b = chosen[(i + 1) % chosen.size()];
      Int cr = dirs[a].first * dirs[b].second - dirs[a].second * dirs[b].first;
      if (cr <= 0) { fan = false; break; }
    }
    if (!fan) continue;
    // Cartesian product of representatives.
    std::vector<size_t> pick(chosen.size(), 0);
    for (;;) {
      Triangulation t;
      for (size_t i = 0; i < chosen.size(); ++i) {
        int la = members[chosen[i]][pick[i]];
        int lb = members[chosen[(i + 1) % chosen.size()]][pick[(i + 1) % chosen.size()]];
        t.push_back({la, lb});
      }
      out.push_back(canonical_triangulation(t));
      size_t pos = 0;
      while (pos < pick.size() && ++pick[pos] == members[chosen[pos]].size()) {
        pick[pos] = 0;
        ++pos;
      }
      if (pos == pick.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Complements of a triangulation's simplices: the candidate chamber
/// signature on the Gale-dual side.
inline std::vector<std::vector<int>> complement_map(const Triangulation& t, int n_labels) {
  std::vector<std::vector<int>> out;
  for (const auto& s : t) {
    std::vector<int> comp;
    std::vector<bool> in_s(n_labels, false);
    for (int e : s) in_s[e] = true;
    for (int j = 0; j < n_labels; ++j)
      if (!in_s[j]) comp.push_back(j);
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tpoly
