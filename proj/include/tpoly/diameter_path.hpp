#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "tpoly/models.hpp"
#include "tpoly/vertex_enum.hpp"

namespace tpoly {

/// A walk along skeleton edges of an axial polytope: the visited vertex
/// tables plus the entering/leaving cell of each step.
struct PivotPath {
  std::vector<RatVector> tables;
  std::vector<std::pair<TableIndex, TableIndex>> steps;  // (entering, leaving)
  int length() const { return static_cast<int>(steps.size()); }
};

/// Path construction report: the path and the pivot count of each level
/// decrement (level p, edges used).
struct PathReport {
  PivotPath path;
  std::vector<std::pair<int, int>> segments;
};

inline std::vector<TableIndex> table_support(const Family& f, const RatVector& t) {
  std::vector<TableIndex> s;
  for (Eigen::Index c = 0; c < t.size(); ++c)
    if (t(c) != 0) s.push_back(cell_of(f, c));
  return s;
}

/// Northwest-corner construction of the unique well-ordered vertex of a
/// generic axial polytope: fill the high corner with min(x_i, y_j, z_k),
/// retire the attaining axis plane, recurse. A tie in the minimum (before the
/// final cell) breaks genericity.
inline RatVector northwest_corner_vertex(const Family& f, const Marginals& mg) {
  if (f.kind != FamilyKind::Axial) throw InputError("expected an axial family");
  check_marginals(f, mg);
  RatVector x = mg.x, y = mg.y, z = mg.z;
  RatVector table = RatVector::Zero(f.num_columns());
  int i = f.l, j = f.m, k = f.n;
  for (;;) {
    const Rational &xi = x(i - 1), &yj = y(j - 1), &zk = z(k - 1);
    if (i == 1 && j == 1 && k == 1) {
      if (xi != yj || yj != zk)
        throw std::logic_error("axis totals disagree at the final cell");
      if (xi == 0) throw NonGenericMarginalsError("zero entry in the staircase");
      table(column_of(f, {1, 1, 1})) = xi;
      return table;
    }
    const Rational v = std::min({xi, yj, zk});
    const int hits = (xi == v) + (yj == v) + (zk == v);
    if (hits != 1)
      throw NonGenericMarginalsError("tie in min(x_i, y_j, z_k): marginals not generic");
    if (v == 0) throw NonGenericMarginalsError("zero entry in the staircase");
    table(column_of(f, {i, j, k})) = v;
    x(i - 1) -= v;
    y(j - 1) -= v;
    z(k - 1) -= v;
    if (xi == 0) --i;
    else if (yj == 0) --j;
    else --k;
    if (i < 1 || j < 1 || k < 1) throw std::logic_error("staircase walked out of the box");
  }
}

/// The three conditions of "well-ordered starting at level p": one support
/// triplet per index-sum q >= p, those triplets totally ordered, and every
/// other support triplet coordinate-wise below the level-p one.
inline bool is_well_ordered_starting_at(const Family& f, const RatVector& table, int p) {
  const int top = f.l + f.m + f.n;
  if (p < 3 || p > top) throw InputError("level out of range");
  const auto supp = table_support(f, table);
  std::map<int, std::vector<TableIndex>> by_sum;
  for (const auto& t : supp) by_sum[t.i + t.j + t.k].push_back(t);
  auto leq = [](const TableIndex& a, const TableIndex& b) {
    return a.i <= b.i && a.j <= b.j && a.k <= b.k;
  };
  TableIndex prev{0, 0, 0};
  for (int q = top; q >= p; --q) {
    auto it = by_sum.find(q);
    if (it == by_sum.end() || it->second.size() != 1) return false;
    const TableIndex cur = it->second.front();
    if (q < top && !leq(cur, prev)) return false;
    prev = cur;
  }
  for (const auto& t : supp)
    if (t.i + t.j + t.k < p && !leq(t, prev)) return false;
  return true;
}

/// Smallest p such that the vertex is well-ordered starting at level p;
/// l+m+n+1 when (l,m,n) is not even in the support.
inline int well_ordered_level(const Family& f, const RatVector& table) {
  const int top = f.l + f.m + f.n;
  for (int p = 3; p <= top; ++p)
    if (is_well_ordered_starting_at(f, table, p)) return p;
  return top + 1;
}

namespace path_detail {

/// One exact simplex pivot from the vertex given by its own support basis,
/// entering the prescribed cell. The polytope must be simple at the vertex
/// (unique ratio minimum); ties propagate as NonGenericMarginalsError.
inline std::pair<RatVector, TableIndex> pivot_entering(const Family& f, const Marginals& mg,
                                                       const RatVector& table,
                                                       const TableIndex& entering) {
  const ConstraintSystem sys = build_system(f, mg);
  const ReducedSystem rs = reduce_system(sys);
  Basis basis;
  for (Eigen::Index c = 0; c < table.size(); ++c)
    if (table(c) != 0) basis.push_back(static_cast<int>(c));
  if (static_cast<Eigen::Index>(basis.size()) != rs.B.rows())
    throw NonGenericMarginalsError("vertex support is not a basis (degenerate polytope)");
  const Eigen::Index e = column_of(f, entering);
  if (table(e) != 0) throw InputError("entering cell is already in the support");
  RatMatrix M = detail::columns(rs.B, basis);
  auto Minv = inverse(M);
  if (!Minv) throw NonGenericMarginalsError("vertex support is not independent");
  RatVector dir = *Minv * rs.B.col(e);
  int leave = -1;
  Rational theta;
  bool tie = false;
  for (Eigen::Index r = 0; r < dir.size(); ++r) {
    if (dir(r) <= 0) continue;
    const Rational ratio = table(basis[r]) / dir(r);
    if (leave < 0 || ratio < theta) {
      leave = static_cast<int>(r);
      theta = ratio;
      tie = false;
    } else if (ratio == theta) {
      tie = true;
    }
  }
  if (leave < 0) throw std::logic_error("unbounded pivot direction in a transportation polytope");
  if (tie) throw NonGenericMarginalsError("ratio-test tie: polytope is degenerate");
  if (theta <= 0) throw NonGenericMarginalsError("degenerate pivot (zero step)");
  RatVector out = table;
  out(e) = theta;
  for (size_t r = 0; r < basis.size(); ++r)
    out(basis[r]) -= theta * dir(static_cast<Eigen::Index>(r));
  if (out(basis[leave]) != 0) throw std::logic_error("leaving variable did not reach zero");
  return {out, cell_of(f, basis[leave])};
}

struct SRSets {
  std::vector<TableIndex> S1, S2, S3, R1, R2, R3, R12, R13, R23;
  size_t union_size = 0;
};

inline SRSets classify_support(const Family& f, const RatVector& table) {
  SRSets s;
  const TableIndex corner{f.l, f.m, f.n};
  for (const auto& t : table_support(f, table)) {
    if (t == corner) continue;
    const bool s1 = t.i == f.l, s2 = t.j == f.m, s3 = t.k == f.n;
    if (s1) s.S1.push_back(t);
    if (s2) s.S2.push_back(t);
    if (s3) s.S3.push_back(t);
    if (s1 && s2 && s3) throw std::logic_error("support triplet in all three boundary planes");
    if (s1 && !s2 && !s3) s.R1.push_back(t);
    if (!s1 && s2 && !s3) s.R2.push_back(t);
    if (!s1 && !s2 && s3) s.R3.push_back(t);
    if (s1 && s2) s.R12.push_back(t);
    if (s1 && s3) s.R13.push_back(t);
    if (s2 && s3) s.R23.push_back(t);
    if (s1 || s2 || s3) ++s.union_size;
  }
  return s;
}

/// The quadrilateral move of the emptying phase: for β, γ whose index-wise
/// maximum is the corner α, shift mass min(a_β, a_γ) along
/// e_α + e_δ − e_β − e_γ where δ is the index-wise minimum. One skeleton edge.
inline std::pair<RatVector, std::pair<TableIndex, TableIndex>> pivot_quad(
    const Family& f, const RatVector& table, const TableIndex& beta, const TableIndex& gamma) {
  const TableIndex alpha{f.l, f.m, f.n};
  const TableIndex delta{std::min(beta.i, gamma.i), std::min(beta.j, gamma.j),
                         std::min(beta.k, gamma.k)};
  const TableIndex mx{std::max(beta.i, gamma.i), std::max(beta.j, gamma.j),
                      std::max(beta.k, gamma.k)};
  if (!(mx == alpha)) throw std::logic_error("quad move requires max(beta,gamma) = corner");
  if (table(column_of(f, delta)) != 0)
    throw std::logic_error("index-wise minimum already in the support");
  const Rational ab = table(column_of(f, beta)), ag = table(column_of(f, gamma));
  if (ab == ag) throw NonGenericMarginalsError("equal values at beta and gamma");
  const Rational t = std::min(ab, ag);
  if (t <= 0) throw std::logic_error("quad move from a non-positive entry");
  RatVector out = table;
  out(column_of(f, alpha)) += t;
  out(column_of(f, delta)) += t;
  out(column_of(f, beta)) -= t;
  out(column_of(f, gamma)) -= t;
  const TableIndex leaving = ab < ag ? beta : gamma;
  return {out, {delta, leaving}};
}

inline TableIndex lex_min(const std::vector<TableIndex>& v) {
  return *std::min_element(v.begin(), v.end());
}

/// Case 3 of the emptying phase: all three of R1, R2, R3 occupied and no
/// mixed pair available. Performs the six-coordinate move toward W for the
/// given β ∈ R1, γ ∈ R2, δ ∈ R3 and, when W is not a vertex, walks the
/// surrounding 2-face (at most an octagon) to a vertex at distance <= 2
/// incident to an edge of β, γ or δ.
inline std::vector<std::pair<RatVector, std::pair<TableIndex, TableIndex>>> case3_moves(
    const Family& f, const Marginals& mg, const RatVector& table, const TableIndex& beta,
    const TableIndex& gamma, const TableIndex& delta) {
  const TableIndex alpha{f.l, f.m, f.n};
  const TableIndex eps1{gamma.i, beta.j, beta.k};
  const TableIndex eps2{delta.i, delta.j, gamma.k};
  const Rational ab = table(column_of(f, beta));
  const Rational ag = table(column_of(f, gamma));
  const Rational ad = table(column_of(f, delta));
  const Rational t = std::min({ab, ag, ad});
  if ((ab == t) + (ag == t) + (ad == t) != 1)
    throw NonGenericMarginalsError("tie among beta, gamma, delta values");

  RatVector w = table;
  w(column_of(f, alpha)) += t;
  w(column_of(f, beta)) -= t;
  w(column_of(f, gamma)) -= t;
  w(column_of(f, delta)) -= t;
  w(column_of(f, eps1)) += t;
  w(column_of(f, eps2)) += t;  // doubles up when eps1 == eps2

  const TableIndex smallest = ab == t ? beta : (ag == t ? gamma : delta);
  const bool e1_in = table(column_of(f, eps1)) != 0;
  const bool e2_in = table(column_of(f, eps2)) != 0;
  if (eps1 == eps2) {
    if (e1_in) throw std::logic_error("merged epsilon already in the support");
    return {{w, {eps1, smallest}}};
  }
  if (e1_in && e2_in) throw std::logic_error("both epsilons in the support of a vertex");
  if (e1_in || e2_in) {
    // W already a vertex: one edge.
    return {{w, {e1_in ? eps2 : eps1, smallest}}};
  }

  // 2-face walk: vertices of the polytope with support inside
  // supp(V) ∪ {eps1, eps2}.
  const ConstraintSystem sys = build_system(f, mg);
  const ReducedSystem rs = reduce_system(sys);
  std::vector<int> splus;
  for (Eigen::Index c = 0; c < table.size(); ++c)
    if (table(c) != 0) splus.push_back(static_cast<int>(c));
  splus.push_back(static_cast<int>(column_of(f, eps1)));
  splus.push_back(static_cast<int>(column_of(f, eps2)));
  std::sort(splus.begin(), splus.end());
  const int r = static_cast<int>(rs.B.rows());
  if (static_cast<int>(splus.size()) != r + 2)
    throw std::logic_error("2-face support has unexpected size");

  // Candidate vertices: r-subsets of splus.
  std::vector<std::pair<RatVector, std::vector<int>>> fverts;  // (table, support)
  std::vector<int> comb(r);
  for (int i = 0; i < r; ++i) comb[i] = i;
  do {
    Basis b;
    for (int i : comb) b.push_back(splus[i]);
    auto xb = solve_square(detail::columns(rs.B, b), rs.c);
    if (!xb) continue;
    bool feas = true;
    for (Eigen::Index q = 0; q < xb->size(); ++q)
      if ((*xb)(q) < 0) { feas = false; break; }
    if (!feas) continue;
    RatVector pt = RatVector::Zero(table.size());
    for (size_t q = 0; q < b.size(); ++q) pt(b[q]) = (*xb)(static_cast<Eigen::Index>(q));
    bool dup = false;
    for (auto& [p0, s0] : fverts)
      if (p0 == pt) { dup = true; break; }
    if (!dup) {
      std::vector<int> sup;
      for (Eigen::Index c = 0; c < pt.size(); ++c)
        if (pt(c) != 0) sup.push_back(static_cast<int>(c));
      if (static_cast<int>(sup.size()) != r)
        throw NonGenericMarginalsError("degenerate vertex on the 2-face");
      fverts.emplace_back(std::move(pt), std::move(sup));
    }
  } while (detail::next_combination(comb, static_cast<int>(splus.size())));

  const int nf = static_cast<int>(fverts.size());
  if (nf < 3 || nf > 8) throw std::logic_error("2-face is not a polygon (octagon bound)");
  // Polygon adjacency: supports differing in exactly one element.
  std::vector<std::vector<int>> adj(nf);
  for (int a = 0; a < nf; ++a)
    for (int b = a + 1; b < nf; ++b) {
      std::vector<int> diff;
      std::set_difference(fverts[a].second.begin(), fverts[a].second.end(),
                          fverts[b].second.begin(), fverts[b].second.end(),
                          std::back_inserter(diff));
      if (diff.size() == 1) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  int self = -1;
  for (int a = 0; a < nf; ++a)
    if (fverts[a].first == table) { self = a; break; }
  if (self < 0) throw std::logic_error("current vertex not on its own 2-face");
  for (int a = 0; a < nf; ++a)
    if (adj[a].size() != 2) throw std::logic_error("2-face adjacency is not a cycle");

  // Zero variable of an edge: the element of splus missing from the union of
  // the endpoint supports.
  auto edge_zero_cell = [&](int a, int b) {
    std::vector<int> uni;
    std::set_union(fverts[a].second.begin(), fverts[a].second.end(), fverts[b].second.begin(),
                   fverts[b].second.end(), std::back_inserter(uni));
    for (int ccol : splus)
      if (!std::binary_search(uni.begin(), uni.end(), ccol)) return cell_of(f, ccol);
    throw std::logic_error("edge without a zero variable");
  };
  auto is_target_edge = [&](int a, int b) {
    const TableIndex zc = edge_zero_cell(a, b);
    return zc == beta || zc == gamma || zc == delta;
  };
  const Eigen::Index alpha_col = column_of(f, alpha);
  // Walk both ways around the cycle, nearest target first; canonical
  // tie-break by smaller support.
  std::vector<std::vector<int>> walks;  // sequences of vertex ids from self
  for (int first : adj[self]) {
    std::vector<int> seq{self, first};
    int prev = self, cur = first;
    while (static_cast<int>(seq.size()) <= 2) {
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      seq.push_back(nxt);
      prev = cur;
      cur = nxt;
    }
    walks.push_back(seq);
  }
  int best_len = -1, best_cand = -1;
  std::vector<int> best_seq;
  for (const auto& seq : walks) {
    for (int dist = 1; dist <= 2; ++dist) {
      const int cand = seq[dist];
      if (fverts[cand].first(alpha_col) == 0) continue;  // must keep the corner
      const bool incident =
          is_target_edge(cand, adj[cand][0]) || is_target_edge(cand, adj[cand][1]);
      if (!incident) continue;
      if (best_len < 0 || dist < best_len ||
          (dist == best_len && fverts[cand].second < fverts[best_cand].second)) {
        best_len = dist;
        best_cand = cand;
        best_seq = seq;
      }
      break;
    }
  }
  if (best_len < 0) throw std::logic_error("no target vertex within two edges on the 2-face");

  std::vector<std::pair<RatVector, std::pair<TableIndex, TableIndex>>> out;
  for (int stp = 1; stp <= best_len; ++stp) {
    const auto& from = fverts[best_seq[stp - 1]];
    const auto& to = fverts[best_seq[stp]];
    std::vector<int> in, outd;
    std::set_difference(to.second.begin(), to.second.end(), from.second.begin(),
                        from.second.end(), std::back_inserter(in));
    std::set_difference(from.second.begin(), from.second.end(), to.second.begin(),
                        to.second.end(), std::back_inserter(outd));
    out.emplace_back(to.first, std::make_pair(cell_of(f, in.at(0)), cell_of(f, outd.at(0))));
  }
  return out;
}

}  // namespace path_detail

/// Lemma-style level decrement: from a vertex well-ordered starting at level
/// p >= 5, a path of at most 2(p-4) skeleton edges to a vertex well-ordered
/// starting at level p-1. Operates literally on the sub-box below the level-p
/// triplet and re-embeds the fixed staircase afterwards.
inline PivotPath decrease_level(const Family& f, const Marginals& mg, const RatVector& table,
                                int p) {
  if (p < 5) throw InputError("decrease_level requires p >= 5");
  if (well_ordered_level(f, table) > p)
    throw InputError("vertex is not well-ordered starting at the given level");
  {
    const Marginals got = marginals_of_table(f, table);
    if (got.x != mg.x || got.y != mg.y || got.z != mg.z)
      throw InputError("table does not realize the given marginals");
  }

  // Level-p triplet and the fixed staircase above it.
  TableIndex corner{0, 0, 0};
  for (const auto& t : table_support(f, table))
    if (t.i + t.j + t.k == p) corner = t;
  if (corner.i == 0) throw std::logic_error("no support triplet at level p");

  const Family sub = Family::axial(corner.i, corner.j, corner.k);
  RatVector fixed = table;
  RatVector sub_table = RatVector::Zero(sub.num_columns());
  for (const auto& t : table_support(f, table)) {
    if (t.i + t.j + t.k > p) continue;
    if (!(t.i <= corner.i && t.j <= corner.j && t.k <= corner.k))
      throw std::logic_error("support below level p escapes the sub-box");
    sub_table(column_of(sub, t)) = table(column_of(f, t));
    fixed(column_of(f, t)) = 0;
  }
  const Marginals sub_mg = marginals_of_table(sub, sub_table);
  check_marginals(sub, sub_mg);

  auto embed = [&](const RatVector& st) {
    RatVector full = fixed;
    for (Eigen::Index c = 0; c < st.size(); ++c)
      if (st(c) != 0) full(column_of(f, cell_of(sub, c))) = st(c);
    return full;
  };

  PivotPath path;
  path.tables.push_back(table);
  RatVector cur = sub_table;
  auto push = [&](const RatVector& nxt, const std::pair<TableIndex, TableIndex>& step) {
    path.tables.push_back(embed(nxt));
    path.steps.push_back(step);
    cur = nxt;
  };

  const size_t s0 = path_detail::classify_support(sub, cur).union_size;
  // Emptying phase: make some S_i empty in at most 2|S∪|-3 moves.
  for (long guard = 0;; ++guard) {
    if (guard > 4 * static_cast<long>(s0) + 8)
      throw std::logic_error("emptying phase failed to terminate");
    auto s = path_detail::classify_support(sub, cur);
    if (s.S1.empty() || s.S2.empty() || s.S3.empty()) break;
    if (!s.R12.empty() && !s.R3.empty()) {
      auto [nxt, step] = path_detail::pivot_quad(sub, cur, path_detail::lex_min(s.R12),
                                                 path_detail::lex_min(s.R3));
      push(nxt, step);
    } else if (!s.R13.empty() && !s.R2.empty()) {
      auto [nxt, step] = path_detail::pivot_quad(sub, cur, path_detail::lex_min(s.R13),
                                                 path_detail::lex_min(s.R2));
      push(nxt, step);
    } else if (!s.R23.empty() && !s.R1.empty()) {
      auto [nxt, step] = path_detail::pivot_quad(sub, cur, path_detail::lex_min(s.R23),
                                                 path_detail::lex_min(s.R1));
      push(nxt, step);
    } else if (!s.R12.empty() && !s.R13.empty() && !s.R23.empty()) {
      auto [nxt, step] = path_detail::pivot_quad(sub, cur, path_detail::lex_min(s.R13),
                                                 path_detail::lex_min(s.R23));
      push(nxt, step);
    } else if (!s.R1.empty() && !s.R2.empty() && !s.R3.empty()) {
      for (auto& [nxt, step] :
           path_detail::case3_moves(sub, sub_mg, cur, path_detail::lex_min(s.R1),
                                    path_detail::lex_min(s.R2), path_detail::lex_min(s.R3)))
        push(nxt, step);
    } else {
      // All of S∪ inside one S_i: repeat the quad move on the two mixed sets.
      const std::vector<TableIndex>*a = nullptr, *b = nullptr;
      if (s.S1.size() == s.union_size) { a = &s.R12; b = &s.R13; }
      else if (s.S2.size() == s.union_size) { a = &s.R12; b = &s.R23; }
      else if (s.S3.size() == s.union_size) { a = &s.R13; b = &s.R23; }
      if (!a || a->empty() || b->empty())
        throw std::logic_error("emptying phase: unclassified configuration");
      auto [nxt, step] =
          path_detail::pivot_quad(sub, cur, path_detail::lex_min(*a), path_detail::lex_min(*b));
      push(nxt, step);
    }
  }
  if (s0 >= 2 && path.length() > static_cast<int>(2 * s0) - 3)
    throw std::logic_error("emptying phase exceeded 2|S|-3 moves");

  // Closing step: insert the next staircase cell below the corner. An empty
  // S_i forces the corner's i-th coordinate above 1 (otherwise the whole
  // support would be the corner alone, impossible for p >= 5).
  {
    auto s = path_detail::classify_support(sub, cur);
    TableIndex next_cell{0, 0, 0};
    if (s.S1.empty()) next_cell = {corner.i - 1, corner.j, corner.k};
    else if (s.S2.empty()) next_cell = {corner.i, corner.j - 1, corner.k};
    else next_cell = {corner.i, corner.j, corner.k - 1};
    if (next_cell.i < 1 || next_cell.j < 1 || next_cell.k < 1)
      throw std::logic_error("closing step walked out of the sub-box");
    if (cur(column_of(sub, next_cell)) == 0) {
      auto [nxt, leaving] = path_detail::pivot_entering(sub, sub_mg, cur, next_cell);
      push(nxt, {next_cell, leaving});
    }
  }
  if (path.length() > 2 * (p - 4))
    throw std::logic_error("level decrement exceeded 2(p-4) edges");
  if (well_ordered_level(f, path.tables.back()) > p - 1)
    throw std::logic_error("level decrement did not reach level p-1");
  return path;
}

/// The constructive path from any vertex to the well-ordered vertex: one
/// pivot to bring (l,m,n) into the support if needed, then level decrements
/// from l+m+n down to 4. Total length at most (l+m+n-3)^2.
inline PathReport path_to_well_ordered(const Family& f, const Marginals& mg,
                                       const RatVector& start) {
  const int top = f.l + f.m + f.n;
  PathReport rep;
  rep.path.tables.push_back(start);
  RatVector cur = start;
  if (well_ordered_level(f, cur) > top) {
    auto [nxt, leaving] = path_detail::pivot_entering(f, mg, cur, {f.l, f.m, f.n});
    rep.path.tables.push_back(nxt);
    rep.path.steps.emplace_back(TableIndex{f.l, f.m, f.n}, leaving);
    cur = nxt;
  }
  int level = well_ordered_level(f, cur);
  if (level > top) throw std::logic_error("corner insertion failed");
  while (level >= 5) {
    PivotPath seg = decrease_level(f, mg, cur, level);
    rep.segments.emplace_back(level, seg.length());
    for (size_t i = 1; i < seg.tables.size(); ++i) {
      rep.path.tables.push_back(seg.tables[i]);
      rep.path.steps.push_back(seg.steps[i - 1]);
    }
    cur = rep.path.tables.back();
    const int nl = well_ordered_level(f, cur);
    if (nl >= level) throw std::logic_error("well-ordered level did not decrease");
    level = nl;
  }
  if (cur != northwest_corner_vertex(f, mg))
    throw std::logic_error("path did not end at the well-ordered vertex");
  if (rep.path.length() > (top - 3) * (top - 3))
    throw std::logic_error("path exceeded the quadratic bound");
  return rep;
}

/// Vertex-to-vertex path through the well-ordered vertex; length at most
/// 2(l+m+n-3)^2.
inline PivotPath path_between(const Family& f, const Marginals& mg, const RatVector& from,
                              const RatVector& to) {
  if (from == to) {
    PivotPath p;
    p.tables.push_back(from);
    return p;
  }
  PathReport a = path_to_well_ordered(f, mg, from);
  PathReport b = path_to_well_ordered(f, mg, to);
  PivotPath out = a.path;
  for (size_t i = b.path.tables.size(); i-- > 1;) {
    out.tables.push_back(b.path.tables[i - 1]);
    out.steps.emplace_back(b.path.steps[i - 1].second, b.path.steps[i - 1].first);
  }
  const int top = f.l + f.m + f.n;
  if (out.length() > 2 * (top - 3) * (top - 3))
    throw std::logic_error("two-sided path exceeded the quadratic bound");
  return out;
}

/// Checks that every step of a path is a genuine skeleton edge: consecutive
/// tables are feasible vertices whose supports differ by one swap.
inline bool verify_path(const Family& f, const Marginals& mg, const PivotPath& path) {
  const ConstraintSystem sys = build_system(f, mg);
  const ReducedSystem rs = reduce_system(sys);
  for (const auto& t : path.tables) {
    if ((rs.B * t - rs.c) != RatVector::Zero(rs.c.size())) return false;
    for (Eigen::Index c = 0; c < t.size(); ++c)
      if (t(c) < 0) return false;
    Basis b;
    for (Eigen::Index c = 0; c < t.size(); ++c)
      if (t(c) != 0) b.push_back(static_cast<int>(c));
    if (static_cast<Eigen::Index>(b.size()) != rs.B.rows()) return false;
    if (!inverse(detail::columns(rs.B, b))) return false;
  }
  for (size_t i = 1; i < path.tables.size(); ++i) {
    std::vector<int> sa, sb, d1, d2;
    for (Eigen::Index c = 0; c < path.tables[i - 1].size(); ++c) {
      if (path.tables[i - 1](c) != 0) sa.push_back(static_cast<int>(c));
      if (path.tables[i](c) != 0) sb.push_back(static_cast<int>(c));
    }
    std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(d1));
    std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(), std::back_inserter(d2));
    if (d1.size() != 1 || d2.size() != 1) return false;
  }
  return true;
}

}  // namespace tpoly
