#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tpoly/gale.hpp"
#include "tpoly/models.hpp"
#include "tpoly/triangulations.hpp"
#include "tpoly/vertex_enum.hpp"

namespace tpoly {

/// One chamber of cone(B): the set of bases whose open cones contain every
/// point of the chamber, plus one exact interior representative (a point in
/// the reduced row coordinates; any positive multiple is equivalent).
struct Chamber {
  std::vector<Basis> signature;  // canonically sorted
  IntVector representative;
  int cardinality() const { return static_cast<int>(signature.size()); }
};

/// Stable 128-bit FNV-style hash of a signature; used as the chamber identity
/// in catalogue files.
inline std::array<uint64_t, 2> signature_hash(const std::vector<Basis>& sig) {
  uint64_t h1 = 1469598103934665603ULL, h2 = 14695981039346656037ULL;
  auto mix = [&](uint64_t v) {
    h1 = (h1 ^ v) * 1099511628211ULL;
    h2 = (h2 ^ (v + 0x9e3779b97f4a7c15ULL)) * 1099511628211ULL;
  };
  mix(sig.size());
  for (const auto& b : sig) {
    mix(0xfeedfaceULL);
    for (int e : b) mix(static_cast<uint64_t>(e) + 1);
  }
  return {h1, h2};
}

inline std::string signature_hash_hex(const std::vector<Basis>& sig) {
  auto h = signature_hash(sig);
  char buf[33];
  snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(h[0]),
           static_cast<unsigned long long>(h[1]));
  return buf;
}

namespace chamber_detail {

inline Int dot(const IntVector& a, const IntVector& b) {
  Int s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

/// Hyperplane arrangement data for one configuration: the distinct
/// column-spanned hyperplanes and, per basis, the facet hyperplane and
/// interior sign for each omitted generator.
struct Arrangement {
  IntMatrix V;  // d x N integer columns
  std::vector<IntVector> normals;
  std::vector<Int> max_cross;                    // max_k |n_k . n_j| per j
  std::vector<Basis> bases;                      // lex order
  std::vector<std::vector<std::pair<int, int>>> basis_facets;  // (hyperplane, sign)
  std::vector<int> init_hyps;                    // d independent normals
  std::vector<IntVector> init_rays;              // Nmat * ray_k = t_k e_k, t_k > 0

  static Arrangement build(const IntMatrix& V) {
    Arrangement ar;
    ar.V = V;
    const int d = static_cast<int>(V.rows());
    const int n = static_cast<int>(V.cols());
    std::map<std::string, int> by_key;
    auto normal_id = [&](const std::vector<int>& subset) -> int {
      auto nrm = hyperplane_normal(V, subset);
      if (!nrm) return -1;
      std::string key;
      for (Eigen::Index i = 0; i < nrm->size(); ++i) {
        key += (*nrm)(i).str();
        key += ',';
      }
      auto it = by_key.find(key);
      if (it != by_key.end()) return it->second;
      const int id = static_cast<int>(ar.normals.size());
      by_key.emplace(key, id);
      ar.normals.push_back(*nrm);
      return id;
    };
    // Bases and their facet hyperplanes.
    std::vector<int> comb(d);
    for (int i = 0; i < d; ++i) comb[i] = i;
    do {
      IntMatrix M(d, d);
      for (int k = 0; k < d; ++k) M.col(k) = V.col(comb[k]);
      if (determinant(M) == 0) continue;
      std::vector<std::pair<int, int>> facets;
      bool ok = true;
      for (int omit = 0; omit < d && ok; ++omit) {
        std::vector<int> facet;
        for (int k = 0; k < d; ++k)
          if (k != omit) facet.push_back(comb[k]);
        const int hid = normal_id(facet);
        if (hid < 0) { ok = false; break; }
        const Int s = dot(ar.normals[hid], IntVector(V.col(comb[omit])));
        if (s == 0) { ok = false; break; }
        facets.emplace_back(hid, s > 0 ? 1 : -1);
      }
      if (!ok) throw std::logic_error("basis facet has no hyperplane");
      ar.bases.push_back(comb);
      ar.basis_facets.push_back(std::move(facets));
    } while (detail::next_combination(comb, n));
    if (ar.bases.empty()) throw InputError("configuration has no basis");

    // d independent normals and a simplicial starting cone.
    RatMatrix probe;
    for (size_t j = 0; j < ar.normals.size() && static_cast<int>(ar.init_hyps.size()) < d; ++j) {
      probe.resize(static_cast<Eigen::Index>(ar.init_hyps.size()) + 1, d);
      for (size_t k = 0; k < ar.init_hyps.size(); ++k)
        probe.row(static_cast<Eigen::Index>(k)) = to_rational(IntVector(ar.normals[ar.init_hyps[k]])).transpose();
      probe.row(static_cast<Eigen::Index>(ar.init_hyps.size())) =
          to_rational(IntVector(ar.normals[j])).transpose();
      if (rank(probe) == static_cast<Eigen::Index>(ar.init_hyps.size()) + 1)
        ar.init_hyps.push_back(static_cast<int>(j));
    }
    if (static_cast<int>(ar.init_hyps.size()) != d)
      throw std::logic_error("hyperplane normals do not span");
    RatMatrix Nmat(d, d);
    for (int i = 0; i < d; ++i)
      Nmat.row(i) = to_rational(IntVector(ar.normals[ar.init_hyps[i]])).transpose();
    auto Ninv = inverse(Nmat);
    if (!Ninv) throw std::logic_error("initial normals singular");
    for (int k = 0; k < d; ++k)
      ar.init_rays.push_back(to_primitive_integer(RatVector(Ninv->col(k))));
    ar.max_cross.assign(ar.normals.size(), 0);
    for (size_t j = 0; j < ar.normals.size(); ++j)
      for (size_t k = 0; k < ar.normals.size(); ++k) {
        if (k == j) continue;
        Int c = boost::multiprecision::abs(dot(ar.normals[k], ar.normals[j]));
        if (c > ar.max_cross[j]) ar.max_cross[j] = c;
      }
    return ar;
  }

  /// Signature of a generic point from its hyperplane sign vector.
  std::vector<int> signature_of_signs(const std::vector<int8_t>& sg) const {
    std::vector<int> out;
    for (size_t bi = 0; bi < bases.size(); ++bi) {
      bool inside = true;
      for (auto [hid, s] : basis_facets[bi])
        if (sg[hid] != s) { inside = false; break; }
      if (inside) out.push_back(static_cast<int>(bi));
    }
    return out;
  }

  std::vector<int8_t> signs_of_point(const IntVector& x, bool* generic = nullptr) const {
    std::vector<int8_t> sg(normals.size());
    if (generic) *generic = true;
    for (size_t j = 0; j < normals.size(); ++j) {
      const Int v = dot(normals[j], x);
      if (v == 0 && generic) *generic = false;
      sg[j] = v > 0 ? 1 : (v < 0 ? -1 : 0);
    }
    return sg;
  }
};

/// Extreme rays of {x : sg_j (n_j . x) >= 0 for all j} by the double
/// description method, starting from the precomputed simplicial cone.
inline std::vector<IntVector> cell_rays(const Arrangement& ar, const std::vector<int8_t>& sg) {
  const int d = static_cast<int>(ar.V.rows());
  const size_t h = ar.normals.size();
  std::vector<IntVector> rays;
  std::vector<std::vector<uint64_t>> tight;
  const size_t words = (h + 63) / 64;
  std::vector<bool> processed(h, false);
  auto set_bit = [&](std::vector<uint64_t>& bits, size_t j) { bits[j / 64] |= 1ULL << (j % 64); };
  auto recompute_tight = [&](const IntVector& r) {
    std::vector<uint64_t> bits(words, 0);
    for (size_t j = 0; j < h; ++j)
      if (processed[j] && dot(ar.normals[j], r) == 0) set_bit(bits, j);
    return bits;
  };
  for (int k = 0; k < d; ++k) {
    IntVector r = ar.init_rays[k];
    if (sg[ar.init_hyps[k]] < 0) r = -r;
    rays.push_back(std::move(r));
  }
  for (int k = 0; k < d; ++k) processed[ar.init_hyps[k]] = true;
  tight.resize(d);
  for (int k = 0; k < d; ++k) tight[k] = recompute_tight(rays[k]);

  for (size_t j = 0; j < h; ++j) {
    if (processed[j]) continue;
    processed[j] = true;
    std::vector<Int> val(rays.size());
    bool any_neg = false;
    for (size_t r = 0; r < rays.size(); ++r) {
      val[r] = Int(sg[j]) * dot(ar.normals[j], rays[r]);
      if (val[r] < 0) any_neg = true;
    }
    if (!any_neg) {
      for (size_t r = 0; r < rays.size(); ++r)
        if (val[r] == 0) set_bit(tight[r], j);
      continue;
    }
    std::vector<IntVector> next;
    std::vector<std::vector<uint64_t>> next_tight;
    for (size_t r = 0; r < rays.size(); ++r)
      if (val[r] >= 0) {
        next.push_back(rays[r]);
        auto b = tight[r];
        if (val[r] == 0) set_bit(b, j);
        next_tight.push_back(std::move(b));
      }
    for (size_t p = 0; p < rays.size(); ++p) {
      if (val[p] <= 0) continue;
      for (size_t q = 0; q < rays.size(); ++q) {
        if (val[q] >= 0) continue;
        // combinatorial adjacency: no third ray tight on tight(p) & tight(q)
        std::vector<uint64_t> common(words);
        for (size_t w = 0; w < words; ++w) common[w] = tight[p][w] & tight[q][w];
        bool adjacent = true;
        for (size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          bool superset = true;
          for (size_t w = 0; w < words; ++w)
            if ((common[w] & ~tight[r][w]) != 0) { superset = false; break; }
          if (superset) adjacent = false;
        }
        if (!adjacent) continue;
        IntVector w = reduce_primitive(IntVector(-val[q] * rays[p] + val[p] * rays[q]));
        next.push_back(w);
        next_tight.push_back(recompute_tight(next.back()));
      }
    }
    rays = std::move(next);
    tight = std::move(next_tight);
    if (rays.size() > 100000) throw std::logic_error("double description ray explosion");
  }
  return rays;
}

}  // namespace chamber_detail

struct ChamberEnumerationStats {
  long cells_visited = 0;
  long chambers = 0;
  std::string method;
  bool encountered_nonregular = false;  // flip method only
  long rejected_flips = 0;
};

/// Enumerates the chambers of cone(B) for the family's constraint matrix by
/// breadth-first wall crossing over the cells of the hyperplane arrangement
/// spanned by the columns. Cells are grouped into chambers by signature; the
/// callback fires once per chamber.
inline ChamberEnumerationStats enumerate_chambers_arrangement(
    const Family& fam, const std::function<void(Chamber&&)>& emit) {
  const ConstraintSystem sys = shape_system(fam);
  const ReducedSystem rs = reduce_system(sys);
  const auto ar = chamber_detail::Arrangement::build(column_config(rs.B).V);
  const size_t h = ar.normals.size();

  // Generic interior start point.
  IntVector x0;
  {
    Rng rng(0xc0ffee12345ULL);
    for (int attempt = 0;; ++attempt) {
      if (attempt > 256) throw std::logic_error("no generic start point found");
      IntVector lam(ar.V.cols());
      for (Eigen::Index j = 0; j < ar.V.cols(); ++j) lam(j) = Int(rng.uniform(1, 1000003));
      IntVector cand = ar.V * lam;
      bool generic = true;
      for (size_t j = 0; j < h && generic; ++j)
        if (chamber_detail::dot(ar.normals[j], cand) == 0) generic = false;
      if (generic) { x0 = reduce_primitive(cand); break; }
    }
  }

  struct Cell {
    std::vector<int8_t> sg;
    IntVector point;
  };
  // Cells never sit on a hyperplane, so one bit per sign suffices.
  auto sign_key = [&](const std::vector<int8_t>& sg) {
    std::string k((sg.size() + 7) / 8, 0);
    for (size_t i = 0; i < sg.size(); ++i)
      if (sg[i] > 0) k[i / 8] |= static_cast<char>(1 << (i % 8));
    return k;
  };

  ChamberEnumerationStats stats;
  stats.method = "arrangement";
  std::unordered_set<std::string> visited;
  std::set<std::array<uint64_t, 2>> chamber_hashes;
  std::deque<Cell> queue;
  {
    bool generic = false;
    auto sg = ar.signs_of_point(x0, &generic);
    if (!generic) throw std::logic_error("start point not generic");
    visited.insert(sign_key(sg));
    queue.push_back({std::move(sg), x0});
  }

  while (!queue.empty()) {
    Cell cell = std::move(queue.front());
    queue.pop_front();
    ++stats.cells_visited;
    {
      bool generic = false;
      auto check = ar.signs_of_point(cell.point, &generic);
      if (!generic || check != cell.sg)
        throw std::logic_error("cell representative signs inconsistent");
    }
    auto sig_idx = ar.signature_of_signs(cell.sg);
    if (sig_idx.empty()) continue;  // outside cone(B): do not expand
    std::vector<Basis> sig;
    sig.reserve(sig_idx.size());
    for (int bi : sig_idx) sig.push_back(ar.bases[bi]);
    const auto hash = signature_hash(sig);
    if (!chamber_hashes.count(hash)) {
      chamber_hashes.insert(hash);
      ++stats.chambers;
      emit(Chamber{std::move(sig), cell.point});
    }

    const auto rays = chamber_detail::cell_rays(ar, cell.sg);
    for (size_t j = 0; j < h; ++j) {
      // facet of the cell on hyperplane j?
      std::vector<const IntVector*> on;
      for (const auto& r : rays)
        if (chamber_detail::dot(ar.normals[j], r) == 0) on.push_back(&r);
      if (static_cast<int>(on.size()) < static_cast<int>(ar.V.rows()) - 1) continue;
      RatMatrix span(static_cast<Eigen::Index>(on.size()), ar.V.rows());
      for (size_t k = 0; k < on.size(); ++k)
        span.row(static_cast<Eigen::Index>(k)) = to_rational(*on[k]).transpose();
      if (rank(span) != ar.V.rows() - 1) continue;
      auto nsg = cell.sg;
      nsg[j] = static_cast<int8_t>(-nsg[j]);
      const std::string key = sign_key(nsg);
      if (visited.count(key)) continue;
      // relative interior point of the facet, then a short exact step across:
      // scaling by 1 + max_k |n_k . n_j| keeps every other sign (the facet
      // point has |n_k . q| >= 1 wherever nonzero).
      IntVector q = IntVector::Zero(ar.V.rows());
      for (const auto* r : on) q += *r;
      q = reduce_primitive(q);
      for (size_t k = 0; k < h; ++k)
        if (k != j && chamber_detail::dot(ar.normals[k], q) == 0)
          throw std::logic_error("facet point lies on a second hyperplane");
      IntVector x2 = reduce_primitive(
          IntVector((ar.max_cross[j] + 1) * q - Int(cell.sg[j]) * ar.normals[j]));
      visited.insert(key);
      queue.push_back({std::move(nsg), std::move(x2)});
    }
  }
  return stats;
}

/// Enumerates chambers through the Gale dual: every regular triangulation of
/// the Gale transform corresponds to one chamber via complementation, and its
/// regularity certificate w maps to an interior representative c = B_red w.
inline ChamberEnumerationStats enumerate_chambers_flip(
    const Family& fam, const std::function<void(Chamber&&)>& emit) {
  const ConstraintSystem sys = shape_system(fam);
  const ReducedSystem rs = reduce_system(sys);
  const int n = static_cast<int>(rs.B.cols());
  const int d = static_cast<int>(rs.B.rows());

  ChamberEnumerationStats stats;
  stats.method = "flip";
  if (n == d) {  // corank 0: a single simplicial cone, one chamber
    Basis all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    IntVector rep = IntVector::Zero(d);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < d; ++i) rep(i) += Int(numerator(rs.B(i, j)));
    emit(Chamber{{all}, std::move(rep)});
    stats.chambers = 1;
    return stats;
  }

  const VectorConfig gale = gale_transform(rs.B);
  auto regs = enumerate_regular_triangulations(gale);
  stats.encountered_nonregular = regs.encountered_nonregular;
  stats.rejected_flips = regs.rejected_flips;

  const IntMatrix Vint = column_config(rs.B).V;
  int orientation = 0;  // +1: c = B w, -1: c = -B w; pinned by the first chamber
  for (size_t t = 0; t < regs.list.size(); ++t) {
    std::vector<Basis> sig = complement_map(regs.list[t], n);
    for (auto& b : sig)
      if (static_cast<int>(b.size()) != d || determinant(IntMatrix(Vint(Eigen::all, b))) == 0)
        throw std::logic_error("complement of a Gale simplex is not a basis");
    RatVector c_rat = rs.B * regs.heights[t];
    IntVector rep = to_primitive_integer(c_rat);
    auto strictly_positive_on = [&](const IntVector& c, const std::vector<Basis>& bases) {
      RatVector cr = to_rational(c);
      for (const auto& b : bases) {
        auto xb = solve_square(detail::columns(rs.B, b), cr);
        if (!xb) return false;
        for (Eigen::Index i = 0; i < xb->size(); ++i)
          if ((*xb)(i) <= 0) return false;
      }
      return true;
    };
    if (orientation == 0) {
      if (strictly_positive_on(rep, sig)) orientation = 1;
      else if (strictly_positive_on(IntVector(-rep), sig)) orientation = -1;
      else throw std::logic_error("secondary-fan representative fails both orientations");
    }
    if (orientation < 0) rep = -rep;
    if (orientation < 0 || t > 0) {
      if (!strictly_positive_on(rep, sig))
        throw std::logic_error("representative is not interior to its chamber");
    }
    std::sort(sig.begin(), sig.end());
    emit(Chamber{std::move(sig), std::move(rep)});
    ++stats.chambers;
  }
  return stats;
}

struct ChamberOptions {
  enum class Method { Auto, Flip, Arrangement } method = Method::Auto;
  int max_flip_corank = 4;
  int max_arrangement_rank = 8;
};

/// Chamber enumeration for a family, choosing the cheaper side of the Gale
/// duality: the flip search works in the corank, the arrangement walk in the
/// rank. Throws InputError when both exceed the configured desk-scale limits.
inline ChamberEnumerationStats enumerate_chambers_cb(
    const Family& fam, const std::function<void(Chamber&&)>& emit,
    ChamberOptions opt = {}) {
  const Eigen::Index rank = fam.system_rank();
  const Eigen::Index corank = fam.num_columns() - rank;
  auto pick_flip = [&] {
    switch (opt.method) {
      case ChamberOptions::Method::Flip: return true;
      case ChamberOptions::Method::Arrangement: return false;
      case ChamberOptions::Method::Auto: break;
    }
    if (corank <= opt.max_flip_corank) return true;
    if (rank <= opt.max_arrangement_rank) return false;
    throw InputError("shape exceeds desk-scale limits: corank " + std::to_string(corank) +
                     " and rank " + std::to_string(rank) + " with roughly " +
                     std::to_string(static_cast<double>(fam.num_columns()) * rank) +
                     " basis-subset candidates per column step");
  };
  return pick_flip() ? enumerate_chambers_flip(fam, emit)
                     : enumerate_chambers_arrangement(fam, emit);
}

/// Convenience form: collects and sorts the chambers (desk-scale shapes).
inline std::vector<Chamber> enumerate_chambers(const Family& fam, ChamberOptions opt = {}) {
  std::vector<Chamber> out;
  enumerate_chambers_cb(fam, [&](Chamber&& ch) { out.push_back(std::move(ch)); }, opt);
  std::sort(out.begin(), out.end(),
            [](const Chamber& a, const Chamber& b) { return a.signature < b.signature; });
  return out;
}

/// The chamber containing the system's right-hand side c. Scans all bases on
/// small systems and uses pivot enumeration on larger ones; a basic solution
/// with a zero basic variable means c is on a chamber wall.
inline Chamber chamber_of(const ConstraintSystem& sys) {
  const ReducedSystem rs = reduce_system(sys);
  const int n = static_cast<int>(rs.B.cols());
  const int r = static_cast<int>(rs.B.rows());
  Chamber ch;
  ch.representative = to_primitive_integer(rs.c);
  double log_count = 0;
  for (int i = 0; i < r; ++i) log_count += std::log2(double(n - i)) - std::log2(double(i + 1));
  if (log_count <= 18) {
    std::vector<int> comb(r);
    for (int i = 0; i < r; ++i) comb[i] = i;
    do {
      auto xb = solve_square(detail::columns(rs.B, comb), rs.c);
      if (!xb) continue;
      bool strict = true, feasible = true;
      for (Eigen::Index i = 0; i < xb->size(); ++i) {
        if ((*xb)(i) < 0) { feasible = false; break; }
        if ((*xb)(i) == 0) strict = false;
      }
      if (!feasible) continue;
      if (!strict)
        throw DegenerateRhsError("right-hand side lies on a chamber wall");
      ch.signature.push_back(comb);
    } while (detail::next_combination(comb, n));
    if (ch.signature.empty()) throw InfeasibleMarginalsError("polytope is empty");
  } else {
    SkeletonGraph g = enumerate_vertices_pivot(sys);
    if (g.degenerate) throw DegenerateRhsError("right-hand side lies on a chamber wall");
    for (const auto& v : g.vertices)
      for (const auto& b : v.bases) ch.signature.push_back(b);
    std::sort(ch.signature.begin(), ch.signature.end());
  }
  return ch;
}

/// Marginals corresponding to a chamber representative: solves for one
/// feasible table of the reduced right-hand side, rescales to integers, and
/// reads the marginals off the full system. Any point of the chamber gives a
/// combinatorially equivalent polytope.
inline Marginals chamber_marginals(const Family& fam, const Chamber& ch) {
  const ConstraintSystem sys = shape_system(fam);
  const ReducedSystem rs = reduce_system(sys);
  auto x = lp_feasible_point(rs.B, to_rational(ch.representative));
  if (!x) throw std::logic_error("chamber representative is not in cone(B)");
  Int scale = common_denominator(*x);
  RatVector table = *x * Rational(scale);
  return marginals_of_table(fam, table);
}

}  // namespace tpoly
