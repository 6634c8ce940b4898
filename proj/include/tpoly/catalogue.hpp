#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tpoly/chambers.hpp"
#include "tpoly/io_json.hpp"
#include "tpoly/parallel.hpp"
#include "tpoly/structure.hpp"

namespace tpoly {

/// Combinatorial statistics of one non-degenerate chamber, computed from the
/// signature alone: vertices are the bases, edges are single swaps, the face
/// {x_i = 0} collects the bases avoiding column i.
struct ChamberStats {
  int vertex_count = 0;
  int facet_count = 0;
  int diameter = 0;
  bool degree_regular = true;
};

inline ChamberStats chamber_stats(const Family& fam, const Chamber& ch) {
  const int n = ch.cardinality();
  const int d = dimension(fam);
  const int rank = static_cast<int>(fam.system_rank());
  ChamberStats st;
  st.vertex_count = n;
  std::vector<std::vector<int>> adj(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const auto &ba = ch.signature[a], &bb = ch.signature[b];
      int common = 0;
      for (size_t i = 0, j = 0; i < ba.size() && j < bb.size();) {
        if (ba[i] == bb[j]) { ++common; ++i; ++j; }
        else if (ba[i] < bb[j]) ++i;
        else ++j;
      }
      if (common == rank - 1) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  for (int a = 0; a < n; ++a)
    if (static_cast<int>(adj[a].size()) != d) st.degree_regular = false;

  // all-pairs BFS diameter
  std::vector<int> dist(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    std::vector<int> q{s};
    for (size_t head = 0; head < q.size(); ++head) {
      int u = q[head];
      for (int v : adj[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push_back(v);
        }
    }
    for (int x : dist) {
      if (x < 0) throw std::logic_error("chamber skeleton is disconnected");
      st.diameter = std::max(st.diameter, x);
    }
  }

  // facets: columns whose zero-face has uniform in-face degree d-1
  const Eigen::Index cols = fam.num_columns();
  for (Eigen::Index i = 0; i < cols; ++i) {
    std::vector<int> face;
    for (int a = 0; a < n; ++a)
      if (!std::binary_search(ch.signature[a].begin(), ch.signature[a].end(),
                              static_cast<int>(i)))
        face.push_back(a);
    if (face.empty()) continue;
    if (static_cast<int>(face.size()) == n)
      throw std::logic_error("coordinate identically zero on a chamber polytope");
    std::vector<bool> in_face(n, false);
    for (int a : face) in_face[a] = true;
    int deg0 = -1;
    bool uniform = true;
    for (int a : face) {
      int deg = 0;
      for (int v : adj[a])
        if (in_face[v]) ++deg;
      if (deg0 < 0) deg0 = deg;
      else if (deg != deg0) uniform = false;
    }
    if (!uniform) throw std::logic_error("zero-face with non-uniform degree");
    if (deg0 == d - 1) ++st.facet_count;
  }
  return st;
}

/// One catalogue line: a combinatorial type of non-degenerate transportation
/// polytope.
struct CatalogueEntry {
  Family fam;
  std::string hash;
  Marginals marginals;
  int vertex_count = 0;
  int facet_count = 0;
  int dimension = 0;
  int diameter = 0;
  bool degree_regular = true;

  json to_json() const {
    json j = marginals_to_json(fam, marginals);
    json e;
    e["type"] = "entry";
    e["shape"] = fam.shape_str();
    e["hash"] = hash;
    e["marginals"] = std::move(j);
    e["vertices"] = vertex_count;
    e["facets"] = facet_count;
    e["dimension"] = dimension;
    e["diameter"] = diameter;
    e["degree_regular"] = degree_regular;
    return e;
  }

  static CatalogueEntry from_json(const json& e) {
    CatalogueEntry out;
    auto [f, mg] = marginals_from_json(e.at("marginals"));
    out.fam = f;
    out.marginals = mg;
    out.hash = e.at("hash").get<std::string>();
    out.vertex_count = e.at("vertices").get<int>();
    out.facet_count = e.at("facets").get<int>();
    out.dimension = e.at("dimension").get<int>();
    out.diameter = e.at("diameter").get<int>();
    out.degree_regular = e.at("degree_regular").get<bool>();
    return out;
  }
};

/// Default desk-scale shapes; anything else needs the override flag.
inline bool desk_scale_ok(const Family& f) {
  switch (f.kind) {
    case FamilyKind::Classical:
      return (f.m <= 2 && f.n <= 5) || (f.n <= 2 && f.m <= 5) ||
             (f.m == 3 && f.n == 3);
    case FamilyKind::Axial: {
      int a = f.l, b = f.m, c = f.n;
      int lo = std::min({a, b, c}), hi = std::max({a, b, c});
      return lo >= 1 && hi <= 3 && a * b * c <= 12;  // up to 2x2x3
    }
    case FamilyKind::Planar: {
      return f.l * f.m * f.n <= 16 && std::min({f.l, f.m, f.n}) <= 2;  // up to 2x2x4
    }
  }
  return false;
}

inline std::string over_limit_message(const Family& f) {
  const Eigen::Index n = f.num_columns(), r = f.system_rank();
  double log2_bases = 0;
  for (Eigen::Index i = 0; i < r; ++i)
    log2_bases += std::log2(double(n - i)) - std::log2(double(i + 1));
  char buf[160];
  snprintf(buf, sizeof buf,
           "shape %s exceeds the default desk-scale limits (about 2^%.1f "
           "basis subsets); pass --override to force it",
           f.shape_str().c_str(), log2_bases);
  return buf;
}

/// Full catalogue of a shape: one entry per chamber, sorted by hash. The
/// distinct vertex counts and entry list come back to the caller; writing is
/// separate so commands can stream.
struct CatalogueResult {
  std::vector<CatalogueEntry> entries;
  std::set<int> distinct_vertex_counts;
  ChamberEnumerationStats stats;
};

inline CatalogueResult build_catalogue(const Family& fam, ChamberOptions copt = {}) {
  CatalogueResult out;
  std::vector<Chamber> chambers;
  out.stats = enumerate_chambers_cb(
      fam, [&](Chamber&& ch) { chambers.push_back(std::move(ch)); }, copt);
  out.entries.resize(chambers.size());
  parallel_for(chambers.size(), [&](size_t i) {
    const Chamber& ch = chambers[i];
    CatalogueEntry e;
    e.fam = fam;
    e.hash = signature_hash_hex(ch.signature);
    const auto st = chamber_stats(fam, ch);
    e.vertex_count = st.vertex_count;
    e.facet_count = st.facet_count;
    e.dimension = dimension(fam);
    e.diameter = st.diameter;
    e.degree_regular = st.degree_regular;
    e.marginals = chamber_marginals(fam, ch);
    out.entries[i] = std::move(e);
  });
  for (const auto& e : out.entries) out.distinct_vertex_counts.insert(e.vertex_count);
  std::sort(out.entries.begin(), out.entries.end(),
            [](const CatalogueEntry& a, const CatalogueEntry& b) { return a.hash < b.hash; });
  return out;
}

/// JSON-lines catalogue file: header line, then one entry per line.
inline void write_catalogue(const std::string& path, const Family& fam,
                            const CatalogueResult& cat, const std::string& timestamp) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot open catalogue file for writing: " + path);
  json header;
  header["type"] = "header";
  header["schema"] = 1;
  header["generator"] = "tpoly";
  header["family"] = fam.kind == FamilyKind::Classical
                         ? "classical"
                         : (fam.kind == FamilyKind::Axial ? "axial" : "planar");
  header["shape"] = fam.shape_str();
  header["method"] = cat.stats.method;
  header["chambers"] = cat.entries.size();
  header["timestamp"] = timestamp;
  os << header.dump() << "\n";
  for (const auto& e : cat.entries) os << e.to_json().dump() << "\n";
}

struct CatalogueFileContents {
  json header;
  std::vector<CatalogueEntry> entries;
};

inline CatalogueFileContents read_catalogue(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open catalogue file: " + path);
  CatalogueFileContents out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (first) {
      if (!j.contains("type") || j.at("type") != "header")
        throw InputError("catalogue file must start with a header line");
      out.header = std::move(j);
      first = false;
      continue;
    }
    out.entries.push_back(CatalogueEntry::from_json(j));
  }
  if (first) throw InputError("catalogue file is empty");
  return out;
}

// ---------------------------------------------------------------------------
// Reference rows: the possible numbers of vertices of non-degenerate
// polytopes of each small shape, and the polytope dimension. Shapes marked
// reference_only carry published bounds that are out of reach of full
// enumeration here.
// ---------------------------------------------------------------------------

struct KnownRow {
  Family fam;
  int dimension;
  std::vector<int> vertex_counts;  // empty for reference-only rows
  std::pair<long, long> reference_bounds{0, 0};
  bool reference_only = false;
  bool needs_override = false;  // beyond the default desk scale
};

inline const std::vector<KnownRow>& known_rows() {
  static const std::vector<KnownRow> rows = [] {
    std::vector<KnownRow> r;
    auto add = [&](Family f, int dim, std::vector<int> counts, bool needs_override = false) {
      r.push_back({f, dim, std::move(counts), {0, 0}, false, needs_override});
    };
    add(Family::classical(2, 3), 2, {3, 4, 5, 6});
    add(Family::classical(2, 4), 3, {4, 6, 8, 10, 12});
    add(Family::classical(2, 5), 4, {5,  8,  11, 12, 14, 15, 16, 17, 18, 19, 20,
                                     21, 22, 23, 24, 25, 26, 27, 28, 29, 30});
    add(Family::classical(3, 3), 4, {9, 12, 15, 18});
    add(Family::classical(3, 4), 6,
        {16, 21, 24, 26, 27, 29, 31, 32, 34, 36, 37, 39, 40, 41, 42, 44,
         45, 46, 48, 49, 50, 52, 53, 54, 56, 57, 58, 60, 61, 62, 63, 64,
         66, 67, 68, 70, 71, 72, 74, 75, 76, 78, 80, 84, 90, 96},
        true);
    add(Family::planar(2, 2, 2), 1, {2});
    add(Family::planar(2, 2, 3), 2, {3, 4, 5, 6});
    add(Family::planar(2, 2, 4), 3, {4, 6, 8, 10, 12});
    add(Family::planar(2, 2, 5), 4, {5,  8,  11, 12, 14, 15, 16, 17, 18, 19, 20,
                                     21, 22, 23, 24, 25, 26, 27, 28, 29, 30},
        true);
    {
      std::vector<int> row{5, 8, 9};
      for (int v = 11; v <= 59; ++v) row.push_back(v);
      add(Family::planar(2, 3, 3), 4, std::move(row), true);
    }
    add(Family::axial(2, 2, 2), 4, {8, 11, 14});
    add(Family::axial(2, 2, 3), 7, {18, 24, 30, 32, 36, 38, 40, 42, 44, 46, 48,
                                    50, 52, 54, 56, 58, 60, 62, 64, 66, 68, 70,
                                    72, 74, 76, 78, 80, 84, 86, 96, 108});
    auto ref = [&](Family f, int dim, long lo, long hi) {
      r.push_back({f, dim, {}, {lo, hi}, true, true});
    };
    ref(Family::axial(2, 2, 4), 10, 32, 504);
    ref(Family::axial(2, 3, 3), 12, 81, 1056);
    ref(Family::axial(3, 3, 3), 20, 729, -1);  // lower bound only
    ref(Family::planar(2, 3, 4), 6, 7, 480);
    return r;
  }();
  return rows;
}

inline const KnownRow* find_known_row(const Family& f) {
  for (const auto& r : known_rows())
    if (r.fam == f) return &r;
  return nullptr;
}

// ---------------------------------------------------------------------------
// verify-tables: compare catalogues against the reference rows, run the gcd
// divisibility check, and compare the planar 2x2xn rows with classical 2xn.
// ---------------------------------------------------------------------------

struct VerifyRowResult {
  std::string name;
  enum class Status { Pass, Fail, Skipped } status;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyRowResult> rows;
  bool all_passed() const {
    for (const auto& r : rows)
      if (r.status == VerifyRowResult::Status::Fail) return false;
    return true;
  }
};

inline VerifyReport verify_tables(const std::map<std::string, CatalogueFileContents>& catalogues) {
  VerifyReport rep;
  auto find_cat = [&](const Family& f) -> const CatalogueFileContents* {
    for (auto& [path, cat] : catalogues) {
      (void)path;
      if (cat.header.at("shape") == f.shape_str() &&
          cat.header.at("family") ==
              (f.kind == FamilyKind::Classical
                   ? "classical"
                   : (f.kind == FamilyKind::Axial ? "axial" : "planar")))
        return &cat;
    }
    return nullptr;
  };
  auto distinct_counts = [](const CatalogueFileContents& cat) {
    std::set<int> s;
    for (auto& e : cat.entries) s.insert(e.vertex_count);
    return s;
  };

  for (const auto& row : known_rows()) {
    if (row.reference_only) continue;
    VerifyRowResult r;
    r.name = row.fam.str() + " vertex counts";
    const auto* cat = find_cat(row.fam);
    if (!cat) {
      r.status = VerifyRowResult::Status::Skipped;
      r.detail = "no catalogue supplied";
    } else {
      auto got = distinct_counts(*cat);
      std::set<int> want(row.vertex_counts.begin(), row.vertex_counts.end());
      if (got == want) {
        r.status = VerifyRowResult::Status::Pass;
        r.detail = std::to_string(cat->entries.size()) + " chambers";
      } else {
        r.status = VerifyRowResult::Status::Fail;
        r.detail = "distinct vertex counts differ from the reference row";
      }
    }
    rep.rows.push_back(std::move(r));
  }

  // gcd divisibility over classical catalogues
  for (auto& [path, cat] : catalogues) {
    (void)path;
    if (cat.header.at("family") != "classical") continue;
    if (cat.entries.empty()) continue;
    const Family f = cat.entries.front().fam;
    std::vector<long> counts;
    for (auto& e : cat.entries) counts.push_back(e.vertex_count);
    auto g = gcd_divisibility_check(f.m, f.n, counts);
    VerifyRowResult r;
    r.name = f.str() + " gcd divisibility";
    r.status = g.ok() ? VerifyRowResult::Status::Pass : VerifyRowResult::Status::Fail;
    r.detail = "gcd " + std::to_string(g.gcd) + ", " + std::to_string(g.checked) + " entries";
    rep.rows.push_back(std::move(r));
  }

  // planar 2x2xn rows equal classical 2xn rows
  for (int n = 3; n <= 5; ++n) {
    const auto* p = find_cat(Family::planar(2, 2, n));
    const auto* c = find_cat(Family::classical(2, n));
    VerifyRowResult r;
    r.name = "planar 2x2x" + std::to_string(n) + " row equals classical 2x" + std::to_string(n);
    if (!p || !c) {
      r.status = VerifyRowResult::Status::Skipped;
      r.detail = "catalogue missing";
    } else {
      r.status = distinct_counts(*p) == distinct_counts(*c)
                     ? VerifyRowResult::Status::Pass
                     : VerifyRowResult::Status::Fail;
    }
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Conjecture tabulation: Hamiltonicity of the skeleton and diameter vs f - d.
// Never asserted; only reported.
// ---------------------------------------------------------------------------

struct ConjectureRow {
  std::string hash;
  int vertices = 0;
  int diameter = 0;
  int f_minus_d = 0;
  bool diameter_equals_f_minus_d = false;
  std::optional<bool> hamiltonian;  // nullopt: search skipped / budget hit
};

namespace catalogue_detail {

/// Exact Hamiltonian-cycle search with a node budget.
inline std::optional<bool> hamiltonian_cycle(const std::vector<std::vector<int>>& adj,
                                             long budget = 2000000) {
  const int n = static_cast<int>(adj.size());
  if (n <= 2) return false;
  for (auto& a : adj)
    if (a.size() < 2) return false;
  std::vector<bool> used(n, false);
  std::vector<int> stack{0};
  used[0] = true;
  long nodes = 0;
  std::function<bool(int, int)> dfs = [&](int u, int depth) -> bool {
    if (++nodes > budget) throw std::overflow_error("budget");
    if (depth == n)
      return std::find(adj[u].begin(), adj[u].end(), 0) != adj[u].end();
    for (int v : adj[u]) {
      if (used[v]) continue;
      used[v] = true;
      if (dfs(v, depth + 1)) { used[v] = false; return true; }
      used[v] = false;
    }
    return false;
  };
  try {
    return dfs(0, 1);
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

}  // namespace catalogue_detail

/// Recomputes the skeleton of each catalogue entry from its marginals and
/// tabulates the two open questions (Hamiltonicity, diameter = f - d).
inline std::vector<ConjectureRow> conjecture_report(const std::vector<CatalogueEntry>& entries,
                                                    int hamilton_max_vertices = 64) {
  std::vector<ConjectureRow> out;
  for (const auto& e : entries) {
    ConjectureRow row;
    row.hash = e.hash;
    row.vertices = e.vertex_count;
    row.diameter = e.diameter;
    row.f_minus_d = e.facet_count - e.dimension;
    row.diameter_equals_f_minus_d = row.diameter == row.f_minus_d;
    if (e.vertex_count <= hamilton_max_vertices) {
      auto g = enumerate_vertices_pivot(build_system(e.fam, e.marginals));
      row.hamiltonian = catalogue_detail::hamiltonian_cycle(g.adj);
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace tpoly
