#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tpoly/catalogue.hpp"
#include "tpoly/diameter_path.hpp"
#include "tpoly/gale.hpp"
#include "tpoly/io_json.hpp"

namespace fs = std::filesystem;
using namespace tpoly;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;

Family parse_family_shape(const std::string& family, const std::string& shape) {
  std::vector<int> dims;
  std::string cur;
  for (char c : shape + "x") {
    if (c == 'x' || c == 'X') {
      if (cur.empty()) throw InputError("malformed shape: " + shape);
      dims.push_back(std::stoi(cur));
      cur.clear();
    } else if (isdigit(static_cast<unsigned char>(c))) {
      cur += c;
    } else {
      throw InputError("malformed shape: " + shape);
    }
  }
  for (int d : dims)
    if (d < 1) throw InputError("shape entries must be positive");
  if (family == "classical") {
    if (dims.size() != 2) throw InputError("classical shapes look like MxN");
    return Family::classical(dims[0], dims[1]);
  }
  if (family == "axial" || family == "planar") {
    if (dims.size() != 3) throw InputError("3-way shapes look like LxMxN");
    return family == "axial" ? Family::axial(dims[0], dims[1], dims[2])
                             : Family::planar(dims[0], dims[1], dims[2]);
  }
  throw InputError("family must be classical, axial or planar");
}

std::pair<Family, Marginals> load_marginals(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open marginals file: " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return marginals_from_json(j);
}

std::string now_string() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

int cmd_enumerate(const std::string& family, const std::string& shape, const std::string& out,
                  bool override_limits, const std::string& method) {
  const Family fam = parse_family_shape(family, shape);
  if (!desk_scale_ok(fam) && !override_limits) {
    std::cerr << over_limit_message(fam) << "\n";
    return kExitInputError;
  }
  ChamberOptions copt;
  if (method == "flip") copt.method = ChamberOptions::Method::Flip;
  else if (method == "arrangement") copt.method = ChamberOptions::Method::Arrangement;
  else if (method != "auto") throw InputError("method must be auto, flip or arrangement");
  if (override_limits) {
    copt.max_flip_corank = 8;
    copt.max_arrangement_rank = 16;
  }
  auto cat = build_catalogue(fam, copt);
  write_catalogue(out, fam, cat, now_string());
  std::cout << fam.str() << ": " << cat.entries.size() << " chambers ("
            << cat.stats.method << " method)\ndistinct vertex counts:";
  for (int v : cat.distinct_vertex_counts) std::cout << " " << v;
  std::cout << "\nwrote " << out << "\n";
  return kExitOk;
}

int cmd_vertices(const std::string& marginals_path, bool as_json, bool exhaustive) {
  auto [fam, mg] = load_marginals(marginals_path);
  auto sys = build_system(fam, mg);
  SkeletonGraph g;
  if (exhaustive) {
    auto verts = enumerate_vertices_exhaustive(sys);
    g.fam = fam;
    g.dim = dimension(fam);
    g.vertices = std::move(verts);
    g.adj.assign(g.vertices.size(), {});
    g.adjacency_exact = false;
  } else {
    g = enumerate_vertices_pivot(sys);
  }
  if (as_json) {
    json j;
    j["vertex_count"] = g.vertices.size();
    j["degenerate"] = g.degenerate;
    json verts = json::array();
    for (auto& v : g.vertices) {
      json jv;
      jv["point"] = io_detail::vector_to_json(v.point);
      jv["support"] = v.support;
      verts.push_back(std::move(jv));
    }
    j["vertices"] = std::move(verts);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << fam.str() << ": " << g.vertices.size() << " vertices"
              << (g.degenerate ? " (degenerate)" : "") << "\n";
  }
  return kExitOk;
}

int cmd_graph(const std::string& marginals_path, bool dot) {
  auto [fam, mg] = load_marginals(marginals_path);
  auto g = enumerate_vertices_pivot(build_system(fam, mg));
  if (dot) std::cout << graph_to_dot(g);
  else std::cout << graph_to_json(g).dump(2) << "\n";
  return kExitOk;
}

int cmd_diameter(const std::string& marginals_path, bool as_json) {
  auto [fam, mg] = load_marginals(marginals_path);
  auto g = enumerate_vertices_pivot(build_system(fam, mg));
  const int diam = graph_diameter(g);
  if (as_json) {
    json j;
    j["vertices"] = g.vertices.size();
    j["diameter"] = diam;
    j["dimension"] = g.dim;
    j["adjacency_exact"] = g.adjacency_exact;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << fam.str() << ": diameter " << diam << " on " << g.vertices.size()
              << " vertices\n";
  }
  return kExitOk;
}

int cmd_facets(const std::string& marginals_path, bool as_json) {
  auto [fam, mg] = load_marginals(marginals_path);
  const int f = count_facets(build_system(fam, mg));
  if (as_json) {
    json j;
    j["facets"] = f;
    j["dimension"] = dimension(fam);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << fam.str() << ": " << f << " facets\n";
  }
  return kExitOk;
}

json support_json(const Family& f, const RatVector& table) {
  json arr = json::array();
  for (const auto& t : table_support(f, table)) {
    json cell;
    cell["i"] = t.i;
    cell["j"] = t.j;
    if (f.is_3way()) cell["k"] = t.k;
    cell["value"] = io_detail::rational_to_json(table(column_of(f, t)));
    arr.push_back(std::move(cell));
  }
  return arr;
}

int cmd_path(const std::string& marginals_path, int from_vertex, int to_vertex) {
  auto [fam, mg] = load_marginals(marginals_path);
  if (fam.kind != FamilyKind::Axial)
    throw InputError("the staircase path construction applies to axial families");
  if (is_degenerate(fam, mg))
    throw NonGenericMarginalsError("path construction requires non-degenerate marginals");
  auto g = enumerate_vertices_pivot(build_system(fam, mg));
  const int n = static_cast<int>(g.vertices.size());
  if (from_vertex < 0 || from_vertex >= n || to_vertex < -1 || to_vertex >= n)
    throw InputError("vertex index out of range (0.." + std::to_string(n - 1) + ")");
  const int top = fam.l + fam.m + fam.n;

  PivotPath path;
  long bound = 0;
  int bfs = -1;
  if (to_vertex < 0) {
    auto rep = path_to_well_ordered(fam, mg, g.vertices[from_vertex].point);
    path = rep.path;
    bound = static_cast<long>(top - 3) * (top - 3);
    RatVector vhat = path.tables.back();
    for (int i = 0; i < n; ++i)
      if (g.vertices[i].point == vhat) { bfs = graph_distance(g, from_vertex, i); break; }
  } else {
    path = path_between(fam, mg, g.vertices[from_vertex].point, g.vertices[to_vertex].point);
    bound = 2L * (top - 3) * (top - 3);
    bfs = graph_distance(g, from_vertex, to_vertex);
  }
  if (!verify_path(fam, mg, path)) throw std::logic_error("constructed path failed verification");

  json j;
  j["length"] = path.length();
  j["bound"] = bound;
  j["bound_satisfied"] = path.length() <= bound;
  j["bfs_distance"] = bfs;
  json steps = json::array();
  for (size_t s = 0; s < path.steps.size(); ++s) {
    json st;
    st["entering"] = {path.steps[s].first.i, path.steps[s].first.j, path.steps[s].first.k};
    st["leaving"] = {path.steps[s].second.i, path.steps[s].second.j, path.steps[s].second.k};
    steps.push_back(std::move(st));
  }
  j["steps"] = std::move(steps);
  json supports = json::array();
  for (auto& t : path.tables) supports.push_back(support_json(fam, t));
  j["supports"] = std::move(supports);
  std::cout << j.dump(2) << "\n";
  return path.length() <= bound ? kExitOk : kExitVerifyFail;
}

int cmd_verify_tables(const std::string& dir) {
  std::map<std::string, CatalogueFileContents> cats;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string path = entry.path().string();
    if (entry.path().extension() != ".jsonl") continue;
    cats.emplace(path, read_catalogue(path));
  }
  if (cats.empty()) {
    std::cerr << "no .jsonl catalogues in " << dir << "\n";
    return kExitInputError;
  }
  auto rep = verify_tables(cats);
  for (const auto& r : rep.rows) {
    const char* s = r.status == VerifyRowResult::Status::Pass
                        ? "PASS"
                        : (r.status == VerifyRowResult::Status::Fail ? "FAIL" : "SKIP");
    std::cout << s << "  " << r.name;
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
    std::cout << "\n";
  }
  return rep.all_passed() ? kExitOk : kExitVerifyFail;
}

int cmd_conjectures(const std::string& path) {
  auto cat = read_catalogue(path);
  auto rows = conjecture_report(cat.entries);
  int eq = 0, lt = 0, gt = 0, ham_yes = 0, ham_no = 0, ham_skip = 0;
  for (const auto& r : rows) {
    if (r.diameter == r.f_minus_d) ++eq;
    else if (r.diameter < r.f_minus_d) ++lt;
    else ++gt;
    if (!r.hamiltonian) ++ham_skip;
    else if (*r.hamiltonian) ++ham_yes;
    else ++ham_no;
  }
  json j;
  j["entries"] = rows.size();
  j["diameter_equals_f_minus_d"] = eq;
  j["diameter_less_than_f_minus_d"] = lt;
  j["diameter_greater_than_f_minus_d"] = gt;
  j["hamiltonian"] = ham_yes;
  j["not_hamiltonian"] = ham_no;
  j["hamiltonicity_skipped"] = ham_skip;
  json detail = json::array();
  for (const auto& r : rows) {
    json e;
    e["hash"] = r.hash;
    e["vertices"] = r.vertices;
    e["diameter"] = r.diameter;
    e["f_minus_d"] = r.f_minus_d;
    if (r.hamiltonian) e["hamiltonian"] = *r.hamiltonian;
    detail.push_back(std::move(e));
  }
  j["per_entry"] = std::move(detail);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_gale(const std::string& family, const std::string& shape) {
  const Family fam = parse_family_shape(family, shape);
  auto conf = gale_transform(shape_system(fam));
  json j;
  j["family"] = family;
  j["shape"] = shape;
  j["rank"] = conf.dim();
  j["size"] = conf.size();
  json rows = json::array();
  for (Eigen::Index i = 0; i < conf.dim(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < conf.size(); ++c) row.push_back(conf.V(i, c).str());
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  j["totally_cyclic"] = is_totally_cyclic(conf);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact enumeration and diameter paths for transportation polytopes"};
  app.require_subcommand(1);

  std::string family, shape, out, marginals, dir, method = "auto";
  bool override_limits = false, as_json = false, dot = false, exhaustive = false;
  int from_vertex = 0, to_vertex = -1;

  auto* enumerate = app.add_subcommand("enumerate", "catalogue every chamber of a shape");
  enumerate->add_option("--family", family)->required();
  enumerate->add_option("--shape", shape)->required();
  enumerate->add_option("--out", out)->required();
  enumerate->add_flag("--override", override_limits, "allow shapes beyond the desk-scale limits");
  enumerate->add_option("--method", method, "auto|flip|arrangement");

  auto* vertices = app.add_subcommand("vertices", "enumerate the vertices of one polytope");
  vertices->add_option("--marginals", marginals)->required();
  vertices->add_flag("--json", as_json);
  vertices->add_flag("--exhaustive", exhaustive, "scan all bases instead of pivoting");

  auto* graph = app.add_subcommand("graph", "emit the vertex-edge graph");
  graph->add_option("--marginals", marginals)->required();
  graph->add_flag("--dot", dot, "DOT output instead of JSON");

  auto* diameter = app.add_subcommand("diameter", "exact graph diameter");
  diameter->add_option("--marginals", marginals)->required();
  diameter->add_flag("--json", as_json);

  auto* facets = app.add_subcommand("facets", "count facets by exact LP");
  facets->add_option("--marginals", marginals)->required();
  facets->add_flag("--json", as_json);

  auto* path = app.add_subcommand("path", "staircase path to the well-ordered vertex");
  path->add_option("--marginals", marginals)->required();
  path->add_option("--from-vertex", from_vertex, "start vertex id (default 0)");
  path->add_option("--to-vertex", to_vertex, "target vertex id (default: well-ordered vertex)");

  auto* verify = app.add_subcommand("verify-tables", "compare catalogues with the reference rows");
  verify->add_option("--catalogue", dir, "directory of .jsonl catalogues")->required();

  auto* conj = app.add_subcommand("conjectures", "tabulate Hamiltonicity and diameter vs f-d");
  conj->add_option("--catalogue", marginals, "catalogue file")->required();

  auto* gale = app.add_subcommand("gale", "print the Gale transform of a shape");
  gale->add_option("--family", family)->required();
  gale->add_option("--shape", shape)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (enumerate->parsed()) return cmd_enumerate(family, shape, out, override_limits, method);
    if (vertices->parsed()) return cmd_vertices(marginals, as_json, exhaustive);
    if (graph->parsed()) return cmd_graph(marginals, dot);
    if (diameter->parsed()) return cmd_diameter(marginals, as_json);
    if (facets->parsed()) return cmd_facets(marginals, as_json);
    if (path->parsed()) return cmd_path(marginals, from_vertex, to_vertex);
    if (verify->parsed()) return cmd_verify_tables(dir);
    if (conj->parsed()) return cmd_conjectures(marginals);
    if (gale->parsed()) return cmd_gale(family, shape);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const DegenerateRhsError& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NonGenericMarginalsError& e) {
    std::cerr << "non-generic input: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitOk;
}
