#pragma once

#include <json.hpp>
#include <string>

#include "tpoly/models.hpp"
#include "tpoly/vertex_enum.hpp"

namespace tpoly {

using nlohmann::json;

namespace io_detail {

/// Rationals are emitted as JSON integers when they fit, as exact strings
/// ("3/2") otherwise; both forms are accepted on input.
inline json rational_to_json(const Rational& q) {
  if (denominator(q) == 1) {
    const Int num = numerator(q);
    if (num >= std::numeric_limits<int64_t>::min() &&
        num <= std::numeric_limits<int64_t>::max())
      return static_cast<int64_t>(num);
  }
  return q.str();
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected an integer or an exact rational string");
}

inline json vector_to_json(const RatVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(rational_to_json(v(i)));
  return a;
}

inline RatVector vector_from_json(const json& a, Eigen::Index expect) {
  if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != expect)
    throw InputError("marginal array has the wrong length");
  RatVector v(expect);
  for (Eigen::Index i = 0; i < expect; ++i) v(i) = rational_from_json(a[i]);
  return v;
}

inline json matrix_to_json(const RatMatrix& m) {  // row-major
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a.push_back(rational_to_json(m(i, j)));
  return a;
}

inline RatMatrix matrix_from_json(const json& a, Eigen::Index rows, Eigen::Index cols) {
  if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != rows * cols)
    throw InputError("marginal matrix has the wrong length");
  RatMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rational_from_json(a[i * cols + j]);
  return m;
}

}  // namespace io_detail

inline json marginals_to_json(const Family& f, const Marginals& mg) {
  json j;
  switch (f.kind) {
    case FamilyKind::Classical:
      j["family"] = "classical";
      j["m"] = f.m;
      j["n"] = f.n;
      j["x"] = io_detail::vector_to_json(mg.x);
      j["y"] = io_detail::vector_to_json(mg.y);
      break;
    case FamilyKind::Axial:
      j["family"] = "axial";
      j["l"] = f.l;
      j["m"] = f.m;
      j["n"] = f.n;
      j["x"] = io_detail::vector_to_json(mg.x);
      j["y"] = io_detail::vector_to_json(mg.y);
      j["z"] = io_detail::vector_to_json(mg.z);
      break;
    case FamilyKind::Planar:
      j["family"] = "planar";
      j["l"] = f.l;
      j["m"] = f.m;
      j["n"] = f.n;
      j["U"] = io_detail::matrix_to_json(mg.U);
      j["V"] = io_detail::matrix_to_json(mg.V);
      j["W"] = io_detail::matrix_to_json(mg.W);
      break;
  }
  return j;
}

inline std::pair<Family, Marginals> marginals_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw InputError("marginals JSON must be an object with a \"family\" field");
  const std::string fam = j.at("family").get<std::string>();
  auto geti = [&](const char* key) {
    if (!j.contains(key)) throw InputError(std::string("missing field ") + key);
    return j.at(key).get<int>();
  };
  Marginals mg;
  if (fam == "classical") {
    Family f = Family::classical(geti("m"), geti("n"));
    mg.x = io_detail::vector_from_json(j.at("x"), f.m);
    mg.y = io_detail::vector_from_json(j.at("y"), f.n);
    check_marginals(f, mg);
    return {f, mg};
  }
  if (fam == "axial") {
    Family f = Family::axial(geti("l"), geti("m"), geti("n"));
    mg.x = io_detail::vector_from_json(j.at("x"), f.l);
    mg.y = io_detail::vector_from_json(j.at("y"), f.m);
    mg.z = io_detail::vector_from_json(j.at("z"), f.n);
    check_marginals(f, mg);
    return {f, mg};
  }
  if (fam == "planar") {
    Family f = Family::planar(geti("l"), geti("m"), geti("n"));
    mg.U = io_detail::matrix_from_json(j.at("U"), f.m, f.n);
    mg.V = io_detail::matrix_from_json(j.at("V"), f.l, f.n);
    mg.W = io_detail::matrix_from_json(j.at("W"), f.l, f.m);
    check_marginals(f, mg);
    return {f, mg};
  }
  throw InputError("family must be classical, axial or planar");
}

/// Graph export: exact vertex points, adjacency lists, flags.
inline json graph_to_json(const SkeletonGraph& g) {
  json j;
  j["family"] = g.fam.kind == FamilyKind::Classical
                    ? "classical"
                    : (g.fam.kind == FamilyKind::Axial ? "axial" : "planar");
  j["shape"] = g.fam.shape_str();
  j["dimension"] = g.dim;
  j["degenerate"] = g.degenerate;
  j["is_simple"] = g.is_simple;
  j["adjacency_exact"] = g.adjacency_exact;
  json verts = json::array();
  for (const auto& v : g.vertices) {
    json jv;
    jv["point"] = io_detail::vector_to_json(v.point);
    jv["support"] = v.support;
    json bases = json::array();
    for (const auto& b : v.bases) bases.push_back(b);
    jv["bases"] = bases;
    verts.push_back(std::move(jv));
  }
  j["vertices"] = std::move(verts);
  j["adjacency"] = g.adj;
  return j;
}

/// DOT emission for small graphs.
inline std::string graph_to_dot(const SkeletonGraph& g) {
  std::string out = "graph skeleton {\n";
  for (size_t i = 0; i < g.vertices.size(); ++i)
    out += "  v" + std::to_string(i) + ";\n";
  for (size_t i = 0; i < g.adj.size(); ++i)
    for (int k : g.adj[i])
      if (static_cast<size_t>(k) > i)
        out += "  v" + std::to_string(i) + " -- v" + std::to_string(k) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace tpoly
