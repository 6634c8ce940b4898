#include <catch2/catch_amalgamated.hpp>

#include "tpoly/diameter_path.hpp"
#include "tpoly/vertex_enum.hpp"

using namespace tpoly;

namespace {

// The running 3x3x3 axial example: x = (112,18,30), y = (40,6,114),
// z = (82,44,34).
Marginals running_marginals() {
  Marginals mg;
  mg.x.resize(3);
  mg.y.resize(3);
  mg.z.resize(3);
  mg.x << 112, 18, 30;
  mg.y << 40, 6, 114;
  mg.z << 82, 44, 34;
  return mg;
}

const Family kAxial333 = Family::axial(3, 3, 3);

RatVector table_of(const Family& f, std::initializer_list<std::pair<TableIndex, long>> cells) {
  RatVector t = RatVector::Zero(f.num_columns());
  for (auto& [idx, v] : cells) t(column_of(f, idx)) = Rational(v);
  return t;
}

}  // namespace

TEST_CASE("northwest corner rule reproduces the known staircase vertex") {
  auto mg = running_marginals();
  RatVector v = northwest_corner_vertex(kAxial333, mg);
  RatVector expected = table_of(kAxial333, {{{1, 1, 1}, 40},
                                            {{1, 2, 1}, 6},
                                            {{1, 3, 1}, 36},
                                            {{1, 3, 2}, 30},
                                            {{2, 3, 2}, 14},
                                            {{2, 3, 3}, 4},
                                            {{3, 3, 3}, 30}});
  CHECK(v == expected);
  CHECK(well_ordered_level(kAxial333, v) == 3);
  CHECK(is_well_ordered_starting_at(kAxial333, v, 3));
  CHECK(is_well_ordered_starting_at(kAxial333, v, 4));

  // 1x1xn: the staircase is z itself.
  Family f11n = Family::axial(1, 1, 4);
  Marginals m11n;
  m11n.x.resize(1);
  m11n.y.resize(1);
  m11n.z.resize(4);
  m11n.z << 3, 1, 4, 5;
  m11n.x << 13;
  m11n.y << 13;
  RatVector w = northwest_corner_vertex(f11n, m11n);
  for (int k = 1; k <= 4; ++k) CHECK(w(column_of(f11n, {1, 1, k})) == m11n.z(k - 1));
}

TEST_CASE("staircase basis yields the same vertex through basic_solution") {
  auto sys = build_system(kAxial333, running_marginals());
  Basis b;
  for (TableIndex t : {TableIndex{1, 1, 1}, TableIndex{1, 2, 1}, TableIndex{1, 3, 1},
                       TableIndex{1, 3, 2}, TableIndex{2, 3, 2}, TableIndex{2, 3, 3},
                       TableIndex{3, 3, 3}})
    b.push_back(static_cast<int>(column_of(kAxial333, t)));
  std::sort(b.begin(), b.end());
  auto v = basic_solution(sys, b);
  REQUIRE(v);
  CHECK(v->point == northwest_corner_vertex(kAxial333, running_marginals()));
}

TEST_CASE("the well-ordered vertex is unique (exhaustive scan)") {
  auto sys = build_system(kAxial333, running_marginals());
  auto verts = enumerate_vertices_exhaustive(sys);
  CHECK(verts.size() == 4666);
  int well_ordered = 0, degenerate = 0;
  for (auto& v : verts) {
    if (v.bases.size() > 1) ++degenerate;
    if (well_ordered_level(kAxial333, v.point) == 3) ++well_ordered;
  }
  CHECK(well_ordered == 1);
  // The marginals of this instance are not fully generic: a handful of its
  // vertices are degenerate. The staircase machinery operates on the generic
  // ones.
  CHECK(degenerate == 24);
  // every vertex containing (l,m,n) is well-ordered starting at l+m+n
  for (auto& v : verts)
    if (v.point(column_of(kAxial333, {3, 3, 3})) != 0)
      CHECK(well_ordered_level(kAxial333, v.point) <= 9);
}

TEST_CASE("ties in the northwest corner rule are rejected") {
  Marginals mg;
  mg.x.resize(2);
  mg.y.resize(2);
  mg.z.resize(2);
  mg.x << 5, 5;
  mg.y << 5, 5;
  mg.z << 6, 4;
  CHECK_THROWS_AS(northwest_corner_vertex(Family::axial(2, 2, 2), mg),
                  NonGenericMarginalsError);
}

TEST_CASE("quadrilateral move reproduces the printed case-1 pivot") {
  // V from the worked example; beta = (3,3,2) in R12, gamma = (2,2,3) in R3.
  RatVector v = table_of(kAxial333, {{{1, 1, 2}, 28},
                                     {{2, 1, 2}, 12},
                                     {{2, 2, 3}, 6},
                                     {{1, 3, 2}, 2},
                                     {{1, 3, 1}, 82},
                                     {{3, 3, 2}, 2},
                                     {{3, 3, 3}, 28}});
  auto s = path_detail::classify_support(kAxial333, v);
  REQUIRE(s.R12 == std::vector<TableIndex>{{3, 3, 2}});
  REQUIRE(s.R3 == std::vector<TableIndex>{{2, 2, 3}});
  auto [w, step] = path_detail::pivot_quad(kAxial333, v, {3, 3, 2}, {2, 2, 3});
  CHECK(step.first == TableIndex{2, 2, 2});   // delta enters
  CHECK(step.second == TableIndex{3, 3, 2});  // beta leaves
  CHECK(w(column_of(kAxial333, {2, 2, 2})) == 2);
  CHECK(w(column_of(kAxial333, {2, 2, 3})) == 4);
  CHECK(w(column_of(kAxial333, {3, 3, 2})) == 0);
  CHECK(w(column_of(kAxial333, {1, 1, 2})) == 28);
  CHECK(w(column_of(kAxial333, {2, 1, 2})) == 12);
  CHECK(w(column_of(kAxial333, {1, 3, 2})) == 2);
  CHECK(w(column_of(kAxial333, {1, 3, 1})) == 82);
  // The corner entry grows by the moved mass: 28 + 2 = 30 (the printed value
  // 28 contradicts the x_3 marginal, which is 30).
  CHECK(w(column_of(kAxial333, {3, 3, 3})) == 30);
  // Resulting point is a vertex adjacent to v.
  PivotPath p;
  p.tables = {v, w};
  p.steps = {{step.first, step.second}};
  CHECK(verify_path(kAxial333, running_marginals(), p));
}

TEST_CASE("case-3 walk reproduces the printed octagon example") {
  RatVector v = table_of(kAxial333, {{{1, 1, 3}, 25},
                                     {{3, 1, 1}, 15},
                                     {{3, 2, 1}, 6},
                                     {{1, 3, 1}, 61},
                                     {{1, 3, 2}, 26},
                                     {{2, 3, 2}, 18},
                                     {{3, 3, 3}, 9}});
  auto s = path_detail::classify_support(kAxial333, v);
  REQUIRE(s.R1 == std::vector<TableIndex>{{3, 1, 1}, {3, 2, 1}});
  REQUIRE(std::count(s.R2.begin(), s.R2.end(), TableIndex{2, 3, 2}) == 1);
  REQUIRE(s.R3 == std::vector<TableIndex>{{1, 1, 3}});
  // The printed walk chooses beta = (3,2,1) (not the lexicographic minimum).
  auto moves = path_detail::case3_moves(kAxial333, running_marginals(), v, {3, 2, 1},
                                        {2, 3, 2}, {1, 1, 3});
  // One edge from V to the endpoint of the beta-edge adjacent to V. (The
  // printed labels C and D are swapped relative to the narrative: the vertex
  // one edge away from V is the one printed with coordinates 22,18,6,12,...)
  REQUIRE(moves.size() == 1);
  const RatVector& d = moves[0].first;
  RatVector expected = table_of(kAxial333, {{{1, 1, 3}, 22},
                                            {{3, 1, 1}, 18},
                                            {{2, 2, 1}, 6},
                                            {{3, 3, 3}, 12},
                                            {{1, 3, 2}, 32},
                                            {{2, 3, 2}, 12},
                                            {{1, 3, 1}, 58}});
  CHECK(d == expected);
  // beta has left the support.
  CHECK(d(column_of(kAxial333, {3, 2, 1})) == 0);
  PivotPath p;
  p.tables = {v, d};
  p.steps = {moves[0].second};
  CHECK(verify_path(kAxial333, running_marginals(), p));
}

TEST_CASE("decrease_level walks the worked example down one level") {
  RatVector v = table_of(kAxial333, {{{1, 1, 2}, 28},
                                     {{2, 1, 2}, 12},
                                     {{2, 2, 3}, 6},
                                     {{1, 3, 2}, 2},
                                     {{1, 3, 1}, 82},
                                     {{3, 3, 2}, 2},
                                     {{3, 3, 3}, 28}});
  REQUIRE(well_ordered_level(kAxial333, v) == 9);
  auto path = decrease_level(kAxial333, running_marginals(), v, 9);
  CHECK(path.length() <= 2 * (9 - 4));
  CHECK(well_ordered_level(kAxial333, path.tables.back()) <= 8);
  CHECK(verify_path(kAxial333, running_marginals(), path));

  // A vertex already well-ordered at p-1 stays put.
  RatVector vhat = northwest_corner_vertex(kAxial333, running_marginals());
  auto path2 = decrease_level(kAxial333, running_marginals(), vhat, 5);
  CHECK(path2.length() == 0);
}

TEST_CASE("paths from the generic vertices reach the well-ordered vertex in bound") {
  auto mg = running_marginals();
  auto sys = build_system(kAxial333, mg);
  auto g = enumerate_vertices_pivot(sys);
  RatVector vhat = northwest_corner_vertex(kAxial333, mg);
  const int top = 9;
  int walked = 0;
  for (size_t i = 0; i < g.vertices.size(); i += 9) {  // every 9th of 4666
    const auto& v = g.vertices[i];
    if (v.support.size() != 7) continue;  // degenerate vertex: no staircase path
    auto rep = path_to_well_ordered(kAxial333, mg, v.point);
    CHECK(rep.path.length() <= (top - 3) * (top - 3));
    CHECK(rep.path.tables.back() == vhat);
    CHECK(verify_path(kAxial333, mg, rep.path));
    for (auto [p, len] : rep.segments) CHECK(len <= 2 * (p - 4));
    ++walked;
  }
  CHECK(walked >= 500);
}

TEST_CASE("two-sided paths on a generic instance match BFS from below") {
  const Family fam = Family::axial(2, 2, 3);
  const auto mg = sample_marginals(fam, 424242);
  REQUIRE_FALSE(is_degenerate(fam, mg));
  auto g = enumerate_vertices_pivot(build_system(fam, mg));
  REQUIRE_FALSE(g.degenerate);
  const int top = 7;
  for (size_t a = 0; a < g.vertices.size(); ++a)
    for (size_t b = a; b < g.vertices.size(); b += 3) {
      auto path = path_between(fam, mg, g.vertices[a].point, g.vertices[b].point);
      CHECK(path.length() <= 2 * (top - 3) * (top - 3));
      CHECK(verify_path(fam, mg, path));
      const int bfs = graph_distance(g, static_cast<int>(a), static_cast<int>(b));
      CHECK(bfs <= path.length());
      if (a == b) CHECK(path.length() == 0);
    }
}
