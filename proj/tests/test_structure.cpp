#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "tpoly/structure.hpp"

using namespace tpoly;

TEST_CASE("planar 2xmxn <-> capacitated mxn round trip") {
  auto fam = Family::planar(2, 3, 3);
  auto mg = sample_marginals(fam, 31337);
  auto cap = planar2mn_to_capacitated(fam, mg);
  auto back = capacitated_to_planar2mn(cap);
  CHECK(back.U == mg.U);
  CHECK(back.V == mg.V);
  CHECK(back.W == mg.W);
}

TEST_CASE("projection maps the planar polytope bijectively onto the capacitated one") {
  auto fam = Family::planar(2, 3, 3);
  for (uint64_t seed : {11u, 22u, 33u}) {
    auto mg = sample_marginals(fam, seed);
    auto verts = enumerate_vertices_exhaustive(build_system(fam, mg));
    // distinct projections, and each projection obeys the capacities
    std::set<std::string> images;
    auto cap = planar2mn_to_capacitated(fam, mg);
    for (auto& v : verts) {
      RatMatrix b = project_first_layer(fam, v.point);
      for (int j = 0; j < fam.m; ++j)
        for (int k = 0; k < fam.n; ++k) {
          CHECK(b(j, k) >= 0);
          CHECK(b(j, k) <= cap.capacities(j, k));
        }
      std::string key;
      for (int j = 0; j < fam.m; ++j)
        for (int k = 0; k < fam.n; ++k) key += b(j, k).str() + ";";
      images.insert(key);
    }
    CHECK(images.size() == verts.size());
  }
}

TEST_CASE("huge capacities reduce to the ordinary classical polytope") {
  CapacitatedClassical cap;
  cap.row_sums.resize(2);
  cap.col_sums.resize(3);
  cap.row_sums << 15, 18;
  cap.col_sums << 11, 8, 14;
  cap.capacities = RatMatrix::Constant(2, 3, Rational(1000000));
  auto planar = capacitated_to_planar2mn(cap);
  auto fam = Family::planar(2, 2, 3);
  auto verts = enumerate_vertices_exhaustive(build_system(fam, planar));
  Marginals cla;
  cla.x = cap.row_sums;
  cla.y = cap.col_sums;
  auto cverts = enumerate_vertices_exhaustive(build_system(Family::classical(2, 3), cla));
  std::set<std::string> a, b;
  for (auto& v : verts) {
    RatMatrix m = project_first_layer(fam, v.point);
    std::string key;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 3; ++k) key += m(j, k).str() + ";";
    a.insert(key);
  }
  for (auto& v : cverts) {
    std::string key;
    for (Eigen::Index c = 0; c < v.point.size(); ++c) key += v.point(c).str() + ";";
    b.insert(key);
  }
  CHECK(a == b);
}

TEST_CASE("planar 2x2xn is linearly isomorphic to classical 2xn") {
  auto fam = Family::planar(2, 2, 4);
  int tested = 0;
  for (uint64_t seed = 0; seed < 12 && tested < 6; ++seed) {
    auto mg = sample_marginals(fam, 5000 + seed);
    if (is_degenerate(fam, mg)) continue;
    CHECK(planar22n_graph_isomorphic(fam, mg));
    ++tested;
  }
  CHECK(tested == 6);
}

TEST_CASE("reverse embedding of a classical 2xn instance") {
  Marginals cla;
  cla.x.resize(2);
  cla.y.resize(3);
  cla.x << 15, 18;
  cla.y << 11, 8, 14;
  auto planar = classical2n_to_planar(cla, 3);
  check_marginals(Family::planar(2, 2, 3), planar);
  auto pv = enumerate_vertices_exhaustive(build_system(Family::planar(2, 2, 3), planar));
  auto cv = enumerate_vertices_exhaustive(build_system(Family::classical(2, 3), cla));
  CHECK(pv.size() == cv.size());
  // The embedding a_{1,j,k} = a_{2,3-j,k} = b_{j,k} maps classical vertices
  // to planar vertices.
  const Family pf = Family::planar(2, 2, 3);
  const Family cf = Family::classical(2, 3);
  std::set<std::string> planar_keys;
  for (auto& v : pv) planar_keys.insert(detail::point_key(v.point));
  for (auto& v : cv) {
    RatVector a = RatVector::Zero(pf.num_columns());
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 3; ++k) {
        const Rational b = v.point(column_of(cf, {j, k, 0}));
        a(column_of(pf, {1, j, k})) = b;
        a(column_of(pf, {2, 3 - j, k})) = b;
      }
    CHECK(planar_keys.count(detail::point_key(a)) == 1);
  }
}

TEST_CASE("n=2: both planar 2x2x2 and classical 2x2 are segments or points") {
  auto fam = Family::planar(2, 2, 2);
  auto mg = sample_marginals(fam, 99);
  auto corr = planar22n_to_classical(fam, mg);
  auto pv = enumerate_vertices_exhaustive(build_system(fam, mg));
  auto cv = enumerate_vertices_exhaustive(
      build_system(Family::classical(2, 2), corr.classical));
  CHECK(pv.size() == cv.size());
  CHECK(pv.size() <= 2);
}

TEST_CASE("lexicographic chamber cardinalities") {
  CHECK(lexicographic_chamber(3, 2).cardinality() == 3);
  CHECK(lexicographic_chamber(2, 3).cardinality() == 4);
  for (int m = 1; m <= 4; ++m) CHECK(lexicographic_chamber(m, 1).cardinality() == 1);
  long expect = 1;
  for (int k = 0; k < 3; ++k) expect *= 4;
  CHECK(lexicographic_chamber(4, 4).cardinality() == expect);  // 4^3
}

TEST_CASE("cut delta arithmetic") {
  CHECK(cut_delta(3, 3, {}) == 0);
  CHECK(cut_delta(3, 3, {{1}, {1, 2}}) == -3);
  // exhaustive over all cuts of K_{3,4} and K_{m,n} for m,n <= 4
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n) {
      const int g = std::gcd(m, n);
      for (int rmask = 0; rmask < (1 << m); ++rmask)
        for (int cmask = 0; cmask < (1 << n); ++cmask) {
          BipartiteCut cut;
          for (int i = 0; i < m; ++i)
            if (rmask & (1 << i)) cut.rows.push_back(i + 1);
          for (int j = 0; j < n; ++j)
            if (cmask & (1 << j)) cut.cols.push_back(j + 1);
          REQUIRE(cut_delta(m, n, cut) % g == 0);
        }
    }
}

TEST_CASE("gcd divisibility report") {
  auto rep = gcd_divisibility_check(3, 3, {9, 12, 15, 18});
  CHECK(rep.ok());
  CHECK(rep.gcd == 3);
  auto rep2 = gcd_divisibility_check(2, 4, {4, 6, 8, 10, 12});
  CHECK(rep2.ok());
  auto bad = gcd_divisibility_check(3, 3, {9, 10});
  CHECK_FALSE(bad.ok());
  CHECK(bad.violations == std::vector<long>{10});
}
