#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "tpoly/chambers.hpp"
#include "tpoly/gale.hpp"
#include "tpoly/triangulations.hpp"

using namespace tpoly;

namespace {

Marginals classical_marginals(std::initializer_list<long> x, std::initializer_list<long> y) {
  Marginals mg;
  mg.x.resize(static_cast<Eigen::Index>(x.size()));
  mg.y.resize(static_cast<Eigen::Index>(y.size()));
  Eigen::Index i = 0;
  for (auto v : x) mg.x(i++) = Rational(v);
  i = 0;
  for (auto v : y) mg.y(i++) = Rational(v);
  return mg;
}

// Table (4,5,6,7,3,8) satisfies all six hexagon inequalities
// t_i < t_j + t_k over the circularly adjacent Gale rays.
const Marginals kHexagon = classical_marginals({15, 18}, {11, 8, 14});

}  // namespace

TEST_CASE("gale transform of the 2x3 system matches the known rank-2 diagram") {
  auto sys = shape_system(Family::classical(2, 3));
  auto gale = gale_transform(sys);
  CHECK(gale.dim() == 2);
  CHECK(gale.size() == 6);
  RatMatrix expected(2, 6);
  expected << 1, -1, 0, -1, 1, 0, 1, 0, -1, -1, 0, 1;
  CHECK(same_row_space(to_rational(gale.V), expected));
  CHECK(is_totally_cyclic(gale));
  CHECK_FALSE(is_pointed(gale));

  // Double transform returns the original row space.
  auto g2 = gale_transform(to_rational(gale.V));
  CHECK(same_row_space(to_rational(g2.V), sys.B));

  // Corank-1 system: a +-1 pattern in rank 1.
  auto g22 = gale_transform(shape_system(Family::classical(2, 2)));
  CHECK(g22.dim() == 1);
  std::multiset<int> signs;
  for (int j = 0; j < 4; ++j) signs.insert(g22.V(0, j) > 0 ? 1 : -1);
  CHECK(signs == std::multiset<int>{-1, -1, 1, 1});

  // Invertible matrix: empty transform.
  RatMatrix I3 = RatMatrix::Identity(3, 3);
  CHECK(gale_transform(I3).dim() == 0);
}

TEST_CASE("rank-2 triangulations: 18 fans, all regular") {
  auto gale = gale_transform(shape_system(Family::classical(2, 3)));
  auto all = rank2_all_triangulations(gale);
  CHECK(all.size() == 18);
  for (const auto& t : all) {
    CHECK(validate_triangulation(gale, t));
    CHECK(is_regular(gale, t));
  }
  auto regs = enumerate_regular_triangulations(gale);
  CHECK(regs.list.size() == 18);
  CHECK(regs.rejected_flips == 0);
  std::set<Triangulation> a(all.begin(), all.end()), b(regs.list.begin(), regs.list.end());
  CHECK(a == b);

  // Exactly one triangulation has six cones; its complements form the
  // hexagon chamber.
  int six = 0;
  Triangulation hexagon;
  for (const auto& t : regs.list)
    if (t.size() == 6) { ++six; hexagon = t; }
  CHECK(six == 1);
  auto sig = complement_map(hexagon, 6);
  auto ch = chamber_of(build_system(Family::classical(2, 3), kHexagon));
  CHECK(sig == ch.signature);
  CHECK(ch.cardinality() == 6);
}

TEST_CASE("known 4-simplex triangulation of the 2x3 Gale diagram") {
  auto gale = gale_transform(shape_system(Family::classical(2, 3)));
  Triangulation t = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  CHECK(validate_triangulation(gale, t));
  CHECK(is_regular(gale, t));
  auto sig = complement_map(t, 6);
  REQUIRE(sig.size() == 4);
  std::vector<std::vector<int>> expected = {
      {0, 1, 4, 5}, {0, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 4, 5}};
  CHECK(sig == expected);
}

TEST_CASE("chamber enumeration: both methods agree on the 2x3 system") {
  auto flip = enumerate_chambers(Family::classical(2, 3),
                                 {ChamberOptions::Method::Flip});
  auto arr = enumerate_chambers(Family::classical(2, 3),
                                {ChamberOptions::Method::Arrangement});
  CHECK(flip.size() == 18);
  REQUIRE(arr.size() == flip.size());
  for (size_t i = 0; i < flip.size(); ++i)
    CHECK(flip[i].signature == arr[i].signature);

  std::multiset<int> counts;
  for (auto& ch : flip) counts.insert(ch.cardinality());
  CHECK(std::set<int>(counts.begin(), counts.end()) == std::set<int>{3, 4, 5, 6});
}

TEST_CASE("chamber enumeration on the corank-1 2x2 system") {
  // The 2x2 polytopes are segments; the chamber complex of the quadrilateral
  // cone has four cells, one per pair of (positive, negative) Gale elements.
  auto flip = enumerate_chambers(Family::classical(2, 2),
                                 {ChamberOptions::Method::Flip});
  auto arr = enumerate_chambers(Family::classical(2, 2),
                                {ChamberOptions::Method::Arrangement});
  REQUIRE(flip.size() == arr.size());
  for (size_t i = 0; i < flip.size(); ++i)
    CHECK(flip[i].signature == arr[i].signature);
  CHECK(flip.size() == 4);
  for (auto& ch : flip) CHECK(ch.cardinality() == 2);
}

TEST_CASE("chamber representatives are interior and reproduce vertex counts") {
  for (auto fam : {Family::classical(2, 3), Family::classical(2, 2)}) {
    auto chambers = enumerate_chambers(fam);
    for (const auto& ch : chambers) {
      auto mg = chamber_marginals(fam, ch);
      CHECK_FALSE(is_degenerate(fam, mg));
      auto verts = enumerate_vertices_exhaustive(build_system(fam, mg));
      CHECK(static_cast<int>(verts.size()) == ch.cardinality());
    }
  }
}

TEST_CASE("random marginals land in exactly one enumerated chamber") {
  auto fam = Family::classical(2, 3);
  auto chambers = enumerate_chambers(fam);
  std::set<std::vector<Basis>> sigs;
  for (auto& ch : chambers) sigs.insert(ch.signature);
  int hits = 0;
  for (int seed = 0; seed < 40; ++seed) {
    auto mg = sample_marginals(fam, 7700 + seed);
    Chamber ch;
    try {
      ch = chamber_of(build_system(fam, mg));
    } catch (const DegenerateRhsError&) {
      continue;  // wall: not a chamber point
    }
    CHECK(sigs.count(ch.signature) == 1);
    ++hits;
  }
  CHECK(hits >= 35);
}
