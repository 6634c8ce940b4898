#include <catch2/catch_amalgamated.hpp>

#include "tpoly/chambers.hpp"
#include "tpoly/universal.hpp"

using namespace tpoly;

TEST_CASE("universal system of the 2x3 Gale diagram") {
  auto gale = gale_transform(shape_system(Family::classical(2, 3)));
  auto u = build_universal_constraints(gale);
  CHECK(u.coords.size() == 15);
  CHECK(u.n_forced_zero == 3);
  CHECK(u.n_balance == 6);
  CHECK(u.n_covering == 6);
  // forced zeros at the antipodal pairs {1,4}, {2,5}, {3,6} (1-based)
  for (auto [i, j] : {std::pair{0, 3}, std::pair{1, 4}, std::pair{2, 5}}) {
    RatVector probe = RatVector::Zero(15);
    probe(u.coord_index(i, j)) = 1;
    bool found = false;
    for (Eigen::Index r = 0; r < u.equalities.rows(); ++r)
      if (u.equalities.row(r).transpose() == probe && u.rhs(r) == 0) found = true;
    CHECK(found);
  }
  // one balance equation is redundant: the balance rows sum to zero
  RatVector total = RatVector::Zero(15);
  for (Eigen::Index r = u.n_forced_zero; r < u.n_forced_zero + u.n_balance; ++r)
    total += u.equalities.row(r).transpose();
  CHECK(total.isZero());

  CHECK(u.solution_dimension() == 6);

  auto [lo, hi] = vertex_count_bounds(u);
  CHECK(lo == 3);
  CHECK(hi == 6);
}

TEST_CASE("every regular triangulation's incidence vector satisfies the system") {
  auto gale = gale_transform(shape_system(Family::classical(2, 3)));
  auto u = build_universal_constraints(gale);
  auto regs = enumerate_regular_triangulations(gale);
  REQUIRE(regs.list.size() == 18);
  for (const auto& t : regs.list) {
    RatVector v = u.incidence_vector(t);
    CHECK(u.satisfied_by(v));
    CHECK(u.psi().dot(v) == Rational(static_cast<long>(t.size())));
  }
}

TEST_CASE("bounds bracket the chamber cardinalities on corank-2 shapes") {
  for (auto fam : {Family::classical(2, 3), Family::planar(2, 2, 3)}) {
    auto gale = gale_transform(shape_system(fam));
    auto u = build_universal_constraints(gale);
    auto [lo, hi] = vertex_count_bounds(u);
    int cmin = -1, cmax = -1;
    for (auto& ch : enumerate_chambers(fam)) {
      if (cmin < 0 || ch.cardinality() < cmin) cmin = ch.cardinality();
      if (ch.cardinality() > cmax) cmax = ch.cardinality();
    }
    CHECK(lo <= cmin);
    CHECK(hi >= cmax);
  }
}

TEST_CASE("single-simplex configuration has tight bounds") {
  // A rank-2 configuration with exactly three distinct rays admits exactly
  // one triangulation; the bounds collapse to its size.
  VectorConfig conf;
  conf.V.resize(2, 3);
  conf.V << 1, 0, -1, 0, 1, -1;
  auto u = build_universal_constraints(conf);
  auto [lo, hi] = vertex_count_bounds(u);
  CHECK(lo == hi);
  CHECK(lo == 3);
  CHECK_THROWS_AS(build_universal_constraints(gale_transform(shape_system(Family::classical(2, 4)))),
                  UnsupportedCorankError);
}
