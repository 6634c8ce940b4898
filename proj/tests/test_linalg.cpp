#include <catch2/catch_amalgamated.hpp>

#include "tpoly/linalg.hpp"
#include "tpoly/models.hpp"
#include "tpoly/simplex.hpp"
#include "tpoly/vertex_enum.hpp"

using namespace tpoly;

namespace {

RatMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  RatMatrix m(static_cast<Eigen::Index>(rows.size()),
              static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto& r : rows) {
    Eigen::Index j = 0;
    for (auto v : r) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

RatVector vec(std::initializer_list<long> vals) {
  RatVector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (auto x : vals) v(i++) = Rational(x);
  return v;
}

}  // namespace

TEST_CASE("solve_square identity and symmetric cases") {
  auto x = solve_square(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), vec({1, 2, 3}));
  REQUIRE(x);
  CHECK(*x == vec({1, 2, 3}));

  auto y = solve_square(mat({{1, 1}, {1, -1}}), vec({1, 0}));
  REQUIRE(y);
  CHECK((*y)(0) == Rational(1, 2));
  CHECK((*y)(1) == Rational(1, 2));

  CHECK_FALSE(solve_square(mat({{1, 1}, {2, 2}}), vec({1, 2})).has_value());
  CHECK_THROWS_AS(solve_square(mat({{1, 1}}), vec({1})), InputError);
}

TEST_CASE("solve_square random 7x7 round trip") {
  Rng rng(20240517);
  for (int rep = 0; rep < 5; ++rep) {
    RatMatrix A(7, 7);
    RatVector x(7);
    do {
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
          A(i, j) = Rational(rng.uniform(-20, 20), rng.uniform(1, 9));
    } while (determinant(A) == 0);
    for (int i = 0; i < 7; ++i) x(i) = Rational(rng.uniform(-50, 50), rng.uniform(1, 7));
    RatVector b = A * x;
    auto got = solve_square(A, b);
    REQUIRE(got);
    CHECK(*got == x);
    CHECK((A * *got - b).isZero());
  }
}

TEST_CASE("nullspace_basis spans the exact kernel") {
  RatMatrix N = nullspace_basis(mat({{1, 1}}));
  REQUIRE(N.cols() == 1);
  CHECK(N(0, 0) * N(1, 0) < 0);  // proportional to (1, -1)

  // Invertible matrix: empty kernel.
  CHECK(nullspace_basis(mat({{2, 1}, {1, 1}})).cols() == 0);

  auto sys = build_system(Family::classical(2, 3), sample_marginals(Family::classical(2, 3), 1));
  RatMatrix K = nullspace_basis(sys.B);
  CHECK(K.cols() == 2);
  CHECK((sys.B * K).isZero());
  RatMatrix gale = mat({{1, -1, 0, -1, 1, 0}, {1, 0, -1, -1, 0, 1}});
  CHECK(same_row_space(RatMatrix(K.transpose()), gale));
}

TEST_CASE("rank and row spaces") {
  CHECK(rank(mat({{1, 2}, {2, 4}})) == 1);
  auto f = Family::axial(2, 2, 3);
  auto sys = build_system(f, sample_marginals(f, 7));
  CHECK(rank(sys.B) == f.system_rank());
}

TEST_CASE("simplex basic outcomes") {
  // max x1 s.t. x1 + x2 = 1 -> 1
  auto r1 = simplex_solve({mat({{1, 1}}), vec({1}), vec({1, 0}), LpSense::Max});
  CHECK(r1.status == LpStatus::Optimal);
  CHECK(r1.value == 1);

  // max x1 s.t. x1 - x2 = 0 -> unbounded
  auto r2 = simplex_solve({mat({{1, -1}}), vec({0}), vec({1, 0}), LpSense::Max});
  CHECK(r2.status == LpStatus::Unbounded);

  // infeasible: x1 + x2 = -1
  auto r3 = simplex_solve({mat({{1, 1}}), vec({-1}), vec({1, 0}), LpSense::Max});
  CHECK(r3.status == LpStatus::Infeasible);

  // redundant rows are tolerated
  auto r4 = simplex_solve({mat({{1, 1}, {2, 2}}), vec({1, 2}), vec({1, 2}), LpSense::Min});
  CHECK(r4.status == LpStatus::Optimal);
  CHECK(r4.value == 1);
}

TEST_CASE("simplex matches exhaustive vertex scan on small polytopes") {
  // Oracle: the optimum of a bounded feasible LP over {x >= 0 : Ax = b} is
  // attained at a basic feasible solution; compare with the best one.
  Rng rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    auto f = Family::classical(2, 3);
    auto mg = sample_marginals(f, 1000 + rep);
    auto sys = build_system(f, mg);
    RatVector obj(6);
    for (int j = 0; j < 6; ++j) obj(j) = Rational(rng.uniform(-9, 9));
    auto got = simplex_solve({sys.B, sys.c, obj, LpSense::Max});
    REQUIRE(got.status == LpStatus::Optimal);
    auto verts = enumerate_vertices_exhaustive(sys);
    Rational best = obj.dot(verts.front().point);
    for (auto& v : verts) best = std::max(best, Rational(obj.dot(v.point)));
    CHECK(got.value == best);
    CHECK(obj.dot(got.x) == best);
    CHECK((sys.B * got.x - sys.c).isZero());
  }
}

TEST_CASE("simplex terminates on degenerate instances (Bland)") {
  for (int rep = 0; rep < 30; ++rep) {
    // Degenerate RHS: Birkhoff-style equal marginals.
    auto f = Family::classical(3, 3);
    Marginals mg;
    mg.x = vec({3, 3, 3});
    mg.y = vec({3, 3, 3});
    auto sys = build_system(f, mg);
    RatVector obj(9);
    Rng rng(rep);
    for (int j = 0; j < 9; ++j) obj(j) = Rational(rng.uniform(-5, 5));
    auto got = simplex_solve({sys.B, sys.c, obj, LpSense::Min});
    CHECK(got.status == LpStatus::Optimal);
  }
}

TEST_CASE("max_strict_slack detects interior points") {
  auto f = Family::classical(2, 2);
  Marginals mg;
  mg.x = vec({1, 1});
  mg.y = vec({1, 1});
  auto sys = build_system(f, mg);
  auto rs = reduce_system(sys);
  std::vector<Eigen::Index> all{0, 1, 2, 3};
  auto s = max_strict_slack(rs.B, rs.c, all);
  REQUIRE(s);
  CHECK(*s > 0);  // the uniform table is strictly positive

  // A point polytope has no strictly positive slack in the tight coordinate.
  Marginals point;
  point.x = vec({1, 0});
  point.y = vec({1, 0});
  auto sys2 = build_system(f, point);
  auto rs2 = reduce_system(sys2);
  auto s2 = max_strict_slack(rs2.B, rs2.c, all);
  REQUIRE(s2);
  CHECK(*s2 == 0);
}
