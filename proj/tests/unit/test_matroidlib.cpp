#include "doctest.h"
#include "cmpoly/graphlib.hpp"
#include "cmpoly/matroidlib.hpp"
#include "../support/identities.hpp"

using namespace cmpoly;
using namespace cmpoly::testing;

TEST_CASE("elementary symmetric polynomials") {
  const MultiPoly e = elementary_symmetric(2, 4);
  CHECK(e.size() == 6);
  CHECK(e.is_homogeneous());
  CHECK(elementary_symmetric(3, 6).size() == 20);
  CHECK(elementary_symmetric(0, 3) == MultiPoly::constant(3, Rat(1)));
}

TEST_CASE("colex subsets") {
  const auto s = colex_subsets(4, 2);
  REQUIRE(s.size() == 6);
  CHECK(s[0] == std::vector<std::size_t>{0, 1});
  CHECK(s[1] == std::vector<std::size_t>{0, 2});
  CHECK(s[2] == std::vector<std::size_t>{1, 2});
  CHECK(s[5] == std::vector<std::size_t>{2, 3});
}

TEST_CASE("cauchy-binet over Q and Q(zeta6)") {
  for (std::size_t p = 3; p <= 5; ++p) {
    const RepMatroid m = builtin_matroid("K_p", p);
    CHECK(basis_poly(m) == spanning_tree_poly(Multigraph::complete(p)));
    CHECK(cauchy_binet_holds(m, p));
  }
  CHECK(cauchy_binet_holds(builtin_matroid("U24"), 2));
  CHECK(cauchy_binet_holds(builtin_matroid("AG23"), 3));
  RatMatrix b(2, 3, {Rat(1), Rat(0), Rat(2), Rat(0), Rat(1), Rat(3)});
  const MultiPoly bp = basis_poly(RepMatroid(b));
  CHECK(bp.coefficient(Exponent{1, 0, 1}) == Rat(9));
  CHECK(bp.coefficient(Exponent{0, 1, 1}) == Rat(4));
  CHECK(cauchy_binet_holds(RepMatroid(b), 4));
}

TEST_CASE("unimodularity") {
  for (std::size_t p = 3; p <= 5; ++p) CHECK(is_unimodular(builtin_matroid("K_p", p)));
  CHECK(is_unimodular(builtin_matroid("U24")));
  CHECK(is_unimodular(builtin_matroid("AG23")));
  CHECK(basis_poly(builtin_matroid("U24")) == elementary_symmetric(2, 4));
  RatMatrix b(2, 3, {Rat(1), Rat(0), Rat(2), Rat(0), Rat(1), Rat(1)});
  CHECK_FALSE(is_unimodular(RepMatroid(b)));
}

TEST_CASE("rank and field errors") {
  RatMatrix b(2, 3, {Rat(1), Rat(2), Rat(3), Rat(2), Rat(4), Rat(6)});
  CHECK_THROWS_AS(RepMatroid{b}, Error);
  CHECK_THROWS_AS(builtin_matroid("nope"), Error);
  CHECK(builtin_matroid_by_name("K4").size() == 6);
  CHECK(builtin_matroid_by_name("K_p:5").size() == 10);
}

TEST_CASE("quaternionic E26") {
  const RepMatroid m = builtin_matroid("E26_QUAT");
  REQUIRE(m.is_quaternionic());
  const QuatBasisPoly q = basis_poly_quat(std::get<QuatMatrix>(m.matrix()));
  CHECK(q.poly == elementary_symmetric(2, 6));
  CHECK(q.flagged.empty());
  CHECK(q.max_deviation < 1e-9);
  CHECK_THROWS_AS(basis_poly(m), Error);
}

TEST_CASE("matroid json round trip") {
  const RepMatroid m = builtin_matroid("AG23");
  const RepMatroid back = matroid_from_json(matroid_to_json(m));
  CHECK(basis_poly(back) == basis_poly(m));
  CHECK(back.ground() == m.ground());
  CHECK_THROWS_AS(matroid_from_json("{\"field\":\"Q\",\"rows\":1,\"cols\":2,\"entries\":[1]}"), Error);
}
