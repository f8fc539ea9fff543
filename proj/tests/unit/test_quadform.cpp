#include "doctest.h"
#include "cmpoly/matroidlib.hpp"
#include "cmpoly/quadform.hpp"

using namespace cmpoly;

TEST_CASE("E2n classification") {
  for (std::size_t n = 3; n <= 6; ++n) {
    const QuadForm q = QuadForm::e2n(n);
    CHECK(q.inertia() == Inertia{1, n - 1, 0});
    CHECK(quad_classify(q) == BetaSet::zero_union_ray(Rat(static_cast<long>(n) - 2, 2)));
    CHECK(q.to_poly() == elementary_symmetric(2, n));
    CHECK(QuadForm::from_poly(elementary_symmetric(2, n)).matrix() == q.matrix());
  }
  CHECK(quad_classify(QuadForm::e2n(5)).str() == "{0} ∪ [3/2, ∞)");
}

TEST_CASE("other inertias") {
  RatMatrix pos(2, 2, {Rat(2), Rat(0), Rat(0), Rat(1)});
  CHECK(quad_classify(QuadForm(pos)) == BetaSet::zero_only());
  RatMatrix rank1(2, 2, {Rat(1), Rat(1), Rat(1), Rat(1)});
  CHECK(quad_classify(QuadForm(rank1)) == BetaSet::all_nonneg());
  CHECK(quad_classify(QuadForm::lorentz(2)) == BetaSet::zero_union_ray(Rat(0)));
  CHECK(quad_classify(QuadForm::lorentz(4)) == BetaSet::zero_union_ray(Rat(1)));
  CHECK_THROWS_AS(quad_classify(QuadForm(RatMatrix(2, 2, {Rat(-1), Rat(0), Rat(0), Rat(-1)}))), Error);
  CHECK_THROWS_AS(QuadForm(RatMatrix(2, 2, {Rat(0), Rat(1), Rat(0), Rat(0)})), Error);
  const BetaSet s = BetaSet::zero_union_ray(Rat(1));
  CHECK(s.contains(Rat(0)));
  CHECK_FALSE(s.contains(Rat(1, 2)));
  CHECK(s.contains(Rat(1)));
}

TEST_CASE("lorentz membership") {
  const QuadForm q = QuadForm::lorentz(3);
  const std::vector<Rat> in{Rat(2), Rat(1), Rat(1)}, neg{Rat(-2), Rat(1), Rat(1)}, out{Rat(1), Rat(1), Rat(1)},
      edge{Rat(1), Rat(1), Rat(0)};
  CHECK(lorentz_membership(q, in) == ConeSide::kInsideC);
  CHECK(lorentz_membership(q, neg) == ConeSide::kInsideNegC);
  CHECK(lorentz_membership(q, out) == ConeSide::kOutside);
  CHECK(lorentz_membership(q, edge) == ConeSide::kOutside);
  const QuadForm e = QuadForm::e2n(4);
  const std::vector<Rat> ones(4, Rat(1));
  CHECK(lorentz_membership(e, ones) == ConeSide::kInsideC);
  const LorentzFrame f(e);
  const auto axis = f.timelike_axis();
  CHECK(f.classify(axis) == ConeSide::kInsideC);
  CHECK(e.evaluate(axis).sign() > 0);
}

TEST_CASE("lambda mu duality inverts the matrix") {
  for (std::size_t n = 2; n <= 5; ++n)
    for (const auto& [lam, mu] : {std::pair{Rat(1), Rat(1, 3)}, std::pair{Rat(5, 2), Rat(2)}}) {
      const auto [lp, mp] = lambda_mu_dual(lam, mu, n);
      RatMatrix a(n, n), b(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          a(i, j) = lam - (i == j ? mu : Rat(0));
          b(i, j) = lp - (i == j ? mp : Rat(0));
        }
      CHECK(a * b == RatMatrix::identity(n));
    }
  CHECK_THROWS_AS(lambda_mu_dual(Rat(1), Rat(0), 3), Error);
  CHECK_THROWS_AS(lambda_mu_dual(Rat(1, 10), Rat(1), 3), Error);
}

TEST_CASE("quadform json") {
  const QuadForm q = quadform_from_json(R"({"field":"Q","rows":2,"cols":2,"entries":[["0","1/2"],["1/2","0"]]})");
  CHECK(q.inertia() == Inertia{1, 1, 0});
  const std::string j = classification_to_json(q, quad_classify(q));
  CHECK(j.find("\"inertia\"") != std::string::npos);
}
