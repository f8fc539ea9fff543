#include <cmath>
#include <random>

#include "doctest.h"
#include "cmpoly/exactalg.hpp"

using namespace cmpoly;

namespace {

RatMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Rat(num(rng), den(rng));
  return m;
}

Cyc6 random_cyc6(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-7, 7), den(1, 3);
  return {Rat(num(rng), den(rng)), Rat(num(rng), den(rng))};
}

}  // namespace

TEST_CASE("rat parse and print") {
  CHECK(Rat::parse("6/4") == Rat(3, 2));
  CHECK(Rat::parse("-7") == Rat(-7));
  CHECK(Rat::parse("3/-6") == Rat(-1, 2));
  CHECK(Rat(3, 2).str() == "3/2");
  CHECK_THROWS_AS(Rat::parse("0.5"), Error);
  CHECK_THROWS_AS(Rat::parse("1/0"), Error);
  CHECK(Rat::from_double(0.375) == Rat(3, 8));
  CHECK_THROWS_AS(Rat(1) / Rat(0), Error);
}

TEST_CASE("cyc6 identities") {
  const Cyc6 z = Cyc6::zeta();
  CHECK(z * z == z - Cyc6(1));
  Cyc6 p(1);
  for (int i = 0; i < 6; ++i) p *= z;
  CHECK(p == Cyc6(1));
  CHECK(Cyc6::omega() * Cyc6::omega() * Cyc6::omega() == Cyc6(1));
  CHECK(z * z.conj() == Cyc6(1));
  CHECK(doctest::Approx(z.real()) == 0.5);
  CHECK(doctest::Approx(z.imag()) == std::sqrt(3.0) / 2);
}

TEST_CASE("cyc6 norm is multiplicative") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const Cyc6 a = random_cyc6(rng), b = random_cyc6(rng);
    CHECK(cyc6_norm(a * b) == cyc6_norm(a) * cyc6_norm(b));
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(a * a.conj() == Cyc6(cyc6_norm(a)));
  }
}

TEST_CASE("determinant is multiplicative") {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int t = 0; t < 20; ++t) {
      const RatMatrix a = random_matrix(n, n, rng), b = random_matrix(n, n, rng);
      CHECK(det_exact(a * b) == det_exact(a) * det_exact(b));
      CHECK(det_exact(a.transpose()) == det_exact(a));
    }
}

TEST_CASE("determinant matches cofactor expansion") {
  std::mt19937_64 rng(6);
  const RatMatrix a = random_matrix(3, 3, rng);
  const Rat cof = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                  a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                  a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  CHECK(det_exact(a) == cof);
  RatMatrix sing(2, 2, {Rat(1), Rat(2), Rat(2), Rat(4)});
  CHECK(det_exact(sing) == Rat(0));
  CHECK_THROWS_AS(inverse_exact(sing), Error);
}

TEST_CASE("cyc6 determinant over the field") {
  Cyc6Matrix m(2, 2, {Cyc6(1), Cyc6::zeta(), Cyc6::zeta().conj(), Cyc6(2)});
  const auto d = std::get<Cyc6>(det_exact(ExactMatrix{m}));
  CHECK(d == Cyc6(1));
  CHECK(adjoint(m) == m);
}

TEST_CASE("inverse and rank") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const RatMatrix a = random_matrix(4, 4, rng);
    if (det_exact(a).is_zero()) continue;
    CHECK(a * inverse_exact(a) == RatMatrix::identity(4));
  }
  RatMatrix r(3, 4, {Rat(1), Rat(2), Rat(3), Rat(4), Rat(2), Rat(4), Rat(6), Rat(8), Rat(0), Rat(1), Rat(0), Rat(1)});
  CHECK(rank_exact(r) == 2);
}

TEST_CASE("inertia is a congruence invariant") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 4;
    RatMatrix s = random_matrix(n, n, rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) s(j, i) = s(i, j);
    const Inertia in = inertia(s);
    CHECK(in.n_plus + in.n_minus + in.n_zero == n);
    const RatMatrix p = random_matrix(n, n, rng);
    if (det_exact(p).is_zero()) continue;
    CHECK(inertia(p.transpose() * s * p) == in);
    const CongruenceForm f = congruence_diagonalize(s);
    RatMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = f.d[i];
    CHECK(f.m.transpose() * d * f.m == s);
  }
}

TEST_CASE("inertia with zero diagonal") {
  RatMatrix h(2, 2, {Rat(0), Rat(1), Rat(1), Rat(0)});
  CHECK(inertia(h) == Inertia{1, 1, 0});
  RatMatrix z(3, 3);
  CHECK(inertia(z) == Inertia{0, 0, 3});
  CHECK_THROWS_AS(inertia(RatMatrix(2, 2, {Rat(0), Rat(1), Rat(2), Rat(0)})), Error);
}

TEST_CASE("moore determinant") {
  const QuatF q{1, 2, 0, -1};
  CHECK(doctest::Approx(moore_det2(3, 4, q)) == 12 - 6);
  const QuatF i{0, 1, 0, 0}, j{0, 0, 1, 0};
  const QuatF k = i * j;
  CHECK(k.z == 1);
  CHECK((j * i).z == -1);
}
