#include <Eigen/Dense>
#include <complex>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "cmpoly/cmengine.hpp"
#include "cmpoly/graphlib.hpp"
#include "cmpoly/matroidlib.hpp"

using namespace cmpoly;

namespace {

MultiPoly var(std::size_t n, std::size_t i) { return MultiPoly::variable(n, i); }

std::vector<ShiftVector> ones_grid(std::size_t n) { return {ShiftVector::ones(n)}; }

}  // namespace

TEST_CASE("grids") {
  const auto g = default_grid(4, 7);
  REQUIRE(g.size() == 1 + 4 + 4);
  CHECK(g[0] == ShiftVector::ones(4));
  CHECK(g[2][1] == Rat(2));
  for (const auto& c : g)
    for (const Rat& v : c.values()) {
      CHECK(v >= Rat(1, 2));
      CHECK(v <= Rat(3));
    }
  CHECK(default_grid(4, 7) == g);
  CHECK(default_grid(4, 8) != g);
  const auto ext = extended_grid(4, 7);
  CHECK(ext.size() == g.size() + 2 * 3);
  CHECK(std::equal(g.begin(), g.end(), ext.begin()));
  CHECK(grid_from_spec("ones", 3).size() == 1);
  const auto parsed = parse_grid_text("# comment\n1 2 3/2\n\n1/2, 1, 1\n", 3);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0][2] == Rat(3, 2));
  CHECK_THROWS_AS(parse_grid_text("1 2\n", 3), Error);
  CHECK_THROWS_AS(parse_grid_text("1 0 1\n", 3), Error);
  CHECK_THROWS_AS(grid_from_spec("bogus", 3), Error);
  const std::string path = "cmpoly_unit_grid.txt";
  { std::ofstream(path) << "2 2 2\n"; }
  CHECK(grid_from_spec("file:" + path, 3)[0] == ShiftVector({Rat(2), Rat(2), Rat(2)}));
  std::remove(path.c_str());
}

TEST_CASE("scan on E23") {
  const MultiPoly e23 = elementary_symmetric(2, 3);
  const CmReport ok = cm_scan(e23, Rat(1, 2), default_grid(3), 10);
  CHECK(ok.verdict == Verdict::kNonnegativeUpTo);
  CHECK(ok.per_shift.size() == ok.scanned_c.size());
  const CmReport bad = cm_scan(e23, Rat(2, 5), ones_grid(3), 12);
  REQUIRE(bad.verdict == Verdict::kNegativeFound);
  CHECK(bad.order == 9);
  CHECK(bad.exponent == Exponent{3, 3, 3});
  CHECK(bad.coefficient == Rat(-2115344, 4271484375L));
  CHECK(report_to_json(ok).find(std::string(kScanCaveat)) != std::string::npos);
}

TEST_CASE("scan verdicts are monotone in N") {
  const MultiPoly e23 = elementary_symmetric(2, 3);
  for (unsigned n = 2; n <= 12; ++n) {
    const CmReport r = cm_scan(e23, Rat(2, 5), ones_grid(3), n);
    if (n < 9) CHECK(r.verdict == Verdict::kNonnegativeUpTo);
    else {
      CHECK(r.verdict == Verdict::kNegativeFound);
      CHECK(r.order == 9);
    }
  }
}

TEST_CASE("extending the grid never flips a negative verdict") {
  const MultiPoly e23 = elementary_symmetric(2, 3);
  for (const Rat& beta : {Rat(1, 4), Rat(2, 5), Rat(1, 2), Rat(1)}) {
    const CmReport d = cm_scan(e23, beta, default_grid(3), 10);
    const CmReport e = cm_scan(e23, beta, extended_grid(3), 10);
    if (d.verdict == Verdict::kNegativeFound) CHECK(e.verdict == Verdict::kNegativeFound);
    if (e.verdict == Verdict::kNonnegativeUpTo) CHECK(d.verdict == Verdict::kNonnegativeUpTo);
  }
}

TEST_CASE("threaded scan matches serial") {
  const MultiPoly k4 = spanning_tree_poly(Multigraph::complete(4));
  ScanOptions opts;
  opts.threads = 3;
  const CmReport a = cm_scan(k4, Rat(1, 4), default_grid(6), 8);
  const CmReport b = cm_scan(k4, Rat(1, 4), default_grid(6), 8, opts);
  CHECK(a.verdict == b.verdict);
  CHECK(a.witness_shift == b.witness_shift);
  CHECK(a.exponent == b.exponent);
  CHECK(a.coefficient == b.coefficient);
}

TEST_CASE("scan domain errors") {
  const MultiPoly p = var(2, 0) - var(2, 1);
  CHECK_THROWS_AS(cm_scan(p, Rat(1), ones_grid(2), 3), Error);
  CHECK_THROWS_AS(cm_scan(elementary_symmetric(2, 3), Rat(0), ones_grid(3), 3), Error);
  CHECK_THROWS_AS(cm_scan(elementary_symmetric(2, 3), Rat(1), ones_grid(2), 3), Error);
}

TEST_CASE("bisection invariants") {
  const MultiPoly e23 = elementary_symmetric(2, 3);
  const ThresholdEstimate t = beta_bisect(e23, Rat(1, 4), Rat(1), 10, ones_grid(3), Rat(1, 32), "ones", {"test"});
  CHECK(t.beta_hi - t.beta_lo <= Rat(1, 32));
  CHECK(t.beta_lo >= Rat(1, 4));
  CHECK(t.beta_hi <= Rat(1));
  for (const Probe& p : t.probes) {
    if (p.beta <= t.beta_lo) CHECK(p.verdict == Verdict::kNegativeFound);
    if (p.beta >= t.beta_hi) CHECK(p.verdict == Verdict::kNonnegativeUpTo);
  }
  CHECK(report_to_json(t).find("\"test\"") != std::string::npos);
  CHECK_THROWS_AS(beta_bisect(e23, Rat(1, 2), Rat(1), 10, ones_grid(3), Rat(1, 32)), Error);
}

TEST_CASE("rayleigh examples") {
  const std::vector<std::vector<Rat>> ones3{{Rat(1), Rat(1), Rat(1)}};
  CHECK(c_rayleigh_check(elementary_symmetric(2, 3), Rat(1, 2), ones3).holds);
  const std::vector<std::vector<Rat>> pts4{{Rat(1), Rat(1), Rat(1), Rat(1)}, {Rat(1), Rat(2), Rat(3), Rat(1, 2)}};
  CHECK(c_rayleigh_check(elementary_symmetric(2, 4), Rat(0), pts4).holds);
  const std::vector<std::vector<Rat>> pts2{{Rat(1), Rat(2)}};
  CHECK(c_rayleigh_check(var(2, 0) + var(2, 1), Rat(0), pts2).holds);
  const MultiPoly bad = var(4, 0) * var(4, 1) + var(4, 2) * var(4, 3);
  const RayleighReport r = c_rayleigh_check(bad, Rat(0), pts4);
  CHECK_FALSE(r.holds);
  CHECK(r.worst_margin == Rat(-2));
  CHECK(r.worst.point == 1);
  CHECK_THROWS_AS(c_rayleigh_check(var(2, 0) * var(2, 0), Rat(0), pts2), Error);
}

TEST_CASE("rayleigh margin matches the order-2 coefficient") {
  // [y_i y_j] P(c - y)^(-beta) / P(c)^(-beta) = beta * margin / P(c)^2
  std::vector<MultiPoly> corpus{elementary_symmetric(2, 3), elementary_symmetric(2, 4),
                                spanning_tree_poly(Multigraph::complete(4)),
                                var(4, 0) * var(4, 1) + var(4, 2) * var(4, 3)};
  const std::vector<Rat> betas{Rat(0), Rat(1, 3), Rat(1)};
  std::size_t mismatches = 0;
  for (const MultiPoly& p : corpus) {
    const std::size_t n = p.nvars();
    std::vector<Rat> c;
    for (std::size_t i = 0; i < n; ++i) c.emplace_back(static_cast<long>(i % 3) + 1, 2);
    const Rat pc = p.evaluate(c);
    for (const Rat& beta : betas) {
      if (beta.is_zero()) continue;
      const TruncSeries s = series_neg_pow(shift_substitute(p, ShiftVector(c)), beta, 2);
      const RayleighReport r = c_rayleigh_check(p, beta, {c});
      std::vector<Rat> margins(n * n);
      for (const auto& v : r.violations) margins[v.i * n + v.j] = v.margin;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          Exponent e(n, 0);
          e[i] = e[j] = 1;
          const MultiPoly pi = p.partial_derivative(i), pj = p.partial_derivative(j);
          const Rat margin = (beta + Rat(1)) * pi.evaluate(c) * pj.evaluate(c) -
                             pc * pi.partial_derivative(j).evaluate(c);
          if (s.coefficient(e) != beta * margin / (pc * pc)) ++mismatches;
          if ((margin.sign() < 0) != !margins[i * n + j].is_zero()) ++mismatches;
        }
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("psd m = 1 against the cauchy determinant") {
  // beta = 1: det[1/(a_i + a_j)] = prod_{i<j} (a_i - a_j)^2 / prod_{i,j} (a_i + a_j)
  for (std::size_t k = 2; k <= 4; ++k) {
    const auto mats = draw_positive_matrices(1, k, 40 + k);
    const auto s = semigroup_matrix(mats, 1, 1.0);
    Eigen::Map<const Eigen::MatrixXd> m(s.data(), k, k);
    double num = 1, den = 1;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const double a = mats[i][0], b = mats[j][0];
        den *= a + b;
        if (i < j) num *= (a - b) * (a - b);
      }
    CHECK(m.determinant() == doctest::Approx(num / den).epsilon(1e-6));
    CHECK(min_eigenvalue(s, k) > -1e-12);
  }
  const PsdReport r = semigroup_psd_test(1, 0.3, 6, 2);
  CHECK(r.min_eigenvalue >= -kPsdSlack);
}

TEST_CASE("positive matrix draws") {
  const auto mats = draw_positive_matrices(3, 5, 9);
  REQUIRE(mats.size() == 5);
  for (const auto& a : mats) {
    Eigen::Map<const Eigen::Matrix3d> m(a.data());
    CHECK((m - m.transpose()).norm() < 1e-12);
    CHECK(m.minCoeff() > 0);
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m).eigenvalues().minCoeff() > 0);
  }
  CHECK(draw_positive_matrices(3, 5, 9) == mats);
  CHECK_THROWS_AS(semigroup_psd_test(2, 0.5, 1, 1), Error);
  CHECK_THROWS_AS(semigroup_psd_test(2, -1, 4, 1), Error);
}

TEST_CASE("half-plane zero search") {
  const MultiPoly one_plus = MultiPoly::constant(2, Rat(1)) + var(2, 0) * var(2, 1);
  CHECK_FALSE(hpp_falsify(one_plus, 200, 1).witness.has_value());
  CHECK_FALSE(hpp_falsify(elementary_symmetric(2, 3), 200, 1).witness.has_value());
  // vanishes at (1 + i, 1 + i)
  const MultiPoly planted = var(2, 0) * var(2, 1) - var(2, 0) - var(2, 1) + MultiPoly::constant(2, Rat(2));
  const HppResult h = hpp_falsify(planted, 200, 1);
  REQUIRE(h.witness.has_value());
  CHECK(h.residual < 1e-10);
  for (const auto& z : *h.witness) CHECK(z.real() > 1e-6);
  CHECK(std::abs(planted.evaluate(std::span<const std::complex<double>>(*h.witness))) < 1e-9);
}
