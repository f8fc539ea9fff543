#pragma once

// Matroids represented by explicit matrices: basis generating polynomials
// via Cauchy-Binet, unimodularity, uniform matroids and named examples.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cmpoly/exactalg.hpp"
#include "cmpoly/polyseries.hpp"

namespace cmpoly {

/// Largest column-subset count enumerated on the exact path, C(12, 6).
inline constexpr std::size_t kMaxBasisSubsets = 924;

class RepMatroid {
 public:
  using Rep = std::variant<RatMatrix, Cyc6Matrix, QuatMatrix>;

  /// Exact matrices must have full row rank (kRank otherwise). Empty `ground`
  /// picks labels "g1".."gn".
  explicit RepMatroid(Rep b, std::vector<std::string> ground = {});

  const Rep& matrix() const { return b_; }
  const std::vector<std::string>& ground() const { return ground_; }
  std::size_t rank() const;
  std::size_t size() const { return ground_.size(); }
  bool is_exact() const { return !std::holds_alternative<QuatMatrix>(b_); }
  bool is_quaternionic() const { return std::holds_alternative<QuatMatrix>(b_); }

 private:
  Rep b_;
  std::vector<std::string> ground_;
};

/// sum over m-subsets S of |det B_S|^2 x^S, exactly.
MultiPoly basis_poly(const RepMatroid& m);

struct QuatBasisPoly {
  MultiPoly poly;
  /// Subsets whose coefficient was kept unrounded (|c - round(c)| > tol).
  std::vector<std::vector<std::size_t>> flagged;
  /// Largest |c - round(c)| over all subsets.
  double max_deviation = 0;
};

/// Coefficients det[B_S B_S^*] via the 2x2 Moore determinant (m = 2 only).
/// Coefficients within `tol` of an integer are rounded; throws kTolerance
/// when one is farther than 1e-6.
QuatBasisPoly basis_poly_quat(const QuatMatrix& b, double tol = 1e-9);

/// Every maximal minor has squared modulus 0 or 1.
bool is_unimodular(const RepMatroid& m);

MultiPoly elementary_symmetric(std::size_t r, std::size_t n);

/// "K_p" (with p), "U24", "AG23" or "E26_QUAT".
RepMatroid builtin_matroid(std::string_view name, std::size_t p = 0);
/// Accepts "K4", "K_4", "K_p:4" as well as the names above.
RepMatroid builtin_matroid_by_name(std::string_view spec);

/// Matrix JSON ({"field","rows","cols","entries"}) plus optional "ground".
RepMatroid matroid_from_json(std::string_view text);
std::string matroid_to_json(const RepMatroid& m);

/// Column subsets of size k of {0..n-1} in colexicographic order.
std::vector<std::vector<std::size_t>> colex_subsets(std::size_t n, std::size_t k);

}  // namespace cmpoly
