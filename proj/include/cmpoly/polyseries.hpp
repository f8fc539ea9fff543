#pragma once

// Sparse multivariate polynomials over Q and total-degree-truncated power
// series of Q^(-beta).

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmpoly/exactalg.hpp"

namespace cmpoly {

using Exponent = std::vector<std::uint16_t>;

unsigned total_degree(const Exponent& e);

class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rat>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rat& c);
  static MultiPoly variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * x^e; zero results are erased.
  void add_term(const Exponent& e, const Rat& c);
  Rat coefficient(const Exponent& e) const;
  Rat constant_term() const;

  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool is_multiaffine() const;
  bool is_homogeneous() const;
  /// Terms of total degree exactly d.
  MultiPoly homogeneous_part(unsigned d) const;

  Rat evaluate(std::span<const Rat> x) const;
  double evaluate(std::span<const double> x) const;
  std::complex<double> evaluate(std::span<const std::complex<double>> x) const;

  MultiPoly partial_derivative(std::size_t var) const;
  /// P with x_var := value.
  MultiPoly substitute(std::size_t var, const Rat& value) const;
  /// Re-embeds into `new_nvars` variables; old variable i becomes index_map[i].
  MultiPoly remap(std::size_t new_nvars, std::span<const std::size_t> index_map) const;
  /// Drops terms of total degree > max_degree.
  MultiPoly truncated(unsigned max_degree) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rat& s);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rat& s) { return a *= s; }
  friend MultiPoly operator*(const Rat& s, MultiPoly a) { return a *= s; }
  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  void check_same(const MultiPoly& o) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Product truncated at total degree `max_degree`.
MultiPoly truncated_mul(const MultiPoly& a, const MultiPoly& b, unsigned max_degree);

/// Strictly positive shift c used in the substitution x = c - y.
class ShiftVector {
 public:
  ShiftVector() = default;
  explicit ShiftVector(std::vector<Rat> c);
  static ShiftVector ones(std::size_t n);

  std::size_t size() const { return c_.size(); }
  const std::vector<Rat>& values() const { return c_; }
  const Rat& operator[](std::size_t i) const { return c_[i]; }
  friend bool operator==(const ShiftVector&, const ShiftVector&) = default;

 private:
  std::vector<Rat> c_;
};

/// Q(y) = P(c - y), expanded exactly.
MultiPoly shift_substitute(const MultiPoly& p, const ShiftVector& c);
/// Q(y) = P(c - y) for an arbitrary rational c (no positivity requirement).
MultiPoly affine_reflect(const MultiPoly& p, std::span<const Rat> c);

/// Monomials of fixed total degree in lexicographically ascending order
/// ((0,..,0,d) first, (d,0,..,0) last) with O(n) ranking.
class GradedIndex {
 public:
  GradedIndex(std::size_t nvars, unsigned max_degree);

  std::size_t nvars() const { return nvars_; }
  /// Number of monomials of total degree d.
  std::size_t layer_size(unsigned d) const;
  std::size_t rank(const Exponent& e) const;
  std::size_t rank(const std::uint16_t* e, unsigned degree) const;
  Exponent first(unsigned d) const;
  /// Advances e to its lex successor of the same degree; false at the end.
  bool next(Exponent& e) const;
  Exponent unrank(unsigned d, std::size_t r) const;

 private:
  std::uint64_t binom(unsigned n, unsigned k) const;

  std::size_t nvars_;
  unsigned max_degree_;
  std::vector<std::vector<std::uint64_t>> binom_;
};

/// Truncated series of Q^(-beta) stored as prefactor_base^prefactor_exponent
/// times a rational series. Coefficients of degree d are numerators over a
/// common positive per-degree denominator, in GradedIndex order.
class TruncSeries {
 public:
  TruncSeries(std::size_t nvars, unsigned max_degree, Rat prefactor_base, Rat prefactor_exponent);

  std::size_t nvars() const { return nvars_; }
  unsigned max_degree() const { return max_degree_; }
  /// Highest degree actually stored (< max_degree after an early exit).
  unsigned degree_reached() const { return static_cast<unsigned>(layers_.size()) - 1; }
  const Rat& prefactor_base() const { return prefactor_base_; }
  const Rat& prefactor_exponent() const { return prefactor_exponent_; }
  const GradedIndex& index() const { return index_; }

  Rat coefficient(const Exponent& e) const;
  /// Sign of the rational coefficient.
  int sign(const Exponent& e) const;
  std::size_t term_count() const;

  /// Visits (exponent, coefficient) in degree-then-lex order.
  void for_each(const std::function<void(const Exponent&, const Rat&)>& fn) const;

  /// Appends the next degree layer from exact numerators and a positive
  /// denominator.
  void push_layer(std::vector<mpz_class> numerators, mpz_class denominator);
  /// Appends a layer from rational values (common denominator is taken).
  void push_layer(const std::vector<Rat>& values);

  std::span<const mpz_class> layer(unsigned d) const { return layers_.at(d); }
  const mpz_class& layer_denominator(unsigned d) const { return denominators_.at(d); }

 private:
  std::size_t nvars_;
  unsigned max_degree_;
  Rat prefactor_base_;
  Rat prefactor_exponent_;
  GradedIndex index_;
  std::vector<std::vector<mpz_class>> layers_;
  std::vector<mpz_class> denominators_;
};

/// Degree-by-degree expansion of Q^(-beta) / q0^(-beta) = (1 + R)^(-beta).
///
/// With E = sum y_i d/dy_i the Euler operator, Q * E f = -beta * (E Q) * f
/// gives, for the homogeneous parts f_d and Q_k,
///   q0 * d * f_d = -sum_{k>=1} (d - k + beta*k) * Q_k * f_{d-k}.
/// The layers are kept integral: g_d = q^d * d! * D^d * f_d where beta = p/q
/// and D clears the denominators of R = (Q - q0)/q0, which turns the update
/// into
///   g_d = -sum_k (q(d-k) + p k) q^(k-1) (d-1)!/(d-k)! * (D^k R_k) * g_{d-k}.
class NegPowExpander {
 public:
  struct Options {
    bool keep_all_layers = true;
    unsigned threads = 1;
  };

  NegPowExpander(const MultiPoly& q, const Rat& beta, unsigned max_degree, Options opts);
  NegPowExpander(const MultiPoly& q, const Rat& beta, unsigned max_degree)
      : NegPowExpander(q, beta, max_degree, Options{}) {}

  /// Computes the next layer; false once max_degree has been reached.
  bool advance();
  unsigned degree() const { return degree_; }
  std::size_t nvars() const { return nvars_; }
  const GradedIndex& index() const { return index_; }
  const Rat& q0() const { return q0_; }
  const Rat& beta() const { return beta_; }

  std::span<const mpz_class> current_layer() const;
  const mpz_class& current_denominator() const { return den_; }
  /// Rational value of the coefficient at `rank` in the current layer.
  Rat current_coefficient(std::size_t rank) const;

  /// Moves the stored layers into a TruncSeries (requires keep_all_layers).
  TruncSeries into_series() &&;

 private:
  struct Term {
    std::vector<std::uint16_t> exp;
    mpz_class coef;  // D^k * R_t
  };

  void compute_layer(unsigned d, std::vector<mpz_class>& out) const;
  const std::vector<mpz_class>& layer_at(unsigned d) const;

  std::size_t nvars_;
  unsigned max_degree_;
  Rat beta_;
  Rat q0_;
  Options opts_;
  GradedIndex index_;
  unsigned q_degree_ = 0;
  mpz_class p_, q_, lcm_d_;
  std::vector<std::vector<Term>> terms_by_degree_;
  unsigned degree_ = 0;
  mpz_class den_;
  std::vector<mpz_class> dens_;
  std::vector<std::vector<mpz_class>> layers_;  // full history or ring
};

/// Q^(-beta) truncated at total degree N via the degree recurrence.
/// Throws kDomain if the constant term q0 <= 0.
TruncSeries series_neg_pow(const MultiPoly& q, const Rat& beta, unsigned max_degree);

/// Same series through the binomial expansion sum_k C(-beta, k) R^k.
/// Independent reference route; exponential in N, meant for small inputs.
TruncSeries series_neg_pow_binomial(const MultiPoly& q, const Rat& beta, unsigned max_degree);

/// Truncated product of two series. Prefactors must share the same base;
/// their exponents add.
TruncSeries truncated_product(const TruncSeries& a, const TruncSeries& b);
/// Truncated product of a series with a polynomial (prefactor unchanged).
TruncSeries truncated_product(const TruncSeries& a, const MultiPoly& p);

struct MinCoefficient {
  Rat value;
  Exponent exponent;
};

/// Minimum rational coefficient (prefactor ignored); ties go to the
/// lexicographically smallest exponent.
MinCoefficient min_coefficient(const TruncSeries& s);

/// {"nvars":n, "terms":[{"e":[..], "c":{"n":..,"d":..}}], "variables":[..]}
/// with terms in ascending exponent order; "variables" only when given.
std::string poly_to_json(const MultiPoly& p, const std::vector<std::string>& variables = {});
/// Parses the format above; `variables` receives the manifest (or "x1".."xn").
MultiPoly poly_from_json(std::string_view text, std::vector<std::string>* variables = nullptr);

/// {"N", "degree_reached", "prefactor":{"base","exponent"}, "terms",
///  "min_coefficient", "witness_exponent"}.
std::string series_report_json(const TruncSeries& s);

}  // namespace cmpoly
