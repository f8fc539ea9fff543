#pragma once

// Quadratic forms Q(x) = x^T A x: classification of the exponent set of
// Q^(-beta) by inertia, Lorentz cone membership and the (lambda, mu) duality.

#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "cmpoly/exactalg.hpp"
#include "cmpoly/polyseries.hpp"

namespace cmpoly {

class QuadForm {
 public:
  /// Throws kInvalidArgument unless `a` is symmetric.
  explicit QuadForm(RatMatrix a);
  /// From a homogeneous quadratic polynomial: A_ii = [x_i^2], A_ij = [x_i x_j]/2.
  static QuadForm from_poly(const MultiPoly& p);
  /// The form of E_{2,n}: zero diagonal, 1/2 off the diagonal.
  static QuadForm e2n(std::size_t n);
  /// x_1^2 - x_2^2 - ... - x_n^2.
  static QuadForm lorentz(std::size_t n);

  const RatMatrix& matrix() const { return a_; }
  const Inertia& inertia() const { return inertia_; }
  std::size_t dim() const { return a_.rows(); }
  Rat evaluate(std::span<const Rat> x) const;
  double evaluate(std::span<const double> x) const;
  MultiPoly to_poly() const;

 private:
  RatMatrix a_;
  Inertia inertia_;
};

/// Closed additive subsets of [0, inf) that occur as exponent sets.
struct BetaSet {
  enum class Kind { kAllNonneg, kZeroUnionRay, kZeroOnly, kDiscreteUnionRay };
  Kind kind = Kind::kAllNonneg;
  Rat threshold;   // ray start for the *UnionRay kinds
  Rat step;        // kDiscreteUnionRay: {0, step, ..., (count-1) step}
  std::size_t count = 0;

  static BetaSet all_nonneg() { return {Kind::kAllNonneg, Rat(0), Rat(0), 0}; }
  static BetaSet zero_union_ray(Rat t) { return {Kind::kZeroUnionRay, std::move(t), Rat(0), 0}; }
  static BetaSet zero_only() { return {Kind::kZeroOnly, Rat(0), Rat(0), 0}; }
  static BetaSet discrete_union_ray(Rat step, std::size_t count, Rat t) {
    return {Kind::kDiscreteUnionRay, std::move(t), std::move(step), count};
  }

  bool contains(const Rat& beta) const;
  /// Set notation, e.g. "{0} ∪ [1, ∞)".
  std::string str() const;
  std::string kind_name() const;
  friend bool operator==(const BetaSet&, const BetaSet&) = default;
};

/// (1,0,*) -> [0, inf); (1, n_-, *) with n_- >= 1 -> {0} ∪ [(n_- - 1)/2, inf);
/// n_+ > 1 -> {0}. Throws kDomain when n_+ = 0.
BetaSet quad_classify(const QuadForm& q);

enum class ConeSide { kInsideC, kInsideNegC, kOutside };
std::string_view cone_side_name(ConeSide s);

/// Exact frame for a form of inertia (1, n-1, 0): A = M^T diag(d) M with a
/// single positive d_p. C is the component of {Q > 0} where (Mx)_p > 0, i.e.
/// the one containing column p of M^{-1}. Points with Q(x) = 0 are outside.
class LorentzFrame {
 public:
  explicit LorentzFrame(const QuadForm& q);

  ConeSide classify(std::span<const Rat> x) const;
  ConeSide classify(std::span<const double> x) const;
  /// Column p of M^{-1}, a canonical point of C.
  std::vector<Rat> timelike_axis() const;

 private:
  QuadForm q_;
  CongruenceForm form_;
  std::size_t p_ = 0;
};

ConeSide lorentz_membership(const QuadForm& q, std::span<const Rat> x);

/// A = lambda E_n - mu I_n has A^{-1} = lambda' E_n - mu' I_n with
/// lambda' = lambda / (mu (n lambda - mu)), mu' = 1/mu. Needs mu > 0 and
/// lambda > mu / n.
std::pair<Rat, Rat> lambda_mu_dual(const Rat& lambda, const Rat& mu, std::size_t n);

/// Symmetric matrix in the Matrix JSON format (field "Q").
QuadForm quadform_from_json(std::string_view text);
/// {"inertia":[n+,n-,n0], "beta_set":"...", "kind":"...", "threshold":{n,d}}
std::string classification_to_json(const QuadForm& q, const BetaSet& s);

}  // namespace cmpoly
