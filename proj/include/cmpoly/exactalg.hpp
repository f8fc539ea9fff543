#pragma once

// Exact scalars and small dense linear algebra: GMP-backed rationals, the
// Eisenstein field Q(zeta6), float quaternions, fraction-free determinants and
// the inertia of symmetric rational matrices.

#include <compare>
#include <concepts>
#include <type_traits>
#include <cstddef>
#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cmpoly/error.hpp"

namespace cmpoly {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
class Rat {
 public:
  Rat() = default;
  template <std::integral I>
  Rat(I v) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<I>) v_ = static_cast<long>(v);
    else v_ = static_cast<unsigned long>(v);
  }
  Rat(long num, long den);
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rat(const mpz_class& z) : v_(z) {}
  Rat(const mpz_class& num, const mpz_class& den);

  /// Parses "p", "-p/q" or "p/q". Decimal points are rejected.
  static Rat parse(std::string_view text);
  /// Exact value of a finite double.
  static Rat from_double(double d);

  const mpq_class& get() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  double to_double() const { return v_.get_d(); }
  std::string str() const;

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

Rat pow(const Rat& base, unsigned exp);
Rat abs(const Rat& r);

/// a + b*zeta with zeta = exp(i*pi/3), so zeta^2 = zeta - 1.
struct Cyc6 {
  Rat a;
  Rat b;

  Cyc6() = default;
  Cyc6(Rat a_, Rat b_ = Rat(0)) : a(std::move(a_)), b(std::move(b_)) {}  // NOLINT
  Cyc6(long v) : a(v) {}  // NOLINT

  static Cyc6 zeta() { return {Rat(0), Rat(1)}; }
  /// omega = zeta^2 = exp(2*pi*i/3).
  static Cyc6 omega() { return {Rat(-1), Rat(1)}; }

  Cyc6 conj() const { return {a + b, -b}; }
  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  double real() const { return a.to_double() + 0.5 * b.to_double(); }
  double imag() const;

  Cyc6 operator-() const { return {-a, -b}; }
  Cyc6& operator+=(const Cyc6& o) { a += o.a; b += o.b; return *this; }
  Cyc6& operator-=(const Cyc6& o) { a -= o.a; b -= o.b; return *this; }
  Cyc6& operator*=(const Cyc6& o);
  Cyc6& operator/=(const Cyc6& o);

  friend Cyc6 operator+(Cyc6 x, const Cyc6& y) { return x += y; }
  friend Cyc6 operator-(Cyc6 x, const Cyc6& y) { return x -= y; }
  friend Cyc6 operator*(Cyc6 x, const Cyc6& y) { return x *= y; }
  friend Cyc6 operator/(Cyc6 x, const Cyc6& y) { return x /= y; }
  friend bool operator==(const Cyc6&, const Cyc6&) = default;
};

std::ostream& operator<<(std::ostream& os, const Cyc6& z);

/// z * conj(z) = a^2 + ab + b^2.
Rat cyc6_norm(const Cyc6& z);

struct QuatF {
  double w = 0, x = 0, y = 0, z = 0;

  QuatF conj() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }

  QuatF& operator+=(const QuatF& o) { w += o.w; x += o.x; y += o.y; z += o.z; return *this; }
  friend QuatF operator+(QuatF p, const QuatF& q) { return p += q; }
  friend QuatF operator-(const QuatF& p, const QuatF& q) {
    return {p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z};
  }
  friend QuatF operator*(const QuatF& p, const QuatF& q);
  friend QuatF operator*(double s, const QuatF& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }
};

/// Determinant of the hermitian quaternionic 2x2 matrix [[a, q], [conj(q), b]].
double moore_det2(double a, double b, const QuatF& q);

/// Row-major dense matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw Error(ErrorCode::kInvalidArgument, "matrix data size mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Columns listed in `idx`, in that order.
  Matrix columns(std::span<const std::size_t> idx) const {
    Matrix s(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = (*this)(i, idx[j]);
    return s;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::kInvalidArgument, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rat>;
using Cyc6Matrix = Matrix<Cyc6>;
using QuatMatrix = Matrix<QuatF>;

/// A matrix over one of the exact fields.
using ExactMatrix = std::variant<RatMatrix, Cyc6Matrix>;
using ExactScalar = std::variant<Rat, Cyc6>;

/// Conjugate transpose (plain transpose over Q).
Cyc6Matrix adjoint(const Cyc6Matrix& m);

/// Fraction-free (Bareiss) elimination with row pivoting.
template <class T>
T det_exact(Matrix<T> m) {
  if (!m.square()) throw Error(ErrorCode::kInvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  T prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == T(0)) ++p;
    if (p == n) return T(0);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = T(0);
    }
    prev = m(k, k);
  }
  T d = m(n - 1, n - 1);
  return negate ? T(-d) : d;
}

ExactScalar det_exact(const ExactMatrix& m);

template <class T>
std::size_t rank_exact(Matrix<T> m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && m(p, c) == T(0)) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(rank, j));
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (m(i, c) == T(0)) continue;
      const T f = m(i, c) / m(rank, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

/// Gauss-Jordan inverse; throws kDomain when singular.
RatMatrix inverse_exact(const RatMatrix& m);

bool is_symmetric(const RatMatrix& s);

struct Inertia {
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
  std::size_t n_zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Congruence diagonalization S = M^T * diag(d) * M with M invertible.
struct CongruenceForm {
  RatMatrix m;
  std::vector<Rat> d;
};

/// Symmetric elimination with symmetric pivoting. When the remaining block
/// has a zero diagonal, a nonzero off-diagonal S_ij is moved into pivot
/// position by the congruence row_i += row_j, col_i += col_j (S_ii := 2 S_ij).
CongruenceForm congruence_diagonalize(const RatMatrix& s);

Inertia inertia(const RatMatrix& s);

}  // namespace cmpoly
