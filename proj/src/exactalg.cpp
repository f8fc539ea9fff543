#include "cmpoly/exactalg.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace cmpoly {

Rat::Rat(long num, long den) : v_(num, den) {
  if (den == 0) throw Error(ErrorCode::kDomain, "zero denominator");
  v_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (den == 0) throw Error(ErrorCode::kDomain, "zero denominator");
  v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  s = s.substr(b);
  if (s.empty()) throw Error(ErrorCode::kParse, "empty rational");
  const auto slash = s.find('/');
  auto check_int = [&](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) throw Error(ErrorCode::kParse, "malformed rational '" + s + "'");
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw Error(ErrorCode::kParse, "malformed rational '" + s + "' (expected p or p/q)");
  };
  if (slash == std::string::npos) {
    check_int(s);
    return Rat(mpz_class(s[0] == '+' ? s.substr(1) : s, 10));
  }
  const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  check_int(num);
  check_int(den);
  return Rat(mpz_class(num[0] == '+' ? num.substr(1) : num, 10),
             mpz_class(den[0] == '+' ? den.substr(1) : den, 10));
}

Rat Rat::from_double(double d) {
  if (!std::isfinite(d)) throw Error(ErrorCode::kDomain, "non-finite value");
  return Rat(mpq_class(d));
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw Error(ErrorCode::kDomain, "division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat pow(const Rat& base, unsigned exp) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get().get_num_mpz_t(), exp);
  mpz_pow_ui(d.get_mpz_t(), base.get().get_den_mpz_t(), exp);
  return Rat(n, d);
}

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

double Cyc6::imag() const { return b.to_double() * std::sqrt(3.0) / 2.0; }

Cyc6& Cyc6::operator*=(const Cyc6& o) {
  // (a + b z)(c + d z) = ac - bd + (ad + bc + bd) z
  const Rat bd = b * o.b;
  Rat na = a * o.a - bd;
  Rat nb = a * o.b + b * o.a + bd;
  a = std::move(na);
  b = std::move(nb);
  return *this;
}

Cyc6& Cyc6::operator/=(const Cyc6& o) {
  const Rat n = cyc6_norm(o);
  if (n.is_zero()) throw Error(ErrorCode::kDomain, "division by zero in Q(zeta6)");
  *this *= o.conj();
  a /= n;
  b /= n;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Cyc6& z) {
  return os << "(" << z.a << " + " << z.b << "*zeta6)";
}

Rat cyc6_norm(const Cyc6& z) { return z.a * z.a + z.a * z.b + z.b * z.b; }

QuatF operator*(const QuatF& p, const QuatF& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

double moore_det2(double a, double b, const QuatF& q) { return a * b - q.norm2(); }

Cyc6Matrix adjoint(const Cyc6Matrix& m) {
  Cyc6Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j).conj();
  return t;
}

ExactScalar det_exact(const ExactMatrix& m) {
  return std::visit([](const auto& mm) -> ExactScalar { return det_exact(mm); }, m);
}

RatMatrix inverse_exact(const RatMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::kInvalidArgument, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw Error(ErrorCode::kDomain, "matrix is singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(p, j), a(c, j));
      std::swap(inv(p, j), inv(c, j));
    }
    const Rat piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const Rat f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

bool is_symmetric(const RatMatrix& s) {
  if (!s.square()) return false;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i + 1; j < s.cols(); ++j)
      if (s(i, j) != s(j, i)) return false;
  return true;
}

namespace {

// Congruence by an elementary matrix applied to both sides; `e` accumulates
// the row operations so that e * S * e^T = diag at the end.
void swap_sym(RatMatrix& a, RatMatrix& e, std::size_t i, std::size_t j) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
  for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
  for (std::size_t k = 0; k < n; ++k) std::swap(e(i, k), e(j, k));
}

void add_sym(RatMatrix& a, RatMatrix& e, std::size_t dst, std::size_t src, const Rat& f) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) a(dst, k) += f * a(src, k);
  for (std::size_t k = 0; k < n; ++k) a(k, dst) += f * a(k, src);
  for (std::size_t k = 0; k < n; ++k) e(dst, k) += f * e(src, k);
}

}  // namespace

CongruenceForm congruence_diagonalize(const RatMatrix& s) {
  if (!is_symmetric(s)) throw Error(ErrorCode::kInvalidArgument, "matrix is not symmetric");
  const std::size_t n = s.rows();
  RatMatrix a = s;
  RatMatrix e = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, p).is_zero()) ++p;
    if (p == n) {
      // zero diagonal: look for S_ij != 0 with i, j >= k
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!a(i, j).is_zero()) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;  // remaining block is zero
      add_sym(a, e, pi, pj, Rat(1));
      p = pi;
    }
    if (p != k) swap_sym(a, e, p, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      add_sym(a, e, i, k, -(a(i, k) / a(k, k)));
    }
  }
  CongruenceForm out;
  out.d.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.d[i] = a(i, i);
  // e S e^T = D  =>  S = e^{-1} D e^{-T} = M^T D M with M = e^{-T}
  out.m = inverse_exact(e).transpose();
  return out;
}

Inertia inertia(const RatMatrix& s) {
  if (!is_symmetric(s)) throw Error(ErrorCode::kInvalidArgument, "matrix is not symmetric");
  const auto form = congruence_diagonalize(s);
  Inertia in;
  for (const auto& d : form.d) {
    if (d.sign() > 0) ++in.n_plus;
    else if (d.sign() < 0) ++in.n_minus;
    else ++in.n_zero;
  }
  return in;
}

}  // namespace cmpoly
