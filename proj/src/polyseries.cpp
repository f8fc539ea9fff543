#include "cmpoly/polyseries.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <thread>

#include "json_util.hpp"

namespace cmpoly {

unsigned total_degree(const Exponent& e) {
  unsigned d = 0;
  for (auto v : e) d += v;
  return d;
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly MultiPoly::constant(std::size_t nvars, const Rat& c) {
  MultiPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw Error(ErrorCode::kInvalidArgument, "variable index out of range");
  MultiPoly p(nvars);
  Exponent e(nvars, 0);
  e[i] = 1;
  p.add_term(e, Rat(1));
  return p;
}

void MultiPoly::add_term(const Exponent& e, const Rat& c) {
  if (e.size() != nvars_) throw Error(ErrorCode::kInvalidArgument, "exponent length does not match variable count");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rat MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat MultiPoly::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, cmpoly::total_degree(e));
  return d;
}

unsigned MultiPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e.at(var));
  return d;
}

bool MultiPoly::is_multiaffine() const {
  for (const auto& [e, c] : terms_)
    for (auto v : e)
      if (v > 1) return false;
  return true;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const unsigned d = cmpoly::total_degree(terms_.begin()->first);
  for (const auto& [e, c] : terms_)
    if (cmpoly::total_degree(e) != d) return false;
  return true;
}

MultiPoly MultiPoly::homogeneous_part(unsigned d) const {
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_)
    if (cmpoly::total_degree(e) == d) out.terms_.emplace(e, c);
  return out;
}

Rat MultiPoly::evaluate(std::span<const Rat> x) const {
  if (x.size() != nvars_) throw Error(ErrorCode::kInvalidArgument, "evaluation point has wrong length");
  Rat sum(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) t *= pow(x[i], e[i]);
    sum += t;
  }
  return sum;
}

double MultiPoly::evaluate(std::span<const double> x) const {
  if (x.size() != nvars_) throw Error(ErrorCode::kInvalidArgument, "evaluation point has wrong length");
  double sum = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.to_double();
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    sum += t;
  }
  return sum;
}

std::complex<double> MultiPoly::evaluate(std::span<const std::complex<double>> x) const {
  if (x.size() != nvars_) throw Error(ErrorCode::kInvalidArgument, "evaluation point has wrong length");
  std::complex<double> sum = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.to_double();
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    sum += t;
  }
  return sum;
}

MultiPoly MultiPoly::partial_derivative(std::size_t var) const {
  if (var >= nvars_) throw Error(ErrorCode::kInvalidArgument, "variable index out of range");
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    --f[var];
    out.add_term(f, c * Rat(static_cast<long>(e[var])));
  }
  return out;
}

MultiPoly MultiPoly::substitute(std::size_t var, const Rat& value) const {
  if (var >= nvars_) throw Error(ErrorCode::kInvalidArgument, "variable index out of range");
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    f[var] = 0;
    out.add_term(f, c * pow(value, e[var]));
  }
  return out;
}

MultiPoly MultiPoly::remap(std::size_t new_nvars, std::span<const std::size_t> index_map) const {
  if (index_map.size() != nvars_) throw Error(ErrorCode::kInvalidArgument, "index map has wrong length");
  MultiPoly out(new_nvars);
  for (const auto& [e, c] : terms_) {
    Exponent f(new_nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      if (index_map[i] >= new_nvars) throw Error(ErrorCode::kInvalidArgument, "index map target out of range");
      f[index_map[i]] += e[i];
    }
    out.add_term(f, c);
  }
  return out;
}

MultiPoly MultiPoly::truncated(unsigned max_degree) const {
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_)
    if (cmpoly::total_degree(e) <= max_degree) out.terms_.emplace(e, c);
  return out;
}

void MultiPoly::check_same(const MultiPoly& o) const {
  if (o.nvars_ != nvars_) throw Error(ErrorCode::kInvalidArgument, "polynomials have different variable counts");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rat& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

namespace {

MultiPoly mul_impl(const MultiPoly& a, const MultiPoly& b, unsigned max_degree) {
  if (a.nvars() != b.nvars()) throw Error(ErrorCode::kInvalidArgument, "polynomials have different variable counts");
  MultiPoly out(a.nvars());
  Exponent e(a.nvars());
  for (const auto& [ea, ca] : a.terms()) {
    const unsigned da = total_degree(ea);
    for (const auto& [eb, cb] : b.terms()) {
      if (da + total_degree(eb) > max_degree) continue;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

}  // namespace

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  return mul_impl(a, b, std::numeric_limits<unsigned>::max());
}

MultiPoly truncated_mul(const MultiPoly& a, const MultiPoly& b, unsigned max_degree) {
  return mul_impl(a, b, max_degree);
}

// -------------------------------------------------------------- ShiftVector

ShiftVector::ShiftVector(std::vector<Rat> c) : c_(std::move(c)) {
  for (const auto& v : c_)
    if (v.sign() <= 0) throw Error(ErrorCode::kDomain, "shift entries must be positive");
}

ShiftVector ShiftVector::ones(std::size_t n) { return ShiftVector(std::vector<Rat>(n, Rat(1))); }

MultiPoly affine_reflect(const MultiPoly& p, std::span<const Rat> c) {
  const std::size_t n = p.nvars();
  if (c.size() != n) throw Error(ErrorCode::kInvalidArgument, "shift has wrong length");
  MultiPoly out(n);
  // prod_i (c_i - y_i)^{e_i}, expanded variable by variable
  for (const auto& [e, coef] : p.terms()) {
    std::map<Exponent, Rat> acc{{Exponent(n, 0), coef}};
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      std::map<Exponent, Rat> next;
      Rat binom(1);
      for (unsigned j = 0; j <= e[i]; ++j) {
        if (j > 0) binom = binom * Rat(static_cast<long>(e[i] - j + 1)) / Rat(static_cast<long>(j));
        Rat f = binom * pow(c[i], e[i] - j);
        if (j % 2) f = -f;
        if (f.is_zero()) continue;
        for (const auto& [ex, v] : acc) {
          Exponent g = ex;
          g[i] = static_cast<std::uint16_t>(j);
          next[g] += v * f;
        }
      }
      acc = std::move(next);
    }
    for (const auto& [ex, v] : acc) out.add_term(ex, v);
  }
  return out;
}

MultiPoly shift_substitute(const MultiPoly& p, const ShiftVector& c) {
  return affine_reflect(p, c.values());
}

// -------------------------------------------------------------- GradedIndex

GradedIndex::GradedIndex(std::size_t nvars, unsigned max_degree) : nvars_(nvars), max_degree_(max_degree) {
  if (nvars == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one variable");
  // Only C(n, k) with k <= nvars is ever needed.
  const unsigned top = max_degree + static_cast<unsigned>(nvars) + 1;
  const unsigned kmax = static_cast<unsigned>(nvars);
  binom_.assign(top + 1, std::vector<std::uint64_t>(kmax + 1, 0));
  for (unsigned n = 0; n <= top; ++n) {
    binom_[n][0] = 1;
    for (unsigned k = 1; k <= std::min(n, kmax); ++k) {
      const std::uint64_t s = binom_[n - 1][k - 1] + binom_[n - 1][k];
      if (s < binom_[n - 1][k]) throw Error(ErrorCode::kLimit, "monomial count overflows 64 bits");
      binom_[n][k] = s;
    }
  }
}

std::uint64_t GradedIndex::binom(unsigned n, unsigned k) const { return k > n ? 0 : binom_[n][k]; }

std::size_t GradedIndex::layer_size(unsigned d) const {
  return binom(d + static_cast<unsigned>(nvars_) - 1, static_cast<unsigned>(nvars_) - 1);
}

std::size_t GradedIndex::rank(const std::uint16_t* e, unsigned degree) const {
  std::size_t r = 0;
  unsigned rem = degree;
  for (std::size_t i = 0; i + 1 < nvars_; ++i) {
    const unsigned m = static_cast<unsigned>(nvars_ - i - 1);
    if (e[i]) r += binom(rem + m, m) - binom(rem - e[i] + m, m);
    rem -= e[i];
  }
  return r;
}

std::size_t GradedIndex::rank(const Exponent& e) const {
  if (e.size() != nvars_) throw Error(ErrorCode::kInvalidArgument, "exponent length does not match variable count");
  return rank(e.data(), total_degree(e));
}

Exponent GradedIndex::first(unsigned d) const {
  Exponent e(nvars_, 0);
  e.back() = static_cast<std::uint16_t>(d);
  return e;
}

bool GradedIndex::next(Exponent& e) const {
  if (nvars_ < 2) return false;
  unsigned suffix = e[nvars_ - 1];
  for (std::size_t i = nvars_ - 1; i-- > 0;) {
    if (suffix > 0) {
      ++e[i];
      for (std::size_t j = i + 1; j + 1 < nvars_; ++j) e[j] = 0;
      e[nvars_ - 1] = static_cast<std::uint16_t>(suffix - 1);
      return true;
    }
    suffix += e[i];
  }
  return false;
}

Exponent GradedIndex::unrank(unsigned d, std::size_t r) const {
  if (r >= layer_size(d)) throw Error(ErrorCode::kInvalidArgument, "rank out of range");
  Exponent e(nvars_, 0);
  unsigned rem = d;
  for (std::size_t i = 0; i + 1 < nvars_; ++i) {
    const unsigned m = static_cast<unsigned>(nvars_ - i - 1);
    unsigned v = 0;
    // completions with e_i = v number C(rem - v + m - 1, m - 1)
    while (true) {
      const std::uint64_t block = binom(rem - v + m - 1, m - 1);
      if (r < block) break;
      r -= block;
      ++v;
    }
    e[i] = static_cast<std::uint16_t>(v);
    rem -= v;
  }
  e[nvars_ - 1] = static_cast<std::uint16_t>(rem);
  return e;
}

// -------------------------------------------------------------- TruncSeries

TruncSeries::TruncSeries(std::size_t nvars, unsigned max_degree, Rat prefactor_base, Rat prefactor_exponent)
    : nvars_(nvars),
      max_degree_(max_degree),
      prefactor_base_(std::move(prefactor_base)),
      prefactor_exponent_(std::move(prefactor_exponent)),
      index_(nvars, max_degree) {}

void TruncSeries::push_layer(std::vector<mpz_class> numerators, mpz_class denominator) {
  const unsigned d = static_cast<unsigned>(layers_.size());
  if (d > max_degree_) throw Error(ErrorCode::kInvalidArgument, "series already complete");
  if (numerators.size() != index_.layer_size(d)) throw Error(ErrorCode::kInternal, "layer has wrong size");
  if (denominator <= 0) throw Error(ErrorCode::kInternal, "layer denominator must be positive");
  layers_.push_back(std::move(numerators));
  denominators_.push_back(std::move(denominator));
}

void TruncSeries::push_layer(const std::vector<Rat>& values) {
  mpz_class den = 1;
  for (const auto& v : values) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get().get_den_mpz_t());
  std::vector<mpz_class> nums(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    nums[i] = values[i].get().get_num() * (den / values[i].get().get_den());
  push_layer(std::move(nums), std::move(den));
}

Rat TruncSeries::coefficient(const Exponent& e) const {
  const unsigned d = total_degree(e);
  if (d >= layers_.size()) throw Error(ErrorCode::kInvalidArgument, "degree beyond truncation order");
  return Rat(layers_[d][index_.rank(e)], denominators_[d]);
}

int TruncSeries::sign(const Exponent& e) const {
  const unsigned d = total_degree(e);
  if (d >= layers_.size()) throw Error(ErrorCode::kInvalidArgument, "degree beyond truncation order");
  return sgn(layers_[d][index_.rank(e)]);
}

std::size_t TruncSeries::term_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.size();
  return n;
}

void TruncSeries::for_each(const std::function<void(const Exponent&, const Rat&)>& fn) const {
  for (unsigned d = 0; d < layers_.size(); ++d) {
    Exponent e = index_.first(d);
    std::size_t r = 0;
    do {
      fn(e, Rat(layers_[d][r], denominators_[d]));
      ++r;
    } while (index_.next(e));
  }
}

// ---------------------------------------------------------- NegPowExpander

NegPowExpander::NegPowExpander(const MultiPoly& q, const Rat& beta, unsigned max_degree, Options opts)
    : nvars_(q.nvars()),
      max_degree_(max_degree),
      beta_(beta),
      q0_(q.constant_term()),
      opts_(opts),
      index_(q.nvars(), max_degree) {
  if (q0_.sign() <= 0) throw Error(ErrorCode::kDomain, "constant term must be positive");
  if (beta.sign() <= 0) throw Error(ErrorCode::kDomain, "beta must be positive");
  p_ = beta.numerator();
  q_ = beta.denominator();
  q_degree_ = q.total_degree();
  terms_by_degree_.assign(q_degree_ + 1, {});
  lcm_d_ = 1;
  for (const auto& [e, c] : q.terms()) {
    if (total_degree(e) == 0) continue;
    const Rat r = c / q0_;
    mpz_lcm(lcm_d_.get_mpz_t(), lcm_d_.get_mpz_t(), r.get().get_den_mpz_t());
  }
  for (const auto& [e, c] : q.terms()) {
    const unsigned k = total_degree(e);
    if (k == 0) continue;
    const Rat r = c / q0_;
    mpz_class dk;
    mpz_pow_ui(dk.get_mpz_t(), lcm_d_.get_mpz_t(), k);
    terms_by_degree_[k].push_back({e, r.get().get_num() * (dk / r.get().get_den())});
  }
  den_ = 1;
  std::vector<mpz_class> g0{mpz_class(1)};
  if (opts_.keep_all_layers) {
    layers_.push_back(std::move(g0));
    dens_.push_back(1);
  } else {
    layers_.assign(std::max(1u, q_degree_ + 1), {});
    layers_[0] = std::move(g0);
  }
}

const std::vector<mpz_class>& NegPowExpander::layer_at(unsigned d) const {
  return opts_.keep_all_layers ? layers_[d] : layers_[d % layers_.size()];
}

std::span<const mpz_class> NegPowExpander::current_layer() const { return layer_at(degree_); }

Rat NegPowExpander::current_coefficient(std::size_t rank) const {
  return Rat(layer_at(degree_).at(rank), den_);
}

void NegPowExpander::compute_layer(unsigned d, std::vector<mpz_class>& out) const {
  out.assign(index_.layer_size(d), mpz_class(0));
  const unsigned kmax = std::min(d, q_degree_);
  // scale factors s_{d,k}; (d-1)!/(d-k)! built incrementally
  mpz_class falling = 1, qpow = 1;
  std::vector<mpz_class> scale(kmax + 1);
  for (unsigned k = 1; k <= kmax; ++k) {
    if (k > 1) {
      falling *= (d - k + 1);
      qpow *= q_;
    }
    scale[k] = (q_ * (d - k) + p_ * k) * qpow * falling;
  }

  auto run = [&](unsigned k, std::size_t begin, std::size_t end, std::vector<mpz_class>& dst) {
    const auto& src = layer_at(d - k);
    Exponent a = index_.unrank(d - k, begin);
    std::vector<std::uint16_t> sum(nvars_);
    mpz_class c;
    for (std::size_t r = begin; r < end; ++r, index_.next(a)) {
      if (sgn(src[r]) == 0) continue;
      for (const auto& t : terms_by_degree_[k]) {
        for (std::size_t i = 0; i < nvars_; ++i) sum[i] = static_cast<std::uint16_t>(a[i] + t.exp[i]);
        mpz_mul(c.get_mpz_t(), t.coef.get_mpz_t(), src[r].get_mpz_t());
        mpz_addmul(dst[index_.rank(sum.data(), d)].get_mpz_t(), c.get_mpz_t(), scale[k].get_mpz_t());
      }
    }
  };

  std::size_t work = 0;
  for (unsigned k = 1; k <= kmax; ++k) work += terms_by_degree_[k].size() * index_.layer_size(d - k);
  const unsigned threads = std::max(1u, opts_.threads);
  if (threads == 1 || work < 20000) {
    for (unsigned k = 1; k <= kmax; ++k)
      if (!terms_by_degree_[k].empty()) run(k, 0, index_.layer_size(d - k), out);
  } else {
    std::vector<std::vector<mpz_class>> partial(threads, std::vector<mpz_class>(out.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (unsigned k = 1; k <= kmax; ++k) {
          if (terms_by_degree_[k].empty()) continue;
          const std::size_t n = index_.layer_size(d - k);
          const std::size_t b = n * t / threads, e = n * (t + 1) / threads;
          if (b < e) run(k, b, e, partial[t]);
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& part : partial)
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += part[i];
  }
  for (auto& v : out) mpz_neg(v.get_mpz_t(), v.get_mpz_t());
}

bool NegPowExpander::advance() {
  if (degree_ >= max_degree_) return false;
  const unsigned d = degree_ + 1;
  std::vector<mpz_class> out;
  compute_layer(d, out);
  den_ *= q_ * d * lcm_d_;
  if (opts_.keep_all_layers) {
    layers_.push_back(std::move(out));
    dens_.push_back(den_);
  } else {
    layers_[d % layers_.size()] = std::move(out);
  }
  degree_ = d;
  return true;
}

TruncSeries NegPowExpander::into_series() && {
  if (!opts_.keep_all_layers) throw Error(ErrorCode::kInternal, "expander did not keep its layers");
  TruncSeries s(nvars_, max_degree_, q0_, -beta_);
  for (std::size_t d = 0; d < layers_.size(); ++d) s.push_layer(std::move(layers_[d]), std::move(dens_[d]));
  return s;
}

TruncSeries series_neg_pow(const MultiPoly& q, const Rat& beta, unsigned max_degree) {
  NegPowExpander ex(q, beta, max_degree);
  while (ex.advance()) {
  }
  return std::move(ex).into_series();
}

namespace {

TruncSeries from_multipoly(const MultiPoly& p, unsigned max_degree, const Rat& base, const Rat& exponent) {
  TruncSeries s(p.nvars(), max_degree, base, exponent);
  const GradedIndex& idx = s.index();
  std::vector<std::vector<Rat>> layers(max_degree + 1);
  for (unsigned d = 0; d <= max_degree; ++d) layers[d].assign(idx.layer_size(d), Rat(0));
  for (const auto& [e, c] : p.terms()) {
    const unsigned d = total_degree(e);
    if (d <= max_degree) layers[d][idx.rank(e)] = c;
  }
  for (const auto& l : layers) s.push_layer(l);
  return s;
}

MultiPoly to_multipoly(const TruncSeries& s) {
  MultiPoly p(s.nvars());
  s.for_each([&](const Exponent& e, const Rat& c) { p.add_term(e, c); });
  return p;
}

}  // namespace

TruncSeries series_neg_pow_binomial(const MultiPoly& q, const Rat& beta, unsigned max_degree) {
  const Rat q0 = q.constant_term();
  if (q0.sign() <= 0) throw Error(ErrorCode::kDomain, "constant term must be positive");
  if (beta.sign() <= 0) throw Error(ErrorCode::kDomain, "beta must be positive");
  MultiPoly r = q;
  r.add_term(Exponent(q.nvars(), 0), -q0);
  r *= Rat(1) / q0;
  MultiPoly sum = MultiPoly::constant(q.nvars(), Rat(1));
  MultiPoly power = MultiPoly::constant(q.nvars(), Rat(1));
  Rat binom(1);  // C(-beta, k)
  for (unsigned k = 1; k <= max_degree; ++k) {
    binom = binom * (-beta - Rat(static_cast<long>(k - 1))) / Rat(static_cast<long>(k));
    power = truncated_mul(power, r, max_degree);
    sum += power * binom;
  }
  return from_multipoly(sum, max_degree, q0, -beta);
}

TruncSeries truncated_product(const TruncSeries& a, const TruncSeries& b) {
  if (a.nvars() != b.nvars()) throw Error(ErrorCode::kInvalidArgument, "series have different variable counts");
  const bool a_trivial = a.prefactor_exponent().is_zero(), b_trivial = b.prefactor_exponent().is_zero();
  if (!a_trivial && !b_trivial && a.prefactor_base() != b.prefactor_base())
    throw Error(ErrorCode::kInvalidArgument, "series prefactors have different bases");
  const Rat base = a_trivial ? b.prefactor_base() : a.prefactor_base();
  const unsigned n = std::min(a.degree_reached(), b.degree_reached());
  MultiPoly prod = truncated_mul(to_multipoly(a), to_multipoly(b), n);
  return from_multipoly(prod, n, base, a.prefactor_exponent() + b.prefactor_exponent());
}

TruncSeries truncated_product(const TruncSeries& a, const MultiPoly& p) {
  const unsigned n = a.degree_reached();
  MultiPoly prod = truncated_mul(to_multipoly(a), p, n);
  return from_multipoly(prod, n, a.prefactor_base(), a.prefactor_exponent());
}

MinCoefficient min_coefficient(const TruncSeries& s) {
  MinCoefficient best;
  bool have = false;
  s.for_each([&](const Exponent& e, const Rat& c) {
    if (!have || c < best.value || (c == best.value && e < best.exponent)) {
      best.value = c;
      best.exponent = e;
      have = true;
    }
  });
  return best;
}

std::string poly_to_json(const MultiPoly& p, const std::vector<std::string>& variables) {
  using detail::json;
  if (!variables.empty() && variables.size() != p.nvars())
    throw Error(ErrorCode::kInvalidArgument, "variable manifest has wrong length");
  json j;
  j["nvars"] = p.nvars();
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"e", detail::exponent_to_json(e)}, {"c", detail::rat_to_json(c)}});
  j["terms"] = terms;
  if (!variables.empty()) j["variables"] = variables;
  return j.dump();
}

MultiPoly poly_from_json(std::string_view text, std::vector<std::string>* variables) {
  using detail::json;
  const json j = detail::parse_json(text);
  try {
    const std::size_t n = j.at("nvars").get<std::size_t>();
    MultiPoly p(n);
    for (const auto& t : j.at("terms")) {
      const auto& ej = t.at("e");
      if (ej.size() != n) throw Error(ErrorCode::kParse, "term exponent has wrong length");
      Exponent e(n);
      for (std::size_t i = 0; i < n; ++i) {
        const long v = ej[i].get<long>();
        if (v < 0 || v > std::numeric_limits<std::uint16_t>::max())
          throw Error(ErrorCode::kParse, "exponent entry out of range");
        e[i] = static_cast<std::uint16_t>(v);
      }
      p.add_term(e, detail::rat_from_json(t.at("c")));
    }
    if (variables) {
      variables->clear();
      if (j.contains("variables")) {
        *variables = j.at("variables").get<std::vector<std::string>>();
        if (variables->size() != n) throw Error(ErrorCode::kParse, "variable manifest has wrong length");
      } else {
        for (std::size_t i = 0; i < n; ++i) variables->push_back("x" + std::to_string(i + 1));
      }
    }
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("polynomial JSON: ") + e.what());
  }
}

std::string series_report_json(const TruncSeries& s) {
  using detail::json;
  json j;
  j["N"] = s.max_degree();
  j["degree_reached"] = s.degree_reached();
  j["prefactor"] = {{"base", detail::rat_to_json(s.prefactor_base())},
                    {"exponent", detail::rat_to_json(s.prefactor_exponent())}};
  j["terms"] = s.term_count();
  const MinCoefficient m = min_coefficient(s);
  j["min_coefficient"] = detail::rat_to_json(m.value);
  j["witness_exponent"] = detail::exponent_to_json(m.exponent);
  return j.dump();
}

}  // namespace cmpoly
