#include "cmpoly/quadform.hpp"

#include "json_util.hpp"

namespace cmpoly {

QuadForm::QuadForm(RatMatrix a) : a_(std::move(a)) {
  if (!is_symmetric(a_)) throw Error(ErrorCode::kInvalidArgument, "quadratic form matrix must be symmetric");
  inertia_ = cmpoly::inertia(a_);
}

QuadForm QuadForm::from_poly(const MultiPoly& p) {
  const std::size_t n = p.nvars();
  RatMatrix a(n, n);
  for (const auto& [e, c] : p.terms()) {
    if (total_degree(e) != 2) throw Error(ErrorCode::kInvalidArgument, "polynomial is not a quadratic form");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned k = 0; k < e[i]; ++k) idx.push_back(i);
    if (idx[0] == idx[1]) {
      a(idx[0], idx[0]) = c;
    } else {
      a(idx[0], idx[1]) = c / Rat(2);
      a(idx[1], idx[0]) = c / Rat(2);
    }
  }
  return QuadForm(std::move(a));
}

QuadForm QuadForm::e2n(std::size_t n) {
  RatMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) a(i, j) = Rat(1, 2);
  return QuadForm(std::move(a));
}

QuadForm QuadForm::lorentz(std::size_t n) {
  RatMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = Rat(i == 0 ? 1 : -1);
  return QuadForm(std::move(a));
}

Rat QuadForm::evaluate(std::span<const Rat> x) const {
  if (x.size() != dim()) throw Error(ErrorCode::kInvalidArgument, "point has wrong dimension");
  Rat s(0);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      if (!a_(i, j).is_zero()) s += a_(i, j) * x[i] * x[j];
  return s;
}

double QuadForm::evaluate(std::span<const double> x) const {
  if (x.size() != dim()) throw Error(ErrorCode::kInvalidArgument, "point has wrong dimension");
  double s = 0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) s += a_(i, j).to_double() * x[i] * x[j];
  return s;
}

MultiPoly QuadForm::to_poly() const {
  const std::size_t n = dim();
  MultiPoly p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Exponent e(n, 0);
      ++e[i];
      ++e[j];
      p.add_term(e, a_(i, j));
    }
  return p;
}

// ----------------------------------------------------------------- BetaSet

bool BetaSet::contains(const Rat& beta) const {
  if (beta.sign() < 0) return false;
  if (beta.is_zero()) return true;
  switch (kind) {
    case Kind::kAllNonneg:
      return true;
    case Kind::kZeroOnly:
      return false;
    case Kind::kZeroUnionRay:
      return beta >= threshold;
    case Kind::kDiscreteUnionRay: {
      if (beta >= threshold) return true;
      const Rat k = beta / step;
      return k.is_integer() && k < Rat(static_cast<long>(count));
    }
  }
  return false;
}

std::string BetaSet::str() const {
  switch (kind) {
    case Kind::kAllNonneg:
      return "[0, ∞)";
    case Kind::kZeroOnly:
      return "{0}";
    case Kind::kZeroUnionRay:
      if (threshold.is_zero()) return "[0, ∞)";
      return "{0} ∪ [" + threshold.str() + ", ∞)";
    case Kind::kDiscreteUnionRay: {
      std::string s = "{";
      for (std::size_t k = 0; k < count; ++k) s += (k ? ", " : "") + (step * Rat(static_cast<long>(k))).str();
      return s + "} ∪ [" + threshold.str() + ", ∞)";
    }
  }
  return {};
}

std::string BetaSet::kind_name() const {
  switch (kind) {
    case Kind::kAllNonneg:
      return "AllNonneg";
    case Kind::kZeroOnly:
      return "ZeroOnly";
    case Kind::kZeroUnionRay:
      return "ZeroUnionRay";
    case Kind::kDiscreteUnionRay:
      return "DiscreteUnionRay";
  }
  return {};
}

BetaSet quad_classify(const QuadForm& q) {
  const Inertia& in = q.inertia();
  if (in.n_plus == 0) throw Error(ErrorCode::kDomain, "form is nowhere positive (n_plus = 0)");
  if (in.n_plus > 1) return BetaSet::zero_only();
  if (in.n_minus == 0) return BetaSet::all_nonneg();
  return BetaSet::zero_union_ray(Rat(static_cast<long>(in.n_minus) - 1, 2));
}

// ------------------------------------------------------------ Lorentz cone

std::string_view cone_side_name(ConeSide s) {
  switch (s) {
    case ConeSide::kInsideC:
      return "inside_C";
    case ConeSide::kInsideNegC:
      return "inside_negC";
    case ConeSide::kOutside:
      return "outside";
  }
  return {};
}

LorentzFrame::LorentzFrame(const QuadForm& q) : q_(q) {
  const Inertia& in = q.inertia();
  if (in.n_plus != 1 || in.n_zero != 0 || in.n_minus + 1 != q.dim())
    throw Error(ErrorCode::kDomain, "Lorentz cone needs inertia (1, n-1, 0)");
  form_ = congruence_diagonalize(q.matrix());
  for (std::size_t i = 0; i < form_.d.size(); ++i)
    if (form_.d[i].sign() > 0) p_ = i;
}

ConeSide LorentzFrame::classify(std::span<const Rat> x) const {
  if (q_.evaluate(x).sign() <= 0) return ConeSide::kOutside;
  Rat t(0);
  for (std::size_t j = 0; j < x.size(); ++j) t += form_.m(p_, j) * x[j];
  return t.sign() > 0 ? ConeSide::kInsideC : ConeSide::kInsideNegC;
}

ConeSide LorentzFrame::classify(std::span<const double> x) const {
  if (!(q_.evaluate(x) > 0)) return ConeSide::kOutside;
  double t = 0;
  for (std::size_t j = 0; j < x.size(); ++j) t += form_.m(p_, j).to_double() * x[j];
  return t > 0 ? ConeSide::kInsideC : ConeSide::kInsideNegC;
}

std::vector<Rat> LorentzFrame::timelike_axis() const {
  const RatMatrix inv = inverse_exact(form_.m);
  std::vector<Rat> v(inv.rows());
  for (std::size_t i = 0; i < inv.rows(); ++i) v[i] = inv(i, p_);
  return v;
}

ConeSide lorentz_membership(const QuadForm& q, std::span<const Rat> x) { return LorentzFrame(q).classify(x); }

std::pair<Rat, Rat> lambda_mu_dual(const Rat& lambda, const Rat& mu, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kDomain, "n must be positive");
  if (mu.sign() <= 0) throw Error(ErrorCode::kDomain, "mu must be positive");
  const Rat nl = Rat(static_cast<long>(n)) * lambda;
  if (nl <= mu) throw Error(ErrorCode::kDomain, "need lambda > mu / n");
  return {lambda / (mu * (nl - mu)), Rat(1) / mu};
}

QuadForm quadform_from_json(std::string_view text) {
  using detail::json;
  const json j = detail::parse_json(text);
  const json& m = j.contains("matrix") ? j.at("matrix") : j;
  if (m.value("field", "Q") != "Q") throw Error(ErrorCode::kParse, "quadratic forms must be over Q");
  if (!m.contains("entries")) throw Error(ErrorCode::kParse, "matrix JSON needs \"entries\"");
  const json& rows = m.at("entries");
  const std::size_t n = rows.size();
  RatMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) throw Error(ErrorCode::kParse, "quadratic form matrix must be square");
    for (std::size_t c = 0; c < n; ++c) a(r, c) = detail::rat_from_json(rows[r][c]);
  }
  return QuadForm(std::move(a));
}

std::string classification_to_json(const QuadForm& q, const BetaSet& s) {
  using detail::json;
  json j;
  j["inertia"] = {q.inertia().n_plus, q.inertia().n_minus, q.inertia().n_zero};
  j["beta_set"] = s.str();
  j["kind"] = s.kind_name();
  if (s.kind == BetaSet::Kind::kZeroUnionRay || s.kind == BetaSet::Kind::kDiscreteUnionRay)
    j["threshold"] = detail::rat_to_json(s.threshold);
  return j.dump();
}

}  // namespace cmpoly
