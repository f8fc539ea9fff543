#include "cmpoly/matroidlib.hpp"

#include <cmath>
#include <limits>

#include "cmpoly/graphlib.hpp"
#include "json_util.hpp"

namespace cmpoly {

namespace {

std::size_t binomial_capped(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::size_t>::max() / (n + 1)) return std::numeric_limits<std::size_t>::max();
  }
  return r;
}

template <class T>
bool has_zero_column(const Matrix<T>& b, std::size_t j) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    if (!(b(i, j) == T(0))) return false;
  return true;
}

Rat squared_modulus(const Rat& d) { return d * d; }
Rat squared_modulus(const Cyc6& d) { return cyc6_norm(d); }

template <class T>
std::vector<std::pair<std::vector<std::size_t>, Rat>> minors_squared(const Matrix<T>& b) {
  const std::size_t m = b.rows(), n = b.cols();
  if (binomial_capped(n, m) > kMaxBasisSubsets)
    throw Error(ErrorCode::kLimit, "too many column subsets for exact enumeration (limit C(12,6) = 924)");
  std::vector<bool> zero(n);
  for (std::size_t j = 0; j < n; ++j) zero[j] = has_zero_column(b, j);
  std::vector<std::pair<std::vector<std::size_t>, Rat>> out;
  for (auto& s : colex_subsets(n, m)) {
    bool skip = false;
    for (auto j : s) skip = skip || zero[j];
    if (skip) continue;
    out.emplace_back(s, squared_modulus(det_exact(b.columns(s))));
  }
  return out;
}

std::vector<std::string> default_ground(std::size_t n) {
  std::vector<std::string> g;
  for (std::size_t i = 0; i < n; ++i) g.push_back("g" + std::to_string(i + 1));
  return g;
}

}  // namespace

std::vector<std::vector<std::size_t>> colex_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    // colex successor: bump the first entry that can move up
    std::size_t i = 0;
    while (i < k && s[i] + 1 == (i + 1 < k ? s[i + 1] : n)) ++i;
    if (i == k) break;
    ++s[i];
    for (std::size_t j = 0; j < i; ++j) s[j] = j;
  }
  return out;
}

RepMatroid::RepMatroid(Rep b, std::vector<std::string> ground) : b_(std::move(b)), ground_(std::move(ground)) {
  const std::size_t rows = std::visit([](const auto& m) { return m.rows(); }, b_);
  const std::size_t cols = std::visit([](const auto& m) { return m.cols(); }, b_);
  if (ground_.empty()) ground_ = default_ground(cols);
  if (ground_.size() != cols) throw Error(ErrorCode::kInvalidArgument, "ground set size does not match column count");
  if (rows > cols) throw Error(ErrorCode::kRank, "matrix has more rows than columns");
  if (const auto* q = std::get_if<RatMatrix>(&b_)) {
    if (rank_exact(*q) != rows) throw Error(ErrorCode::kRank, "matrix does not have full row rank");
  } else if (const auto* z = std::get_if<Cyc6Matrix>(&b_)) {
    if (rank_exact(*z) != rows) throw Error(ErrorCode::kRank, "matrix does not have full row rank");
  }
}

std::size_t RepMatroid::rank() const {
  return std::visit([](const auto& m) { return m.rows(); }, b_);
}

MultiPoly basis_poly(const RepMatroid& m) {
  if (m.is_quaternionic())
    throw Error(ErrorCode::kInvalidArgument, "quaternionic matrices go through basis_poly_quat");
  const std::size_t n = m.size();
  MultiPoly p(n);
  auto add = [&](const auto& minors) {
    for (const auto& [s, c] : minors) {
      if (c.is_zero()) continue;
      Exponent e(n, 0);
      for (auto j : s) e[j] = 1;
      p.add_term(e, c);
    }
  };
  if (const auto* q = std::get_if<RatMatrix>(&m.matrix())) add(minors_squared(*q));
  else add(minors_squared(std::get<Cyc6Matrix>(m.matrix())));
  return p;
}

QuatBasisPoly basis_poly_quat(const QuatMatrix& b, double tol) {
  if (b.rows() != 2) throw Error(ErrorCode::kInvalidArgument, "quaternionic basis polynomial needs exactly 2 rows");
  const std::size_t n = b.cols();
  QuatBasisPoly out{MultiPoly(n), {}, 0.0};
  for (const auto& s : colex_subsets(n, 2)) {
    // C = B_S B_S^*: a, b real diagonal, q the (0,1) entry
    double a = 0, d = 0;
    QuatF q;
    for (auto j : s) {
      a += b(0, j).norm2();
      d += b(1, j).norm2();
      q += b(0, j) * b(1, j).conj();
    }
    const double c = moore_det2(a, d, q);
    const double nearest = std::round(c);
    const double dev = std::abs(c - nearest);
    out.max_deviation = std::max(out.max_deviation, dev);
    if (dev > 1e-6)
      throw Error(ErrorCode::kTolerance, "quaternionic coefficient " + std::to_string(c) + " is not near an integer");
    Exponent e(n, 0);
    for (auto j : s) e[j] = 1;
    if (dev <= tol) {
      out.poly.add_term(e, Rat(static_cast<long>(nearest)));
    } else {
      out.flagged.push_back(s);
      out.poly.add_term(e, Rat::from_double(c));
    }
  }
  return out;
}

bool is_unimodular(const RepMatroid& m) {
  if (m.is_quaternionic()) throw Error(ErrorCode::kInvalidArgument, "unimodularity is only decided over exact fields");
  auto check = [](const auto& minors) {
    for (const auto& [s, c] : minors)
      if (!c.is_zero() && c != Rat(1)) return false;
    return true;
  };
  if (const auto* q = std::get_if<RatMatrix>(&m.matrix())) return check(minors_squared(*q));
  return check(minors_squared(std::get<Cyc6Matrix>(m.matrix())));
}

MultiPoly elementary_symmetric(std::size_t r, std::size_t n) {
  if (r > n) throw Error(ErrorCode::kInvalidArgument, "elementary symmetric degree exceeds variable count");
  MultiPoly p(n);
  for (const auto& s : colex_subsets(n, r)) {
    Exponent e(n, 0);
    for (auto j : s) e[j] = 1;
    p.add_term(e, Rat(1));
  }
  return p;
}

// --------------------------------------------------------------- builtins

RepMatroid builtin_matroid(std::string_view name, std::size_t p) {
  if (name == "K_p") {
    if (p < 2) throw Error(ErrorCode::kInvalidArgument, "K_p needs p >= 2");
    return RepMatroid(incidence_matrix_reduced(Multigraph::complete(p)));
  }
  const Cyc6 z = Cyc6::zeta(), w = Cyc6::omega();
  if (name == "U24") {
    return RepMatroid(Cyc6Matrix(2, 4, {1, 0, 1, 1,  //
                                        0, 1, 1, z}));
  }
  if (name == "AG23") {
    const Cyc6 u = Cyc6(1) + w;
    return RepMatroid(Cyc6Matrix(3, 9, {1, 0, 0, 1, 0, 1, 1, 1, 1,  //
                                        0, 1, 0, 1, 1, 0, u, 1, u,  //
                                        0, 0, 1, 0, 1, w, w, u, u}));
  }
  if (name == "E26_QUAT") {
    const double s3 = std::sqrt(3.0), s6 = std::sqrt(6.0), s10 = std::sqrt(10.0);
    const QuatF one{1, 0, 0, 0}, zero{};
    const QuatF q4{0.5, -s3 / 2, 0, 0};
    const QuatF q5{0.5, -s3 / 6, -s6 / 3, 0};
    const QuatF q6{0.5, -s3 / 6, -s6 / 12, -s10 / 4};
    return RepMatroid(QuatMatrix(2, 6, {one, zero, one, q4, q5, q6,  //
                                        zero, one, one, one, one, one}));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown builtin '" + std::string(name) + "'");
}

RepMatroid builtin_matroid_by_name(std::string_view spec) {
  std::string s(spec);
  for (const std::string prefix : {"K_p:", "K_", "K"}) {
    if (s.rfind(prefix, 0) == 0 && s.size() > prefix.size() && s != "K_p") {
      const std::string num = s.substr(prefix.size());
      if (num.find_first_not_of("0123456789") == std::string::npos)
        return builtin_matroid("K_p", static_cast<std::size_t>(std::stoul(num)));
    }
  }
  return builtin_matroid(s);
}

// --------------------------------------------------------------------- IO

RepMatroid matroid_from_json(std::string_view text) {
  using detail::json;
  const json j = detail::parse_json(text);
  if (!j.is_object() || !j.contains("entries")) throw Error(ErrorCode::kParse, "matrix JSON needs \"entries\"");
  const std::string field = j.value("field", "Q");
  const json& rows_j = j.at("entries");
  const std::size_t rows = j.contains("rows") ? j.at("rows").get<std::size_t>() : rows_j.size();
  const std::size_t cols =
      j.contains("cols") ? j.at("cols").get<std::size_t>() : (rows_j.empty() ? 0 : rows_j.at(0).size());
  if (rows_j.size() != rows) throw Error(ErrorCode::kParse, "entries do not match \"rows\"");
  for (const auto& r : rows_j)
    if (r.size() != cols) throw Error(ErrorCode::kParse, "entries do not match \"cols\"");
  std::vector<std::string> ground;
  if (j.contains("ground")) ground = j.at("ground").get<std::vector<std::string>>();

  if (field == "Q") {
    RatMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = detail::rat_from_json(rows_j[r][c]);
    return RepMatroid(std::move(m), std::move(ground));
  }
  if (field == "Qzeta6") {
    Cyc6Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = detail::cyc6_from_json(rows_j[r][c]);
    return RepMatroid(std::move(m), std::move(ground));
  }
  if (field == "quatF") {
    QuatMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        const json& q = rows_j[r][c];
        if (!q.is_array() || q.size() != 4) throw Error(ErrorCode::kParse, "quaternion entries are [w,x,y,z]");
        m(r, c) = {q[0].get<double>(), q[1].get<double>(), q[2].get<double>(), q[3].get<double>()};
      }
    return RepMatroid(std::move(m), std::move(ground));
  }
  throw Error(ErrorCode::kParse, "unknown field '" + field + "'");
}

std::string matroid_to_json(const RepMatroid& m) {
  using detail::json;
  json j;
  json entries = json::array();
  std::visit(
      [&](const auto& b) {
        using M = std::decay_t<decltype(b)>;
        j["rows"] = b.rows();
        j["cols"] = b.cols();
        for (std::size_t r = 0; r < b.rows(); ++r) {
          json row = json::array();
          for (std::size_t c = 0; c < b.cols(); ++c) {
            if constexpr (std::is_same_v<M, RatMatrix>) row.push_back(detail::rat_to_json(b(r, c)));
            else if constexpr (std::is_same_v<M, Cyc6Matrix>) row.push_back(detail::cyc6_to_json(b(r, c)));
            else row.push_back({b(r, c).w, b(r, c).x, b(r, c).y, b(r, c).z});
          }
          entries.push_back(row);
        }
        if constexpr (std::is_same_v<M, RatMatrix>) j["field"] = "Q";
        else if constexpr (std::is_same_v<M, Cyc6Matrix>) j["field"] = "Qzeta6";
        else j["field"] = "quatF";
      },
      m.matrix());
  j["entries"] = entries;
  j["ground"] = m.ground();
  return j.dump();
}

}  // namespace cmpoly
