#include "cmpoly/cmengine.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "cmpoly/error.hpp"
#include "json_util.hpp"

namespace cmpoly {

// -------------------------------------------------------------------- grids

std::vector<ShiftVector> default_grid(std::size_t n, std::uint64_t seed) {
  std::vector<ShiftVector> g;
  g.push_back(ShiftVector::ones(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> c(n, Rat(1));
    c[i] = Rat(2);
    g.emplace_back(std::move(c));
  }
  std::mt19937_64 rng(seed);
  for (int r = 0; r < 4; ++r) {
    std::vector<Rat> c(n);
    for (auto& x : c) {
      const long d = 1 + static_cast<long>(rng() % 8);
      const long lo = (d + 1) / 2, hi = 3 * d;
      const long num = lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
      x = Rat(num, d);
    }
    g.emplace_back(std::move(c));
  }
  return g;
}

std::vector<ShiftVector> extended_grid(std::size_t n, std::uint64_t seed) {
  std::vector<ShiftVector> g = default_grid(n, seed);
  for (long s : {8L, 64L})
    for (std::size_t k = 1; k < n; ++k) {
      std::vector<Rat> c(n, Rat(1));
      for (std::size_t i = 0; i < k; ++i) c[i] = Rat(s);
      g.emplace_back(std::move(c));
    }
  return g;
}

std::vector<ShiftVector> parse_grid_text(std::string_view text, std::size_t n) {
  std::vector<ShiftVector> g;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::vector<Rat> c;
    std::string tok;
    while (ls >> tok) c.push_back(Rat::parse(tok));
    if (c.empty()) continue;
    if (c.size() != n)
      throw Error(ErrorCode::kParse, "grid line " + std::to_string(lineno) + ": expected " + std::to_string(n) +
                                         " entries, got " + std::to_string(c.size()));
    g.emplace_back(std::move(c));
  }
  if (g.empty()) throw Error(ErrorCode::kParse, "grid file has no shifts");
  return g;
}

std::vector<ShiftVector> grid_from_spec(std::string_view spec, std::size_t n, std::uint64_t seed) {
  if (spec == "default") return default_grid(n, seed);
  if (spec == "extended") return extended_grid(n, seed);
  if (spec == "ones") return {ShiftVector::ones(n)};
  if (spec.starts_with("file:")) {
    const std::string path(spec.substr(5));
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot open grid file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_grid_text(ss.str(), n);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown grid '" + std::string(spec) + "'");
}

// --------------------------------------------------------------------- scan

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kNonnegativeUpTo:
      return "NonnegativeUpTo";
    case Verdict::kNegativeFound:
      return "NegativeFound";
    case Verdict::kInconclusive:
      return "Inconclusive";
  }
  return {};
}

namespace {

struct ShiftResult {
  ShiftSummary summary;
  bool inconclusive = false;
  unsigned neg_order = 0;
  Exponent neg_exponent;
  Rat neg_coefficient;
};

// `stop` is polled between layers; it returns true when the work is moot.
ShiftResult scan_one(const MultiPoly& p, const Rat& beta, const ShiftVector& c, unsigned N, const ScanOptions& opts,
                     unsigned threads, const std::function<bool()>& stop) {
  ShiftResult r;
  r.summary.c = c;
  const MultiPoly q = shift_substitute(p, c);
  NegPowExpander ex(q, beta, N, {.keep_all_layers = false, .threads = threads});
  const GradedIndex& idx = ex.index();
  bool have_min = false;
  for (unsigned d = 0;; ++d) {
    if (d > 0) {
      if (d > N || stop()) break;
      if (idx.layer_size(d) > opts.max_layer_terms) {
        r.inconclusive = true;
        break;
      }
      ex.advance();
    }
    const auto layer = ex.current_layer();
    std::size_t arg = 0;
    for (std::size_t i = 1; i < layer.size(); ++i)
      if (layer[i] < layer[arg]) arg = i;
    const Rat v = ex.current_coefficient(arg);
    if (!have_min || v < r.summary.min_coefficient) {
      r.summary.min_coefficient = v;
      r.summary.min_exponent = idx.unrank(d, arg);
      have_min = true;
    }
    r.summary.order_reached = d;
    if (!r.summary.negative) {
      for (std::size_t i = 0; i < layer.size(); ++i)
        if (sgn(layer[i]) < 0) {
          r.summary.negative = true;
          r.neg_order = d;
          r.neg_exponent = idx.unrank(d, i);
          r.neg_coefficient = ex.current_coefficient(i);
          break;
        }
      if (r.summary.negative && opts.early_exit) break;
    }
  }
  return r;
}

}  // namespace

CmReport cm_scan(const MultiPoly& p, const Rat& beta, const std::vector<ShiftVector>& grid, unsigned N,
                 const ScanOptions& opts) {
  if (beta.sign() <= 0) throw Error(ErrorCode::kDomain, "beta must be positive");
  if (grid.empty()) throw Error(ErrorCode::kInvalidArgument, "empty shift grid");
  for (const auto& c : grid) {
    if (c.size() != p.nvars()) throw Error(ErrorCode::kInvalidArgument, "shift has wrong dimension");
    if (p.evaluate(c.values()).sign() <= 0)
      throw Error(ErrorCode::kDomain, "P(c) <= 0 at a grid shift; P must be positive on the grid");
  }

  const std::size_t G = grid.size();
  std::vector<std::optional<ShiftResult>> results(G);
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  const unsigned threads = std::max(1u, opts.threads);

  auto run = [&](std::size_t i, unsigned inner) {
    auto stop = [&] { return opts.early_exit && best.load() < i; };
    if (stop()) return;
    ShiftResult r = scan_one(p, beta, grid[i], N, opts, inner, stop);
    if (opts.early_exit && (r.summary.negative || r.inconclusive)) {
      std::size_t cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
    }
    results[i] = std::move(r);
  };

  if (threads == 1 || G == 1) {
    for (std::size_t i = 0; i < G; ++i) {
      run(i, threads);
      if (opts.early_exit && best.load() <= i) break;
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, G); ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < G;) run(i, 1);
      });
    for (auto& th : pool) th.join();
  }

  CmReport rep;
  rep.beta = beta;
  rep.N = N;
  bool inconclusive = false;
  bool found = false;
  for (std::size_t i = 0; i < G; ++i) {
    if (opts.early_exit && best.load() < i) break;
    if (!results[i]) throw Error(ErrorCode::kInternal, "scan result missing");
    ShiftResult& r = *results[i];
    rep.scanned_c.push_back(grid[i]);
    rep.per_shift.push_back(r.summary);
    inconclusive = inconclusive || r.inconclusive;
    if (r.summary.negative && !found) {
      found = true;
      rep.witness_shift = i;
      rep.exponent = r.neg_exponent;
      rep.coefficient = r.neg_coefficient;
      rep.order = r.neg_order;
    }
  }
  if (found) {
    rep.verdict = Verdict::kNegativeFound;
    rep.note = "negative Taylor coefficient: P^(-beta) is not completely monotone on the positive orthant";
  } else if (inconclusive) {
    rep.verdict = Verdict::kInconclusive;
    rep.note = "term guard reached before order N; " + std::string(kScanCaveat);
  } else {
    rep.verdict = Verdict::kNonnegativeUpTo;
    rep.note = std::string(kScanCaveat);
  }
  return rep;
}

// ---------------------------------------------------------------- bisection

ThresholdEstimate beta_bisect(const MultiPoly& p, const Rat& lo, const Rat& hi, unsigned N,
                              const std::vector<ShiftVector>& grid, const Rat& tol, std::string grid_description,
                              std::vector<std::string> tags, const ScanOptions& opts) {
  if (!(lo < hi)) throw Error(ErrorCode::kInvalidArgument, "need lo < hi");
  if (tol.sign() <= 0) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  ThresholdEstimate t;
  t.N = N;
  t.grid_description = std::move(grid_description);
  t.grid_size = grid.size();
  t.tol = tol;
  t.tags = std::move(tags);
  ScanOptions o = opts;
  o.early_exit = true;

  auto probe = [&](const Rat& b) {
    const CmReport r = cm_scan(p, b, grid, N, o);
    Probe pr{b, r.verdict, r.order, r.witness_shift};
    t.probes.push_back(pr);
    return r.verdict;
  };

  const Verdict vlo = probe(lo);
  if (vlo != Verdict::kNegativeFound)
    throw Error(ErrorCode::kDomain, "no negative coefficient at the lower endpoint " + lo.str() + " (" +
                                        std::string(verdict_name(vlo)) + ")");
  const Verdict vhi = probe(hi);
  if (vhi != Verdict::kNonnegativeUpTo)
    throw Error(ErrorCode::kDomain, "upper endpoint " + hi.str() + " is not nonnegative up to order N (" +
                                        std::string(verdict_name(vhi)) + ")");
  Rat a = lo, b = hi;
  while (b - a > tol) {
    const Rat mid = (a + b) / Rat(2);
    const Verdict v = probe(mid);
    if (v == Verdict::kNegativeFound) {
      a = mid;
    } else if (v == Verdict::kNonnegativeUpTo) {
      b = mid;
    } else {
      t.note = "bisection stopped: inconclusive probe at " + mid.str() + "; ";
      break;
    }
  }
  t.beta_lo = a;
  t.beta_hi = b;
  t.note += "lower bound is rigorous (explicit negative coefficient); upper bound only reflects orders <= " +
            std::to_string(N) + " on a " + std::to_string(grid.size()) +
            "-shift grid and is biased low, since witnesses appear at higher order as beta approaches the threshold";
  return t;
}

// ----------------------------------------------------------------- Rayleigh

RayleighReport c_rayleigh_check(const MultiPoly& p, const Rat& beta, const std::vector<std::vector<Rat>>& points) {
  if (!p.is_multiaffine()) throw Error(ErrorCode::kInvalidArgument, "C-Rayleigh check needs a multiaffine polynomial");
  const std::size_t n = p.nvars();
  std::vector<MultiPoly> d1(n);
  std::vector<std::vector<MultiPoly>> d2(n, std::vector<MultiPoly>(n));
  for (std::size_t i = 0; i < n; ++i) d1[i] = p.partial_derivative(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d2[i][j] = d1[i].partial_derivative(j);

  RayleighReport rep;
  rep.beta = beta;
  rep.points = points.size();
  const Rat b1 = beta + Rat(1);
  bool first = true;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& x = points[k];
    if (x.size() != n) throw Error(ErrorCode::kInvalidArgument, "point has wrong dimension");
    for (const auto& v : x)
      if (v.sign() <= 0) throw Error(ErrorCode::kDomain, "points must be strictly positive");
    const Rat px = p.evaluate(x);
    std::vector<Rat> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = d1[i].evaluate(x);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const Rat margin = b1 * g[i] * g[j] - px * d2[i][j].evaluate(x);
        RayleighViolation v{k, i, j, margin};
        if (first || margin < rep.worst_margin) {
          rep.worst_margin = margin;
          rep.worst = v;
          first = false;
        }
        if (margin.sign() < 0) {
          rep.holds = false;
          rep.violations.push_back(v);
        }
      }
  }
  return rep;
}

// ---------------------------------------------------------------------- PSD

std::vector<std::vector<double>> draw_positive_matrices(std::size_t m, std::size_t k, std::uint64_t seed,
                                                        const PsdOptions& opts) {
  if (m == 0 || k == 0) throw Error(ErrorCode::kInvalidArgument, "m and k must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif;
  const std::size_t dof = opts.dof ? opts.dof : m;

  Eigen::VectorXd v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = std::abs(normal(rng));
  if (v.norm() == 0) v.setOnes();
  v.normalize();

  std::vector<std::vector<double>> out;
  for (std::size_t t = 0; t < k; ++t) {
    Eigen::MatrixXd g(m, dof);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < dof; ++c) g(r, c) = normal(rng);
    Eigen::MatrixXd a = g * g.transpose() / static_cast<double>(dof) + opts.anchor_weight * v * v.transpose();
    a.diagonal().array() += opts.ridge;
    const double s = std::max(0.0, -a.minCoeff()) + 1e-3 * unif(rng);
    a.array() += s;
    out.emplace_back(a.data(), a.data() + m * m);
  }
  return out;
}

std::vector<double> semigroup_matrix(const std::vector<std::vector<double>>& mats, std::size_t m, double beta) {
  const std::size_t k = mats.size();
  std::vector<double> out(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      Eigen::Map<const Eigen::MatrixXd> a(mats[i].data(), m, m), b(mats[j].data(), m, m);
      const double d = (a + b).determinant();
      if (!(d > 0)) throw Error(ErrorCode::kDomain, "A_i + A_j is not positive definite");
      out[i * k + j] = out[j * k + i] = std::pow(d, -beta);
    }
  return out;
}

double min_eigenvalue(const std::vector<double>& sym, std::size_t k) {
  Eigen::Map<const Eigen::MatrixXd> s(sym.data(), k, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::kInternal, "eigensolver failed");
  return es.eigenvalues().minCoeff();
}

PsdReport semigroup_psd_test(std::size_t m, double beta, std::size_t k, std::uint64_t seed, const PsdOptions& opts) {
  if (!(beta > 0)) throw Error(ErrorCode::kDomain, "beta must be positive");
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "need k >= 2 sample points");
  if (opts.restarts == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one restart");
  PsdReport rep;
  rep.m = m;
  rep.k = k;
  rep.beta = beta;
  rep.seed = seed;
  rep.options = opts;
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < opts.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::uint64_t sub[1];
    seq.generate(reinterpret_cast<std::uint32_t*>(sub), reinterpret_cast<std::uint32_t*>(sub) + 2);
    const auto mats = draw_positive_matrices(m, k, sub[0], opts);
    std::vector<double> s = semigroup_matrix(mats, m, beta);
    const double scale = *std::max_element(s.begin(), s.end(), [](double a, double b) {
      return std::abs(a) < std::abs(b);
    });
    for (double& x : s) x /= std::abs(scale);
    const double ev = min_eigenvalue(s, k);
    ++rep.restarts_run;
    if (ev < rep.min_eigenvalue) {
      rep.min_eigenvalue = ev;
      rep.argmin_restart = r;
    }
    if (ev < kPsdDecisionLine) {
      if (rep.restarts_below_line++ == 0) rep.first_below_line = r;
      if (opts.stop_at_negative) break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------- HPP

HppResult hpp_falsify(const MultiPoly& p, std::size_t attempts, std::uint64_t seed) {
  using cd = std::complex<double>;
  const std::size_t n = p.nvars();
  HppResult res;
  res.seed = seed;
  if (n == 0 || p.is_zero()) return res;
  std::vector<MultiPoly> grad(n);
  for (std::size_t i = 0; i < n; ++i) grad[i] = p.partial_derivative(i);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(0.05, 3.0), im(-3.0, 3.0);
  std::vector<cd> z(n), g(n);
  for (std::size_t a = 0; a < attempts; ++a) {
    ++res.attempts;
    for (auto& x : z) x = cd(re(rng), im(rng));
    for (int it = 0; it < 80; ++it) {
      const cd v = p.evaluate(std::span<const cd>(z));
      if (!std::isfinite(std::abs(v))) break;
      if (std::abs(v) < 1e-10) {
        if (std::all_of(z.begin(), z.end(), [](cd x) { return x.real() > 1e-6; })) {
          res.witness = z;
          res.residual = std::abs(v);
          return res;
        }
        break;
      }
      double g2 = 0;
      for (std::size_t i = 0; i < n; ++i) {
        g[i] = grad[i].evaluate(std::span<const cd>(z));
        g2 += std::norm(g[i]);
      }
      if (g2 < 1e-300) break;
      for (std::size_t i = 0; i < n; ++i) z[i] -= v * std::conj(g[i]) / g2;
    }
  }
  return res;
}

// --------------------------------------------------------------------- JSON

namespace {

using detail::json;

json shift_json(const ShiftVector& c) {
  json a = json::array();
  for (const auto& x : c.values()) a.push_back(detail::rat_to_json(x));
  return a;
}

}  // namespace

std::string report_to_json(const CmReport& r) {
  json j;
  j["verdict"] = verdict_name(r.verdict);
  j["beta"] = detail::rat_to_json(r.beta);
  j["N"] = r.N;
  json sc = json::array();
  for (const auto& c : r.scanned_c) sc.push_back(shift_json(c));
  j["scanned_c"] = sc;
  json ps = json::array();
  for (const auto& s : r.per_shift)
    ps.push_back({{"c", shift_json(s.c)},
                  {"order_reached", s.order_reached},
                  {"min_coefficient", detail::rat_to_json(s.min_coefficient)},
                  {"min_exponent", detail::exponent_to_json(s.min_exponent)},
                  {"negative", s.negative}});
  j["per_shift"] = ps;
  if (r.verdict == Verdict::kNegativeFound) {
    j["witness"] = {{"c", shift_json(r.scanned_c.at(r.witness_shift))},
                    {"shift_index", r.witness_shift},
                    {"exponent", detail::exponent_to_json(r.exponent)},
                    {"coefficient", detail::rat_to_json(r.coefficient)},
                    {"order", r.order}};
  }
  j["note"] = r.note;
  return j.dump();
}

std::string report_to_json(const ThresholdEstimate& t) {
  json j;
  j["beta_lo"] = detail::rat_to_json(t.beta_lo);
  j["beta_hi"] = detail::rat_to_json(t.beta_hi);
  j["N"] = t.N;
  j["grid"] = t.grid_description;
  j["grid_size"] = t.grid_size;
  j["tol"] = detail::rat_to_json(t.tol);
  json pr = json::array();
  for (const auto& p : t.probes) {
    json e = {{"beta", detail::rat_to_json(p.beta)}, {"verdict", verdict_name(p.verdict)}};
    if (p.verdict == Verdict::kNegativeFound) {
      e["order"] = p.order;
      e["shift_index"] = p.witness_shift;
    }
    pr.push_back(e);
  }
  j["probes"] = pr;
  j["tags"] = t.tags;
  j["note"] = t.note;
  return j.dump();
}

std::string report_to_json(const RayleighReport& r) {
  json j;
  j["beta"] = detail::rat_to_json(r.beta);
  j["holds"] = r.holds;
  j["points"] = r.points;
  if (r.points) {
    j["worst_margin"] = detail::rat_to_json(r.worst_margin);
    j["worst"] = {{"point", r.worst.point}, {"i", r.worst.i}, {"j", r.worst.j}};
  }
  json v = json::array();
  for (const auto& x : r.violations)
    v.push_back({{"point", x.point}, {"i", x.i}, {"j", x.j}, {"margin", detail::rat_to_json(x.margin)}});
  j["violations"] = v;
  return j.dump();
}

std::string report_to_json(const PsdReport& r) {
  json j;
  j["m"] = r.m;
  j["k"] = r.k;
  j["beta"] = r.beta;
  j["seeds"] = {{"base", r.seed}, {"restarts", r.restarts_run}};
  j["min_eig"] = r.min_eigenvalue;
  j["argmin_restart"] = r.argmin_restart;
  j["decision_line"] = kPsdDecisionLine;
  j["restarts_below_line"] = r.restarts_below_line;
  if (r.restarts_below_line) j["first_below_line"] = r.first_below_line;
  j["verdict"] = r.min_eigenvalue < kPsdDecisionLine ? "not_positive_definite" : "no_violation_found";
  j["generator"] = {{"dof", r.options.dof ? r.options.dof : r.m},
                    {"anchor_weight", r.options.anchor_weight},
                    {"ridge", r.options.ridge}};
  return j.dump();
}

std::string report_to_json(const HppResult& r) {
  json j;
  j["attempts"] = r.attempts;
  j["seed"] = r.seed;
  j["found"] = r.witness.has_value();
  if (r.witness) {
    json z = json::array();
    for (const auto& x : *r.witness) z.push_back({x.real(), x.imag()});
    j["witness"] = z;
    j["residual"] = r.residual;
  }
  return j.dump();
}

}  // namespace cmpoly
