#include "cmpoly/cmpoly.h"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "cmpoly/cmengine.hpp"
#include "cmpoly/graphlib.hpp"
#include "cmpoly/laplaceverify.hpp"
#include "cmpoly/matroidlib.hpp"
#include "cmpoly/quadform.hpp"
#include "json_util.hpp"

struct cmpoly_poly {
  cmpoly::MultiPoly poly;
  std::vector<std::string> variables;
};

namespace {

using cmpoly::Error;
using cmpoly::ErrorCode;
using cmpoly::detail::json;

thread_local std::string g_last_error;
std::atomic<unsigned> g_threads{1};

cmpoly_status fail(cmpoly_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class F>
cmpoly_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return CMPOLY_OK;
  } catch (const Error& e) {
    return fail(static_cast<cmpoly_status>(static_cast<int>(e.code())), e.what());
  } catch (const json::exception& e) {
    return fail(CMPOLY_E_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CMPOLY_E_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(CMPOLY_E_INTERNAL, e.what());
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

unsigned threads_or_default(unsigned t) { return t ? t : g_threads.load(); }

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i + 1));
  return v;
}

cmpoly_poly* make(cmpoly::MultiPoly p, std::vector<std::string> vars) {
  if (vars.empty()) vars = default_names(p.nvars());
  return new cmpoly_poly{std::move(p), std::move(vars)};
}

cmpoly_poly* from_matroid(const cmpoly::RepMatroid& m) {
  if (m.is_quaternionic())
    return make(cmpoly::basis_poly_quat(std::get<cmpoly::QuatMatrix>(m.matrix())).poly, m.ground());
  return make(cmpoly::basis_poly(m), m.ground());
}

std::vector<cmpoly::Rat> rats_from_json(const json& a) {
  if (!a.is_array()) throw Error(ErrorCode::kParse, "expected an array of rationals");
  std::vector<cmpoly::Rat> v;
  for (const auto& x : a) v.push_back(cmpoly::detail::rat_from_json(x));
  return v;
}

cmpoly::RatMatrix matrix_param(const json& a) {
  if (a.is_string() && a.get<std::string>() == "I") return cmpoly::RatMatrix::identity(2);
  const json& rows = a.is_object() ? a.at("entries") : a;
  if (!rows.is_array() || rows.empty()) throw Error(ErrorCode::kParse, "A must be \"I\" or a matrix");
  cmpoly::RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw Error(ErrorCode::kParse, "ragged matrix");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = cmpoly::detail::rat_from_json(rows[r][c]);
  }
  return m;
}

std::vector<std::string> split_tags(const char* tags) {
  std::vector<std::string> out;
  if (!tags) return out;
  std::stringstream ss(tags);
  std::string t;
  while (std::getline(ss, t, ','))
    if (!t.empty()) out.push_back(t);
  return out;
}

}  // namespace

extern "C" {

const char* cmpoly_version(void) { return "0.3.0"; }

const char* cmpoly_last_error(void) { return g_last_error.c_str(); }

const char* cmpoly_status_name(cmpoly_status s) {
  switch (s) {
    case CMPOLY_OK:
      return "ok";
    case CMPOLY_E_INVALID_ARGUMENT:
      return "invalid_argument";
    case CMPOLY_E_PARSE:
      return "parse_error";
    case CMPOLY_E_DOMAIN:
      return "domain_error";
    case CMPOLY_E_RANK:
      return "rank_error";
    case CMPOLY_E_TOLERANCE:
      return "tolerance_error";
    case CMPOLY_E_LIMIT:
      return "limit_exceeded";
    case CMPOLY_E_INTERNAL:
      return "internal_error";
  }
  return "unknown";
}

void cmpoly_string_free(char* s) { std::free(s); }

void cmpoly_set_threads(unsigned threads) { g_threads = threads ? threads : 1; }
unsigned cmpoly_get_threads(void) { return g_threads.load(); }

cmpoly_status cmpoly_poly_from_json(const char* text, cmpoly_poly** out) {
  return guard([&] {
    need(text, "json");
    need(out, "out");
    std::vector<std::string> vars;
    cmpoly::MultiPoly p = cmpoly::poly_from_json(text, &vars);
    *out = make(std::move(p), std::move(vars));
  });
}

cmpoly_status cmpoly_poly_from_graph_json(const char* text, cmpoly_poly** out) {
  return guard([&] {
    need(text, "json");
    need(out, "out");
    const cmpoly::Multigraph g = cmpoly::graph_from_json(text);
    std::vector<std::string> ids;
    for (const auto& e : g.edges()) ids.push_back(e.id);
    *out = make(cmpoly::spanning_tree_poly(g), std::move(ids));
  });
}

cmpoly_status cmpoly_poly_from_graph_dot(const char* text, cmpoly_poly** out) {
  return guard([&] {
    need(text, "dot");
    need(out, "out");
    const cmpoly::Multigraph g = cmpoly::graph_from_dot(text);
    std::vector<std::string> ids;
    for (const auto& e : g.edges()) ids.push_back(e.id);
    *out = make(cmpoly::spanning_tree_poly(g), std::move(ids));
  });
}

cmpoly_status cmpoly_poly_from_matroid_json(const char* text, cmpoly_poly** out) {
  return guard([&] {
    need(text, "json");
    need(out, "out");
    *out = from_matroid(cmpoly::matroid_from_json(text));
  });
}

cmpoly_status cmpoly_poly_from_builtin(const char* name, cmpoly_poly** out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = from_matroid(cmpoly::builtin_matroid_by_name(name));
  });
}

cmpoly_status cmpoly_poly_elementary(size_t r, size_t n, cmpoly_poly** out) {
  return guard([&] {
    need(out, "out");
    if (r > n) throw Error(ErrorCode::kInvalidArgument, "need r <= n");
    *out = make(cmpoly::elementary_symmetric(r, n), {});
  });
}

void cmpoly_poly_free(cmpoly_poly* p) { delete p; }

size_t cmpoly_poly_nvars(const cmpoly_poly* p) { return p ? p->poly.nvars() : 0; }

size_t cmpoly_poly_terms(const cmpoly_poly* p) { return p ? p->poly.size() : 0; }

cmpoly_status cmpoly_poly_to_json(const cmpoly_poly* p, char** out) {
  return guard([&] {
    need(p, "poly");
    put(out, cmpoly::poly_to_json(p->poly, p->variables));
  });
}

cmpoly_status cmpoly_poly_evaluate(const cmpoly_poly* p, const char* point_json, char** out) {
  return guard([&] {
    need(p, "poly");
    need(point_json, "point");
    const auto x = rats_from_json(cmpoly::detail::parse_json(point_json));
    if (x.size() != p->poly.nvars()) throw Error(ErrorCode::kInvalidArgument, "point has wrong dimension");
    put(out, p->poly.evaluate(x).str());
  });
}

cmpoly_status cmpoly_scan(const cmpoly_poly* p, const char* beta, unsigned N, const char* grid, uint64_t seed,
                          unsigned threads, cmpoly_verdict* verdict, char** report) {
  return guard([&] {
    need(p, "poly");
    need(beta, "beta");
    const auto g = cmpoly::grid_from_spec(grid ? grid : "default", p->poly.nvars(), seed);
    cmpoly::ScanOptions o;
    o.threads = threads_or_default(threads);
    const cmpoly::CmReport r = cmpoly::cm_scan(p->poly, cmpoly::Rat::parse(beta), g, N, o);
    if (verdict) *verdict = static_cast<cmpoly_verdict>(static_cast<int>(r.verdict));
    put(report, cmpoly::report_to_json(r));
  });
}

cmpoly_status cmpoly_bisect(const cmpoly_poly* p, const char* lo, const char* hi, unsigned N, const char* grid,
                            uint64_t seed, const char* tol, const char* tags, unsigned threads, char** report) {
  return guard([&] {
    need(p, "poly");
    need(lo, "lo");
    need(hi, "hi");
    const std::string gs = grid ? grid : "default";
    const auto g = cmpoly::grid_from_spec(gs, p->poly.nvars(), seed);
    cmpoly::ScanOptions o;
    o.threads = threads_or_default(threads);
    const auto t = cmpoly::beta_bisect(p->poly, cmpoly::Rat::parse(lo), cmpoly::Rat::parse(hi), N, g,
                                       cmpoly::Rat::parse(tol ? tol : "1/8"), gs, split_tags(tags), o);
    put(report, cmpoly::report_to_json(t));
  });
}

cmpoly_status cmpoly_rayleigh(const cmpoly_poly* p, const char* beta, const char* points_json, int* holds,
                              char** report) {
  return guard([&] {
    need(p, "poly");
    need(beta, "beta");
    need(points_json, "points");
    const json a = cmpoly::detail::parse_json(points_json);
    if (!a.is_array()) throw Error(ErrorCode::kParse, "points must be an array");
    std::vector<std::vector<cmpoly::Rat>> pts;
    for (const auto& x : a) pts.push_back(rats_from_json(x));
    const auto r = cmpoly::c_rayleigh_check(p->poly, cmpoly::Rat::parse(beta), pts);
    if (holds) *holds = r.holds ? 1 : 0;
    put(report, cmpoly::report_to_json(r));
  });
}

cmpoly_status cmpoly_psd(size_t m, double beta, size_t k, uint64_t seed, size_t restarts, double* min_eig,
                         char** report) {
  return guard([&] {
    cmpoly::PsdOptions o;
    o.restarts = restarts;
    const auto r = cmpoly::semigroup_psd_test(m, beta, k, seed, o);
    if (min_eig) *min_eig = r.min_eigenvalue;
    put(report, cmpoly::report_to_json(r));
  });
}

cmpoly_status cmpoly_hpp(const cmpoly_poly* p, size_t attempts, uint64_t seed, int* found, char** report) {
  return guard([&] {
    need(p, "poly");
    const auto r = cmpoly::hpp_falsify(p->poly, attempts, seed);
    if (found) *found = r.witness ? 1 : 0;
    put(report, cmpoly::report_to_json(r));
  });
}

cmpoly_status cmpoly_classify_graph(const char* graph_json, char** report) {
  return guard([&] {
    need(graph_json, "graph");
    const auto g = cmpoly::graph_from_json(graph_json);
    json j;
    j["no_K3_minor"] = cmpoly::has_no_k3_minor(g);
    j["series_parallel"] = cmpoly::is_series_parallel(g);
    put(report, j.dump());
  });
}

cmpoly_status cmpoly_classify_quadform(const char* matrix_json, char** report) {
  return guard([&] {
    need(matrix_json, "matrix");
    const auto q = cmpoly::quadform_from_json(matrix_json);
    put(report, cmpoly::classification_to_json(q, cmpoly::quad_classify(q)));
  });
}

cmpoly_status cmpoly_classify_poly(const cmpoly_poly* p, char** report) {
  return guard([&] {
    need(p, "poly");
    const auto q = cmpoly::QuadForm::from_poly(p->poly);
    put(report, cmpoly::classification_to_json(q, cmpoly::quad_classify(q)));
  });
}

cmpoly_status cmpoly_verify(const char* formula, const char* params_json, int* passed, char** report) {
  return guard([&] {
    need(formula, "formula");
    const json prm = cmpoly::detail::parse_json(params_json ? params_json : "{}");
    if (!prm.is_object()) throw Error(ErrorCode::kParse, "params must be a JSON object");
    const std::string f = formula;
    const double beta = prm.value("beta", 1.0);
    cmpoly::QuadOptions o;
    o.seed = prm.value("seed", std::uint64_t{1});
    o.mc_samples = prm.value("samples", o.mc_samples);
    o.radial_cutoff = prm.value("cutoff", o.radial_cutoff);
    o.threads = g_threads.load();
    auto xs = [&]() {
      if (!prm.contains("x")) throw Error(ErrorCode::kInvalidArgument, "missing x");
      return prm.at("x").get<std::vector<double>>();
    };
    cmpoly::IntegralCheck c;
    if (f == "E23") {
      c = cmpoly::verify_E23(beta, xs(), prm.value("tol", 1e-5), o);
    } else if (f == "E2n") {
      const auto x = xs();
      const std::size_t n = prm.value("n", x.size());
      c = cmpoly::verify_E2n(n, beta, x, prm.value("tol", n <= 4 ? 1e-4 : 1e-2), o);
    } else if (f == "series_kernel") {
      c = cmpoly::verify_series_kernel(beta, prm.value("lambda", 1.0), prm.value("u", 1.0), prm.value("v", 1.0),
                                       prm.value("tol", 1e-5));
    } else if (f == "det_m2") {
      const auto a = matrix_param(prm.contains("A") ? prm.at("A") : json("I"));
      c = cmpoly::verify_det_integral_m2(beta, a, prm.value("tol", 1e-5), o);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown formula '" + f + "'");
    }
    if (passed) *passed = c.passed ? 1 : 0;
    json j = json::parse(cmpoly::integral_check_to_json(c, f));
    j["params"] = prm;
    put(report, j.dump());
  });
}

cmpoly_status cmpoly_gamma_omega(double alpha, size_t r, size_t d, size_t n, double* out) {
  return guard([&] {
    need(out, "out");
    *out = cmpoly::gamma_omega(alpha, r, d, n);
  });
}

cmpoly_status cmpoly_heron_kernel(double t1, double t2, double t3, double* out) {
  return guard([&] {
    need(out, "out");
    *out = cmpoly::heron_kernel(t1, t2, t3);
  });
}

}  // extern "C"
