// cmpoly command-line front end. Exit codes: 0 success / nonnegative up to N,
// 1 a negative witness or failed check, 2 inconclusive or error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cmpoly/cmpoly.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

struct CliError {
  std::string message;
};

struct PolyDeleter {
  void operator()(cmpoly_poly* p) const { cmpoly_poly_free(p); }
};
using PolyPtr = std::unique_ptr<cmpoly_poly, PolyDeleter>;

struct Owned {
  char* s = nullptr;
  ~Owned() { cmpoly_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

void check(cmpoly_status st) {
  if (st != CMPOLY_OK)
    throw CliError{std::string(cmpoly_status_name(st)) + ": " + cmpoly_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CliError{"cannot open " + path};
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Source {
  std::string graph, matroid, builtin, poly;
  std::vector<std::size_t> ern;

  void add(CLI::App* app) {
    app->add_option("--graph", graph, "graph JSON file (or .dot)");
    app->add_option("--matroid", matroid, "matroid JSON file");
    app->add_option("--builtin", builtin, "builtin matroid: K_p:<p>, K<p>, U24, AG23, E26_QUAT");
    app->add_option("--ern", ern, "elementary symmetric polynomial E_{r,n}")->expected(2);
    app->add_option("--poly", poly, "polynomial JSON file");
  }

  ordered_json echo() const {
    ordered_json j;
    if (!graph.empty()) j["graph"] = graph;
    if (!matroid.empty()) j["matroid"] = matroid;
    if (!builtin.empty()) j["builtin"] = builtin;
    if (!ern.empty()) j["ern"] = ern;
    if (!poly.empty()) j["poly"] = poly;
    return j;
  }

  PolyPtr load() const {
    const int given = !graph.empty() + !matroid.empty() + !builtin.empty() + !ern.empty() + !poly.empty();
    if (given != 1) throw CliError{"give exactly one of --graph, --matroid, --builtin, --ern, --poly"};
    cmpoly_poly* p = nullptr;
    if (!graph.empty()) {
      const std::string text = read_file(graph);
      if (graph.size() > 4 && graph.substr(graph.size() - 4) == ".dot")
        check(cmpoly_poly_from_graph_dot(text.c_str(), &p));
      else
        check(cmpoly_poly_from_graph_json(text.c_str(), &p));
    } else if (!matroid.empty()) {
      check(cmpoly_poly_from_matroid_json(read_file(matroid).c_str(), &p));
    } else if (!builtin.empty()) {
      check(cmpoly_poly_from_builtin(builtin.c_str(), &p));
    } else if (!ern.empty()) {
      check(cmpoly_poly_elementary(ern[0], ern[1], &p));
    } else {
      check(cmpoly_poly_from_json(read_file(poly).c_str(), &p));
    }
    return PolyPtr(p);
  }
};

std::string out_path;

void write_text(const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw CliError{"cannot write " + out_path};
    f << text;
  }
}

void emit(const ordered_json& config, const std::string& report_json) {
  ordered_json j;
  j["config"] = config;
  j["report"] = ordered_json::parse(report_json);
  write_text(j.dump(2) + "\n");
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    double d = 0;
    try {
      d = std::stod(tok, &pos);
    } catch (const std::exception&) {
      throw CliError{"not a number: '" + tok + "'"};
    }
    if (pos != tok.size()) throw CliError{"not a number: '" + tok + "'"};
    v.push_back(d);
  }
  return v;
}

ordered_json rat_list(const std::string& s) {
  ordered_json a = ordered_json::array();
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) a.push_back(tok);
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmpoly: complete-monotonicity evidence for combinatorial polynomials"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(cmpoly_version()));
  unsigned threads = 1;
  app.add_option("--threads", threads, "worker threads")->capture_default_str();
  app.add_option("--out", out_path, "write the report here instead of stdout");

  int exit_code = kExitOk;
  std::function<void()> action;

  // build
  auto* build = app.add_subcommand("build", "construct a polynomial and write Polynomial JSON");
  Source build_src;
  build_src.add(build);
  build->callback([&] {
    action = [&] {
      PolyPtr p = build_src.load();
      Owned j;
      check(cmpoly_poly_to_json(p.get(), &j.s));
      ordered_json poly = ordered_json::parse(j.str());
      poly["source"] = build_src.echo();
      write_text(poly.dump(2) + "\n");
    };
  });

  // check
  auto* chk = app.add_subcommand("check", "scan Taylor coefficients of P(c - y)^(-beta)");
  Source chk_src;
  chk_src.add(chk);
  std::string beta = "1";
  unsigned N = 10;
  std::string grid = "default";
  std::uint64_t seed = 1;
  chk->add_option("--beta", beta, "exponent p/q (exact)")->required();
  chk->add_option("--N", N, "truncation order")->capture_default_str();
  chk->add_option("--grid", grid, "default | extended | ones | file:PATH")->capture_default_str();
  chk->add_option("--seed", seed, "grid seed")->capture_default_str();
  chk->callback([&] {
    action = [&] {
      PolyPtr p = chk_src.load();
      cmpoly_verdict v{};
      Owned r;
      check(cmpoly_scan(p.get(), beta.c_str(), N, grid.c_str(), seed, threads, &v, &r.s));
      emit({{"command", "check"},
            {"source", chk_src.echo()},
            {"beta", beta},
            {"N", N},
            {"grid", grid},
            {"seed", seed},
            {"threads", threads}},
           r.str());
      exit_code = v == CMPOLY_NONNEGATIVE_UP_TO ? kExitOk : v == CMPOLY_NEGATIVE_FOUND ? kExitNegative : kExitError;
    };
  });

  // bisect
  auto* bis = app.add_subcommand("bisect", "bracket the exponent threshold by bisection");
  Source bis_src;
  bis_src.add(bis);
  std::string lo, hi, btol = "1/8", tags;
  unsigned bN = 20;
  std::string bgrid = "default";
  std::uint64_t bseed = 1;
  bis->add_option("--lo", lo, "lower endpoint (must show a negative coefficient)")->required();
  bis->add_option("--hi", hi, "upper endpoint (must scan nonnegative)")->required();
  bis->add_option("--N", bN)->capture_default_str();
  bis->add_option("--grid", bgrid)->capture_default_str();
  bis->add_option("--seed", bseed)->capture_default_str();
  bis->add_option("--tol", btol, "bracket width p/q")->capture_default_str();
  bis->add_option("--tag", tags, "comma-separated report tags");
  bis->callback([&] {
    action = [&] {
      PolyPtr p = bis_src.load();
      Owned r;
      check(cmpoly_bisect(p.get(), lo.c_str(), hi.c_str(), bN, bgrid.c_str(), bseed, btol.c_str(), tags.c_str(),
                          threads, &r.s));
      emit({{"command", "bisect"},
            {"source", bis_src.echo()},
            {"lo", lo},
            {"hi", hi},
            {"N", bN},
            {"grid", bgrid},
            {"seed", bseed},
            {"tol", btol},
            {"tags", tags}},
           r.str());
    };
  });

  // classify
  auto* cls = app.add_subcommand("classify", "graph minor classes or quadratic-form exponent set");
  std::string cgraph, cquad, cpoly;
  std::size_t ce2n = 0;
  cls->add_option("--graph", cgraph, "graph JSON file");
  cls->add_option("--quadform", cquad, "symmetric matrix JSON file");
  cls->add_option("--e2n", ce2n, "the quadratic form E_{2,n}");
  cls->add_option("--poly", cpoly, "homogeneous quadratic polynomial JSON file");
  cls->callback([&] {
    action = [&] {
      Owned r;
      ordered_json cfg{{"command", "classify"}};
      const int given = !cgraph.empty() + !cquad.empty() + (ce2n != 0) + !cpoly.empty();
      if (given != 1) throw CliError{"give exactly one of --graph, --quadform, --e2n, --poly"};
      if (!cgraph.empty()) {
        cfg["graph"] = cgraph;
        check(cmpoly_classify_graph(read_file(cgraph).c_str(), &r.s));
      } else if (!cquad.empty()) {
        cfg["quadform"] = cquad;
        check(cmpoly_classify_quadform(read_file(cquad).c_str(), &r.s));
      } else {
        cmpoly_poly* raw = nullptr;
        if (ce2n) {
          cfg["e2n"] = ce2n;
          check(cmpoly_poly_elementary(2, ce2n, &raw));
        } else {
          cfg["poly"] = cpoly;
          check(cmpoly_poly_from_json(read_file(cpoly).c_str(), &raw));
        }
        PolyPtr p(raw);
        check(cmpoly_classify_poly(p.get(), &r.s));
      }
      emit(cfg, r.str());
    };
  });

  // verify
  auto* ver = app.add_subcommand("verify", "numerically verify a Laplace-transform identity");
  std::string formula, vx, vA;
  double vbeta = 1, lambda = 1, u = 1, v = 1;
  std::optional<double> vtol, cutoff;
  std::size_t vn = 0, samples = 1 << 18;
  std::uint64_t vseed = 1;
  bool csv = false;
  ver->add_option("formula", formula, "E23 | E2n | series_kernel | det_m2")->required();
  ver->add_option("--beta", vbeta)->capture_default_str();
  ver->add_option("--x", vx, "comma-separated point");
  ver->add_option("--n", vn, "dimension for E2n (default: length of x)");
  ver->add_option("--lambda", lambda)->capture_default_str();
  ver->add_option("--u", u)->capture_default_str();
  ver->add_option("--v", v)->capture_default_str();
  ver->add_option("--A", vA, "I or rows separated by ';', e.g. 2,1;1,2");
  ver->add_option("--tol", vtol, "relative tolerance");
  ver->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
  ver->add_option("--seed", vseed)->capture_default_str();
  ver->add_option("--cutoff", cutoff, "radial cutoff (default: exact radial integral)");
  ver->add_flag("--csv", csv, "emit a CSV row instead of JSON");
  ver->callback([&] {
    action = [&] {
      ordered_json prm{{"beta", vbeta}};
      if (!vx.empty()) prm["x"] = parse_doubles(vx);
      if (vn) prm["n"] = vn;
      if (formula == "series_kernel") {
        prm["lambda"] = lambda;
        prm["u"] = u;
        prm["v"] = v;
      }
      if (formula == "det_m2") {
        if (vA.empty() || vA == "I") {
          prm["A"] = "I";
        } else {
          ordered_json rows = ordered_json::array();
          std::stringstream ss(vA);
          std::string row;
          while (std::getline(ss, row, ';')) rows.push_back(rat_list(row));
          prm["A"] = rows;
        }
      }
      if (vtol) prm["tol"] = *vtol;
      if (formula == "E2n") {
        prm["samples"] = samples;
        prm["seed"] = vseed;
      }
      if (cutoff) prm["cutoff"] = *cutoff;
      int passed = 0;
      Owned r;
      check(cmpoly_verify(formula.c_str(), prm.dump().c_str(), &passed, &r.s));
      exit_code = passed ? kExitOk : kExitNegative;
      if (csv) {
        const auto j = ordered_json::parse(r.str());
        std::ostringstream os;
        os.precision(17);
        os << "formula,params,lhs,rhs,rel_err,method,samples_or_cells,error_estimate,passed\n";
        std::string pj = prm.dump();
        for (auto& c : pj)
          if (c == '"') c = '\'';
        os << formula << ",\"" << pj << "\"," << j["lhs"].get<double>() << ',' << j["rhs"].get<double>() << ','
           << j["rel_err"].get<double>() << ',' << j["method"].get<std::string>() << ','
           << j["samples_or_cells"].get<std::size_t>() << ',' << j["error_estimate"].get<double>() << ','
           << (passed ? "true" : "false") << '\n';
        write_text(os.str());
        return;
      }
      emit({{"command", "verify"}, {"formula", formula}, {"params", prm}}, r.str());
    };
  });

  // psd
  auto* psd = app.add_subcommand("psd", "semigroup positive-definiteness sampling of det^(-beta)");
  std::size_t m = 2, k = 6, restarts = 100;
  double pbeta = 0.5;
  std::uint64_t pseed = 1;
  psd->add_option("--m", m, "matrix size")->capture_default_str();
  psd->add_option("--beta", pbeta)->capture_default_str();
  psd->add_option("--k", k, "sample points per restart")->capture_default_str();
  psd->add_option("--restarts", restarts)->capture_default_str();
  psd->add_option("--seed", pseed)->capture_default_str();
  psd->callback([&] {
    action = [&] {
      double me = 0;
      Owned r;
      check(cmpoly_psd(m, pbeta, k, pseed, restarts, &me, &r.s));
      emit({{"command", "psd"}, {"m", m}, {"beta", pbeta}, {"k", k}, {"restarts", restarts}, {"seed", pseed}},
           r.str());
      exit_code = me < -1e-6 ? kExitNegative : kExitOk;
    };
  });

  // rayleigh
  auto* ray = app.add_subcommand("rayleigh", "exact C-Rayleigh inequality check");
  Source ray_src;
  ray_src.add(ray);
  std::string rbeta;
  std::vector<std::string> points;
  ray->add_option("--beta", rbeta, "exponent p/q")->required();
  ray->add_option("--point", points, "comma-separated positive rationals (repeatable)")->required();
  ray->callback([&] {
    action = [&] {
      PolyPtr p = ray_src.load();
      ordered_json pts = ordered_json::array();
      for (const auto& s : points) pts.push_back(rat_list(s));
      int holds = 0;
      Owned r;
      check(cmpoly_rayleigh(p.get(), rbeta.c_str(), pts.dump().c_str(), &holds, &r.s));
      emit({{"command", "rayleigh"}, {"source", ray_src.echo()}, {"beta", rbeta}, {"points", pts}}, r.str());
      exit_code = holds ? kExitOk : kExitNegative;
    };
  });

  // hpp
  auto* hpp = app.add_subcommand("hpp", "search for a zero with all real parts positive");
  Source hpp_src;
  hpp_src.add(hpp);
  std::size_t attempts = 200;
  std::uint64_t hseed = 1;
  hpp->add_option("--attempts", attempts)->capture_default_str();
  hpp->add_option("--seed", hseed)->capture_default_str();
  hpp->callback([&] {
    action = [&] {
      PolyPtr p = hpp_src.load();
      int found = 0;
      Owned r;
      check(cmpoly_hpp(p.get(), attempts, hseed, &found, &r.s));
      emit({{"command", "hpp"}, {"source", hpp_src.echo()}, {"attempts", attempts}, {"seed", hseed}}, r.str());
      exit_code = found ? kExitNegative : kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }
  cmpoly_set_threads(threads);
  try {
    if (action) action();
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return exit_code;
}
