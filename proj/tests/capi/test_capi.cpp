#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <thread>

#include "cmpoly/cmpoly.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { cmpoly_string_free(p); }
  std::string s() const { return p ? p : ""; }
};

struct Poly {
  cmpoly_poly* p = nullptr;
  ~Poly() { cmpoly_poly_free(p); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(cmpoly_version()) == "0.3.0");
  CHECK(std::string(cmpoly_status_name(CMPOLY_OK)) == "ok");
  CHECK(std::string(cmpoly_status_name(CMPOLY_E_DOMAIN)) == "domain_error");
}

TEST_CASE("null handles and bad input") {
  Poly p;
  CHECK(cmpoly_poly_from_json(nullptr, &p.p) == CMPOLY_E_INVALID_ARGUMENT);
  CHECK(std::string(cmpoly_last_error()).find("null") != std::string::npos);
  CHECK(cmpoly_poly_from_json("{", &p.p) == CMPOLY_E_PARSE);
  CHECK(p.p == nullptr);
  CHECK(cmpoly_poly_from_builtin("nonsense", &p.p) == CMPOLY_E_INVALID_ARGUMENT);
  CHECK(cmpoly_poly_nvars(nullptr) == 0);
  cmpoly_poly_free(nullptr);
  cmpoly_string_free(nullptr);
  cmpoly_verdict v;
  CHECK(cmpoly_scan(nullptr, "1", 3, "default", 1, 1, &v, nullptr) == CMPOLY_E_INVALID_ARGUMENT);
}

TEST_CASE("polynomial handles") {
  Poly p;
  REQUIRE(cmpoly_poly_from_builtin("K4", &p.p) == CMPOLY_OK);
  CHECK(cmpoly_poly_nvars(p.p) == 6);
  CHECK(cmpoly_poly_terms(p.p) == 16);
  Str val;
  REQUIRE(cmpoly_poly_evaluate(p.p, "[1,1,1,1,1,1]", &val.p) == CMPOLY_OK);
  CHECK(val.s() == "16");
  CHECK(cmpoly_poly_evaluate(p.p, "[1,1]", nullptr) == CMPOLY_E_INVALID_ARGUMENT);
  Str js;
  REQUIRE(cmpoly_poly_to_json(p.p, &js.p) == CMPOLY_OK);
  Poly q;
  REQUIRE(cmpoly_poly_from_json(js.p, &q.p) == CMPOLY_OK);
  CHECK(cmpoly_poly_terms(q.p) == 16);

  Poly g;
  REQUIRE(cmpoly_poly_from_graph_dot("graph t { a -- b -- c -- a; }", &g.p) == CMPOLY_OK);
  CHECK(cmpoly_poly_terms(g.p) == 3);
  Poly e;
  REQUIRE(cmpoly_poly_elementary(2, 6, &e.p) == CMPOLY_OK);
  Poly quat;
  REQUIRE(cmpoly_poly_from_builtin("E26_QUAT", &quat.p) == CMPOLY_OK);
  Str a, b;
  cmpoly_poly_to_json(e.p, &a.p);
  cmpoly_poly_to_json(quat.p, &b.p);
  CHECK(cmpoly_poly_terms(quat.p) == 15);
}

TEST_CASE("scan and bisect") {
  Poly p;
  REQUIRE(cmpoly_poly_elementary(2, 3, &p.p) == CMPOLY_OK);
  cmpoly_verdict v = CMPOLY_INCONCLUSIVE;
  Str rep;
  REQUIRE(cmpoly_scan(p.p, "2/5", 10, "ones", 1, 0, &v, &rep.p) == CMPOLY_OK);
  CHECK(v == CMPOLY_NEGATIVE_FOUND);
  const json j = json::parse(rep.s());
  CHECK(j.at("witness").at("coefficient") == json{{"n", -2115344}, {"d", 4271484375LL}});
  CHECK(j.at("witness").at("order") == 9);
  CHECK(cmpoly_scan(p.p, "0.4", 10, "ones", 1, 0, &v, nullptr) == CMPOLY_E_PARSE);
  CHECK(cmpoly_scan(p.p, "-1", 10, "ones", 1, 0, &v, nullptr) == CMPOLY_E_DOMAIN);
  CHECK(cmpoly_scan(p.p, "1", 10, "bogus", 1, 0, &v, nullptr) == CMPOLY_E_INVALID_ARGUMENT);
  Str b;
  REQUIRE(cmpoly_bisect(p.p, "1/4", "1", 10, "ones", 1, "1/16", "smoke,conjectural", 0, &b.p) == CMPOLY_OK);
  CHECK(b.s().find("conjectural") != std::string::npos);
  CHECK(cmpoly_bisect(p.p, "1", "2", 6, "ones", 1, "1/16", nullptr, 0, nullptr) == CMPOLY_E_DOMAIN);
}

TEST_CASE("rayleigh psd hpp") {
  Poly p;
  REQUIRE(cmpoly_poly_elementary(2, 3, &p.p) == CMPOLY_OK);
  int holds = 0;
  REQUIRE(cmpoly_rayleigh(p.p, "1/2", "[[1,1,1],[1,2,\"1/3\"]]", &holds, nullptr) == CMPOLY_OK);
  CHECK(holds == 1);
  double min_eig = 0;
  Str r;
  REQUIRE(cmpoly_psd(2, 0.5, 6, 1, 10, &min_eig, &r.p) == CMPOLY_OK);
  CHECK(min_eig >= -1e-9);
  CHECK(r.s().find("\"min_eig\"") != std::string::npos);
  int found = 1;
  REQUIRE(cmpoly_hpp(p.p, 50, 1, &found, nullptr) == CMPOLY_OK);
  CHECK(found == 0);
}

TEST_CASE("classification and laplace") {
  Str g;
  REQUIRE(cmpoly_classify_graph(R"({"vertices":["a","b","c"],"edges":[{"u":"a","v":"b"},{"u":"b","v":"c"},{"u":"c","v":"a"}]})",
                                &g.p) == CMPOLY_OK);
  CHECK(json::parse(g.s()).at("no_K3_minor") == false);
  Poly e;
  REQUIRE(cmpoly_poly_elementary(2, 5, &e.p) == CMPOLY_OK);
  Str c;
  REQUIRE(cmpoly_classify_poly(e.p, &c.p) == CMPOLY_OK);
  CHECK(c.s().find("3/2") != std::string::npos);
  int passed = 0;
  Str v;
  REQUIRE(cmpoly_verify("E23", R"({"beta":1,"x":[1,2,0.5],"tol":1e-6})", &passed, &v.p) == CMPOLY_OK);
  CHECK(passed == 1);
  CHECK(cmpoly_verify("E99", "{}", &passed, nullptr) == CMPOLY_E_INVALID_ARGUMENT);
  CHECK(cmpoly_verify("E23", R"({"beta":0.2,"x":[1,1,1]})", &passed, nullptr) == CMPOLY_E_DOMAIN);
  double out = 0;
  REQUIRE(cmpoly_heron_kernel(1, 1, 1, &out) == CMPOLY_OK);
  CHECK(out == doctest::Approx(3));
  CHECK(cmpoly_gamma_omega(1, 2, 2, 4, &out) == CMPOLY_E_DOMAIN);
}

TEST_CASE("last error is per thread") {
  Poly p;
  CHECK(cmpoly_poly_from_json("{", &p.p) == CMPOLY_E_PARSE);
  const std::string mine = cmpoly_last_error();
  std::thread t([] {
    cmpoly_poly* q = nullptr;
    cmpoly_poly_from_builtin("nonsense", &q);
  });
  t.join();
  CHECK(std::string(cmpoly_last_error()) == mine);
}

TEST_CASE("thread defaults") {
  const unsigned old = cmpoly_get_threads();
  cmpoly_set_threads(3);
  CHECK(cmpoly_get_threads() == 3);
  cmpoly_set_threads(0);
  CHECK(cmpoly_get_threads() == 1);
  cmpoly_set_threads(old);
}
