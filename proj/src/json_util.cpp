#include "json_util.hpp"

namespace cmpoly::detail {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

namespace {

json int_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

mpz_class int_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()), 10);
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()), 10);
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const Rat r = Rat::parse(s);
    if (!r.is_integer()) throw Error(ErrorCode::kParse, "expected an integer, got '" + s + "'");
    return r.numerator();
  }
  throw Error(ErrorCode::kParse, "expected an integer in JSON, got " + j.dump());
}

}  // namespace

json rat_to_json(const Rat& r) { return json{{"n", int_to_json(r.numerator())}, {"d", int_to_json(r.denominator())}}; }

Rat rat_from_json(const json& j) {
  if (j.is_object()) {
    if (!j.contains("n")) throw Error(ErrorCode::kParse, "rational object needs an \"n\" field");
    const mpz_class n = int_from_json(j.at("n"));
    const mpz_class d = j.contains("d") ? int_from_json(j.at("d")) : mpz_class(1);
    return Rat(n, d);
  }
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  if (j.is_number_integer() || j.is_number_unsigned()) return Rat(int_from_json(j));
  throw Error(ErrorCode::kParse, "expected a rational, got " + j.dump());
}

json cyc6_to_json(const Cyc6& z) { return json{{"a", rat_to_json(z.a)}, {"b", rat_to_json(z.b)}}; }

Cyc6 cyc6_from_json(const json& j) {
  if (j.is_object() && (j.contains("a") || j.contains("b"))) {
    const Rat a = j.contains("a") ? rat_from_json(j.at("a")) : Rat(0);
    const Rat b = j.contains("b") ? rat_from_json(j.at("b")) : Rat(0);
    return {a, b};
  }
  return Cyc6(rat_from_json(j));
}

json exponent_to_json(const Exponent& e) {
  json a = json::array();
  for (auto v : e) a.push_back(v);
  return a;
}

}  // namespace cmpoly::detail
