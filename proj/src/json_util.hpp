#pragma once

// JSON helpers shared by the library sources (not installed).

#include <json.hpp>
#include <string>
#include <string_view>

#include "cmpoly/exactalg.hpp"
#include "cmpoly/polyseries.hpp"

namespace cmpoly::detail {

using json = nlohmann::json;

json parse_json(std::string_view text);

/// {"n": .., "d": ..}; components are numbers when they fit in int64 and
/// decimal strings otherwise.
json rat_to_json(const Rat& r);
/// Accepts {"n","d"} (numbers or strings), an integer, or a "p/q" string.
Rat rat_from_json(const json& j);

json cyc6_to_json(const Cyc6& z);
Cyc6 cyc6_from_json(const json& j);

json exponent_to_json(const Exponent& e);

}  // namespace cmpoly::detail
