#pragma once

#include <json.hpp>

#include "powerstab/polyring.hpp"

namespace powerstab::detail {

using Json = nlohmann::ordered_json;

/// {"coefficients":"ZZ"|"QQ"|{"Fp":p},"base_vars":[...],"main_var":"X"}
Json ring_to_json(const Ring& ring);
Ring ring_from_json(const Json& j);

Json polys_to_json(const std::vector<Polynomial>& polys);
std::vector<Polynomial> polys_from_json(const Json& j, const Ring& ring);

}  // namespace powerstab::detail
