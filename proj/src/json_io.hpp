#pragma once

#include "json.hpp"
#include "relalg/structure.hpp"

namespace relalg::detail {

using nlohmann::json;

json structure_json(const Structure& s);
Structure structure_from_json(const json& j);

}  // namespace relalg::detail
