#pragma once

#include "stbc/design.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace stbc {

/// {"name", "L", "N", "K", "weights": [2K x L x N x [re, im]]}
nlohmann::json design_to_json(const LinearDesign& design);
LinearDesign design_from_json(const nlohmann::json& j);

void save_design(const LinearDesign& design, const std::filesystem::path& path);
LinearDesign load_design(const std::filesystem::path& path);

} // namespace stbc
