#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace test_support {

inline std::string source_path(const std::string& rel) { return std::string(SIMPY_SOURCE_DIR) + "/" + rel; }

inline nlohmann::json load_json(const std::string& rel) {
    std::ifstream in(source_path(rel));
    return nlohmann::json::parse(in);
}

} // namespace test_support
