#pragma once

// Schema-checking helpers shared by the JSON readers. Internal to the library.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace ccost::detail {

/// Parses with duplicate-key rejection; maps nlohmann errors to SyntaxError.
nlohmann::json parse_json(std::string_view doc);

const char* type_label(const nlohmann::json& j);

/// Requires `j` to be an object with exactly `keys`.
void expect_keys(const nlohmann::json& j, const std::string& path,
                 std::initializer_list<std::string_view> keys);

std::string get_string(const nlohmann::json& j, const std::string& path);
std::int64_t get_integer(const nlohmann::json& j, const std::string& path);
const nlohmann::json& get_array(const nlohmann::json& j, const std::string& path);
std::vector<std::string> get_string_list(const nlohmann::json& j, const std::string& path);

/// 2-space indent, UTF-8 passthrough, trailing LF.
std::string dump_canonical(const nlohmann::ordered_json& j);

}  // namespace ccost::detail
