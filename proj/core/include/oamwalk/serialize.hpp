#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace oamwalk {

// %.17g: enough digits to round-trip any double.
std::string format_double(double value);

void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace oamwalk
