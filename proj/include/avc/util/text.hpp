#pragma once

#include <string>
#include <string_view>

namespace avc {

// Trims and collapses internal whitespace runs to one space; case is kept.
std::string normalize_space(std::string_view text);

// Double-quoted literal with `\"` and `\\` escapes.
std::string quote(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

bool is_identifier(std::string_view text);

}  // namespace avc
