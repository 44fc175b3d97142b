#pragma once

#include <map>
#include <string>
#include <vector>

namespace aetf::cli {

/// Flat key=value file: one pair per line, '#' starts a comment, blank lines
/// ignored, whitespace around keys and values trimmed. Duplicate keys keep the
/// last value. Throws std::runtime_error on unreadable files or malformed
/// lines.
std::map<std::string, std::string> parse_config_file(const std::string& path);

std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace aetf::cli
