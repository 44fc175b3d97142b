#pragma once

#include <string>
#include <vector>

namespace aetf::cli {

/// Shortest round-trip decimal; infinities as "inf"/"-inf", NaN as "nan".
std::string format_double(double v);

std::string join_row(const std::vector<std::string>& cells);

/// Writes content to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace aetf::cli
