#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace spike_esn::io {

/// Writes `contents` to a sibling temp file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Splits one CSV record on commas, trimming blanks and surrounding quotes.
std::vector<std::string> split_csv_line(std::string_view line);

/// Locale-independent strict parse; returns false on trailing garbage.
bool parse_double(std::string_view text, double& out);

/// 64-bit FNV-1a of a file's bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

}  // namespace spike_esn::io
