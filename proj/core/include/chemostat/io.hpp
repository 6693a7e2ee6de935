#pragma once

#include <map>
#include <string>
#include <vector>

namespace chemostat {

/// Shortest round-trip decimal representation (std::to_chars), so emitted
/// CSV re-parses to bit-identical doubles.
std::string format_double(double v);

/// Flat key-value config: one `key = value` (or `key value`) pair per line,
/// `#` comments, blank lines ignored. Keys are lower-cased.
std::map<std::string, std::string> parse_config(const std::string& text);
std::map<std::string, std::string> load_config(const std::string& path);

/// Parse one CSV line into fields (no quoting; our emitters never quote).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace chemostat
