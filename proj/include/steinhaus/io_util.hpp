#pragma once

#include <string>

namespace steinhaus {

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

/// Write via a temp file in the same directory + rename.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace steinhaus
