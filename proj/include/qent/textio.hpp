#pragma once

#include <string>
#include <vector>

namespace qent {

// Shortest round-trip decimal form of a double; used everywhere we emit
// numbers so that artifacts are byte-stable and parse back exactly.
std::string fmt_double(double v);

double parse_double(const std::string& s);

std::vector<std::string> split(const std::string& s, char sep);
std::string join(const std::vector<double>& values, char sep);

}  // namespace qent
