#pragma once

#include "ntrelax/mesh.hpp"

#include <map>
#include <string>
#include <vector>

namespace ntrelax {

/// Writes `content` to a sibling temp file and renames it over `path`. Throws IoError.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// 17 significant digits, enough for an exact binary round trip.
std::string format_real(double v);

struct SolutionCsv {
    std::map<std::string, std::string> meta;  // from `# key=value` lines
    std::vector<std::string> columns;         // without the leading x
    std::vector<double> x;
    std::vector<std::vector<double>> rows;    // one per cell, without x
};

/// `# key=value` lines, then `x,<names...>`, then one row per cell center.
std::string solution_csv(const SolutionField& field, const std::vector<std::string>& names,
                         const std::vector<std::pair<std::string, std::string>>& meta);
SolutionCsv parse_solution_csv(const std::string& text);

/// Line-oriented `key=value` config; `#` starts a comment. Throws std::invalid_argument on
/// malformed lines.
std::map<std::string, std::string> parse_key_values(const std::string& text);

}  // namespace ntrelax
