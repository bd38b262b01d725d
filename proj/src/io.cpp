#include "ntrelax/io.hpp"

#include "ntrelax/errors.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ntrelax {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double to_real(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
    return v;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp + " for writing: " + std::strerror(errno));
        out << content;
        out.flush();
        if (!out) throw IoError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        const std::string why = std::strerror(errno);
        std::remove(tmp.c_str());
        throw IoError("cannot rename " + tmp + " to " + path + ": " + why);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + ": " + std::strerror(errno));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string solution_csv(const SolutionField& field, const std::vector<std::string>& names,
                         const std::vector<std::pair<std::string, std::string>>& meta) {
    if (names.size() != field.n_comp()) throw std::invalid_argument("solution_csv: wrong number of column names");
    std::string out;
    for (const auto& [k, v] : meta) out += "# " + k + "=" + v + "\n";
    out += "x";
    for (const auto& n : names) out += "," + n;
    out += "\n";
    for (std::size_t i = 0; i < field.n_cells(); ++i) {
        out += format_real(field.grid().center(i));
        for (std::size_t k = 0; k < field.n_comp(); ++k) out += "," + format_real(field(i, k));
        out += "\n";
    }
    return out;
}

SolutionCsv parse_solution_csv(const std::string& text) {
    SolutionCsv csv;
    std::stringstream ss(text);
    std::string line;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto body = trim(line.substr(1));
            const auto eq = body.find('=');
            if (eq != std::string::npos) csv.meta[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
            continue;
        }
        auto cells = split(line, ',');
        if (!have_header) {
            if (cells.empty() || cells[0] != "x") throw std::invalid_argument("solution csv: header must start with x");
            csv.columns.assign(cells.begin() + 1, cells.end());
            have_header = true;
            continue;
        }
        if (cells.size() != csv.columns.size() + 1)
            throw std::invalid_argument("solution csv: wrong field count on line " + std::to_string(line_no));
        csv.x.push_back(to_real(cells[0]));
        std::vector<double> row;
        for (std::size_t k = 1; k < cells.size(); ++k) row.push_back(to_real(cells[k]));
        csv.rows.push_back(std::move(row));
    }
    if (!have_header) throw std::invalid_argument("solution csv: missing header");
    return csv;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

}  // namespace ntrelax
