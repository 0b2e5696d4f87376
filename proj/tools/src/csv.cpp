#include "ptk/app/csv.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ptk::app {

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

std::string CsvTable::meta_value(const std::string& key) const {
    const std::string prefix = key + ": ";
    for (const auto& m : meta)
        if (m.compare(0, prefix.size(), prefix) == 0) return m.substr(prefix.size());
    return {};
}

std::string format_value(double v) {
    if (std::isnan(v)) return "nan";
    if (v == 0.0) v = 0.0;
    return fmt::format("{:.11e}", v);
}

std::string write_csv(const CsvTable& table) {
    std::string out;
    for (const auto& m : table.meta) out += "# " + m + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_value(row[i]);
        }
        out += "\n";
    }
    return out;
}

CsvTable read_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.meta.push_back(line.size() > 2 && line[1] == ' ' ? line.substr(2) : line.substr(1));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            t.columns = cells;
            have_header = true;
            continue;
        }
        if (cells.size() != t.columns.size())
            throw IoError(fmt::format("csv line {}: expected {} fields, got {}", lineno, t.columns.size(), cells.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (end == c.c_str() || *end != '\0')
                throw IoError(fmt::format("csv line {}: bad number '{}'", lineno, c));
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    if (!have_header) throw IoError("csv has no header line");
    return t;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + path);
    f << text;
    if (!f) throw IoError("write failed for " + path);
}

}  // namespace ptk::app
