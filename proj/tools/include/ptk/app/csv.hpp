#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ptk::app {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CsvTable {
    std::vector<std::string> meta;  // header lines without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    // index of a column, or -1
    int column(const std::string& name) const;
    std::string meta_value(const std::string& key) const;
};

// 12 significant digits, "nan" for NaN, negative zero printed as zero
std::string format_value(double v);

std::string write_csv(const CsvTable& table);
CsvTable read_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace ptk::app
