#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace xxrelay {

// scientific notation with 12 significant digits, locale-independent
std::string csv_number(double x);
std::string csv_integer(long long x);

// Deterministic CSV writer: one header line, '\n' endings, fixed column
// order, every float formatted by csv_number.
class CsvFile {
public:
    CsvFile(const std::filesystem::path& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& cells);

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
    size_t columns_;
};

}  // namespace xxrelay
