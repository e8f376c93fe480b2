#include "xxrelay/csv.hpp"

#include <charconv>
#include <system_error>

#include "xxrelay/errors.hpp"

namespace xxrelay {

std::string csv_number(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::scientific, 11);
    if (res.ec != std::errc())
        throw NumericalFailure("failed to format a floating-point value");
    return std::string(buf, res.ptr);
}

std::string csv_integer(long long x) {
    return std::to_string(x);
}

CsvFile::CsvFile(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary), columns_(header.size()) {
    if (!out_) throw ConfigError("cannot open output file " + path.string());
    for (size_t i = 0; i < header.size(); ++i) {
        if (i > 0) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

void CsvFile::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
        throw InvalidArgument("csv row width does not match the header of " + path_.string());
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

}  // namespace xxrelay
