#include "nlslab/csv.hpp"

#include <cstdio>

#include "nlslab/errors.hpp"

namespace nlslab {

std::string fmt_double(double x) {
    char buf[40];
    // Try increasing precision until the value round-trips exactly.
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == x) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& columns)
    : os_(os), width_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) os_ << ',';
        os_ << columns[i];
    }
    os_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw ConfigError("CsvWriter: row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os_ << ',';
        os_ << cells[i];
    }
    os_ << '\n';
}

void CsvWriter::row_numeric(const std::vector<std::optional<double>>& cells) {
    if (cells.size() != width_) throw ConfigError("CsvWriter: row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os_ << ',';
        if (cells[i]) os_ << fmt_double(*cells[i]);
    }
    os_ << '\n';
}

} // namespace nlslab
