#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nlslab {

/// Shortest round-trippable decimal form of x ("%.17g" trimmed); identical
/// input bits give identical text, so reruns are byte-stable.
std::string fmt_double(double x);

/// Minimal deterministic CSV emitter: header on construction, then rows.
class CsvWriter {
  public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& columns);

    void row(const std::vector<std::string>& cells);
    void row_numeric(const std::vector<std::optional<double>>& cells);

  private:
    std::ostream& os_;
    std::size_t width_;
};

} // namespace nlslab
