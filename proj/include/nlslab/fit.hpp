#pragma once

#include <span>
#include <string>
#include <vector>

namespace nlslab {

/// Least-squares line through (log x, log y).
struct FitResult {
    std::string quantity;
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // rms of log-residuals
    int n_points = 0;
    double range_lo = 0.0;
    double range_hi = 0.0;
};

/// Requires positive data; with trim_ends the smallest and largest abscissa
/// are dropped (reported range still covers the fitted points).
FitResult loglog_fit(std::span<const double> x, std::span<const double> y,
                     const std::string& quantity, bool trim_ends = false);

/// fit.csv schema: quantity, slope, intercept, residual, n_points, range_lo, range_hi.
void write_fit_csv(std::ostream& os, std::span<const FitResult> fits);

} // namespace nlslab
