#include "nlslab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "nlslab/csv.hpp"
#include "nlslab/errors.hpp"

namespace nlslab {

FitResult loglog_fit(std::span<const double> x, std::span<const double> y,
                     const std::string& quantity, bool trim_ends) {
    if (x.size() != y.size()) throw ConfigError("loglog_fit: size mismatch");
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::size_t lo = 0, hi = order.size();
    if (trim_ends && order.size() >= 4) {
        ++lo;
        --hi;
    }

    std::vector<double> lx, ly, xs;
    for (std::size_t i = lo; i < hi; ++i) {
        const double xv = x[order[i]], yv = y[order[i]];
        if (!(xv > 0.0) || !(yv > 0.0))
            throw ConfigError("loglog_fit: data must be positive for quantity " + quantity);
        lx.push_back(std::log(xv));
        ly.push_back(std::log(yv));
        xs.push_back(xv);
    }
    if (lx.size() < 2) throw ConfigError("loglog_fit: need at least two points");

    const auto n = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300) throw ConfigError("loglog_fit: degenerate abscissae");

    FitResult fit;
    fit.quantity = quantity;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    fit.n_points = static_cast<int>(lx.size());
    fit.range_lo = xs.front();
    fit.range_hi = xs.back();
    return fit;
}

void write_fit_csv(std::ostream& os, std::span<const FitResult> fits) {
    CsvWriter w(os, {"quantity", "slope", "intercept", "residual", "n_points", "range_lo",
                     "range_hi"});
    for (const auto& f : fits)
        w.row({f.quantity, fmt_double(f.slope), fmt_double(f.intercept), fmt_double(f.residual),
               std::to_string(f.n_points), fmt_double(f.range_lo), fmt_double(f.range_hi)});
}

} // namespace nlslab
