#include "nlslab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlslab/errors.hpp"

namespace nlslab {

double lp_norm(const Field& f, int p) {
    const double dx = f.grid().dx();
    switch (p) {
        case 0: {
            double m = 0.0;
            for (const auto& z : f.phys()) m = std::max(m, std::abs(z));
            return m;
        }
        case 2: {
            double acc = 0.0;
            for (const auto& z : f.phys()) acc += std::norm(z);
            return std::sqrt(dx * acc);
        }
        case 4: {
            double acc = 0.0;
            for (const auto& z : f.phys()) {
                double a2 = std::norm(z);
                acc += a2 * a2;
            }
            return std::pow(dx * acc, 0.25);
        }
        case 6: {
            double acc = 0.0;
            for (const auto& z : f.phys()) {
                double a2 = std::norm(z);
                acc += a2 * a2 * a2;
            }
            return std::pow(dx * acc, 1.0 / 6.0);
        }
        default:
            throw ConfigError("lp_norm: p must be one of {2,4,6} or 0 for sup, got " +
                              std::to_string(p));
    }
}

double l2_norm(const Field& f) { return lp_norm(f, 2); }

double mass(const Field& f) {
    double acc = 0.0;
    for (const auto& z : f.phys()) acc += std::norm(z);
    return f.grid().dx() * acc;
}

std::vector<double> hs_weight(const GridSpec& grid, double s) {
    std::vector<double> w(grid.num_modes());
    for (std::size_t k = 0; k < w.size(); ++k)
        w[k] = std::pow(1.0 + std::abs(grid.xi(k)), 2.0 * s);
    return w;
}

double hs_norm(const Field& f, double s) {
    if (!(s >= -1.0 && s <= 3.0))
        throw ConfigError("hs_norm: s must lie in [-1,3], got " + std::to_string(s));
    const GridSpec& grid = f.grid();
    double acc = 0.0;
    for (std::size_t k = 0; k < grid.num_modes(); ++k)
        acc += std::pow(1.0 + std::abs(grid.xi(k)), 2.0 * s) * std::norm(f.spec()[k]);
    return std::sqrt(acc / grid.box_length());
}

double inner_real(const Field& u, const Field& v) {
    require_same_grid(u, v, "inner_real");
    double acc = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        acc += u.phys()[j].real() * v.phys()[j].real() + u.phys()[j].imag() * v.phys()[j].imag();
    return u.grid().dx() * acc;
}

Complex inner_complex(const Field& u, const Field& v) {
    require_same_grid(u, v, "inner_complex");
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < u.size(); ++j) acc += u.phys()[j] * std::conj(v.phys()[j]);
    return u.grid().dx() * acc;
}

Complex weighted_spectral_inner(const GridSpec& grid, std::span<const double> weight,
                                std::span<const Complex> u_spec,
                                std::span<const Complex> v_spec) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < grid.num_modes(); ++k)
        acc += weight[k] * u_spec[k] * std::conj(v_spec[k]);
    return acc / grid.box_length();
}

} // namespace nlslab
