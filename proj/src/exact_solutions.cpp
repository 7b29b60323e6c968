#include "nlslab/exact_solutions.hpp"

#include <cmath>

#include "nlslab/errors.hpp"

namespace nlslab {

Field soliton_solution(const GridSpec& grid, double t) {
    const Complex rot{std::cos(t), std::sin(t)};
    std::vector<Complex> v(grid.num_modes());
    for (std::size_t j = 0; j < grid.num_modes(); ++j)
        v[j] = rot * (std::sqrt(2.0) / std::cosh(grid.x(j)));
    return Field::from_physical(grid, std::move(v));
}

Field galilean_solution(const GridSpec& grid, double eps, double t) {
    const double ratio = eps / grid.dxi();
    if (std::abs(ratio - std::round(ratio)) > 1e-12)
        throw ConfigError("galilean_solution: eps must lie on the frequency lattice");
    std::vector<Complex> v(grid.num_modes());
    for (std::size_t j = 0; j < grid.num_modes(); ++j) {
        const double x = grid.x(j);
        const double y = grid.wrap(x - 2.0 * eps * t);
        const double phase = eps * x - eps * eps * t + t;
        v[j] = Complex{std::cos(phase), std::sin(phase)} * (std::sqrt(2.0) / std::cosh(y));
    }
    return Field::from_physical(grid, std::move(v));
}

Field plane_wave_solution(const GridSpec& grid, Complex amplitude, std::int64_t mode, double t) {
    const auto half = static_cast<std::int64_t>(grid.num_modes() / 2);
    if (mode < -half || mode >= half)
        throw ConfigError("plane_wave_solution: mode not on the lattice");
    const double k = grid.dxi() * static_cast<double>(mode);
    const double omega = std::norm(amplitude) - k * k;
    std::vector<Complex> v(grid.num_modes());
    for (std::size_t j = 0; j < grid.num_modes(); ++j) {
        const double phase = k * grid.x(j) + omega * t;
        v[j] = amplitude * Complex{std::cos(phase), std::sin(phase)};
    }
    return Field::from_physical(grid, std::move(v));
}

} // namespace nlslab
