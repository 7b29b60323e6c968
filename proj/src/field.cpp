#include "nlslab/field.hpp"

#include <cmath>

#include "nlslab/errors.hpp"
#include "nlslab/fft.hpp"

namespace nlslab {

namespace {
void check_size(const GridSpec& grid, std::size_t n, const char* what) {
    if (n != grid.num_modes())
        throw ConfigError(std::string(what) + ": sample count does not match grid");
}
void check_finite(std::span<const Complex> v, const char* what) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NumericalError(std::string(what) + ": non-finite sample");
}
} // namespace

Field Field::from_physical(const GridSpec& grid, std::vector<Complex> phys) {
    check_size(grid, phys.size(), "Field::from_physical");
    check_finite(phys, "Field::from_physical");
    std::vector<Complex> spec = forward_transform(grid, phys);
    return Field(grid, std::move(phys), std::move(spec));
}

Field Field::from_spectral(const GridSpec& grid, std::vector<Complex> spec) {
    check_size(grid, spec.size(), "Field::from_spectral");
    check_finite(spec, "Field::from_spectral");
    std::vector<Complex> phys = inverse_transform(grid, spec);
    return Field(grid, std::move(phys), std::move(spec));
}

Field Field::zero(const GridSpec& grid) {
    return Field(grid, std::vector<Complex>(grid.num_modes(), Complex{0.0, 0.0}),
                 std::vector<Complex>(grid.num_modes(), Complex{0.0, 0.0}));
}

bool Field::all_finite() const {
    for (const auto& z : phys_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

void require_same_grid(const Field& a, const Field& b, const char* where) {
    if (!(a.grid() == b.grid()))
        throw ConfigError(std::string(where) + ": fields live on different grids");
}

// Linear operations act on the spectrum (physical samples follow by the
// inverse transform), so exact spectral structure like a zeroed Nyquist slot
// survives arithmetic.
Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b, "operator+");
    std::vector<Complex> v(a.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.spec()[j] + b.spec()[j];
    return Field::from_spectral(a.grid(), std::move(v));
}

Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b, "operator-");
    std::vector<Complex> v(a.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.spec()[j] - b.spec()[j];
    return Field::from_spectral(a.grid(), std::move(v));
}

Field operator*(Complex c, const Field& f) {
    std::vector<Complex> v(f.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = c * f.spec()[j];
    return Field::from_spectral(f.grid(), std::move(v));
}

Field operator*(double c, const Field& f) { return Complex{c, 0.0} * f; }

} // namespace nlslab
