#include "nlslab/multiplier.hpp"

#include <cmath>
#include <string>

#include "nlslab/errors.hpp"

namespace nlslab {

namespace {

double smoothstep5(double l) { return ((6.0 * l - 15.0) * l + 10.0) * l * l * l; }

void check_symbol_params(double s, double N, const char* what) {
    if (!(s >= 0.0 && s < 1.0))
        throw ConfigError(std::string(what) + ": s must lie in [0,1), got " + std::to_string(s));
    if (!(N >= 1.0))
        throw ConfigError(std::string(what) + ": N must be >= 1, got " + std::to_string(N));
}

} // namespace

double blended_power_symbol(double xi, double e, double N) {
    const double a = std::abs(xi);
    if (a <= N) return 1.0;
    const double r = a / N;
    if (a >= 2.0 * N) return std::pow(r, e);
    const double lam = std::log2(r);
    return std::pow(r, e * smoothstep5(lam));
}

double theta_symbol(double xi, double s, double N) { return blended_power_symbol(xi, s, N); }

double m_symbol(double xi, double s, double N) { return blended_power_symbol(xi, s - 1.0, N); }

Multiplier Multiplier::identity() { return Multiplier(MultiplierKind::identity, 0.0, 1.0); }

Multiplier Multiplier::theta(double s, double N) {
    check_symbol_params(s, N, "Multiplier::theta");
    return Multiplier(MultiplierKind::theta, s, N);
}

Multiplier Multiplier::smoother(double s, double N) {
    check_symbol_params(s, N, "Multiplier::smoother");
    return Multiplier(MultiplierKind::smoother, s, N);
}

Multiplier Multiplier::derivative() { return Multiplier(MultiplierKind::derivative, 0.0, 1.0); }

Multiplier Multiplier::bracket_power(double s) {
    if (!(s >= -2.0 && s <= 3.0))
        throw ConfigError("Multiplier::bracket_power: s out of supported range [-2,3]");
    return Multiplier(MultiplierKind::bracket_power, s, 1.0);
}

Multiplier Multiplier::custom(std::vector<Complex> table, const GridSpec& grid) {
    if (table.size() != grid.num_modes())
        throw ConfigError("Multiplier::custom: table size does not match grid");
    Multiplier m(MultiplierKind::custom, 0.0, 1.0);
    m.table_ = std::move(table);
    m.table_modes_ = grid.num_modes();
    return m;
}

Complex Multiplier::symbol(double xi) const {
    switch (kind_) {
        case MultiplierKind::identity: return {1.0, 0.0};
        case MultiplierKind::theta: return {theta_symbol(xi, s_, cutoff_), 0.0};
        case MultiplierKind::smoother: return {m_symbol(xi, s_, cutoff_), 0.0};
        case MultiplierKind::derivative: return {0.0, xi};
        case MultiplierKind::bracket_power: return {std::pow(1.0 + std::abs(xi), s_), 0.0};
        case MultiplierKind::custom:
            throw ConfigError("Multiplier::symbol: custom tables are lattice-bound; use sample()");
    }
    return {0.0, 0.0};
}

std::vector<Complex> Multiplier::sample(const GridSpec& grid) const {
    std::vector<Complex> out(grid.num_modes());
    if (kind_ == MultiplierKind::custom) {
        if (table_modes_ != grid.num_modes())
            throw ConfigError("Multiplier::sample: custom table bound to a different grid");
        out = table_;
    } else {
        for (std::size_t k = 0; k < grid.num_modes(); ++k) out[k] = symbol(grid.xi(k));
    }
    out[grid.nyquist_index()] = {0.0, 0.0};
    return out;
}

Field Multiplier::apply(const Field& f) const {
    const GridSpec& grid = f.grid();
    std::vector<Complex> sym = sample(grid);
    std::vector<Complex> spec(grid.num_modes());
    for (std::size_t k = 0; k < grid.num_modes(); ++k) spec[k] = sym[k] * f.spec()[k];
    return Field::from_spectral(grid, std::move(spec));
}

Field spectral_derivative(const Field& f) { return Multiplier::derivative().apply(f); }

Field spectral_second_derivative(const Field& f) {
    const GridSpec& grid = f.grid();
    std::vector<Complex> spec(grid.num_modes());
    for (std::size_t k = 0; k < grid.num_modes(); ++k) {
        double xi = grid.xi(k);
        spec[k] = -xi * xi * f.spec()[k];
    }
    spec[grid.nyquist_index()] = {0.0, 0.0};
    return Field::from_spectral(grid, std::move(spec));
}

} // namespace nlslab
