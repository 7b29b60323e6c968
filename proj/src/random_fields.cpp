#include "nlslab/random_fields.hpp"

#include <cmath>
#include <numbers>

#include "nlslab/norms.hpp"

namespace nlslab {

double Rng::uniform() {
    // 53-bit mantissa from the top of the 64-bit word.
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 mix of master ^ golden-ratio-spaced index
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Field rough_field(const GridSpec& grid, double decay, Rng& rng) {
    const std::size_t n = grid.num_modes();
    std::vector<Complex> spec(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double mag = std::pow(1.0 + std::abs(grid.xi(k)), -decay) * std::abs(rng.gaussian());
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        spec[k] = mag * Complex{std::cos(phase), std::sin(phase)};
    }
    spec[grid.nyquist_index()] = {0.0, 0.0};
    return Field::from_spectral(grid, std::move(spec));
}

namespace {
Field normalized_rough(const GridSpec& grid, double decay, double norm_s, double amplitude,
                       std::uint64_t seed) {
    Rng rng(seed);
    Field f = rough_field(grid, decay, rng);
    const double n = hs_norm(f, norm_s);
    return (amplitude / n) * f;
}
} // namespace

Field rough_hs_data(const GridSpec& grid, double s, double amplitude, std::uint64_t seed) {
    return normalized_rough(grid, s + 0.51, s, amplitude, seed);
}

Field rough_h1_data(const GridSpec& grid, double amplitude, std::uint64_t seed) {
    return normalized_rough(grid, 1.7, 1.0, amplitude, seed);
}

} // namespace nlslab
