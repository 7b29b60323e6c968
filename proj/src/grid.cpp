#include "nlslab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nlslab/errors.hpp"

namespace nlslab {

namespace {
bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
} // namespace

GridSpec::GridSpec(std::size_t num_modes, double box_length)
    : m_(num_modes), length_(box_length),
      two_pi_over_length_(2.0 * std::numbers::pi / box_length) {
    if (m_ < 16 || !is_power_of_two(m_))
        throw ConfigError("num_modes must be a power of two >= 16, got " + std::to_string(m_));
    if (!(box_length > 0.0) || !std::isfinite(box_length))
        throw ConfigError("box_length must be positive and finite");
}

double GridSpec::wrap(double x) const {
    double y = std::fmod(x + 0.5 * length_, length_);
    if (y < 0.0) y += length_;
    return y - 0.5 * length_;
}

} // namespace nlslab
