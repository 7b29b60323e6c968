#pragma once

#include <cstdint>
#include <random>

#include "nlslab/field.hpp"

namespace nlslab {

// Deterministic random data. Distributions are hand-rolled on top of
// mt19937_64 so that identical seeds give identical streams on every
// platform (std::normal_distribution is implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [a, b).
    double uniform(double a, double b);
    /// Standard normal via Box-Muller.
    double gaussian();
    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Derive an independent stream seed from a master seed and an index.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index);

/// Random field with |u_hat(xi)| proportional to (1+|xi|)^{-decay} times a
/// half-normal draw, uniform phases, Nyquist zeroed. No normalization.
Field rough_field(const GridSpec& grid, double decay, Rng& rng);

/// Rough H^s-type data: decay s + 0.51, rescaled so hs_norm(u, s) = amplitude.
Field rough_hs_data(const GridSpec& grid, double s, double amplitude, std::uint64_t seed);

/// Perturbation with finite H^1 norm (spectral decay 1.7), rescaled so
/// hs_norm(u, 1) = amplitude.
Field rough_h1_data(const GridSpec& grid, double amplitude, std::uint64_t seed);

} // namespace nlslab
