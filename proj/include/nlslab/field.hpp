#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nlslab/grid.hpp"

namespace nlslab {

using Complex = std::complex<double>;

// Complex-valued state at one time, holding both the collocation samples and
// the spectrum (kept consistent through the transform convention of
// grid.hpp). Immutable after construction; operations return new fields.
class Field {
  public:
    static Field from_physical(const GridSpec& grid, std::vector<Complex> phys);
    static Field from_spectral(const GridSpec& grid, std::vector<Complex> spec);
    static Field zero(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    std::span<const Complex> phys() const { return phys_; }
    std::span<const Complex> spec() const { return spec_; }
    std::size_t size() const { return phys_.size(); }

    bool all_finite() const;

  private:
    Field(GridSpec grid, std::vector<Complex> phys, std::vector<Complex> spec)
        : grid_(grid), phys_(std::move(phys)), spec_(std::move(spec)) {}

    GridSpec grid_;
    std::vector<Complex> phys_;
    std::vector<Complex> spec_;
};

/// Throws ConfigError unless both fields live on the same grid.
void require_same_grid(const Field& a, const Field& b, const char* where);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(Complex c, const Field& f);
Field operator*(double c, const Field& f);

} // namespace nlslab
