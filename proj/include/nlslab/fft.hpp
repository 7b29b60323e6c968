#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nlslab/grid.hpp"

namespace nlslab {

// FFTW-backed transforms in the grid's convention (see grid.hpp).
// Plans are cached per size behind a mutex; execution on distinct buffers is
// thread-safe, so fields may be transformed concurrently.

/// u_hat[k] = dx * sum_j u_j e^{-i xi_k x_j}
std::vector<std::complex<double>> forward_transform(const GridSpec& grid,
                                                    std::span<const std::complex<double>> phys);

/// u_j = (1/L) * sum_k u_hat[k] e^{+i xi_k x_j}
std::vector<std::complex<double>> inverse_transform(const GridSpec& grid,
                                                    std::span<const std::complex<double>> spec);

/// In-place variants writing into `out` (must have grid.num_modes() entries,
/// distinct from `in`).
void forward_transform(const GridSpec& grid, const std::complex<double>* in,
                       std::complex<double>* out);
void inverse_transform(const GridSpec& grid, const std::complex<double>* in,
                       std::complex<double>* out);

} // namespace nlslab
