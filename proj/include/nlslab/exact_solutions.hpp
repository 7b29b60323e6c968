#pragma once

#include "nlslab/field.hpp"

namespace nlslab {

// Closed-form focusing solutions used as regression oracles.

/// e^{it} Q(x).
Field soliton_solution(const GridSpec& grid, double t);

/// Galilean-boosted soliton e^{i(eps x - eps^2 t)} e^{it} Q(x - 2 eps t).
/// eps must lie on the frequency lattice so the phase is box-periodic.
Field galilean_solution(const GridSpec& grid, double eps, double t);

/// A e^{i(xi_k x + (|A|^2 - xi_k^2) t)} for lattice mode k.
Field plane_wave_solution(const GridSpec& grid, Complex amplitude, std::int64_t mode, double t);

} // namespace nlslab
