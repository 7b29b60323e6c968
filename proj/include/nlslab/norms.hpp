#pragma once

#include <complex>
#include <span>

#include "nlslab/field.hpp"

namespace nlslab {

// Norms and pairings. Physical-side integrals use the uniform-weight
// quadrature dx*sum (trapezoid = rectangle on a periodic grid); spectral-side
// sums carry the 1/L Parseval weight. The Sobolev weight is <xi> = 1 + |xi|.

/// L^p norm for p in {2,4,6} or p = 0 meaning the sup norm.
double lp_norm(const Field& f, int p);
double l2_norm(const Field& f);
/// ||f||_2^2 (the mass).
double mass(const Field& f);

/// H^s norm, weight (1+|xi|)^{2s}; s restricted to [-1, 3].
double hs_norm(const Field& f, double s);

/// Real L^2 pairing <u,v> = Re int u conj(v) dx.
double inner_real(const Field& u, const Field& v);
/// Complex L^2 pairing int u conj(v) dx.
Complex inner_complex(const Field& u, const Field& v);

/// Weighted spectral pairing sum_k w_k u_hat_k conj(v_hat_k) / L.
Complex weighted_spectral_inner(const GridSpec& grid, std::span<const double> weight,
                                std::span<const Complex> u_spec,
                                std::span<const Complex> v_spec);

/// H^s weight table (1+|xi_k|)^{2s} on the grid lattice.
std::vector<double> hs_weight(const GridSpec& grid, double s);

} // namespace nlslab
