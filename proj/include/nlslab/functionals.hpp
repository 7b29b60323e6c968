#pragma once

#include "nlslab/field.hpp"
#include "nlslab/ground_state_params.hpp"

namespace nlslab {

// Scalar functionals of the cubic NLS  i u_t + u_xx = -|u|^2 u  and the
// nonlinear expressions they are built from.

/// F(u) = |u|^2 u. With dealias=true the cubic product is computed exactly by
/// 2x zero-padding (no wrap-around of frequency sums); the plain version is
/// the collocation (pointwise) product.
Field nonlinearity_f(const Field& u, bool dealias = false);

/// G(w, Q) = F(Q + w) - F(Q); vanishes identically at w = 0.
Field difference_g(const Field& w, const Field& qf, bool dealias = false);

/// H(u) = int 1/2 |u_x|^2 - 1/4 |u|^4 dx (spectral derivative, uniform quadrature).
double hamiltonian(const Field& u);

/// L(u) = 2 H(u) + int |u|^2 = int |u_x|^2 + |u|^2 - 1/2 |u|^4 dx.
double lyapunov(const Field& u);

/// ||theta(s,N) u||_2^2 : the amplified-mass modified energy.
double modified_energy_d(const Field& u, double s, double N);

/// L(I u) with the smoothing symbol m(s,N).
double modified_energy_i(const Field& u, double s, double N);

/// L(Q_tilde + I w): the modulation-refined modified energy, with
/// Q_tilde = e^{i theta} Q(. - x0) sampled from the ground-state cylinder.
double modified_energy_refined(const GroundStateParams& params, const Field& w, double s,
                               double N);

} // namespace nlslab
