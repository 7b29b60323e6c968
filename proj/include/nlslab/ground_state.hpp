#pragma once

#include <array>
#include <optional>
#include <span>

#include "nlslab/field.hpp"
#include "nlslab/ground_state_params.hpp"

namespace nlslab {

// The ground state Q(x) = sqrt(2)/cosh(x), the unique positive even solution
// of Q'' + Q^3 = Q, and the cylinder Sigma = {e^{i theta} Q(. - x0)} it
// generates under the phase/translation symmetries. Reference values used in
// tests (independent quadrature of the closed forms):
//   int Q^2 = 4,  int Q^4 = 16/3,  int Q_x^2 = 4/3,
//   H(Q) = -2/3,  L(Q) = 8/3,  3 int Q^2 Q_x^2 = 16/5.

inline constexpr double kLyapunovAtQ = 8.0 / 3.0;

/// Q sampled on the grid. Requires the box wide enough that the tails are
/// below 1e-14 at the boundary.
Field eval_q(const GridSpec& grid);

/// e^{i theta} Q(. - x0), translation done by the exact spectral shift.
Field sample_sigma(const GroundStateParams& params, const GridSpec& grid);

struct CylinderFit {
    double dist = 0.0;
    GroundStateParams params;
    bool refine_hit_boundary = false;
};

/// Best fit of u by a cylinder element in the weighted spectral metric
/// ||.||_w^2 = sum_k w_k |.|^2 / L: lattice scan of the shift correlation
/// (one inverse transform) followed by golden-section refinement; the phase
/// is eliminated in closed form.
CylinderFit fit_cylinder(const Field& u, std::span<const double> weight);

/// dist_{H^s}(u, Sigma) together with the minimizing (theta, x0).
CylinderFit dist_hs(const Field& u, double s);

struct CoercivityResult {
    bool admissible = false;
    double ratio = 0.0;                     // (L(Q+w) - L(Q)) / ||w||_{H^1}^2
    std::array<double, 3> violations{};     // normalized constraint residuals
};

/// Quadratic-form probe of L near Q. Admissible directions satisfy
/// <w, i Q^3> = <w, (Q^3)_x> = 0 (the Weinstein conditions) and <w, Q> = 0
/// (mass-sphere tangency, which removes the one concave direction of the
/// second variation). Inadmissible input is rejected, not evaluated.
CoercivityResult coercivity_probe(const Field& w);

/// Project out the three constraint directions (they are mutually orthogonal
/// in the real L^2 pairing).
Field project_admissible(const Field& w);

} // namespace nlslab
