#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/ground_state_params.hpp"

namespace nlslab {

// Decomposition u = Q_tilde + w with the I-twisted orthogonality conditions
//   <w, A * I F(Q_tilde)> = 0  for A = i, d/dx            (real pairing)
// solved by damped Newton on the exact residuals in (theta, x0), seeded at
// the minimizer of the smoothed metric d(u,v) = ||I(u-v)||_{H^1}. theta is
// the TOTAL phase of the fitted cylinder element at the sampling time (the
// e^{it} factor of the soliton ansatz is not subtracted here; trackers
// subtract it when reporting).

struct ModulationFrame {
    GroundStateParams params;
    Field w;
    double iw_h1 = 0.0;                       // ||I w||_{H^1}
    std::array<double, 2> ortho_residuals{};  // <w, i IF(Qt)>, <w, d_x IF(Qt)>
    std::optional<std::array<double, 2>> rates; // (theta_dot, x0_dot)
};

struct DecomposeResult {
    bool converged = false;
    int iterations = 0;
    std::string message;
    std::optional<ModulationFrame> frame;
};

/// Newton tolerance: residuals below 1e-12 * (1 + ||u||_2), max 50 damped
/// iterations. Inputs far from the cylinder in the d metric are rejected.
DecomposeResult decompose(const Field& u, double s, double N,
                          std::optional<GroundStateParams> seed = std::nullopt);

/// Modulation rates from the co-moving 2x2 system
///   <i(Q+w~), A_j> theta_dot - <d_x(Q+w~), A_j> x0_dot
///        = <i(w~_xx + G(w~,Q) - w~), A_j>,   A_0 = I(iQ^3), A_1 = I d_x(Q^3),
/// where w~ = e^{-i theta_total} w(. + x0). theta_dot is the rate of the
/// phase excess over e^{it}. Throws NumericalError if the 2x2 matrix has
/// condition number above 1e6.
std::array<double, 2> modulation_rates(const Field& u, const GroundStateParams& params,
                                       double s, double N);

struct ModulationTrack {
    std::vector<double> times;
    std::vector<ModulationFrame> frames;   // theta continuously unwrapped, e^{it} removed
    bool basin_exit = false;
    double first_failure_time = 0.0;
};

/// Re-decompose at each recorded state, seeding each Newton solve from the
/// previous frame; phases are unwrapped to the nearest branch.
ModulationTrack track_modulation(const std::vector<double>& times,
                                 const std::vector<Field>& states, double s, double N,
                                 bool with_rates = false);

} // namespace nlslab
