#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "nlslab/field.hpp"

namespace nlslab {

enum class NlsSign { focusing, defocusing };

// Split-step integrator for i u_t + u_xx = -|u|^2 u (focusing; defocusing
// flips the nonlinear sign). Both substeps are exact maps:
//   kinetic    u_hat <- e^{-i xi^2 tau} u_hat
//   nonlinear  u     <- u e^{+i |u|^2 tau}   (focusing)
// so the mass is conserved to roundoff for any composition. order=2 is Strang
// (kinetic half / nonlinear / kinetic half); order=4 is the Yoshida
// triple-jump composition of the same Strang kernel. The substeps never
// filter the spectrum; dealias affects diagnostic F-evaluations only.
struct SolverConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    NlsSign sign = NlsSign::focusing;
    bool dealias = false;
    std::size_t record_stride = 1;
    int order = 2;
};

/// Throws ConfigError unless dt, t_end, order, stride are sane and the
/// per-step kinetic phase dt * max(xi)^2 stays below pi.
void validate(const SolverConfig& cfg, const GridSpec& grid);

/// One time step.
Field step(const Field& u, const SolverConfig& cfg);

struct LedgerRow {
    double t = 0.0;
    std::optional<double> mass, hamiltonian, lyapunov, e_d, e_i, hs, dist;
    std::optional<double> theta, x0, iw_h1, res0, res1;
};

struct EnergyLedger {
    std::vector<LedgerRow> rows;

    /// ledger.csv schema: t, mass, H, L, E_D, E_I, hs_norm, dist_hs, theta,
    /// x0, iw_h1, res0, res1 (empty cell for probes that were not recorded).
    void write_csv(std::ostream& os) const;
};

struct ProbeSet {
    bool mass = false;
    bool hamiltonian = false;
    bool lyapunov = false;
    std::optional<double> hs_s;                      // record hs_norm(u, s)
    std::optional<std::pair<double, double>> e_d;    // (s, N)
    std::optional<std::pair<double, double>> e_i;    // (s, N)
    /// Extra per-record hook (distance/modulation probes are attached here).
    std::function<void(double t, const Field& u, LedgerRow& row)> custom;
};

/// Iterate the stepper from u0 to t_end, evaluating probes every
/// record_stride steps (always at t=0 and t=t_end). Deterministic; throws
/// NumericalError with the offending time if the state loses finiteness.
EnergyLedger evolve(const Field& u0, const SolverConfig& cfg, const ProbeSet& probes,
                    std::vector<Field>* states = nullptr);

} // namespace nlslab
