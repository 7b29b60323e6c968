#include "nlslab/solver.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "nlslab/csv.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/norms.hpp"

namespace nlslab {

namespace {

// One integrator step is a chain K(a_1) N(b_1) ... K(a_p) N(b_p) K(tail) in
// units of dt. Consecutive kinetic factors fuse, so the driver keeps a
// pending kinetic coefficient and flushes it lazily.
struct Composition {
    std::vector<std::pair<double, double>> stages; // (kinetic before, nonlinear)
    double tail;
};

Composition composition_for(int order) {
    if (order == 2) return {{{0.5, 1.0}}, 0.5};
    // Yoshida triple jump: w1 = 1/(2 - 2^{1/3}), w0 = 1 - 2 w1.
    const double w1 = 1.0 / (2.0 - std::cbrt(2.0));
    const double w0 = 1.0 - 2.0 * w1;
    return {{{0.5 * w1, w1}, {0.5 * (w1 + w0), w0}, {0.5 * (w0 + w1), w1}}, 0.5 * w1};
}

class Stepper {
  public:
    Stepper(const GridSpec& grid, const SolverConfig& cfg)
        : grid_(grid), cfg_(cfg), comp_(composition_for(cfg.order)),
          spec_(grid.num_modes()), phys_(grid.num_modes()),
          nl_sign_(cfg.sign == NlsSign::focusing ? 1.0 : -1.0) {}

    void load(const Field& u) {
        std::copy(u.spec().begin(), u.spec().end(), spec_.begin());
        pending_kin_ = 0.0;
    }

    /// Advance by n steps, leaving a pending kinetic tail unflushed.
    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [kin, nl] : comp_.stages) {
                apply_kinetic(pending_kin_ + kin);
                pending_kin_ = 0.0;
                apply_nonlinear(nl);
            }
            pending_kin_ = comp_.tail;
        }
    }

    /// Flush pending kinetic phase and materialize the state.
    Field snapshot() {
        apply_kinetic(pending_kin_);
        pending_kin_ = 0.0;
        return Field::from_spectral(grid_, spec_);
    }

  private:
    void apply_kinetic(double coeff) {
        if (coeff == 0.0) return;
        const std::vector<Complex>& table = kinetic_table(coeff);
        for (std::size_t k = 0; k < spec_.size(); ++k) spec_[k] *= table[k];
    }

    void apply_nonlinear(double coeff) {
        inverse_transform(grid_, spec_.data(), phys_.data());
        const double tau = nl_sign_ * coeff * cfg_.dt;
        for (auto& z : phys_) {
            const double ph = tau * std::norm(z);
            z *= Complex{std::cos(ph), std::sin(ph)};
        }
        forward_transform(grid_, phys_.data(), spec_.data());
    }

    const std::vector<Complex>& kinetic_table(double coeff) {
        auto it = kin_tables_.find(coeff);
        if (it != kin_tables_.end()) return it->second;
        std::vector<Complex> table(grid_.num_modes());
        for (std::size_t k = 0; k < table.size(); ++k) {
            const double xi = grid_.xi(k);
            const double ph = -xi * xi * coeff * cfg_.dt;
            table[k] = Complex{std::cos(ph), std::sin(ph)};
        }
        return kin_tables_.emplace(coeff, std::move(table)).first->second;
    }

    GridSpec grid_;
    SolverConfig cfg_;
    Composition comp_;
    std::vector<Complex> spec_, phys_;
    double nl_sign_;
    double pending_kin_ = 0.0;
    std::map<double, std::vector<Complex>> kin_tables_;
};

} // namespace

void validate(const SolverConfig& cfg, const GridSpec& grid) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
        throw ConfigError("SolverConfig: dt must be positive");
    if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end))
        throw ConfigError("SolverConfig: t_end must be nonnegative");
    if (cfg.order != 2 && cfg.order != 4)
        throw ConfigError("SolverConfig: order must be 2 or 4");
    if (cfg.record_stride < 1) throw ConfigError("SolverConfig: record_stride must be >= 1");
    const double ximax = grid.max_frequency();
    if (cfg.dt * ximax * ximax >= std::numbers::pi)
        throw ConfigError("SolverConfig: dt * max(xi)^2 = " +
                          std::to_string(cfg.dt * ximax * ximax) +
                          " exceeds the resolution bound pi");
}

Field step(const Field& u, const SolverConfig& cfg) {
    validate(cfg, u.grid());
    Stepper st(u.grid(), cfg);
    st.load(u);
    st.advance(1);
    return st.snapshot();
}

EnergyLedger evolve(const Field& u0, const SolverConfig& cfg, const ProbeSet& probes,
                    std::vector<Field>* states) {
    validate(cfg, u0.grid());
    const auto nsteps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));

    EnergyLedger ledger;
    Stepper st(u0.grid(), cfg);
    st.load(u0);

    auto record = [&](double t, const Field& u) {
        if (!u.all_finite())
            throw NumericalError("evolve: state lost finiteness at t = " + std::to_string(t));
        LedgerRow row;
        row.t = t;
        if (probes.mass) row.mass = mass(u);
        if (probes.hamiltonian) row.hamiltonian = hamiltonian(u);
        if (probes.lyapunov) row.lyapunov = lyapunov(u);
        if (probes.hs_s) row.hs = hs_norm(u, *probes.hs_s);
        if (probes.e_d) row.e_d = modified_energy_d(u, probes.e_d->first, probes.e_d->second);
        if (probes.e_i) row.e_i = modified_energy_i(u, probes.e_i->first, probes.e_i->second);
        if (probes.custom) probes.custom(t, u, row);
        if (!ledger.rows.empty() && !(t > ledger.rows.back().t))
            throw NumericalError("evolve: ledger times not strictly increasing");
        ledger.rows.push_back(row);
        if (states) states->push_back(u);
    };

    record(0.0, u0);
    std::size_t done = 0;
    while (done < nsteps) {
        const std::size_t chunk = std::min(cfg.record_stride, nsteps - done);
        st.advance(chunk);
        done += chunk;
        record(static_cast<double>(done) * cfg.dt, st.snapshot());
    }
    return ledger;
}

void EnergyLedger::write_csv(std::ostream& os) const {
    CsvWriter w(os, {"t", "mass", "H", "L", "E_D", "E_I", "hs_norm", "dist_hs", "theta", "x0",
                     "iw_h1", "res0", "res1"});
    for (const auto& r : rows)
        w.row_numeric({r.t, r.mass, r.hamiltonian, r.lyapunov, r.e_d, r.e_i, r.hs, r.dist,
                       r.theta, r.x0, r.iw_h1, r.res0, r.res1});
}

} // namespace nlslab
