#include "nlslab/functionals.hpp"

#include <cmath>

#include "nlslab/fft.hpp"
#include "nlslab/ground_state.hpp"
#include "nlslab/multiplier.hpp"
#include "nlslab/norms.hpp"

namespace nlslab {

namespace {

// Exact cubic product by zero-padding the spectrum to 2M, multiplying on the
// fine grid, and truncating back. Frequency sums of three in-band modes stay
// representable on the doubled lattice, so nothing wraps.
Field cubic_padded(const Field& u) {
    const GridSpec& g = u.grid();
    const std::size_t m = g.num_modes();
    GridSpec fine(2 * m, g.box_length());
    std::vector<Complex> spec_fine(2 * m, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < m; ++k) {
        const auto mode = g.mode(k);
        const std::size_t kf = mode >= 0 ? static_cast<std::size_t>(mode)
                                         : 2 * m - static_cast<std::size_t>(-mode);
        spec_fine[kf] = u.spec()[k];
    }
    std::vector<Complex> phys_fine = inverse_transform(fine, spec_fine);
    for (auto& z : phys_fine) z = std::norm(z) * z;
    std::vector<Complex> cubed = forward_transform(fine, phys_fine);
    std::vector<Complex> spec(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto mode = g.mode(k);
        const std::size_t kf = mode >= 0 ? static_cast<std::size_t>(mode)
                                         : 2 * m - static_cast<std::size_t>(-mode);
        spec[k] = cubed[kf];
    }
    return Field::from_spectral(g, std::move(spec));
}

} // namespace

Field nonlinearity_f(const Field& u, bool dealias) {
    if (dealias) return cubic_padded(u);
    std::vector<Complex> v(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        const Complex z = u.phys()[j];
        v[j] = std::norm(z) * z;
    }
    return Field::from_physical(u.grid(), std::move(v));
}

Field difference_g(const Field& w, const Field& qf, bool dealias) {
    require_same_grid(w, qf, "difference_g");
    return nonlinearity_f(qf + w, dealias) - nonlinearity_f(qf, dealias);
}

double hamiltonian(const Field& u) {
    const GridSpec& g = u.grid();
    double kinetic = 0.0;
    for (std::size_t k = 0; k < g.num_modes(); ++k) {
        const double xi = g.xi(k);
        kinetic += xi * xi * std::norm(u.spec()[k]);
    }
    kinetic /= g.box_length();
    double quartic = 0.0;
    for (const auto& z : u.phys()) {
        const double a2 = std::norm(z);
        quartic += a2 * a2;
    }
    quartic *= g.dx();
    return 0.5 * kinetic - 0.25 * quartic;
}

double lyapunov(const Field& u) { return 2.0 * hamiltonian(u) + mass(u); }

double modified_energy_d(const Field& u, double s, double N) {
    const GridSpec& g = u.grid();
    double acc = 0.0;
    for (std::size_t k = 0; k < g.num_modes(); ++k) {
        if (k == g.nyquist_index()) continue;
        const double th = theta_symbol(g.xi(k), s, N);
        acc += th * th * std::norm(u.spec()[k]);
    }
    return acc / g.box_length();
}

double modified_energy_i(const Field& u, double s, double N) {
    return lyapunov(Multiplier::smoother(s, N).apply(u));
}

double modified_energy_refined(const GroundStateParams& params, const Field& w, double s,
                               double N) {
    Field qt = sample_sigma(params, w.grid());
    Field iw = Multiplier::smoother(s, N).apply(w);
    return lyapunov(qt + iw);
}

} // namespace nlslab
