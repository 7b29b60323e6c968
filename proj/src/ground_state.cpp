#include "nlslab/ground_state.hpp"

#include <cmath>
#include <numbers>

#include "nlslab/errors.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/multiplier.hpp"
#include "nlslab/norms.hpp"

namespace nlslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

// Shift correlation c(x0) = (1/L) sum_k h_k e^{+i xi_k x0} evaluated off the
// lattice by direct summation.
Complex correlation_at(const GridSpec& grid, std::span<const Complex> h, double x0) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < grid.num_modes(); ++k) {
        const double ph = grid.xi(k) * x0;
        acc += h[k] * Complex{std::cos(ph), std::sin(ph)};
    }
    return acc / grid.box_length();
}

} // namespace

Field eval_q(const GridSpec& grid) {
    const double half = 0.5 * grid.box_length();
    if (std::sqrt(2.0) / std::cosh(half) >= 1e-14)
        throw ConfigError("eval_q: box too small, ground-state tails exceed 1e-14 at the edge");
    std::vector<Complex> v(grid.num_modes());
    for (std::size_t j = 0; j < grid.num_modes(); ++j)
        v[j] = Complex{std::sqrt(2.0) / std::cosh(grid.x(j)), 0.0};
    return Field::from_physical(grid, std::move(v));
}

Field sample_sigma(const GroundStateParams& params, const GridSpec& grid) {
    Field q = eval_q(grid);
    const Complex rot{std::cos(params.theta), std::sin(params.theta)};
    std::vector<Complex> spec(grid.num_modes());
    for (std::size_t k = 0; k < grid.num_modes(); ++k) {
        const double ph = -grid.xi(k) * params.x0;
        spec[k] = rot * Complex{std::cos(ph), std::sin(ph)} * q.spec()[k];
    }
    return Field::from_spectral(grid, std::move(spec));
}

CylinderFit fit_cylinder(const Field& u, std::span<const double> weight) {
    const GridSpec& grid = u.grid();
    Field q = eval_q(grid);

    double nu2 = 0.0, nq2 = 0.0;
    std::vector<Complex> h(grid.num_modes());
    for (std::size_t k = 0; k < grid.num_modes(); ++k) {
        nu2 += weight[k] * std::norm(u.spec()[k]);
        nq2 += weight[k] * std::norm(q.spec()[k]);
        h[k] = weight[k] * u.spec()[k] * std::conj(q.spec()[k]);
    }
    nu2 /= grid.box_length();
    nq2 /= grid.box_length();

    // c(x0) on the whole lattice in one inverse transform.
    std::vector<Complex> corr = inverse_transform(grid, h);
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t j = 0; j < corr.size(); ++j) {
        const double m = std::abs(corr[j]);
        if (m > best_mag) {
            best_mag = m;
            best = j;
        }
    }

    // Golden-section refinement of |c| around the best lattice shift.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = grid.x(best) - grid.dx();
    double b = grid.x(best) + grid.dx();
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = std::abs(correlation_at(grid, h, x1));
    double f2 = std::abs(correlation_at(grid, h, x2));
    while (b - a > 1e-10) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = std::abs(correlation_at(grid, h, x2));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = std::abs(correlation_at(grid, h, x1));
        }
    }
    const double x0 = grid.wrap(0.5 * (a + b));
    const Complex c = correlation_at(grid, h, 0.5 * (a + b));

    CylinderFit fit;
    fit.dist = std::sqrt(std::max(nu2 + nq2 - 2.0 * std::abs(c), 0.0));
    fit.params.theta = wrap_angle(std::arg(c));
    fit.params.x0 = x0;
    fit.refine_hit_boundary =
        std::abs(0.5 * (a + b) - grid.x(best)) > 0.999 * grid.dx();
    return fit;
}

CylinderFit dist_hs(const Field& u, double s) {
    return fit_cylinder(u, hs_weight(u.grid(), s));
}

namespace {

struct ConstraintSet {
    Field c_phase;  // i Q^3
    Field c_shift;  // (Q^3)_x
    Field c_mass;   // Q
};

ConstraintSet constraints(const GridSpec& grid) {
    Field q = eval_q(grid);
    Field q3 = nonlinearity_f(q);
    return ConstraintSet{Complex{0.0, 1.0} * q3, spectral_derivative(q3), q};
}

} // namespace

CoercivityResult coercivity_probe(const Field& w) {
    CoercivityResult out;
    const double wn = hs_norm(w, 1.0);
    if (!(wn > 0.0)) return out; // w = 0 is degenerate, rejected

    ConstraintSet cs = constraints(w.grid());
    const Field* dirs[3] = {&cs.c_phase, &cs.c_shift, &cs.c_mass};
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
        const double v = inner_real(w, *dirs[i]);
        const double scale = wn * hs_norm(*dirs[i], 1.0);
        out.violations[i] = std::abs(v) / scale;
        if (out.violations[i] > 1e-10) ok = false;
    }
    if (!ok) return out;

    Field q = eval_q(w.grid());
    out.admissible = true;
    out.ratio = (lyapunov(q + w) - lyapunov(q)) / (wn * wn);
    return out;
}

Field project_admissible(const Field& w) {
    ConstraintSet cs = constraints(w.grid());
    Field out = w;
    for (const Field* c : {&cs.c_phase, &cs.c_shift, &cs.c_mass}) {
        const double coeff = inner_real(out, *c) / inner_real(*c, *c);
        out = out - coeff * (*c);
    }
    return out;
}

} // namespace nlslab
