#include "nlslab/modulation.hpp"

#include <cmath>
#include <numbers>

#include "nlslab/errors.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/ground_state.hpp"
#include "nlslab/multiplier.hpp"
#include "nlslab/norms.hpp"

namespace nlslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// d-metric distance beyond which the Newton solve is not attempted.
constexpr double kBasinGuard = 1.0;

struct SpecPair {
    std::vector<Complex> q;    // spectrum of Q
    std::vector<Complex> ifq;  // spectrum of I(Q^3)
};

SpecPair base_spectra(const GridSpec& grid, double s, double N) {
    Field q = eval_q(grid);
    Field ifq = Multiplier::smoother(s, N).apply(nonlinearity_f(q));
    return {std::vector<Complex>(q.spec().begin(), q.spec().end()),
            std::vector<Complex>(ifq.spec().begin(), ifq.spec().end())};
}

// Real L^2 pairing evaluated spectrally.
double rip(const GridSpec& grid, const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * std::conj(b[k]);
    return acc.real() / grid.box_length();
}

std::vector<Complex> rotate_shift(const GridSpec& grid, const std::vector<Complex>& spec,
                                  double theta, double x0) {
    const Complex rot{std::cos(theta), std::sin(theta)};
    std::vector<Complex> out(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double ph = -grid.xi(k) * x0;
        out[k] = rot * Complex{std::cos(ph), std::sin(ph)} * spec[k];
    }
    return out;
}

std::vector<Complex> times_i(const std::vector<Complex>& a) {
    std::vector<Complex> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = Complex{-a[k].imag(), a[k].real()};
    return out;
}

std::vector<Complex> times_ixi(const GridSpec& grid, const std::vector<Complex>& a) {
    std::vector<Complex> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double xi = grid.xi(k);
        out[k] = Complex{0.0, xi} * a[k];
    }
    return out;
}

double wrap_angle(double t) {
    double r = std::fmod(t, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

} // namespace

DecomposeResult decompose(const Field& u, double s, double N,
                          std::optional<GroundStateParams> seed) {
    const GridSpec& grid = u.grid();
    DecomposeResult out;
    SpecPair base = base_spectra(grid, s, N);

    double theta, x0;
    if (seed) {
        theta = seed->theta;
        x0 = seed->x0;
    } else {
        // Seed at the minimizer of d(u, Sigma), d = ||I(.)||_{H^1}.
        std::vector<double> weight(grid.num_modes());
        for (std::size_t k = 0; k < grid.num_modes(); ++k) {
            const double msym = m_symbol(grid.xi(k), s, N);
            const double br = 1.0 + std::abs(grid.xi(k));
            weight[k] = msym * msym * br * br;
        }
        CylinderFit fit = fit_cylinder(u, weight);
        if (fit.dist > kBasinGuard) {
            out.message = "input too far from the ground-state cylinder (d = " +
                          std::to_string(fit.dist) + ")";
            return out;
        }
        theta = fit.params.theta;
        x0 = fit.params.x0;
    }

    const std::vector<Complex> uspec(u.spec().begin(), u.spec().end());
    auto residuals = [&](double th, double sh, std::array<double, 2>& r) {
        std::vector<Complex> v = rotate_shift(grid, base.ifq, th, sh);
        std::vector<Complex> qt = rotate_shift(grid, base.q, th, sh);
        std::vector<Complex> w(uspec.size());
        for (std::size_t k = 0; k < w.size(); ++k) w[k] = uspec[k] - qt[k];
        r[0] = rip(grid, w, times_i(v));
        r[1] = rip(grid, w, times_ixi(grid, v));
    };

    const double tol = 1e-12 * (1.0 + l2_norm(u));
    std::array<double, 2> r{};
    residuals(theta, x0, r);
    int it = 0;
    for (; it < 50; ++it) {
        if (std::max(std::abs(r[0]), std::abs(r[1])) <= tol) break;

        std::vector<Complex> v = rotate_shift(grid, base.ifq, theta, x0);
        std::vector<Complex> qt = rotate_shift(grid, base.q, theta, x0);
        std::vector<Complex> w(uspec.size());
        for (std::size_t k = 0; k < w.size(); ++k) w[k] = uspec[k] - qt[k];
        std::vector<Complex> iv = times_i(v);
        std::vector<Complex> vx = times_ixi(grid, v);
        std::vector<Complex> ivx = times_i(vx);
        std::vector<Complex> vxx = times_ixi(grid, vx);
        std::vector<Complex> qx = times_ixi(grid, qt);
        std::vector<Complex> iq = times_i(qt);

        // Analytic Jacobian of the residuals in (theta, x0); the tangent
        // fields are dQt/dtheta = i Qt, dQt/dx0 = -d_x Qt, and v inherits the
        // same rotations/shifts.
        const double j00 = -rip(grid, qt, v) - rip(grid, w, v);
        const double j01 = rip(grid, qx, iv) - rip(grid, w, ivx);
        const double j10 = -rip(grid, iq, vx) + rip(grid, w, ivx);
        const double j11 = rip(grid, qx, vx) - rip(grid, w, vxx);
        const double det = j00 * j11 - j01 * j10;
        if (std::abs(det) < 1e-14) {
            out.iterations = it;
            out.message = "singular Newton system";
            return out;
        }
        const double dth = (-r[0] * j11 + r[1] * j01) / det;
        const double dx0 = (-j00 * r[1] + j10 * r[0]) / det;

        // Step halving on residual-norm increase.
        const double rn = std::hypot(r[0], r[1]);
        double lambda = 1.0;
        std::array<double, 2> r2{};
        for (int h = 0; h < 25; ++h) {
            residuals(theta + lambda * dth, x0 + lambda * dx0, r2);
            if (std::hypot(r2[0], r2[1]) < rn || std::hypot(r2[0], r2[1]) <= tol) break;
            lambda *= 0.5;
        }
        theta += lambda * dth;
        x0 += lambda * dx0;
        r = r2;
    }

    if (std::max(std::abs(r[0]), std::abs(r[1])) > tol) {
        out.iterations = it;
        out.message = "Newton did not converge in 50 iterations; residuals " +
                      std::to_string(r[0]) + ", " + std::to_string(r[1]);
        return out;
    }

    GroundStateParams params{wrap_angle(theta), grid.wrap(x0)};
    Field qt = sample_sigma(params, grid);
    Field w = u - qt;
    ModulationFrame frame{params, w, hs_norm(Multiplier::smoother(s, N).apply(w), 1.0), r,
                          std::nullopt};
    out.converged = true;
    out.iterations = it;
    out.frame = std::move(frame);
    return out;
}

std::array<double, 2> modulation_rates(const Field& u, const GroundStateParams& params,
                                       double s, double N) {
    const GridSpec& grid = u.grid();
    Field q = eval_q(grid);
    Field qt = sample_sigma(params, grid);

    // Co-moving remainder w~ = e^{-i theta} w(. + x0).
    const Complex unrot{std::cos(params.theta), -std::sin(params.theta)};
    std::vector<Complex> wt_spec(grid.num_modes());
    for (std::size_t k = 0; k < grid.num_modes(); ++k) {
        const double ph = grid.xi(k) * params.x0;
        wt_spec[k] = unrot * Complex{std::cos(ph), std::sin(ph)} *
                     (u.spec()[k] - qt.spec()[k]);
    }
    Field wt = Field::from_spectral(grid, std::move(wt_spec));

    Field ifq = Multiplier::smoother(s, N).apply(nonlinearity_f(q));
    Field a0 = Complex{0.0, 1.0} * ifq;
    Field a1 = spectral_derivative(ifq);

    Field qpw = q + wt;
    Field qpw_x = spectral_derivative(qpw);
    Field wt_xx = spectral_second_derivative(wt);
    Field g = difference_g(wt, q);

    // rhs field i (w~_xx + G - w~)
    std::vector<Complex> rhs_v(grid.num_modes());
    for (std::size_t j = 0; j < grid.num_modes(); ++j) {
        const Complex z = wt_xx.phys()[j] + g.phys()[j] - wt.phys()[j];
        rhs_v[j] = Complex{-z.imag(), z.real()};
    }
    Field rhs = Field::from_physical(grid, std::move(rhs_v));
    Field iqpw = Complex{0.0, 1.0} * qpw;

    double m[2][2], b[2];
    const Field* as[2] = {&a0, &a1};
    for (int j = 0; j < 2; ++j) {
        m[j][0] = inner_real(iqpw, *as[j]);
        m[j][1] = -inner_real(qpw_x, *as[j]);
        b[j] = inner_real(rhs, *as[j]);
    }

    // 2x2 condition number from the singular values.
    const double a2 = m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] +
                      m[1][1] * m[1][1];
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const double disc = std::sqrt(std::max(a2 * a2 - 4.0 * det * det, 0.0));
    const double smax2 = 0.5 * (a2 + disc);
    const double smin2 = 0.5 * (a2 - disc);
    if (!(smin2 > 0.0) || std::sqrt(smax2 / smin2) > 1e6)
        throw NumericalError("modulation_rates: singular 2x2 modulation system");

    return {(b[0] * m[1][1] - b[1] * m[0][1]) / det,
            (m[0][0] * b[1] - m[1][0] * b[0]) / det};
}

ModulationTrack track_modulation(const std::vector<double>& times,
                                 const std::vector<Field>& states, double s, double N,
                                 bool with_rates) {
    if (times.size() != states.size())
        throw ConfigError("track_modulation: times/states size mismatch");
    ModulationTrack track;
    std::optional<GroundStateParams> seed;
    double prev_theta_total = 0.0, prev_x0 = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        DecomposeResult dr = decompose(states[i], s, N, seed);
        if (!dr.converged) {
            track.basin_exit = true;
            track.first_failure_time = times[i];
            break;
        }
        ModulationFrame frame = std::move(*dr.frame);
        const GridSpec& grid = states[i].grid();

        double theta_total = frame.params.theta;
        double x0 = frame.params.x0;
        if (i > 0) {
            // Nearest-branch continuation.
            theta_total += kTwoPi * std::round((prev_theta_total - theta_total) / kTwoPi);
            x0 += grid.box_length() *
                  std::round((prev_x0 - x0) / grid.box_length());
        }
        prev_theta_total = theta_total;
        prev_x0 = x0;
        seed = GroundStateParams{frame.params.theta, frame.params.x0};

        if (with_rates)
            frame.rates = modulation_rates(states[i], frame.params, s, N);

        // Report the phase excess over e^{it}, continuously unwrapped.
        frame.params.theta = theta_total - times[i];
        frame.params.x0 = x0;
        track.times.push_back(times[i]);
        track.frames.push_back(std::move(frame));
    }
    return track;
}

} // namespace nlslab
