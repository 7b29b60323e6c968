#include "nlslab/multilinear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlslab/errors.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/multiplier.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/random_fields.hpp"

namespace nlslab {

namespace {

void require_hyperplane(std::span<const double> xi) {
    double sum = 0.0, scale = 1.0;
    for (double v : xi) {
        sum += v;
        scale = std::max(scale, std::abs(v));
    }
    if (std::abs(sum) > 1e-9 * scale)
        throw ConfigError("symbol evaluated off the hyperplane sum(xi) = 0");
}

} // namespace

double SymbolM::eval(std::span<const double> xi) const {
    if (static_cast<int>(xi.size()) != arity())
        throw ConfigError("SymbolM: wrong tuple arity");
    require_hyperplane(xi);
    auto th2 = [&](double v) {
        const double t = theta_symbol(v, s, N);
        return t * t;
    };
    auto mm = [&](double v) { return m_symbol(v, s, N); };
    switch (kind) {
        case SymbolKind::m4:
            return th2(xi[0]) - th2(xi[1]) + th2(xi[2]) - th2(xi[3]);
        case SymbolKind::m4_prime:
            return xi[0] * xi[0] * mm(xi[0]) *
                   (mm(xi[1]) * mm(xi[2]) * mm(xi[3]) - mm(xi[1] + xi[2] + xi[3]));
        case SymbolKind::m4_double_prime: {
            auto m2 = [&](double v) {
                const double m = mm(v);
                return m * m;
            };
            return m2(xi[0]) - m2(xi[1]) + m2(xi[2]) - m2(xi[3]);
        }
        case SymbolKind::m6:
            return mm(xi[0] + xi[1] + xi[2]) * mm(xi[3]) * mm(xi[4]) * mm(xi[5]) -
                   mm(xi[0]) * mm(xi[1]) * mm(xi[2]) * mm(xi[3] + xi[4] + xi[5]);
    }
    return 0.0;
}

namespace {

// Spectrum of slot i as a function of signed mode number: plain spectrum, or
// conj-reflected (hat of conj f) for conjugated slots. mode -M/2 is its own
// reflection.
std::vector<Complex> slot_spectrum(const Field& f, bool conj_slot) {
    const GridSpec& g = f.grid();
    const std::size_t m = g.num_modes();
    std::vector<Complex> out(m);
    if (!conj_slot) {
        std::copy(f.spec().begin(), f.spec().end(), out.begin());
        return out;
    }
    for (std::size_t k = 0; k < m; ++k) {
        const auto mode = g.mode(k);
        const std::size_t krefl =
            mode == -static_cast<std::int64_t>(m / 2)
                ? k
                : (mode <= 0 ? static_cast<std::size_t>(-mode)
                             : m - static_cast<std::size_t>(mode));
        out[k] = std::conj(f.spec()[krefl]);
    }
    return out;
}

} // namespace

Complex eval_lambda_n(const SymbolFn& sym, std::span<const Field> fields,
                      std::span<const bool> conjugate, bool allow_expensive) {
    const std::size_t n = fields.size();
    if (n != 2 && n != 4 && n != 6) throw ConfigError("eval_lambda_n: n must be 2, 4 or 6");
    if (conjugate.size() != n) throw ConfigError("eval_lambda_n: conjugate mask size mismatch");
    for (std::size_t i = 1; i < n; ++i) require_same_grid(fields[0], fields[i], "eval_lambda_n");
    const GridSpec& g = fields[0].grid();
    const std::size_t m = g.num_modes();
    if (n == 6 && m > 256 && !allow_expensive)
        throw ConfigError("eval_lambda_n: n=6 direct sum on more than 256 modes needs "
                          "allow_expensive");

    std::vector<std::vector<Complex>> hats(n);
    for (std::size_t i = 0; i < n; ++i) hats[i] = slot_spectrum(fields[i], conjugate[i]);

    const auto half = static_cast<std::int64_t>(m / 2);
    auto slot_of = [&](std::int64_t mode) -> std::int64_t {
        if (mode < -half || mode >= half) return -1;
        return mode >= 0 ? mode : mode + static_cast<std::int64_t>(m);
    };

    const double dxi = g.dxi();
    Complex total{0.0, 0.0};
    std::vector<double> xis(n);

    if (n == 2) {
        for (std::size_t k1 = 0; k1 < m; ++k1) {
            const std::int64_t s2 = slot_of(-g.mode(k1));
            if (s2 < 0) continue;
            xis[0] = g.xi(k1);
            xis[1] = -xis[0];
            total += sym(xis) * hats[0][k1] * hats[1][static_cast<std::size_t>(s2)];
        }
    } else if (n == 4) {
        for (std::size_t k1 = 0; k1 < m; ++k1) {
            const Complex h1 = hats[0][k1];
            if (h1 == Complex{0.0, 0.0}) continue;
            for (std::size_t k2 = 0; k2 < m; ++k2) {
                const Complex h12 = h1 * hats[1][k2];
                if (h12 == Complex{0.0, 0.0}) continue;
                const std::int64_t m12 = g.mode(k1) + g.mode(k2);
                for (std::size_t k3 = 0; k3 < m; ++k3) {
                    const std::int64_t s4 = slot_of(-(m12 + g.mode(k3)));
                    if (s4 < 0) continue;
                    const Complex h = h12 * hats[2][k3] * hats[3][static_cast<std::size_t>(s4)];
                    if (h == Complex{0.0, 0.0}) continue;
                    xis[0] = g.xi(k1);
                    xis[1] = g.xi(k2);
                    xis[2] = g.xi(k3);
                    xis[3] = -(xis[0] + xis[1] + xis[2]);
                    total += sym(xis) * h;
                }
            }
        }
    } else {
        for (std::size_t k1 = 0; k1 < m; ++k1) {
            if (hats[0][k1] == Complex{0.0, 0.0}) continue;
            for (std::size_t k2 = 0; k2 < m; ++k2) {
                const Complex h12 = hats[0][k1] * hats[1][k2];
                if (h12 == Complex{0.0, 0.0}) continue;
                for (std::size_t k3 = 0; k3 < m; ++k3) {
                    const Complex h13 = h12 * hats[2][k3];
                    if (h13 == Complex{0.0, 0.0}) continue;
                    const std::int64_t m13 = g.mode(k1) + g.mode(k2) + g.mode(k3);
                    for (std::size_t k4 = 0; k4 < m; ++k4) {
                        const Complex h14 = h13 * hats[3][k4];
                        if (h14 == Complex{0.0, 0.0}) continue;
                        for (std::size_t k5 = 0; k5 < m; ++k5) {
                            const std::int64_t s6 =
                                slot_of(-(m13 + g.mode(k4) + g.mode(k5)));
                            if (s6 < 0) continue;
                            const Complex h = h14 * hats[4][k5] *
                                              hats[5][static_cast<std::size_t>(s6)];
                            if (h == Complex{0.0, 0.0}) continue;
                            xis[0] = g.xi(k1);
                            xis[1] = g.xi(k2);
                            xis[2] = g.xi(k3);
                            xis[3] = g.xi(k4);
                            xis[4] = g.xi(k5);
                            xis[5] = -(xis[0] + xis[1] + xis[2] + xis[3] + xis[4]);
                            total += sym(xis) * h;
                        }
                    }
                }
            }
        }
    }

    const double l = g.box_length();
    double norm = 1.0;
    for (std::size_t i = 1; i < n; ++i) norm *= l;
    (void)dxi;
    return total / norm;
}

Complex eval_lambda_n(const SymbolM& sym, std::span<const Field> fields,
                      std::span<const bool> conjugate, bool allow_expensive) {
    if (static_cast<std::size_t>(sym.arity()) != fields.size())
        throw ConfigError("eval_lambda_n: symbol arity does not match field count");
    return eval_lambda_n(SymbolFn([&sym](std::span<const double> xi) { return sym.eval(xi); }),
                         fields, conjugate, allow_expensive);
}

FactorizationSides factorization_check(std::span<const double, 4> xi) {
    require_hyperplane(xi);
    return {xi[0] * xi[0] - xi[1] * xi[1] + xi[2] * xi[2] - xi[3] * xi[3],
            2.0 * (xi[0] + xi[3]) * (xi[0] + xi[1])};
}

DerivativeCheck energy_derivative_check(const Field& u, double s, double N, double dt,
                                        NlsSign sign) {
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_end = dt;
    cfg.sign = sign;

    Field up = step(u, cfg);
    // Backward step via the conjugation symmetry u(-dt) = conj(S_dt conj(u)).
    std::vector<Complex> cv(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) cv[j] = std::conj(u.phys()[j]);
    Field um_c = step(Field::from_physical(u.grid(), std::move(cv)), cfg);
    std::vector<Complex> umv(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) umv[j] = std::conj(um_c.phys()[j]);
    Field um = Field::from_physical(u.grid(), std::move(umv));

    const double lhs =
        (modified_energy_d(up, s, N) - modified_energy_d(um, s, N)) / (2.0 * dt);

    // (1/2) Im Lambda_4(M4; u, conj u, u, conj u) collapses to
    // 2 int |u|^2 Im[(D^2 u) conj(u)] dx by the physical-product route.
    Field d2u = Multiplier::theta(s, N).apply(Multiplier::theta(s, N).apply(u));
    double rhs = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const Complex z = u.phys()[j];
        rhs += std::norm(z) * (d2u.phys()[j] * std::conj(z)).imag();
    }
    const double sgn = sign == NlsSign::focusing ? 1.0 : -1.0;
    rhs *= 2.0 * u.grid().dx() * sgn;

    const double denom = std::max(std::abs(rhs), 1e-300);
    return {lhs, rhs, std::abs(lhs - rhs) / denom};
}

FilterScanResult filter_bound_scan(double s, double N, double n_sop, int samples,
                                   std::uint64_t seed, double floor_frac) {
    Rng rng(seed);
    const double t_at = theta_symbol(n_sop, s, N);
    const double scale = t_at * t_at / (n_sop * n_sop);
    std::vector<double> ratios;
    ratios.reserve(static_cast<std::size_t>(samples));
    int drawn = 0;
    while (drawn < samples) {
        double xi[4];
        for (int i = 0; i < 3; ++i) {
            const double mag = rng.uniform(0.5 * n_sop, 2.0 * n_sop);
            xi[i] = rng.uniform() < 0.5 ? -mag : mag;
        }
        xi[3] = -(xi[0] + xi[1] + xi[2]);
        const double a4 = std::abs(xi[3]);
        if (a4 < 0.5 * n_sop || a4 > 2.0 * n_sop) continue;
        ++drawn;
        const double den = std::abs((xi[0] + xi[1]) * (xi[0] + xi[3]));
        if (den < floor_frac * n_sop * n_sop) continue;
        auto th2 = [&](double v) {
            const double t = theta_symbol(v, s, N);
            return t * t;
        };
        const double m4 = th2(xi[0]) - th2(xi[1]) + th2(xi[2]) - th2(xi[3]);
        ratios.push_back(std::abs(m4) / (2.0 * den * scale));
    }
    FilterScanResult out;
    out.samples_used = static_cast<int>(ratios.size());
    if (ratios.empty()) return out;
    std::sort(ratios.begin(), ratios.end());
    out.max_ratio = ratios.back();
    out.p99_ratio = ratios[static_cast<std::size_t>(0.99 * (ratios.size() - 1))];
    return out;
}

double filter_limit_probe(double s, double N, double n_sop, int points) {
    // Family with xi_1 + xi_2 = eps -> 0 at fixed xi_1 + xi_4; all four
    // frequencies stay in [n_sop/2, 2 n_sop] in modulus.
    const double xi1 = 1.3 * n_sop;
    const double v = 0.6 * n_sop;
    const double t_at = theta_symbol(n_sop, s, N);
    const double scale = t_at * t_at / (n_sop * n_sop);
    double worst = 0.0;
    for (int k = 0; k < points; ++k) {
        const double eps = n_sop * std::pow(10.0, -1.0 - 7.0 * k / std::max(points - 1, 1));
        const double xi2 = eps - xi1;
        const double xi4 = v - xi1;
        const double xi3 = -(xi1 + xi2 + xi4);
        auto th2 = [&](double w) {
            const double t = theta_symbol(w, s, N);
            return t * t;
        };
        const double m4 = th2(xi1) - th2(xi2) + th2(xi3) - th2(xi4);
        const double den = 2.0 * std::abs((xi1 + xi2) * (xi1 + xi4));
        worst = std::max(worst, std::abs(m4) / (den * scale));
    }
    return worst;
}

LeibnizScanResult leibniz_scan(const GridSpec& grid, double s, double N) {
    const auto half = static_cast<std::int64_t>(grid.num_modes() / 2);
    const std::int64_t cap = half / 2;
    const double dxi = grid.dxi();

    // Symbol tables over |mode| <= 2*cap (sums stay on-lattice).
    std::vector<double> mb(static_cast<std::size_t>(2 * cap + 1)), th(mb.size());
    for (std::int64_t a = 0; a <= 2 * cap; ++a) {
        const double xi = dxi * static_cast<double>(a);
        mb[static_cast<std::size_t>(a)] = m_symbol(xi, s, N) * (1.0 + xi);
        th[static_cast<std::size_t>(a)] = theta_symbol(xi, s, N);
    }

    LeibnizScanResult out;
    for (std::int64_t a = -cap; a <= cap; ++a) {
        for (std::int64_t b = a; b <= cap; ++b) { // symmetric, scan half
            const auto ia = static_cast<std::size_t>(std::abs(a));
            const auto ib = static_cast<std::size_t>(std::abs(b));
            const auto is = static_cast<std::size_t>(std::abs(a + b));
            out.max_ratio_m_bracket =
                std::max(out.max_ratio_m_bracket, mb[is] / (mb[ia] + mb[ib]));
            out.max_ratio_theta = std::max(out.max_ratio_theta, th[is] / (th[ia] + th[ib]));
        }
    }
    return out;
}

double omega_functional(std::span<const double> times, std::span<const Field> slice, double s,
                        double N) {
    if (times.size() != slice.size() || times.size() < 2)
        throw ConfigError("omega_functional: need matching times/states with >= 2 samples");
    Multiplier smoother = Multiplier::smoother(s, N);

    auto integrand = [&](const Field& v) {
        Field vxx = spectral_second_derivative(v);
        Field fv = nonlinearity_f(v);
        Field left = smoother.apply(vxx + fv); // then times i in the pairing
        Field iv = smoother.apply(v);
        Field ivxx = spectral_second_derivative(iv);
        Field fiv = nonlinearity_f(iv);
        double acc = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            const Complex a{-left.phys()[j].imag(), left.phys()[j].real()};
            const Complex b = -ivxx.phys()[j] + iv.phys()[j] - fiv.phys()[j];
            acc += (a * std::conj(b)).real();
        }
        return acc * v.grid().dx();
    };

    double omega = 0.0;
    double prev = integrand(slice[0]);
    for (std::size_t i = 1; i < slice.size(); ++i) {
        const double cur = integrand(slice[i]);
        omega += 0.5 * (prev + cur) * (times[i] - times[i - 1]);
        prev = cur;
    }
    return omega;
}

} // namespace nlslab
