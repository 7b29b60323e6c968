#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nlslab/errors.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/ground_state.hpp"
#include "nlslab/multiplier.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/random_fields.hpp"

using namespace nlslab;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

// Independent oracle: fine fixed-step quadrature of the closed sech forms on
// [-R, R], no spectral machinery involved. Exponential tails make the plain
// midpoint rule converge far beyond the tolerances used below.
double midpoint_integral(double (*f)(double), double r, int n) {
    const double h = 2.0 * r / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += f(-r + (i + 0.5) * h);
    return acc * h;
}
double q2(double x) { const double q = std::sqrt(2.0) / std::cosh(x); return q * q; }
double q4(double x) { const double q = std::sqrt(2.0) / std::cosh(x); return q * q * q * q; }
double qx2(double x) {
    const double d = -std::sqrt(2.0) * std::tanh(x) / std::cosh(x);
    return d * d;
}
double q2qx2(double x) { return q2(x) * qx2(x); }
} // namespace

TEST_CASE("quadrature oracle pins the ground-state constants") {
    // these are the frozen expected values used throughout the suite
    CHECK(midpoint_integral(q2, 40.0, 400000) == Approx(4.0).epsilon(1e-12));
    CHECK(midpoint_integral(q4, 40.0, 400000) == Approx(16.0 / 3.0).epsilon(1e-12));
    CHECK(midpoint_integral(qx2, 40.0, 400000) == Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(midpoint_integral(q2qx2, 40.0, 400000) == Approx(16.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("eval_q: peak value, box validation, ODE residual, integrals") {
    CHECK_THROWS_AS(eval_q(GridSpec(512, 8.0 * kPi)), ConfigError); // tails too fat

    GridSpec g(2048, 40.0 * kPi);
    Field q = eval_q(g);
    CHECK(q.phys()[g.num_modes() / 2].real() == Approx(std::sqrt(2.0)).epsilon(1e-15));

    // Q_xx + Q^3 - Q = 0 with the spectral derivative
    Field resid = spectral_second_derivative(q) + nonlinearity_f(q) - q;
    CHECK(l2_norm(resid) < 1e-10);

    CHECK(mass(q) == Approx(4.0).epsilon(1e-12));
    const double p4 = lp_norm(q, 4);
    CHECK(p4 * p4 * p4 * p4 == Approx(16.0 / 3.0).epsilon(1e-12));
    CHECK(hamiltonian(q) == Approx(-2.0 / 3.0).epsilon(1e-12));
    CHECK(lyapunov(q) == Approx(kLyapunovAtQ).epsilon(1e-12));
    CHECK(hs_norm(q, 0.0) == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("sample_sigma: identity at (0,0), ODE residual, L invariance") {
    GridSpec g(2048, 40.0 * kPi);
    Field q = eval_q(g);
    Field at_origin = sample_sigma(GroundStateParams{0.0, 0.0}, g);
    CHECK(l2_norm(at_origin - q) < 1e-12);

    GroundStateParams p{2.0, -11.7};
    Field qt = sample_sigma(p, g);
    Field resid = spectral_second_derivative(qt) + nonlinearity_f(qt) - qt;
    CHECK(l2_norm(resid) < 1e-9);
    CHECK(lyapunov(qt) == Approx(lyapunov(q)).epsilon(1e-10));
}

TEST_CASE("dist_hs: cylinder members, radial perturbation, distance from zero") {
    GridSpec g(2048, 40.0 * kPi);
    Field q = eval_q(g);
    const double s = 0.5;

    // member of the cylinder at a lattice shift
    const double a = 64.0 * g.dx();
    Field member = sample_sigma(GroundStateParams{0.9, a}, g);
    CylinderFit fit = dist_hs(member, s);
    CHECK(fit.dist < 1e-7); // sqrt-cancellation floor of the quadratic form
    CHECK(fit.params.theta == Approx(0.9).epsilon(1e-7));
    CHECK(fit.params.x0 == Approx(a).epsilon(1e-6));

    // radial bump: distance 0.01 ||Q||_{H^s}, argmin stays at the origin
    CylinderFit rad = dist_hs(1.01 * q, s);
    CHECK(rad.dist == Approx(0.01 * hs_norm(q, s)).epsilon(1e-4));
    CHECK(std::abs(rad.params.x0) < 1e-6);
    const double th = std::min(rad.params.theta, 2.0 * kPi - rad.params.theta);
    CHECK(th < 1e-6);

    // distance from the origin is ||Q||_{H^s}
    CHECK(dist_hs(Field::zero(g), s).dist == Approx(hs_norm(q, s)).epsilon(1e-12));
}

TEST_CASE("dist_hs is invariant under the symmetry group") {
    GridSpec g(1024, 24.0 * kPi);
    Field u = eval_q(g) + 0.05 * rough_hs_data(g, 0.5, 1.0, 5);
    const double d0 = dist_hs(u, 0.5).dist;

    const double shift = 37.0 * g.dx();
    const Complex rot{std::cos(0.8), std::sin(0.8)};
    std::vector<Complex> spec(g.num_modes());
    for (std::size_t k = 0; k < g.num_modes(); ++k) {
        const double ph = -g.xi(k) * shift;
        spec[k] = rot * Complex{std::cos(ph), std::sin(ph)} * u.spec()[k];
    }
    Field moved = Field::from_spectral(g, std::move(spec));
    CHECK(std::abs(dist_hs(moved, 0.5).dist - d0) < 1e-8);
}

TEST_CASE("dist_hs argmin is stable under re-runs from perturbed inputs") {
    GridSpec g(1024, 24.0 * kPi);
    Field u = eval_q(g) + 0.03 * rough_hs_data(g, 0.5, 1.0, 9);
    CylinderFit f1 = dist_hs(u, 0.5);
    CylinderFit f2 = dist_hs(1.0 * u, 0.5);
    CHECK(f1.params.x0 == Approx(f2.params.x0).epsilon(1e-9));
    CHECK(f1.params.theta == Approx(f2.params.theta).epsilon(1e-9));
}

TEST_CASE("coercivity probe: tangent and mass directions are rejected") {
    GridSpec g(1024, 24.0 * kPi);
    Field q = eval_q(g);

    CHECK_FALSE(coercivity_probe(Field::zero(g)).admissible);          // degenerate
    CHECK_FALSE(coercivity_probe(Complex{0.0, 0.01} * q).admissible);  // i Q tangent
    CHECK_FALSE(coercivity_probe(0.01 * q).admissible);                // mass direction
    CHECK_FALSE(coercivity_probe(0.01 * spectral_derivative(q)).admissible); // Q_x tangent
}

TEST_CASE("coercivity probe: admissible random directions give a positive band") {
    GridSpec g(1024, 24.0 * kPi);
    double lo = 1e300, hi = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        Rng rng(substream_seed(100, trial));
        Field raw = rough_field(g, 1.6, rng);
        if (trial % 2 == 0) {
            // localize half the draws on the soliton core
            std::vector<Complex> v(raw.phys().begin(), raw.phys().end());
            for (std::size_t j = 0; j < g.num_modes(); ++j)
                v[j] *= std::exp(-g.x(j) * g.x(j) / 25.0);
            raw = Field::from_physical(g, std::move(v));
        }
        Field w = project_admissible(raw);
        const double amp = std::pow(10.0, -3.0 + 2.0 * (trial % 5) / 4.0);
        w = (amp / hs_norm(w, 1.0)) * w;
        CoercivityResult r = coercivity_probe(w);
        REQUIRE(r.admissible);
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
    }
    CHECK(lo > 0.0);
    CHECK(hi / lo <= 20.0);
}

TEST_CASE("the real radial direction is concave for L (needs the mass constraint)") {
    // L(Q + eps Q) - L(Q) < 0: the documented reason coercivity_probe also
    // enforces mass-sphere tangency.
    GridSpec g(1024, 24.0 * kPi);
    Field q = eval_q(g);
    const double lq = lyapunov(q);
    for (double eps : {1e-2, 1e-3}) {
        const double diff = lyapunov((1.0 + eps) * q) - lq;
        CHECK(diff < 0.0);
        CHECK(diff / (eps * eps) == Approx(-32.0 / 3.0).epsilon(0.05));
    }
}
