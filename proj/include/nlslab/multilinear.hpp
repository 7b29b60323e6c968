#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/solver.hpp"

namespace nlslab {

// Multilinear forms on the frequency hyperplane {xi_1 + ... + xi_n = 0} and
// the symbol identities behind the two almost-conservation laws.

enum class SymbolKind { m4, m4_prime, m4_double_prime, m6 };

/// The four closed-form symbols, built from theta(s,N) / m(s,N):
///   M4   = th(1)^2 - th(2)^2 + th(3)^2 - th(4)^2
///   M4'  = xi_1^2 m(1) (m(2) m(3) m(4) - m(xi_2+xi_3+xi_4))
///   M4'' = m(1)^2 - m(2)^2 + m(3)^2 - m(4)^2
///   M6   = m(xi_1+xi_2+xi_3) m(4) m(5) m(6) - m(1) m(2) m(3) m(xi_4+xi_5+xi_6)
struct SymbolM {
    SymbolKind kind;
    double s;
    double N;

    int arity() const { return kind == SymbolKind::m6 ? 6 : 4; }
    /// Evaluate on a frequency tuple; throws ConfigError off the hyperplane.
    double eval(std::span<const double> xi) const;
};

using SymbolFn = std::function<double(std::span<const double>)>;

/// Direct evaluation of Lambda_n(sym; f_1, ..., f_n) as the lattice sum
///   L^{1-n} sum_{k_1+...+k_n=0} sym(xi_...) prod_i g_i(xi_{k_i}),
/// where g_i is the spectrum of f_i, conjugate-reflected for slots with
/// conjugate[i] = true (the transform of the conjugated function). With this
/// normalization Lambda_2(1; f, conj f) = ||f||_2^2 and
/// Lambda_4(1; f, conj f, f, conj f) = int |f|^4. Cost is O(M^{n-1}); n = 6
/// on grids above 256 modes requires allow_expensive.
Complex eval_lambda_n(const SymbolFn& sym, std::span<const Field> fields,
                      std::span<const bool> conjugate, bool allow_expensive = false);
Complex eval_lambda_n(const SymbolM& sym, std::span<const Field> fields,
                      std::span<const bool> conjugate, bool allow_expensive = false);

/// Both sides of the hyperplane identity
/// xi_1^2 - xi_2^2 + xi_3^2 - xi_4^2 = 2 (xi_1+xi_4)(xi_1+xi_2).
struct FactorizationSides {
    double lhs;
    double rhs;
};
FactorizationSides factorization_check(std::span<const double, 4> xi);

/// Centered-difference d/dt of ||theta u||_2^2 along the flow against the
/// symmetrized quartic form (1/2) Im Lambda_4(M4; u, conj u, u, conj u),
/// evaluated with the collocation product semantics the flow uses.
struct DerivativeCheck {
    double lhs;
    double rhs;
    double rel_error;
};
DerivativeCheck energy_derivative_check(const Field& u, double s, double N, double dt,
                                        NlsSign sign = NlsSign::focusing);

/// Monte Carlo sup of |M4| / (|2 (xi_1+xi_4)(xi_1+xi_2)| theta(K)^2 / K^2)
/// over hyperplane tuples with all |xi_i| in [K/2, 2K], K = n_sop. Samples
/// whose factored denominator falls below floor_frac * K^2 are excluded (the
/// degenerate region is probed separately by filter_limit_probe).
struct FilterScanResult {
    double max_ratio = 0.0;
    double p99_ratio = 0.0;
    int samples_used = 0;
};
FilterScanResult filter_bound_scan(double s, double N, double n_sop, int samples,
                                   std::uint64_t seed, double floor_frac = 1e-3);

/// Ratio along a one-parameter family with xi_1 + xi_2 -> 0 at fixed
/// xi_1 + xi_4; returns the max over the family (bounded by the double
/// mean-value structure of M4).
double filter_limit_probe(double s, double N, double n_sop, int points);

/// Lattice sup of m(xi+eta)<xi+eta> / (m(xi)<xi> + m(eta)<eta>) and of
/// theta(xi+eta) / (theta(xi) + theta(eta)) over |xi|,|eta| <= ximax/2.
struct LeibnizScanResult {
    double max_ratio_m_bracket = 0.0;
    double max_ratio_theta = 0.0;
};
LeibnizScanResult leibniz_scan(const GridSpec& grid, double s, double N);

/// Trapezoidal time quadrature of
///   < i I(v_xx + F(v)), -I v_xx + I v - F(I v) >
/// over a recorded trajectory slice; 2*Omega equals the increment of L(Iu).
double omega_functional(std::span<const double> times, std::span<const Field> slice, double s,
                        double N);

} // namespace nlslab
