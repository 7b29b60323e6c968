#pragma once

#include <complex>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/grid.hpp"

namespace nlslab {

// Radial Fourier multipliers. The two I-method symbols share one closed form:
// with r = |xi|/N and S(l) = 6l^5 - 15l^4 + 10l^3 (quintic smoothstep),
//
//   sym_e(xi) = 1                      for |xi| <= N
//             = r^{e * S(log2 r)}      for N < |xi| < 2N
//             = r^e                    for |xi| >= 2N
//
// which matches both closed forms with C^2 continuity and is monotone in |xi|
// (nondecreasing for e > 0, nonincreasing for e < 0). theta uses e = s
// (amplifies high frequencies), the smoothing symbol m uses e = s - 1.
// The formula depends on xi only through r, so the symbol family is exactly
// scale invariant in N. Runs are bit-reproducible given (e, N).

/// Scalar symbol shared by theta and m; e is the high-frequency exponent.
double blended_power_symbol(double xi, double e, double N);
/// theta(xi): 1 below N, (|xi|/N)^s above 2N. Requires s in [0,1), N >= 1.
double theta_symbol(double xi, double s, double N);
/// m(xi): 1 below N, (|xi|/N)^{s-1} above 2N. Requires s in [0,1), N >= 1.
double m_symbol(double xi, double s, double N);

enum class MultiplierKind { identity, theta, smoother, derivative, bracket_power, custom };

/// A Fourier multiplier operator f -> sym(xi) f_hat(xi). The Nyquist mode is
/// zeroed on application so real even symbols stay even on the grid.
class Multiplier {
  public:
    static Multiplier identity();
    static Multiplier theta(double s, double N);
    static Multiplier smoother(double s, double N); // the I-method m(xi)
    static Multiplier derivative();                 // symbol i*xi
    static Multiplier bracket_power(double s);      // symbol (1+|xi|)^s
    static Multiplier custom(std::vector<Complex> table, const GridSpec& grid);

    MultiplierKind kind() const { return kind_; }
    double s() const { return s_; }
    double cutoff() const { return cutoff_; }

    /// Symbol at a frequency (complex to accommodate the derivative kind).
    Complex symbol(double xi) const;
    /// Symbol sampled on a grid's frequency lattice, Nyquist slot zeroed.
    std::vector<Complex> sample(const GridSpec& grid) const;

    Field apply(const Field& f) const;

  private:
    Multiplier(MultiplierKind kind, double s, double cutoff)
        : kind_(kind), s_(s), cutoff_(cutoff) {}

    MultiplierKind kind_;
    double s_ = 0.0;
    double cutoff_ = 1.0;
    std::vector<Complex> table_;       // custom only
    std::size_t table_modes_ = 0;
};

/// Spectral derivative u_x.
Field spectral_derivative(const Field& f);
/// Spectral second derivative u_xx.
Field spectral_second_derivative(const Field& f);

} // namespace nlslab
