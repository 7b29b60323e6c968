#pragma once

#include <cstddef>
#include <cstdint>

namespace nlslab {

// Periodic grid on [-L/2, L/2) with a power-of-two number of collocation
// points. Transform convention used throughout:
//
//   u_hat[k] = dx * sum_j u(x_j) e^{-i xi_k x_j}
//   u(x_j)   = (1/L) * sum_k u_hat[k] e^{+i xi_k x_j}
//
// so that Parseval reads  int |u|^2 dx = dx*sum_j|u_j|^2 = (1/L)*sum_k|u_hat|^2.
// Spectral storage follows FFT order: k = 0..M-1 holds mode m = k for
// k < M/2 and m = k - M for k >= M/2; xi_m = 2*pi*m / L.
class GridSpec {
  public:
    GridSpec(std::size_t num_modes, double box_length);

    std::size_t num_modes() const { return m_; }
    double box_length() const { return length_; }
    double dx() const { return length_ / static_cast<double>(m_); }
    double dxi() const { return two_pi_over_length_; }
    std::size_t nyquist_index() const { return m_ / 2; }

    /// Signed mode number of storage slot k.
    std::int64_t mode(std::size_t k) const {
        return k < m_ / 2 ? static_cast<std::int64_t>(k)
                          : static_cast<std::int64_t>(k) - static_cast<std::int64_t>(m_);
    }
    /// Frequency of storage slot k.
    double xi(std::size_t k) const { return two_pi_over_length_ * static_cast<double>(mode(k)); }
    /// Collocation point x_j in [-L/2, L/2).
    double x(std::size_t j) const { return -0.5 * length_ + dx() * static_cast<double>(j); }
    /// Largest resolved |xi| (the Nyquist frequency).
    double max_frequency() const { return two_pi_over_length_ * static_cast<double>(m_ / 2); }

    /// Wrap a coordinate into [-L/2, L/2).
    double wrap(double x) const;

    bool operator==(const GridSpec& other) const {
        return m_ == other.m_ && length_ == other.length_;
    }

  private:
    std::size_t m_;
    double length_;
    double two_pi_over_length_;
};

} // namespace nlslab
