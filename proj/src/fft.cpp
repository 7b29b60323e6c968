#include "nlslab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace nlslab {

namespace {

struct PlanPair {
    fftw_plan fwd;
    fftw_plan bwd;
};

// One plan pair per transform size. FFTW's planner is not thread-safe, so
// creation is serialized; fftw_execute_dft on caller buffers is re-entrant.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    PlanPair get(std::size_t n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        std::vector<std::complex<double>> a(n), b(n);
        auto* ap = reinterpret_cast<fftw_complex*>(a.data());
        auto* bp = reinterpret_cast<fftw_complex*>(b.data());
        PlanPair p;
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        p.fwd = fftw_plan_dft_1d(static_cast<int>(n), ap, bp, FFTW_FORWARD, flags);
        p.bwd = fftw_plan_dft_1d(static_cast<int>(n), ap, bp, FFTW_BACKWARD, flags);
        plans_[n] = p;
        return p;
    }

  private:
    std::mutex mutex_;
    std::map<std::size_t, PlanPair> plans_;
};

} // namespace

void forward_transform(const GridSpec& grid, const std::complex<double>* in,
                       std::complex<double>* out) {
    PlanPair p = PlanCache::instance().get(grid.num_modes());
    fftw_execute_dft(p.fwd,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
    const double scale = grid.dx();
    // The grid places x_0 = -L/2 while the DFT assumes x_0 = 0; the shift is a
    // per-mode phase e^{-i xi_k (-L/2)} = (-1)^{mode}.
    for (std::size_t k = 0; k < grid.num_modes(); ++k) {
        double sign = (grid.mode(k) % 2 == 0) ? 1.0 : -1.0;
        out[k] *= scale * sign;
    }
}

void inverse_transform(const GridSpec& grid, const std::complex<double>* in,
                       std::complex<double>* out) {
    const std::size_t n = grid.num_modes();
    std::vector<std::complex<double>> tmp(n);
    for (std::size_t k = 0; k < n; ++k) {
        double sign = (grid.mode(k) % 2 == 0) ? 1.0 : -1.0;
        tmp[k] = in[k] * sign;
    }
    PlanPair p = PlanCache::instance().get(n);
    fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out));
    const double scale = 1.0 / grid.box_length();
    for (std::size_t k = 0; k < n; ++k) out[k] *= scale;
}

std::vector<std::complex<double>> forward_transform(const GridSpec& grid,
                                                    std::span<const std::complex<double>> phys) {
    std::vector<std::complex<double>> out(grid.num_modes());
    forward_transform(grid, phys.data(), out.data());
    return out;
}

std::vector<std::complex<double>> inverse_transform(const GridSpec& grid,
                                                    std::span<const std::complex<double>> spec) {
    std::vector<std::complex<double>> out(grid.num_modes());
    inverse_transform(grid, spec.data(), out.data());
    return out;
}

} // namespace nlslab
