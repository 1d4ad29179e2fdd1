#include "critset/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <algorithm>
#include <complex>
#include <mutex>
#include <numbers>
#include <vector>

namespace critset {

namespace {
// FFTW planners are not thread safe.
std::mutex plan_mutex;

// Shared transform: order 0 is a pure (optionally denoised) projection.
GridFunction fourier_multiplier(const GridFunction& u, int order, double denoise_floor) {
    const std::size_t n = u.size();
    const double L = u.domain_length();
    std::vector<double> in(u.values());
    std::vector<std::complex<double>> spec(n / 2 + 1);
    std::vector<double> out(n);

    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                   reinterpret_cast<fftw_complex*>(spec.data()), FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                   reinterpret_cast<fftw_complex*>(spec.data()), out.data(),
                                   FFTW_ESTIMATE);
    }
    fftw_execute(fwd);

    if (denoise_floor > 0.0) {
        double peak = 0.0;
        for (const auto& c : spec) peak = std::max(peak, std::abs(c));
        // Noise estimate: the median coefficient magnitude over the top third
        // of the modes. Spectra of smooth functions decay there, so a flat
        // plateau is rounding noise.
        std::vector<double> tail;
        for (std::size_t k = 2 * spec.size() / 3; k < spec.size(); ++k)
            tail.push_back(std::abs(spec[k]));
        double noise = 0.0;
        if (!tail.empty()) {
            std::nth_element(tail.begin(), tail.begin() + tail.size() / 2, tail.end());
            noise = tail[tail.size() / 2];
        }
        const double cutoff = std::max(denoise_floor * peak, 8.0 * noise);
        // Zero sub-cutoff coefficients and the whole plateau beyond the last
        // genuine mode (noise spikes there can exceed the cutoff).
        std::size_t last = 0;
        for (std::size_t k = 0; k < spec.size(); ++k)
            if (std::abs(spec[k]) >= cutoff) last = k;
        for (std::size_t k = 0; k < spec.size(); ++k)
            if (k > last || std::abs(spec[k]) < cutoff) spec[k] = 0.0;
    }

    const std::complex<double> i2pi(0.0, 2.0 * std::numbers::pi / L);
    for (std::size_t k = 0; k < spec.size(); ++k) {
        std::complex<double> mult(1.0, 0.0);
        const std::complex<double> ik = i2pi * static_cast<double>(k);
        for (int j = 0; j < order; ++j) mult *= ik;
        spec[k] *= mult / static_cast<double>(n);
    }
    // Nyquist mode has no well-defined odd derivative on a real grid.
    if (n % 2 == 0 && order % 2 == 1) spec.back() = 0.0;

    fftw_execute(bwd);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    return {std::move(out), L, Boundary::Periodic};
}

} // namespace

GridFunction spectral_derivative(const GridFunction& u, int order, double denoise_floor) {
    if (u.boundary() != Boundary::Periodic)
        throw invalid_input(
            "spectral_derivative requires a periodic grid; use finite differences for Dirichlet data");
    if (order < 1 || order > 3)
        throw invalid_input("spectral_derivative supports orders 1..3");
    if (denoise_floor < 0.0 || denoise_floor >= 1.0)
        throw invalid_input("denoise_floor must lie in [0, 1)");
    return fourier_multiplier(u, order, denoise_floor);
}

GridFunction spectral_denoise(const GridFunction& u, double denoise_floor) {
    if (u.boundary() != Boundary::Periodic)
        throw invalid_input("spectral_denoise requires a periodic grid");
    if (denoise_floor <= 0.0 || denoise_floor >= 1.0)
        throw invalid_input("denoise_floor must lie in (0, 1)");
    return fourier_multiplier(u, 0, denoise_floor);
}

} // namespace critset
