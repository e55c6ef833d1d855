// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference computations. Everything here is written from the
// model equations directly and shares no code with the library's numeric
// paths (FFT, steering, kernels, refinement).
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using LComplex = std::complex<long double>;

inline constexpr long double kPiL = std::numbers::pi_v<long double>;
inline constexpr double kC0 = 299'792'458.0;

// O(N²) forward DFT, e^{-j2πkn/N}, accumulated in long double.
inline std::vector<Complex> dft(std::span<const Complex> x)
{
    const std::size_t n = x.size();
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        LComplex acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const long double arg = -2.0L * kPiL * static_cast<long double>((k * i) % n) / n;
            acc += LComplex(x[i].real(), x[i].imag()) * LComplex(std::cos(arg), std::sin(arg));
        }
        out[k] = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    }
    return out;
}

struct Geometry {
    std::size_t ntx, nrx;
    double dtx, drx;       // m
    double theta_rx, theta_tx; // rad
    double rc;             // m
    double fc, bandwidth;  // Hz
};

// Element phase of the detected range bin in cycles, from the one-way path
// lengths and the chirp-centre frequency, without whole-turn reduction.
inline long double element_cycles(const Geometry& g, std::size_t tx, std::size_t rx)
{
    const long double path = 2.0L * g.rc + static_cast<long double>(g.dtx) * tx * std::sin((long double)g.theta_rx) +
                             static_cast<long double>(g.drx) * rx * std::sin((long double)g.theta_tx);
    return (static_cast<long double>(g.fc) + 0.5L * g.bandwidth) * path / kC0;
}

// |Σ_tx Σ_rx exp{j2π(array cycles)} exp{-j2π (dtx·tx + drx·rx) sin α / λc}|
// evaluated term by term (no geometric-series closed form).
inline double direct_sum_magnitude(const Geometry& g, double alpha)
{
    const long double lambda_c = kC0 / (static_cast<long double>(g.fc) + 0.5L * g.bandwidth);
    const long double base = element_cycles(g, 0, 0);
    LComplex acc = 0;
    for (std::size_t tx = 0; tx < g.ntx; ++tx)
        for (std::size_t rx = 0; rx < g.nrx; ++rx) {
            const long double cyc = element_cycles(g, tx, rx) - base -
                                    (static_cast<long double>(g.dtx) * tx + static_cast<long double>(g.drx) * rx) *
                                        std::sin((long double)alpha) / lambda_c;
            acc += LComplex(std::cos(2.0L * kPiL * cyc), std::sin(2.0L * kPiL * cyc));
        }
    return static_cast<double>(std::abs(acc));
}

// Grid point of the largest value on [lo, hi] with the given step (degrees);
// no interpolation.
inline double fine_grid_argmax_deg(const std::function<double(double)>& f_of_deg, double lo,
                                   double hi, double step)
{
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    double best_x = lo;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + static_cast<double>(i) * step;
        const double v = f_of_deg(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    return best_x;
}

inline double deg(double rad) { return rad * 180.0 / std::numbers::pi; }
inline double rad(double deg) { return deg * std::numbers::pi / 180.0; }

} // namespace oracle
