// SPDX-License-Identifier: Apache-2.0
#include "qmrts/closed_form.hpp"

#include "qmrts/peak_search.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace qmrts {

namespace {

double frac(double cycles)
{
    return cycles - std::floor(cycles);
}

double kernel(KernelMode mode, std::size_t n, double u)
{
    return mode == KernelMode::sinc ? sinc(static_cast<double>(n) * u) : dirichlet(n, u);
}

} // namespace

std::string_view to_string(KernelMode mode)
{
    return mode == KernelMode::sinc ? "sinc" : "dirichlet";
}

KernelMode parse_kernel_mode(std::string_view text)
{
    if (text == "sinc")
        return KernelMode::sinc;
    if (text == "dirichlet")
        return KernelMode::dirichlet;
    throw std::invalid_argument(fmt::format("unknown kernel mode '{}' (sinc|dirichlet)", text));
}

double sinc(double x)
{
    const double px = kPi * x;
    if (std::abs(x) < 1e-8)
        return 1.0 - px * px / 6.0;
    return std::sin(px) / px;
}

double dirichlet(std::size_t n, double x)
{
    if (n <= 1)
        return 1.0;
    // x = m + r: the ratio picks up (-1)^{m(n-1)} and is evaluated at r.
    const double m = std::round(x);
    const double r = x - m;
    const double nd = static_cast<double>(n);
    const bool flip = std::fmod(std::abs(m) * (nd - 1.0), 2.0) == 1.0;
    double value;
    if (std::abs(r) < 1e-8) {
        const double pr = kPi * r;
        value = 1.0 - (nd * nd - 1.0) * pr * pr / 6.0;
    } else {
        value = std::sin(kPi * nd * r) / (nd * std::sin(kPi * r));
    }
    return flip ? -value : value;
}

double closed_form_magnitude(const Scenario& s, KernelMode mode, double alpha_rad)
{
    const double lambda = s.array_wavelength_m();
    const double sin_alpha = std::sin(alpha_rad);
    const double u_tx = s.array.tx_spacing_m / lambda * (std::sin(s.rts.theta_rx_rad) - sin_alpha);
    const double u_rx = s.array.rx_spacing_m / lambda * (std::sin(s.rts.theta_tx_rad) - sin_alpha);
    const double gain = s.rts.amplitude * static_cast<double>(s.chirp.samples) *
                        static_cast<double>(s.array.tx_count) *
                        static_cast<double>(s.array.rx_count);
    return gain * std::abs(kernel(mode, s.array.tx_count, u_tx)) *
           std::abs(kernel(mode, s.array.rx_count, u_rx));
}

ClosedFormSpectrum closed_form_spectrum(const Scenario& s, KernelMode mode)
{
    return closed_form_spectrum(s, mode, s.grid);
}

ClosedFormSpectrum closed_form_spectrum(const Scenario& s, KernelMode mode, const AngleGrid& grid)
{
    ClosedFormSpectrum c;
    c.mode = mode;
    c.phase_rad = closed_form_phase(s);
    c.angles_rad = grid.points();
    c.magnitude.resize(c.angles_rad.size());
    for (std::size_t i = 0; i < c.angles_rad.size(); ++i)
        c.magnitude[i] = closed_form_magnitude(s, mode, c.angles_rad[i]);
    return c;
}

double closed_form_phase(const Scenario& s)
{
    const auto& c = s.chirp;
    const auto& r = s.rts;
    const double lambda = s.array_wavelength_m();
    const double half_b = 0.5 * c.bandwidth_hz;
    const double cycles =
        frac((c.start_frequency_hz + half_b) * 2.0 * r.distance_m / kSpeedOfLight) +
        frac((r.if_frequency_hz + half_b) * r.delay_s) +
        s.array.tx_spacing_m / (2.0 * lambda) * static_cast<double>(s.array.tx_count - 1) *
            std::sin(r.theta_rx_rad) +
        s.array.rx_spacing_m / (2.0 * lambda) * static_cast<double>(s.array.rx_count - 1) *
            std::sin(r.theta_tx_rad);
    return 2.0 * kPi * frac(cycles);
}

namespace {

AngleGrid prediction_grid(const Scenario& s)
{
    return {s.grid.min_rad, s.grid.max_rad, deg_to_rad(kPredictionStepDeg)};
}

std::vector<double> squared(std::span<const double> v)
{
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](double x) { return x * x; });
    return out;
}

} // namespace

double predicted_peak(const Scenario& s, KernelMode mode)
{
    const auto c = closed_form_spectrum(s, mode, prediction_grid(s));
    const auto power = squared(c.magnitude);
    return refine_parabolic_sin(c.angles_rad, power, argmax_first(power));
}

LobeCheck check_grating_lobes(const Scenario& s, KernelMode mode)
{
    const auto c = closed_form_spectrum(s, mode, prediction_grid(s));
    const auto& mag = c.magnitude;
    const std::size_t global = argmax_first(mag);

    auto lobes = local_maxima(mag);
    if (std::find(lobes.begin(), lobes.end(), global) == lobes.end())
        lobes.push_back(global);

    LobeCheck check;
    check.peak_rad = c.angles_rad[global];
    check.runner_up_gap_db = std::numeric_limits<double>::infinity();
    double runner_up = 0.0;
    for (auto i : lobes)
        if (i != global && mag[i] > runner_up) {
            runner_up = mag[i];
            check.runner_up_rad = c.angles_rad[i];
        }
    if (runner_up > 0.0)
        check.runner_up_gap_db = 20.0 * std::log10(mag[global] / runner_up);

    // Near the peaks both kernels fall off like 1 - π²(N²-1)(d u/λ)²/6, so the
    // main lobe sits near the curvature-weighted mean of the two angles.
    const double lambda = s.array_wavelength_m();
    auto weight = [&](std::size_t n, double d) {
        const double nd = static_cast<double>(n);
        return (nd * nd - 1.0) * (d / lambda) * (d / lambda);
    };
    const double w_tx = weight(s.array.tx_count, s.array.tx_spacing_m);
    const double w_rx = weight(s.array.rx_count, s.array.rx_spacing_m);
    if (w_tx + w_rx > 0.0) {
        const double centroid =
            (w_tx * std::sin(s.rts.theta_rx_rad) + w_rx * std::sin(s.rts.theta_tx_rad)) /
            (w_tx + w_rx);
        std::size_t nearest = global;
        double best = std::numeric_limits<double>::infinity();
        for (auto i : lobes) {
            const double dist = std::abs(std::sin(c.angles_rad[i]) - centroid);
            if (dist < best) {
                best = dist;
                nearest = i;
            }
        }
        check.main_lobe_displaced = nearest != global;
    }
    return check;
}

void write_closed_form_csv(const ClosedFormSpectrum& c, std::ostream& out)
{
    out << "alpha_deg,re,im,mag_db,mode\n";
    const double cos_phase = std::cos(c.phase_rad);
    const double sin_phase = std::sin(c.phase_rad);
    for (std::size_t i = 0; i < c.magnitude.size(); ++i) {
        const double m = c.magnitude[i];
        out << fmt::format("{:.9g},{:.9g},{:.9g},{:.9g},{}\n", rad_to_deg(c.angles_rad[i]),
                           m * cos_phase, m * sin_phase,
                           20.0 * std::log10(std::max(m, 1e-300)), to_string(c.mode));
    }
}

} // namespace qmrts
