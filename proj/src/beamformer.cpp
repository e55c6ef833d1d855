// SPDX-License-Identifier: Apache-2.0
#include "qmrts/beamformer.hpp"

#include "qmrts/peak_search.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qmrts {

std::vector<double> AngleSpectrum::power() const
{
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(),
                   [](const Complex& v) { return std::norm(v); });
    return out;
}

AngleSpectrum beamform(const RangeSpectrum& r, const Scenario& s)
{
    return beamform(r, s, s.grid);
}

AngleSpectrum beamform(const RangeSpectrum& r, const Scenario& s, const AngleGrid& grid)
{
    // Element positions in wavelengths, in [tx][rx] order.
    const double lambda = s.array_wavelength_m();
    std::vector<double> positions;
    std::vector<Complex> inputs;
    for (std::size_t tx = 0; tx < r.tx_count(); ++tx)
        for (std::size_t rx = 0; rx < r.rx_count(); ++rx) {
            const double pos = s.array.tx_spacing_m * static_cast<double>(r.tx_indices()[tx]) +
                               s.array.rx_spacing_m * static_cast<double>(r.rx_indices()[rx]);
            positions.push_back(pos / lambda);
            inputs.push_back(r.detected_value(tx, rx));
        }

    AngleSpectrum a;
    a.angles_rad = grid.points();
    a.values.resize(a.angles_rad.size());
    for (std::size_t i = 0; i < a.angles_rad.size(); ++i) {
        const double sin_alpha = std::sin(a.angles_rad[i]);
        Complex acc{};
        for (std::size_t e = 0; e < inputs.size(); ++e)
            acc += inputs[e] * std::polar(1.0, -2.0 * kPi * positions[e] * sin_alpha);
        a.values[i] = acc;
    }

    const auto power = a.power();
    a.peak_index = argmax_first(power);
    a.peak_value = a.values[a.peak_index];
    a.peak_angle_rad = refine_parabolic_sin(a.angles_rad, power, a.peak_index);
    return a;
}

double refine_peak(const AngleSpectrum& a)
{
    const auto power = a.power();
    return refine_parabolic_sin(a.angles_rad, power, argmax_first(power));
}

RangeSpectrum select_subset(const RangeSpectrum& r, std::span<const std::size_t> tx_keep,
                            std::span<const std::size_t> rx_keep)
{
    if (tx_keep.empty() || rx_keep.empty())
        throw std::invalid_argument("antenna subset must keep at least one TX and one RX");
    for (auto tx : tx_keep)
        if (tx >= r.tx_count())
            throw std::out_of_range(fmt::format("TX index {} outside {} elements", tx, r.tx_count()));
    for (auto rx : rx_keep)
        if (rx >= r.rx_count())
            throw std::out_of_range(fmt::format("RX index {} outside {} elements", rx, r.rx_count()));

    std::vector<std::size_t> tx_indices;
    std::vector<std::size_t> rx_indices;
    for (auto tx : tx_keep)
        tx_indices.push_back(r.tx_indices()[tx]);
    for (auto rx : rx_keep)
        rx_indices.push_back(r.rx_indices()[rx]);

    if (!r.has_spectra()) {
        std::vector<Complex> detected;
        for (auto tx : tx_keep)
            for (auto rx : rx_keep)
                detected.push_back(r.detected_value(tx, rx));
        return RangeSpectrum::from_detected(std::move(tx_indices), std::move(rx_indices),
                                            r.detected_bin(), r.zero_pad(), std::move(detected));
    }

    std::vector<Complex> spectra;
    spectra.reserve(tx_keep.size() * rx_keep.size() * r.bins());
    for (auto tx : tx_keep)
        for (auto rx : rx_keep) {
            const auto bins = r.spectrum(tx, rx);
            spectra.insert(spectra.end(), bins.begin(), bins.end());
        }
    return RangeSpectrum(std::move(tx_indices), std::move(rx_indices), r.bins(), r.zero_pad(),
                         std::move(spectra));
}

void write_angle_csv(const AngleSpectrum& a, std::ostream& out)
{
    out << "alpha_deg,re,im,mag_db\n";
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const auto v = a.values[i];
        const double mag_db = 20.0 * std::log10(std::max(std::abs(v), 1e-300));
        out << fmt::format("{:.9g},{:.9g},{:.9g},{:.9g}\n", rad_to_deg(a.angles_rad[i]), v.real(),
                           v.imag(), mag_db);
    }
}

} // namespace qmrts
