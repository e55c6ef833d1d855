// SPDX-License-Identifier: Apache-2.0
#include "qmrts/propagation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmrts {

PathDelays path_delays(const Scenario& s, std::size_t tx, std::size_t rx)
{
    if (tx >= s.array.tx_count || rx >= s.array.rx_count)
        throw std::out_of_range(fmt::format("element ({}, {}) outside {}x{} array", tx, rx,
                                            s.array.tx_count, s.array.rx_count));
    const auto& r = s.rts;
    PathDelays d;
    d.outbound_s = (r.distance_m + s.array.tx_spacing_m * static_cast<double>(tx) *
                                       std::sin(r.theta_rx_rad)) /
                   kSpeedOfLight;
    d.return_s = (r.distance_m + r.tx_range_offset_m +
                  s.array.rx_spacing_m * static_cast<double>(rx) * std::sin(r.theta_tx_rad)) /
                 kSpeedOfLight;
    d.free_space_s = d.outbound_s + d.return_s;
    d.total_s = d.free_space_s + r.delay_s;
    return d;
}

double max_total_delay(const Scenario& s)
{
    // Delays are affine in each index, so the maximum is at a corner.
    double out = 0.0;
    for (std::size_t tx : {std::size_t{0}, s.array.tx_count - 1})
        for (std::size_t rx : {std::size_t{0}, s.array.rx_count - 1})
            out = std::max(out, path_delays(s, tx, rx).total_s);
    return out;
}

double far_field_distance(const Scenario& s)
{
    const double aperture = s.array.virtual_aperture_m();
    return 2.0 * aperture * aperture / s.wavelength_m();
}

} // namespace qmrts
