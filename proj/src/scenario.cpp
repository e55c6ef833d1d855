// SPDX-License-Identifier: Apache-2.0
#include "qmrts/scenario.hpp"

#include "qmrts/errors.hpp"
#include "qmrts/propagation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace qmrts {

std::size_t AngleGrid::size() const
{
    if (!(step_rad > 0.0) || max_rad < min_rad)
        return 0;
    // Tolerate rounding in the span/step ratio so that e.g. [-90, 90] in
    // 0.01° steps has 18001 points.
    const double steps = (max_rad - min_rad) / step_rad;
    return static_cast<std::size_t>(std::floor(steps + 1e-9)) + 1;
}

double AngleGrid::at(std::size_t i) const
{
    return std::min(min_rad + static_cast<double>(i) * step_rad, max_rad);
}

std::vector<double> AngleGrid::points() const
{
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = at(i);
    return out;
}

namespace {

void require(bool ok, std::string_view what)
{
    if (!ok)
        throw ValidationError(std::string(what));
}

bool within_half_pi(double rad)
{
    return rad >= -kPi / 2 && rad <= kPi / 2;
}

} // namespace

ValidationReport validate(const Scenario& s)
{
    const auto& c = s.chirp;
    require(c.start_frequency_hz > 0.0, "fc_hz: fc > 0 required");
    require(c.bandwidth_hz > 0.0, "b_hz: B > 0 required");
    require(c.period_s > 0.0, "t_s: T > 0 required");
    require(c.samples >= 2, fmt::format("ns: Ns ≥ 2 required (got {})", c.samples));

    const auto& a = s.array;
    require(a.tx_count >= 1, "ntx: Ntx ≥ 1 required");
    require(a.rx_count >= 1, "nrx: Nrx ≥ 1 required");
    require(a.tx_spacing_m > 0.0, "dtx: dtx > 0 required");
    require(a.rx_spacing_m > 0.0, "drx: drx > 0 required");

    const auto& r = s.rts;
    require(r.distance_m > 0.0, "rc_m: Rc > 0 required");
    require(within_half_pi(r.theta_rx_rad),
            fmt::format("theta_rx_deg: θrx out of [−90°, 90°] (got {}°)", rad_to_deg(r.theta_rx_rad)));
    require(within_half_pi(r.theta_tx_rad),
            fmt::format("theta_tx_deg: θtx out of [−90°, 90°] (got {}°)", rad_to_deg(r.theta_tx_rad)));
    require(r.delay_s >= 0.0, "tau_rts_s: τrts ≥ 0 required");
    require(r.if_frequency_hz >= 0.0, "f_rts_hz: frts ≥ 0 required");
    require(r.amplitude > 0.0, "amplitude: A > 0 required");
    require(r.tx_range_offset_m >= 0.0, "transmitter range offset must be ≥ 0");

    const auto& g = s.grid;
    require(g.step_rad > 0.0, "angle_step_deg: step > 0 required");
    require(g.min_rad < g.max_rad, "angle_min_deg/angle_max_deg: min < max required");
    require(within_half_pi(g.min_rad) && within_half_pi(g.max_rad),
            "angle_min_deg/angle_max_deg: grid must lie within [−90°, 90°]");
    require(g.size() >= 3, "angle grid needs at least 3 points");

    ValidationReport report;
    report.wavelength_m = s.wavelength_m();
    report.sample_rate_hz = c.sample_rate_hz();
    report.far_field_m = far_field_distance(s);
    report.max_delay_s = max_total_delay(s);
    report.max_beat_hz = c.slope_hz_per_s() * report.max_delay_s;
    const double nyquist = 0.5 * report.sample_rate_hz;
    report.nyquist_margin = (nyquist - report.max_beat_hz) / nyquist;

    require(report.max_beat_hz < nyquist,
            fmt::format("Nyquist: max beat frequency {:.6g} Hz must stay below fs/2 = {:.6g} Hz "
                        "(increase ns or reduce rc_m/tau_rts_s)",
                        report.max_beat_hz, nyquist));

    if (r.distance_m < report.far_field_m)
        report.warnings.push_back(
            fmt::format("far field: Rc = {:.6g} m is inside 2D²/λ = {:.6g} m; "
                        "plane-wave delays are approximate",
                        r.distance_m, report.far_field_m));
    return report;
}

double rts_displacement(const Scenario& s)
{
    return s.rts.distance_m * (std::sin(s.rts.theta_tx_rad) - std::sin(s.rts.theta_rx_rad));
}

Scenario reference_setup()
{
    Scenario s;
    s.chirp.start_frequency_hz = 77e9;
    s.chirp.bandwidth_hz = 1e9;
    const double lambda = s.chirp.wavelength_m();
    s.array = {2, 4, 2.0 * lambda, 0.5 * lambda};
    s.rts.distance_m = 1.0;
    s.rts.if_frequency_hz = 500e6;
    return s;
}

} // namespace qmrts
