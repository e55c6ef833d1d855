// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace qmrts {

inline constexpr double kSpeedOfLight = 299'792'458.0; // m/s, exact SI value
inline constexpr double kPi = std::numbers::pi;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// FMCW chirp of the radar under test.
struct ChirpConfig {
    double start_frequency_hz = 0.0;
    double bandwidth_hz = 0.0;
    double period_s = 100e-6;
    std::size_t samples = 1024;

    double sample_rate_hz() const { return static_cast<double>(samples) / period_s; }
    double slope_hz_per_s() const { return bandwidth_hz / period_s; }
    double wavelength_m() const { return kSpeedOfLight / start_frequency_hz; }

    // Wavelength at the middle of the sweep. The dechirped element phases
    // advance at fc + B/2, so array processing is done at this wavelength.
    double center_wavelength_m() const
    {
        return kSpeedOfLight / (start_frequency_hz + 0.5 * bandwidth_hz);
    }

    bool operator==(const ChirpConfig&) const = default;
};

// Uniform linear TX and RX arrays of the radar, both along azimuth.
struct RadarArrayConfig {
    std::size_t tx_count = 1;
    std::size_t rx_count = 1;
    double tx_spacing_m = 0.0;
    double rx_spacing_m = 0.0;

    std::size_t virtual_count() const { return tx_count * rx_count; }

    // Extent of the virtual array: dtx(Ntx-1) + drx(Nrx-1).
    double virtual_aperture_m() const
    {
        return tx_spacing_m * static_cast<double>(tx_count - 1) +
               rx_spacing_m * static_cast<double>(rx_count - 1);
    }

    bool operator==(const RadarArrayConfig&) const = default;
};

// One quasi-monostatic RTS channel. Angles are azimuths as seen from the
// radar, positive towards increasing array index.
struct RtsChannelConfig {
    double distance_m = 1.0;
    double theta_rx_rad = 0.0;
    double theta_tx_rad = 0.0;
    double delay_s = 0.0;
    double if_frequency_hz = 0.0;
    double amplitude = 1.0;
    // Extra one-way path from the RTS transmitter back to the radar. Not part
    // of the config file; displacement sweeps set it for range compensation.
    double tx_range_offset_m = 0.0;

    bool operator==(const RtsChannelConfig&) const = default;
};

// Uniform grid in azimuth, inclusive of both ends when the span is a whole
// number of steps.
struct AngleGrid {
    double min_rad = deg_to_rad(-90.0);
    double max_rad = deg_to_rad(90.0);
    double step_rad = deg_to_rad(0.01);

    static AngleGrid from_degrees(double min_deg, double max_deg, double step_deg)
    {
        return {deg_to_rad(min_deg), deg_to_rad(max_deg), deg_to_rad(step_deg)};
    }

    std::size_t size() const;
    double at(std::size_t i) const;
    std::vector<double> points() const;

    bool operator==(const AngleGrid&) const = default;
};

struct Scenario {
    ChirpConfig chirp;
    RadarArrayConfig array;
    RtsChannelConfig rts;
    AngleGrid grid;

    double wavelength_m() const { return chirp.wavelength_m(); }
    double array_wavelength_m() const { return chirp.center_wavelength_m(); }

    bool operator==(const Scenario&) const = default;
};

struct ValidationReport {
    double wavelength_m = 0.0;
    double sample_rate_hz = 0.0;
    double far_field_m = 0.0;
    double max_delay_s = 0.0;
    double max_beat_hz = 0.0;
    // (fs/2 - max beat) / (fs/2); positive when sampling is adequate.
    double nyquist_margin = 0.0;
    std::vector<std::string> warnings;

    bool has_warnings() const { return !warnings.empty(); }
};

// Checks every invariant of the scenario. Throws ValidationError naming the
// first violated invariant; far-field violations are reported as warnings.
ValidationReport validate(const Scenario& s);

// Signed lateral separation of the RTS antennas, Rc (sin θtx - sin θrx).
double rts_displacement(const Scenario& s);

// Reference bench setup: 77 GHz start, 1 GHz sweep, 2 TX at 2λ, 4 RX at λ/2,
// 500 MHz RTS intermediate frequency, Rc = 1 m, both antennas at boresight.
Scenario reference_setup();

} // namespace qmrts
