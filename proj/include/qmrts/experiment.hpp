// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qmrts/beamformer.hpp"
#include "qmrts/closed_form.hpp"
#include "qmrts/config_io.hpp"
#include "qmrts/scenario.hpp"
#include "qmrts/signal_chain.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qmrts {

struct AntennaSubset {
    std::string label;
    std::vector<std::size_t> tx;
    std::vector<std::size_t> rx;
};

// "NTXxNRX" keeps the first NTX transmitters and NRX receivers.
// Throws ValidationError for a malformed label or counts beyond the array.
AntennaSubset parse_subset(std::string_view label, const RadarArrayConfig& array);

// The scenario seen by a contiguous subset starting at element 0.
Scenario restrict_to_subset(const Scenario& s, const AntennaSubset& subset);

struct ChainOutput {
    RangeSpectrum range;
    AngleSpectrum angle;
};

// synthesize_beat -> range_dft -> [select_subset] -> beamform.
ChainOutput run_chain(const Scenario& s, const std::optional<AntennaSubset>& subset = {},
                      std::size_t zero_pad = 1, BeatOptions options = {});

// Inverse of rts_displacement: asin(sin θrx + d/Rc).
// Throws ModelError when the argument leaves [-1, 1].
double displacement_to_theta_tx(double theta_rx_rad, double displacement_m, double distance_m);

struct SweepSpec {
    Scenario base;
    double max_displacement_m = 0.1;
    std::size_t points = 51;
    std::vector<AntennaSubset> subsets;
    bool range_compensation = true;
    std::size_t zero_pad = 1;

    static SweepSpec from_settings(const Scenario& base, const SweepSettings& settings);

    // Throws ValidationError on a violated invariant.
    void validate() const;

    double displacement(std::size_t point) const;
};

struct SweepRow {
    double d_rts_m = 0.0;
    double theta_rx_deg = 0.0;
    double theta_tx_deg = 0.0;
    std::string subset;
    double detected_fullchain_deg = 0.0;
    double detected_closedform_deg = 0.0;
    double deviation_deg = 0.0;
    bool range_compensated = false;
    bool far_field_ok = true;

    bool operator==(const SweepRow&) const = default;
};

// Scenario for one displacement: θtx from the displacement and, with range
// compensation, the transmitter's extra path sqrt(Rc² + d²) - Rc.
Scenario sweep_point_scenario(const SweepSpec& spec, double displacement_m);

// One row per (displacement, subset), subsets grouped per displacement.
// Per-point failures abort with a ModelError naming the point.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

inline constexpr std::string_view kSweepCsvHeader =
    "d_rts_m,theta_rx_deg,theta_tx_deg,subset,detected_fullchain_deg,"
    "detected_closedform_deg,deviation_deg,range_compensated";

void write_results(std::span<const SweepRow> rows, std::ostream& out);

// Writes the CSV to `path`. Throws std::invalid_argument for empty rows
// (nothing is created) and IoError when the file cannot be written.
void emit_results(std::span<const SweepRow> rows, const std::filesystem::path& path);

// Throws ParseError on a malformed file.
std::vector<SweepRow> parse_results(std::istream& in);

struct SubsetSummary {
    std::string subset;
    double max_abs_deviation_deg = 0.0;
    double displacement_at_max_m = 0.0;
};

std::vector<SubsetSummary> summarize(std::span<const SweepRow> rows);

} // namespace qmrts
