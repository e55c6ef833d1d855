// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qmrts/scenario.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qmrts {

// Contents of the optional [sweep] section.
struct SweepSettings {
    double max_displacement_m = 0.1;
    std::size_t points = 51;
    std::vector<std::string> subsets{"2x4", "2x2", "1x4"};
    bool range_compensation = true;

    bool operator==(const SweepSettings&) const = default;
};

struct ScenarioDocument {
    Scenario scenario;
    std::optional<SweepSettings> sweep;
    ValidationReport report;
};

// Parses an INI-style document with sections [chirp], [array], [rts], [grid]
// and optionally [sweep]. Unknown sections or keys are rejected.
//
// Required keys: fc_hz, b_hz, ntx, nrx, one of dtx_m/dtx_lambda, one of
// drx_m/drx_lambda, rc_m, theta_rx_deg, theta_tx_deg. Optional keys default
// to t_s = 100e-6, ns = 1024, tau_rts_s = 0, f_rts_hz = 0, amplitude = 1
// and the grid to [-90°, 90°] in 0.01° steps.
//
// Throws ParseError for malformed input and ValidationError when the
// resolved scenario violates an invariant.
ScenarioDocument load_document(std::string_view text);
ScenarioDocument load_document_file(const std::filesystem::path& path);

Scenario load_scenario(std::string_view text);

// Emits a document that load_document() reads back to an identical Scenario.
// Spacings are written in metres; angles in degrees chosen so that the
// degree-to-radian conversion on load reproduces the stored value exactly.
std::string emit_scenario(const Scenario& s, const std::optional<SweepSettings>& sweep = {});

// Degree value whose conversion with deg_to_rad() gives exactly `rad`, if one
// exists within a few ulps of rad_to_deg(rad); otherwise rad_to_deg(rad).
double exact_degrees(double rad);

} // namespace qmrts
