// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qmrts/closed_form.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace qmrts::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationFailure = 1,
    kRuntimeFailure = 2, // includes model-tolerance failures
    kIoFailure = 3,
};

// Largest pairwise disagreement `compare` accepts between the full chain,
// the direct beamforming of ideal phasors and the closed form.
inline constexpr double kCompareToleranceDeg = 0.02;

struct Options {
    std::optional<double> grid_step_deg;
    std::size_t zero_pad = 1;
    KernelMode mode = KernelMode::dirichlet;
    std::optional<std::string> subset; // NTXxNRX
    bool range_compensation = true;
};

// Each command writes its human-readable report to `out`, diagnostics to
// `err`, and returns an ExitCode.
int cmd_validate(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

// Writes range_spectrum.csv, angle_spectrum.csv, closed_form_spectrum.csv and
// summary.txt into out_dir (created if missing).
int cmd_simulate(const std::filesystem::path& config, const std::filesystem::path& out_dir,
                 const Options& options, std::ostream& out, std::ostream& err);

int cmd_sweep(const std::filesystem::path& config, const std::filesystem::path& out_csv,
              const Options& options, std::ostream& out, std::ostream& err);

int cmd_compare(const std::filesystem::path& config, const Options& options, std::ostream& out,
                std::ostream& err);

} // namespace qmrts::cli
