// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qmrts/scenario.hpp"

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace qmrts {

enum class KernelMode {
    sinc,      // small-angle sinc product
    dirichlet, // exact geometric-sum magnitude
};

std::string_view to_string(KernelMode mode);
// Throws std::invalid_argument for anything but "sinc" or "dirichlet".
KernelMode parse_kernel_mode(std::string_view text);

// sin(πx)/(πx), exactly 1 at x = 0.
double sinc(double x);

// sin(πnx)/(n sin(πx)), with the removable singularities at integer x
// resolved. Signed; n = 1 gives 1 everywhere.
double dirichlet(std::size_t n, double x);

// |x_A(α)| of the closed-form model:
//   A Ns Ntx Nrx |K_tx((dtx/λ)(sin θrx - sin α))| |K_rx((drx/λ)(sin θtx - sin α))|
// where K is sinc(N·u) or dirichlet(N, u) depending on the mode.
double closed_form_magnitude(const Scenario& s, KernelMode mode, double alpha_rad);

struct ClosedFormSpectrum {
    std::vector<double> angles_rad;
    std::vector<double> magnitude;
    double phase_rad = 0.0; // φ_A, common to every grid point
    KernelMode mode = KernelMode::dirichlet;
};

ClosedFormSpectrum closed_form_spectrum(const Scenario& s, KernelMode mode);
ClosedFormSpectrum closed_form_spectrum(const Scenario& s, KernelMode mode, const AngleGrid& grid);

// φ_A = 2π[(fc + B/2) 2Rc/c0 + (frts + B/2) τrts
//          + (dtx/2λ)(Ntx-1) sin θrx + (drx/2λ)(Nrx-1) sin θtx], in [0, 2π).
double closed_form_phase(const Scenario& s);

// Step of the grid used by predicted_peak().
inline constexpr double kPredictionStepDeg = 0.001;

// Argmax of the closed-form magnitude on a 0.001° grid spanning the
// scenario's grid bounds, refined parabolically in sin α.
double predicted_peak(const Scenario& s, KernelMode mode);

// Grating-lobe diagnostics on the closed-form spectrum.
struct LobeCheck {
    double peak_rad = 0.0;
    double runner_up_rad = 0.0;
    double runner_up_gap_db = 0.0; // >= 0; infinite when there is no other lobe
    // The global maximum is not the lobe nearest the curvature-weighted
    // centroid of sin θrx and sin θtx.
    bool main_lobe_displaced = false;

    bool ambiguous() const { return main_lobe_displaced || runner_up_gap_db < 3.0; }
};

LobeCheck check_grating_lobes(const Scenario& s, KernelMode mode = KernelMode::dirichlet);

// alpha_deg,re,im,mag_db,mode
void write_closed_form_csv(const ClosedFormSpectrum& c, std::ostream& out);

} // namespace qmrts
