// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qmrts/scenario.hpp"
#include "qmrts/signal_chain.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace qmrts {

struct AngleSpectrum {
    std::vector<double> angles_rad;
    std::vector<Complex> values;
    std::size_t peak_index = 0;  // grid argmax of |x_A|
    double peak_angle_rad = 0.0; // refined
    Complex peak_value{};        // x_A at peak_index

    double grid_peak_angle_rad() const { return angles_rad.at(peak_index); }
    std::vector<double> power() const;
};

// Delay-and-sum over the virtual array using the detected-bin value of each
// element:
//
//   x_A[α] = Σ_tx Σ_rx x_R[tx, rx] exp{-j2π (dtx·ntx + drx·nrx) sin α / λ}
//
// with λ the chirp-centre wavelength and ntx, nrx the elements' positions in
// the original array. The sum over elements runs sequentially in index
// order. The peak is refined with refine_peak().
AngleSpectrum beamform(const RangeSpectrum& r, const Scenario& s);

// Same, on an explicit grid.
AngleSpectrum beamform(const RangeSpectrum& r, const Scenario& s, const AngleGrid& grid);

// Parabolic interpolation of |x_A|² in sin α around the grid maximum.
// Throws ModelError when the maximum sits on the grid boundary.
double refine_peak(const AngleSpectrum& a);

// Keeps the listed element positions (indices into r's TX and RX lists).
// Throws std::invalid_argument for an empty selection and std::out_of_range
// for an invalid index.
RangeSpectrum select_subset(const RangeSpectrum& r, std::span<const std::size_t> tx_keep,
                            std::span<const std::size_t> rx_keep);

// alpha_deg,re,im,mag_db
void write_angle_csv(const AngleSpectrum& a, std::ostream& out);

} // namespace qmrts
