// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qmrts/scenario.hpp"

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace qmrts {

using Complex = std::complex<double>;

struct BeatOptions {
    // Keep the -(B/2T)τ² term of the dechirped phase.
    bool residual_video_phase = true;
};

// Noiseless dechirped samples for every virtual element, [tx][rx][n].
class BeatCube {
public:
    BeatCube(std::size_t tx_count, std::size_t rx_count, std::size_t samples,
             double sample_rate_hz);

    std::size_t tx_count() const { return tx_count_; }
    std::size_t rx_count() const { return rx_count_; }
    std::size_t samples() const { return samples_; }
    double sample_rate_hz() const { return sample_rate_hz_; }

    std::span<Complex> element(std::size_t tx, std::size_t rx);
    std::span<const Complex> element(std::size_t tx, std::size_t rx) const;

private:
    std::size_t offset(std::size_t tx, std::size_t rx) const;

    std::size_t tx_count_;
    std::size_t rx_count_;
    std::size_t samples_;
    double sample_rate_hz_;
    std::vector<Complex> data_;
};

// Per-element range spectra with the detected range bin. Elements keep
// their index in the original radar array so that subsets beamform with
// the right positions.
class RangeSpectrum {
public:
    // Full spectra laid out [tx][rx][k]; detection runs on construction.
    RangeSpectrum(std::vector<std::size_t> tx_indices, std::vector<std::size_t> rx_indices,
                  std::size_t bins, std::size_t zero_pad, std::vector<Complex> spectra);

    // Detected-bin values only, laid out [tx][rx].
    static RangeSpectrum from_detected(std::vector<std::size_t> tx_indices,
                                       std::vector<std::size_t> rx_indices,
                                       std::size_t detected_bin, std::size_t zero_pad,
                                       std::vector<Complex> detected);

    std::size_t tx_count() const { return tx_indices_.size(); }
    std::size_t rx_count() const { return rx_indices_.size(); }
    const std::vector<std::size_t>& tx_indices() const { return tx_indices_; }
    const std::vector<std::size_t>& rx_indices() const { return rx_indices_; }

    std::size_t bins() const { return bins_; }
    std::size_t zero_pad() const { return zero_pad_; }
    bool has_spectra() const { return !spectra_.empty(); }

    // k* in units of the (possibly zero-padded) DFT.
    std::size_t detected_bin() const { return detected_bin_; }
    // k* in units of the unpadded DFT, i.e. the f_R that pairs with Bτ.
    double beat_index() const
    {
        return static_cast<double>(detected_bin_) / static_cast<double>(zero_pad_);
    }

    std::span<const Complex> spectrum(std::size_t tx, std::size_t rx) const;
    Complex detected_value(std::size_t tx, std::size_t rx) const;

private:
    RangeSpectrum() = default;
    std::size_t element(std::size_t tx, std::size_t rx) const;

    std::vector<std::size_t> tx_indices_;
    std::vector<std::size_t> rx_indices_;
    std::size_t bins_ = 0;
    std::size_t zero_pad_ = 1;
    std::size_t detected_bin_ = 0;
    std::vector<Complex> spectra_;
    std::vector<Complex> detected_;
};

// Beat frequency (B/T)τ of element (tx, rx).
double beat_frequency(const Scenario& s, std::size_t tx, std::size_t rx);

// Sample n of element (tx, rx) is A exp{j2π[fc τc + frts τrts + (B/T)τ t_n
// - (B/2T)τ²]} with t_n = nT/Ns.
//
// Throws ModelError when any element's beat frequency reaches fs/2.
BeatCube synthesize_beat(const Scenario& s, BeatOptions options = {});

// Forward DFT (e^{-j2πkn/N}) of every element, zero padded to
// zero_pad * Ns points; zero_pad must be a power of two.
RangeSpectrum range_dft(const BeatCube& cube, std::size_t zero_pad = 1);

// arg of the detected-bin value, in (-π, π].
double detected_bin_phase(const RangeSpectrum& r, std::size_t tx, std::size_t rx);

// Range-bin phase model 2π[fc τc + frts τrts + (Bτ - f_R)/2], wrapped to (-π, π].
double predicted_bin_phase(const Scenario& s, std::size_t tx, std::size_t rx, double beat_index);

// -π B τ²/T for element (tx, rx), unwrapped.
double residual_video_phase(const Scenario& s, std::size_t tx, std::size_t rx);

// Detected-bin values predicted by the range-bin model: A Ns exp{j φ_R} per
// element with f_R the bin nearest to Bτ of element (0, 0).
RangeSpectrum analytic_range_spectrum(const Scenario& s);

double wrap_phase(double phase);

// CSV dumps: ntx,nrx,n,re,im and ntx,nrx,k,re,im.
void write_beat_csv(const BeatCube& cube, std::ostream& out);
void write_range_csv(const RangeSpectrum& r, std::ostream& out);

} // namespace qmrts
