// SPDX-License-Identifier: Apache-2.0
#include "qmrts/signal_chain.hpp"

#include "qmrts/errors.hpp"
#include "qmrts/propagation.hpp"

#include <fftw3.h>
#include <fmt/format.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace qmrts {

namespace {

double frac(double cycles)
{
    return cycles - std::floor(cycles);
}

// FFTW's planner is not thread-safe.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

// Forward complex DFT of a fixed length backed by an FFTW_ESTIMATE plan;
// estimate-mode plans are deterministic, so repeated runs are bit-identical.
class ForwardDft {
public:
    explicit ForwardDft(std::size_t n) : n_(n)
    {
        in_.reset(fftw_alloc_complex(n));
        out_.reset(fftw_alloc_complex(n));
        if (!in_ || !out_)
            throw std::bad_alloc();
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_FORWARD,
                                 FFTW_ESTIMATE);
        if (plan_ == nullptr)
            throw ModelError(fmt::format("FFTW could not plan a {}-point DFT", n));
    }
    ForwardDft(const ForwardDft&) = delete;
    ForwardDft& operator=(const ForwardDft&) = delete;
    ~ForwardDft()
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }

    // Zero-extends `input` to the transform length.
    void run(std::span<const Complex> input, std::span<Complex> output)
    {
        for (std::size_t i = 0; i < n_; ++i) {
            const Complex v = i < input.size() ? input[i] : Complex{};
            in_.get()[i][0] = v.real();
            in_.get()[i][1] = v.imag();
        }
        fftw_execute(plan_);
        for (std::size_t i = 0; i < n_; ++i)
            output[i] = {out_.get()[i][0], out_.get()[i][1]};
    }

private:
    struct Free {
        void operator()(fftw_complex* p) const { fftw_free(p); }
    };
    std::size_t n_;
    std::unique_ptr<fftw_complex[], Free> in_;
    std::unique_ptr<fftw_complex[], Free> out_;
    fftw_plan plan_ = nullptr;
};

bool is_power_of_two(std::size_t v)
{
    return v != 0 && (v & (v - 1)) == 0;
}

std::vector<std::size_t> iota_indices(std::size_t n)
{
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = i;
    return out;
}

} // namespace

BeatCube::BeatCube(std::size_t tx_count, std::size_t rx_count, std::size_t samples,
                   double sample_rate_hz)
    : tx_count_(tx_count), rx_count_(rx_count), samples_(samples),
      sample_rate_hz_(sample_rate_hz), data_(tx_count * rx_count * samples)
{
}

std::size_t BeatCube::offset(std::size_t tx, std::size_t rx) const
{
    if (tx >= tx_count_ || rx >= rx_count_)
        throw std::out_of_range(fmt::format("element ({}, {}) outside {}x{} cube", tx, rx,
                                            tx_count_, rx_count_));
    return (tx * rx_count_ + rx) * samples_;
}

std::span<Complex> BeatCube::element(std::size_t tx, std::size_t rx)
{
    return {data_.data() + offset(tx, rx), samples_};
}

std::span<const Complex> BeatCube::element(std::size_t tx, std::size_t rx) const
{
    return {data_.data() + offset(tx, rx), samples_};
}

RangeSpectrum::RangeSpectrum(std::vector<std::size_t> tx_indices,
                             std::vector<std::size_t> rx_indices, std::size_t bins,
                             std::size_t zero_pad, std::vector<Complex> spectra)
    : tx_indices_(std::move(tx_indices)), rx_indices_(std::move(rx_indices)), bins_(bins),
      zero_pad_(zero_pad), spectra_(std::move(spectra))
{
    const std::size_t elements = tx_indices_.size() * rx_indices_.size();
    if (elements == 0 || bins_ == 0 || spectra_.size() != elements * bins_)
        throw std::invalid_argument("RangeSpectrum: spectra do not match the element layout");

    // Noncoherent sum over elements; first maximum wins.
    std::size_t best = 0;
    double best_power = -1.0;
    for (std::size_t k = 0; k < bins_; ++k) {
        double power = 0.0;
        for (std::size_t e = 0; e < elements; ++e)
            power += std::norm(spectra_[e * bins_ + k]);
        if (power > best_power) {
            best_power = power;
            best = k;
        }
    }
    detected_bin_ = best;
    detected_.resize(elements);
    for (std::size_t e = 0; e < elements; ++e)
        detected_[e] = spectra_[e * bins_ + best];
}

RangeSpectrum RangeSpectrum::from_detected(std::vector<std::size_t> tx_indices,
                                           std::vector<std::size_t> rx_indices,
                                           std::size_t detected_bin, std::size_t zero_pad,
                                           std::vector<Complex> detected)
{
    if (tx_indices.empty() || rx_indices.empty() ||
        detected.size() != tx_indices.size() * rx_indices.size())
        throw std::invalid_argument("RangeSpectrum: values do not match the element layout");
    RangeSpectrum r;
    r.tx_indices_ = std::move(tx_indices);
    r.rx_indices_ = std::move(rx_indices);
    r.zero_pad_ = zero_pad;
    r.detected_bin_ = detected_bin;
    r.detected_ = std::move(detected);
    return r;
}

std::size_t RangeSpectrum::element(std::size_t tx, std::size_t rx) const
{
    if (tx >= tx_count() || rx >= rx_count())
        throw std::out_of_range(fmt::format("element ({}, {}) outside {}x{} spectrum", tx, rx,
                                            tx_count(), rx_count()));
    return tx * rx_count() + rx;
}

std::span<const Complex> RangeSpectrum::spectrum(std::size_t tx, std::size_t rx) const
{
    const auto e = element(tx, rx);
    if (!has_spectra())
        throw std::logic_error("RangeSpectrum holds detected-bin values only");
    return {spectra_.data() + e * bins_, bins_};
}

Complex RangeSpectrum::detected_value(std::size_t tx, std::size_t rx) const
{
    return detected_[element(tx, rx)];
}

double wrap_phase(double phase)
{
    double w = std::remainder(phase, 2.0 * kPi);
    if (w <= -kPi)
        w += 2.0 * kPi;
    return w;
}

double beat_frequency(const Scenario& s, std::size_t tx, std::size_t rx)
{
    return s.chirp.slope_hz_per_s() * path_delays(s, tx, rx).total_s;
}

double residual_video_phase(const Scenario& s, std::size_t tx, std::size_t rx)
{
    const double tau = path_delays(s, tx, rx).total_s;
    return -kPi * s.chirp.bandwidth_hz * tau * tau / s.chirp.period_s;
}

BeatCube synthesize_beat(const Scenario& s, BeatOptions options)
{
    const auto& c = s.chirp;
    const double nyquist = 0.5 * c.sample_rate_hz();
    BeatCube cube(s.array.tx_count, s.array.rx_count, c.samples, c.sample_rate_hz());

    for (std::size_t tx = 0; tx < s.array.tx_count; ++tx) {
        for (std::size_t rx = 0; rx < s.array.rx_count; ++rx) {
            const auto d = path_delays(s, tx, rx);
            const double beat = c.slope_hz_per_s() * d.total_s;
            if (beat >= nyquist)
                throw ModelError(fmt::format(
                    "Nyquist: element ({}, {}) beat frequency {:.6g} Hz ≥ fs/2 = {:.6g} Hz", tx, rx,
                    beat, nyquist));

            // Work in cycles and drop whole turns term by term.
            double constant = frac(c.start_frequency_hz * d.free_space_s) +
                              frac(s.rts.if_frequency_hz * s.rts.delay_s);
            if (options.residual_video_phase)
                constant -= frac(0.5 * c.bandwidth_hz * d.total_s * d.total_s / c.period_s);
            // (B/T) τ t_n = Bτ n / Ns
            const double bins = c.bandwidth_hz * d.total_s;

            auto out = cube.element(tx, rx);
            for (std::size_t n = 0; n < c.samples; ++n) {
                const double cycles =
                    constant + frac(bins * static_cast<double>(n) / static_cast<double>(c.samples));
                out[n] = std::polar(s.rts.amplitude, 2.0 * kPi * frac(cycles));
            }
        }
    }
    return cube;
}

RangeSpectrum range_dft(const BeatCube& cube, std::size_t zero_pad)
{
    if (!is_power_of_two(zero_pad))
        throw std::invalid_argument(fmt::format("zero-pad factor {} is not a power of two", zero_pad));
    const std::size_t bins = cube.samples() * zero_pad;
    ForwardDft dft(bins);

    std::vector<Complex> spectra(cube.tx_count() * cube.rx_count() * bins);
    for (std::size_t tx = 0; tx < cube.tx_count(); ++tx)
        for (std::size_t rx = 0; rx < cube.rx_count(); ++rx) {
            const std::size_t e = tx * cube.rx_count() + rx;
            dft.run(cube.element(tx, rx), std::span(spectra).subspan(e * bins, bins));
        }
    return RangeSpectrum(iota_indices(cube.tx_count()), iota_indices(cube.rx_count()), bins,
                         zero_pad, std::move(spectra));
}

double detected_bin_phase(const RangeSpectrum& r, std::size_t tx, std::size_t rx)
{
    return std::arg(r.detected_value(tx, rx));
}

double predicted_bin_phase(const Scenario& s, std::size_t tx, std::size_t rx, double beat_index)
{
    const auto d = path_delays(s, tx, rx);
    const double cycles = frac(s.chirp.start_frequency_hz * d.free_space_s) +
                          frac(s.rts.if_frequency_hz * s.rts.delay_s) +
                          0.5 * (s.chirp.bandwidth_hz * d.total_s - beat_index);
    return wrap_phase(2.0 * kPi * frac(cycles));
}

RangeSpectrum analytic_range_spectrum(const Scenario& s)
{
    const double beat_index = std::round(s.chirp.bandwidth_hz * path_delays(s, 0, 0).total_s);
    const double gain = s.rts.amplitude * static_cast<double>(s.chirp.samples);
    std::vector<Complex> values;
    values.reserve(s.array.virtual_count());
    for (std::size_t tx = 0; tx < s.array.tx_count; ++tx)
        for (std::size_t rx = 0; rx < s.array.rx_count; ++rx)
            values.push_back(std::polar(gain, predicted_bin_phase(s, tx, rx, beat_index)));
    return RangeSpectrum::from_detected(iota_indices(s.array.tx_count),
                                        iota_indices(s.array.rx_count),
                                        static_cast<std::size_t>(beat_index), 1, std::move(values));
}

void write_beat_csv(const BeatCube& cube, std::ostream& out)
{
    out << "ntx,nrx,n,re,im\n";
    for (std::size_t tx = 0; tx < cube.tx_count(); ++tx)
        for (std::size_t rx = 0; rx < cube.rx_count(); ++rx) {
            const auto samples = cube.element(tx, rx);
            for (std::size_t n = 0; n < samples.size(); ++n)
                out << fmt::format("{},{},{},{:.9g},{:.9g}\n", tx, rx, n, samples[n].real(),
                                   samples[n].imag());
        }
}

void write_range_csv(const RangeSpectrum& r, std::ostream& out)
{
    out << "ntx,nrx,k,re,im\n";
    for (std::size_t tx = 0; tx < r.tx_count(); ++tx)
        for (std::size_t rx = 0; rx < r.rx_count(); ++rx) {
            const auto ntx = r.tx_indices()[tx];
            const auto nrx = r.rx_indices()[rx];
            if (!r.has_spectra()) {
                const auto v = r.detected_value(tx, rx);
                out << fmt::format("{},{},{},{:.9g},{:.9g}\n", ntx, nrx, r.detected_bin(), v.real(),
                                   v.imag());
                continue;
            }
            const auto bins = r.spectrum(tx, rx);
            for (std::size_t k = 0; k < bins.size(); ++k)
                out << fmt::format("{},{},{},{:.9g},{:.9g}\n", ntx, nrx, k, bins[k].real(),
                                   bins[k].imag());
        }
}

} // namespace qmrts
