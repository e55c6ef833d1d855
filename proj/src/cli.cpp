// SPDX-License-Identifier: Apache-2.0
#include "qmrts/cli.hpp"

#include "qmrts/config_io.hpp"
#include "qmrts/errors.hpp"
#include "qmrts/experiment.hpp"
#include "qmrts/propagation.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qmrts::cli {

namespace {

template <typename F>
int guarded(std::ostream& err, F&& body)
{
    try {
        return body();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeFailure;
    }
}

ScenarioDocument load(const std::filesystem::path& config, const Options& options)
{
    auto doc = load_document_file(config);
    if (options.grid_step_deg) {
        doc.scenario.grid.step_rad = deg_to_rad(*options.grid_step_deg);
        doc.report = validate(doc.scenario);
    }
    return doc;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    out << text;
    out.close();
    if (!out)
        throw IoError(fmt::format("failed writing '{}'", path.string()));
}

template <typename Writer>
std::string render(Writer&& writer)
{
    std::ostringstream s;
    writer(s);
    return s.str();
}

void print_warnings(const ValidationReport& report, std::ostream& err)
{
    for (const auto& w : report.warnings)
        err << "warning: " << w << '\n';
}

} // namespace

int cmd_validate(const std::filesystem::path& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        ScenarioDocument doc;
        try {
            doc = load_document_file(config);
        } catch (const IoError&) {
            throw;
        } catch (const Error&) {
            out << "status: FAIL\n";
            throw;
        }
        const auto& s = doc.scenario;
        const auto& r = doc.report;
        out << fmt::format("wavelength:        {:.6f} mm (fc = {:.6g} Hz)\n", r.wavelength_m * 1e3,
                           s.chirp.start_frequency_hz);
        out << fmt::format("array wavelength:  {:.6f} mm (fc + B/2)\n", s.array_wavelength_m() * 1e3);
        out << fmt::format("sample rate:       {:.6g} Hz (Ns = {}, T = {:.6g} s)\n", r.sample_rate_hz,
                           s.chirp.samples, s.chirp.period_s);
        out << fmt::format("array:             {}x{}, dtx = {:.6g} m, drx = {:.6g} m\n",
                           s.array.tx_count, s.array.rx_count, s.array.tx_spacing_m,
                           s.array.rx_spacing_m);
        out << fmt::format("far-field 2D²/λ:   {:.6g} m (Rc = {:.6g} m)\n", r.far_field_m,
                           s.rts.distance_m);
        out << fmt::format("max beat freq:     {:.6g} Hz\n", r.max_beat_hz);
        out << fmt::format("nyquist margin:    {:.4f}\n", r.nyquist_margin);
        out << fmt::format("rts displacement:  {:.9g} m\n", rts_displacement(s));
        print_warnings(r, err);
        out << "status: " << (r.has_warnings() ? "WARN" : "PASS") << '\n';
        return static_cast<int>(kOk);
    });
}

int cmd_simulate(const std::filesystem::path& config, const std::filesystem::path& out_dir,
                 const Options& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto doc = load(config, options);
        print_warnings(doc.report, err);
        Scenario s = doc.scenario;

        std::optional<AntennaSubset> subset;
        Scenario model = s;
        if (options.subset) {
            subset = parse_subset(*options.subset, s.array);
            model = restrict_to_subset(s, *subset);
        }

        const auto chain = run_chain(s, subset, options.zero_pad);
        const double predicted = predicted_peak(model, options.mode);
        const double phase = closed_form_phase(model);
        const auto closed = closed_form_spectrum(model, options.mode);

        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec)
            throw IoError(fmt::format("cannot create '{}': {}", out_dir.string(), ec.message()));

        write_file(out_dir / "range_spectrum.csv",
                   render([&](std::ostream& o) { write_range_csv(chain.range, o); }));
        write_file(out_dir / "angle_spectrum.csv",
                   render([&](std::ostream& o) { write_angle_csv(chain.angle, o); }));
        write_file(out_dir / "closed_form_spectrum.csv",
                   render([&](std::ostream& o) { write_closed_form_csv(closed, o); }));

        std::string summary;
        summary += fmt::format("array: {}x{}{}\n", model.array.tx_count, model.array.rx_count,
                               subset ? " (subset " + subset->label + ")" : "");
        summary += fmt::format("detected bin: {} (beat index {:.6g}, expected Bτ = {:.6g})\n",
                               chain.range.detected_bin(), chain.range.beat_index(),
                               s.chirp.bandwidth_hz * path_delays(s, 0, 0).total_s);
        summary += fmt::format("detected angle (full chain): {:.4f} deg\n",
                               rad_to_deg(chain.angle.peak_angle_rad));
        summary += fmt::format("detected angle (closed form, {}): {:.4f} deg\n",
                               to_string(options.mode), rad_to_deg(predicted));
        summary += fmt::format("closed-form phase phi_A: {:.6f} rad\n", phase);
        summary += fmt::format("theta_rx: {:.4f} deg, theta_tx: {:.4f} deg, d_rts: {:.6g} m\n",
                               rad_to_deg(s.rts.theta_rx_rad), rad_to_deg(s.rts.theta_tx_rad),
                               rts_displacement(s));
        write_file(out_dir / "summary.txt", summary);
        out << summary;
        return static_cast<int>(kOk);
    });
}

int cmd_sweep(const std::filesystem::path& config, const std::filesystem::path& out_csv,
              const Options& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto doc = load(config, options);
        print_warnings(doc.report, err);
        if (!doc.sweep)
            throw ValidationError("config has no [sweep] section");
        auto settings = *doc.sweep;
        if (options.subset)
            settings.subsets = {*options.subset};
        if (!options.range_compensation)
            settings.range_compensation = false;

        auto spec = SweepSpec::from_settings(doc.scenario, settings);
        spec.zero_pad = options.zero_pad;
        const auto rows = run_sweep(spec);
        emit_results(rows, out_csv);

        std::size_t far_field_warnings = 0;
        for (const auto& r : rows)
            far_field_warnings += r.far_field_ok ? 0 : 1;
        if (far_field_warnings > 0)
            err << fmt::format("warning: {} rows violate the far-field condition\n", far_field_warnings);

        out << fmt::format("{} rows written to {}\n", rows.size(), out_csv.string());
        out << "subset  max |deviation| [deg]  at d_rts [m]\n";
        for (const auto& s : summarize(rows))
            out << fmt::format("{:<6}  {:>21.6f}  {:>12.6g}\n", s.subset, s.max_abs_deviation_deg,
                               s.displacement_at_max_m);
        return static_cast<int>(kOk);
    });
}

int cmd_compare(const std::filesystem::path& config, const Options& options, std::ostream& out,
                std::ostream& err)
{
    return guarded(err, [&] {
        const auto doc = load(config, options);
        print_warnings(doc.report, err);
        const Scenario& s = doc.scenario;

        std::optional<AntennaSubset> subset;
        Scenario model = s;
        if (options.subset) {
            subset = parse_subset(*options.subset, s.array);
            model = restrict_to_subset(s, *subset);
        }

        const KernelMode other =
            options.mode == KernelMode::dirichlet ? KernelMode::sinc : KernelMode::dirichlet;
        const double full_chain = rad_to_deg(run_chain(s, subset, options.zero_pad).angle.peak_angle_rad);
        const double direct = rad_to_deg(beamform(analytic_range_spectrum(model), model).peak_angle_rad);
        const double closed = rad_to_deg(predicted_peak(model, options.mode));
        const double closed_other = rad_to_deg(predicted_peak(model, other));

        out << fmt::format("full chain:                 {:.6f} deg\n", full_chain);
        out << fmt::format("direct beamforming (ideal): {:.6f} deg\n", direct);
        out << fmt::format("closed form ({:<9}):     {:.6f} deg\n", to_string(options.mode), closed);
        out << fmt::format("closed form ({:<9}):     {:.6f} deg (informational)\n", to_string(other),
                           closed_other);

        const std::array<std::pair<const char*, double>, 3> gated{
            {{"full chain", full_chain}, {"direct", direct}, {"closed form", closed}}};
        double worst = 0.0;
        for (std::size_t i = 0; i < gated.size(); ++i)
            for (std::size_t j = i + 1; j < gated.size(); ++j) {
                const double diff = std::abs(gated[i].second - gated[j].second);
                worst = std::max(worst, diff);
                out << fmt::format("|{} - {}| = {:.6f} deg\n", gated[i].first, gated[j].first, diff);
            }
        out << fmt::format("|closed form {} - closed form {}| = {:.6f} deg (informational)\n",
                           to_string(options.mode), to_string(other), std::abs(closed - closed_other));

        const auto lobes = check_grating_lobes(model, options.mode);
        if (lobes.ambiguous())
            out << fmt::format(
                "warning: grating-lobe risk (peak {:.4f} deg, runner-up {:.4f} deg at {:.2f} dB{})\n",
                rad_to_deg(lobes.peak_rad), rad_to_deg(lobes.runner_up_rad), lobes.runner_up_gap_db,
                lobes.main_lobe_displaced ? ", global maximum away from the main lobe" : "");

        if (worst > kCompareToleranceDeg) {
            out << fmt::format("FAIL: max pairwise difference {:.6f} deg exceeds {:.3f} deg\n", worst,
                               kCompareToleranceDeg);
            return static_cast<int>(kRuntimeFailure);
        }
        out << fmt::format("PASS: max pairwise difference {:.6f} deg\n", worst);
        return static_cast<int>(kOk);
    });
}

} // namespace qmrts::cli
