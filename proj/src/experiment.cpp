// SPDX-License-Identifier: Apache-2.0
#include "qmrts/experiment.hpp"

#include "qmrts/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qmrts {

namespace {

std::vector<std::size_t> first_n(std::size_t n)
{
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = i;
    return out;
}

bool parse_count(std::string_view text, std::size_t& value)
{
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    return ec == std::errc{} && ptr == end && !text.empty();
}

} // namespace

AntennaSubset parse_subset(std::string_view label, const RadarArrayConfig& array)
{
    const auto x = label.find('x');
    std::size_t ntx = 0;
    std::size_t nrx = 0;
    if (x == std::string_view::npos || !parse_count(label.substr(0, x), ntx) ||
        !parse_count(label.substr(x + 1), nrx))
        throw ValidationError(fmt::format("subset '{}': expected NTXxNRX, e.g. 2x4", label));
    if (ntx == 0 || nrx == 0)
        throw ValidationError(fmt::format("subset '{}': counts must be positive", label));
    if (ntx > array.tx_count || nrx > array.rx_count)
        throw ValidationError(fmt::format("subset '{}' exceeds the {}x{} array", label,
                                          array.tx_count, array.rx_count));
    return {std::string(label), first_n(ntx), first_n(nrx)};
}

Scenario restrict_to_subset(const Scenario& s, const AntennaSubset& subset)
{
    if (subset.tx != first_n(subset.tx.size()) || subset.rx != first_n(subset.rx.size()))
        throw std::invalid_argument(
            fmt::format("subset '{}' is not a leading contiguous selection", subset.label));
    Scenario out = s;
    out.array.tx_count = subset.tx.size();
    out.array.rx_count = subset.rx.size();
    return out;
}

ChainOutput run_chain(const Scenario& s, const std::optional<AntennaSubset>& subset,
                      std::size_t zero_pad, BeatOptions options)
{
    auto range = range_dft(synthesize_beat(s, options), zero_pad);
    if (subset)
        range = select_subset(range, subset->tx, subset->rx);
    auto angle = beamform(range, s);
    return {std::move(range), std::move(angle)};
}

double displacement_to_theta_tx(double theta_rx_rad, double displacement_m, double distance_m)
{
    const double arg = std::sin(theta_rx_rad) + displacement_m / distance_m;
    if (!(arg >= -1.0 && arg <= 1.0))
        throw ModelError(fmt::format("displacement {} m at Rc = {} m puts sin θtx = {} outside [-1, 1]",
                                     displacement_m, distance_m, arg));
    return std::asin(arg);
}

SweepSpec SweepSpec::from_settings(const Scenario& base, const SweepSettings& settings)
{
    SweepSpec spec;
    spec.base = base;
    spec.max_displacement_m = settings.max_displacement_m;
    spec.points = settings.points;
    spec.range_compensation = settings.range_compensation;
    for (const auto& label : settings.subsets)
        spec.subsets.push_back(parse_subset(label, base.array));
    spec.validate();
    return spec;
}

void SweepSpec::validate() const
{
    qmrts::validate(base);
    if (!(max_displacement_m >= 0.0 && max_displacement_m < base.rts.distance_m))
        throw ValidationError(fmt::format("d_max_m: 0 ≤ dmax < Rc required (dmax = {} m, Rc = {} m)",
                                          max_displacement_m, base.rts.distance_m));
    if (points < 2)
        throw ValidationError("points: at least 2 sweep points required");
    if (subsets.empty())
        throw ValidationError("subsets: at least one antenna subset required");
    std::set<std::string> labels;
    for (const auto& subset : subsets)
        if (!labels.insert(subset.label).second)
            throw ValidationError(fmt::format("subsets: duplicate label '{}'", subset.label));
}

double SweepSpec::displacement(std::size_t point) const
{
    return max_displacement_m * static_cast<double>(point) / static_cast<double>(points - 1);
}

Scenario sweep_point_scenario(const SweepSpec& spec, double displacement_m)
{
    Scenario s = spec.base;
    const double rc = s.rts.distance_m;
    s.rts.theta_tx_rad = displacement_to_theta_tx(s.rts.theta_rx_rad, displacement_m, rc);
    if (spec.range_compensation) {
        // sqrt(Rc² + d²) - Rc without cancellation.
        s.rts.tx_range_offset_m =
            displacement_m * displacement_m / (std::sqrt(rc * rc + displacement_m * displacement_m) + rc);
    }
    return s;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec)
{
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(spec.points * spec.subsets.size());

    for (std::size_t p = 0; p < spec.points; ++p) {
        const double d = spec.displacement(p);
        try {
            const Scenario s = sweep_point_scenario(spec, d);
            const auto report = qmrts::validate(s);
            const auto range = range_dft(synthesize_beat(s), spec.zero_pad);
            for (const auto& subset : spec.subsets) {
                const auto angle = beamform(select_subset(range, subset.tx, subset.rx), s);
                SweepRow row;
                row.d_rts_m = d;
                row.theta_rx_deg = rad_to_deg(s.rts.theta_rx_rad);
                row.theta_tx_deg = rad_to_deg(s.rts.theta_tx_rad);
                row.subset = subset.label;
                row.detected_fullchain_deg = rad_to_deg(angle.peak_angle_rad);
                row.detected_closedform_deg =
                    rad_to_deg(predicted_peak(restrict_to_subset(s, subset), KernelMode::dirichlet));
                row.deviation_deg = row.detected_fullchain_deg - row.theta_rx_deg;
                row.range_compensated = spec.range_compensation;
                row.far_field_ok = !report.has_warnings();
                rows.push_back(std::move(row));
            }
        } catch (const std::exception& e) {
            throw ModelError(fmt::format("sweep point {} (d = {:.9g} m): {}", p, d, e.what()));
        }
    }
    return rows;
}

void write_results(std::span<const SweepRow> rows, std::ostream& out)
{
    out << kSweepCsvHeader << '\n';
    for (const auto& r : rows)
        out << fmt::format("{:.9g},{:.9g},{:.9g},{},{:.9g},{:.9g},{:.9g},{}\n", r.d_rts_m,
                           r.theta_rx_deg, r.theta_tx_deg, r.subset, r.detected_fullchain_deg,
                           r.detected_closedform_deg, r.deviation_deg, r.range_compensated);
}

void emit_results(std::span<const SweepRow> rows, const std::filesystem::path& path)
{
    if (rows.empty())
        throw std::invalid_argument("no sweep rows to write");
    std::ostringstream text;
    write_results(rows, text);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    out << text.str();
    out.close();
    if (!out)
        throw IoError(fmt::format("failed writing '{}'", path.string()));
}

std::vector<SweepRow> parse_results(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != kSweepCsvHeader)
        throw ParseError("sweep CSV: unexpected header");

    auto number = [](const std::string& field, std::size_t line_no) {
        double v = 0.0;
        const auto* end = field.data() + field.size();
        const auto [ptr, ec] = std::from_chars(field.data(), end, v);
        if (ec != std::errc{} || ptr != end)
            throw ParseError(fmt::format("sweep CSV line {}: '{}' is not a number", line_no, field));
        return v;
    };

    std::vector<SweepRow> rows;
    for (std::size_t line_no = 2; std::getline(in, line); ++line_no) {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::istringstream fields(line);
        for (std::string cell; std::getline(fields, cell, ',');)
            f.push_back(cell);
        if (f.size() != 8)
            throw ParseError(fmt::format("sweep CSV line {}: expected 8 fields", line_no));
        SweepRow r;
        r.d_rts_m = number(f[0], line_no);
        r.theta_rx_deg = number(f[1], line_no);
        r.theta_tx_deg = number(f[2], line_no);
        r.subset = f[3];
        r.detected_fullchain_deg = number(f[4], line_no);
        r.detected_closedform_deg = number(f[5], line_no);
        r.deviation_deg = number(f[6], line_no);
        if (f[7] != "true" && f[7] != "false")
            throw ParseError(fmt::format("sweep CSV line {}: bad range_compensated flag", line_no));
        r.range_compensated = f[7] == "true";
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<SubsetSummary> summarize(std::span<const SweepRow> rows)
{
    std::vector<SubsetSummary> out;
    for (const auto& r : rows) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const SubsetSummary& s) { return s.subset == r.subset; });
        if (it == out.end()) {
            out.push_back({r.subset, std::abs(r.deviation_deg), r.d_rts_m});
            continue;
        }
        if (std::abs(r.deviation_deg) > it->max_abs_deviation_deg) {
            it->max_abs_deviation_deg = std::abs(r.deviation_deg);
            it->displacement_at_max_m = r.d_rts_m;
        }
    }
    return out;
}

} // namespace qmrts
