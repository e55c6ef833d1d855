// SPDX-License-Identifier: Apache-2.0
#include "oracle.hpp"

#include "qmrts/config_io.hpp"
#include "qmrts/errors.hpp"
#include "qmrts/experiment.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qmrts;

namespace {

SweepSpec small_spec(std::size_t points, std::vector<std::string> labels = {"2x4", "2x2", "1x4"})
{
    SweepSettings settings;
    settings.points = points;
    settings.subsets = std::move(labels);
    return SweepSpec::from_settings(reference_setup(), settings);
}

std::string csv(std::span<const SweepRow> rows)
{
    std::ostringstream out;
    write_results(rows, out);
    return out.str();
}

std::filesystem::path temp_path(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("qmrts_test_" + name);
}

} // namespace

TEST_CASE("parse_subset")
{
    const auto array = reference_setup().array;
    const auto one = parse_subset("1x4", array);
    CHECK(one.label == "1x4");
    CHECK(one.tx == std::vector<std::size_t>{0});
    CHECK(one.rx == std::vector<std::size_t>{0, 1, 2, 3});
    const auto two = parse_subset("2x2", array);
    CHECK(two.tx == std::vector<std::size_t>{0, 1});
    CHECK(two.rx == std::vector<std::size_t>{0, 1});
    for (const char* bad : {"", "2x", "x4", "3x4", "0x4", "2x5", "2*4", "2x4x1"})
        CHECK_THROWS_AS(parse_subset(bad, array), ValidationError);

    const auto restricted = restrict_to_subset(reference_setup(), one);
    CHECK(restricted.array.tx_count == 1);
    CHECK(restricted.array.rx_count == 4);
    CHECK(restricted.array.tx_spacing_m == array.tx_spacing_m);
}

TEST_CASE("displacement_to_theta_tx")
{
    CHECK(displacement_to_theta_tx(0.3, 0.0, 1.0) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(rad_to_deg(displacement_to_theta_tx(0.0, 0.0174524, 1.0)) == doctest::Approx(1.0).epsilon(1e-5));
    for (double d : {-0.3, -0.01, 0.0, 0.02, 0.1, 0.5}) {
        auto s = reference_setup();
        s.rts.theta_rx_rad = deg_to_rad(-4.0);
        s.rts.theta_tx_rad = displacement_to_theta_tx(s.rts.theta_rx_rad, d, 1.0);
        CHECK(std::abs(rts_displacement(s) - d) < 1e-12);
    }
    CHECK_THROWS_AS(displacement_to_theta_tx(0.0, 1.5, 1.0), ModelError);
}

TEST_CASE("sweep spec validation")
{
    auto spec = small_spec(51);
    CHECK_NOTHROW(spec.validate());
    CHECK(spec.displacement(0) == 0.0);
    CHECK(spec.displacement(50) == 0.1);
    CHECK(spec.displacement(25) == doctest::Approx(0.05));

    auto far = spec;
    far.max_displacement_m = 1.0;
    CHECK_THROWS_AS(far.validate(), ValidationError);
    auto few = spec;
    few.points = 1;
    CHECK_THROWS_AS(few.validate(), ValidationError);
    CHECK_THROWS_AS(small_spec(3, {"2x4", "2x4"}).validate(), ValidationError);
}

TEST_CASE("range compensation lengthens the return leg")
{
    const auto spec = small_spec(3);
    const auto p = sweep_point_scenario(spec, 0.1);
    CHECK(p.rts.tx_range_offset_m == doctest::Approx(std::sqrt(1.01) - 1.0).epsilon(1e-14));
    CHECK(rad_to_deg(p.rts.theta_tx_rad) == doctest::Approx(5.73917).epsilon(1e-6));
    auto off = spec;
    off.range_compensation = false;
    CHECK(sweep_point_scenario(off, 0.1).rts.tx_range_offset_m == 0.0);
}

TEST_CASE("small sweep")
{
    const auto rows = run_sweep(small_spec(3));
    REQUIRE(rows.size() == 9);
    const char* labels[] = {"2x4", "2x2", "1x4"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        CHECK(r.subset == labels[i % 3]);
        CHECK(r.d_rts_m == doctest::Approx(0.05 * static_cast<double>(i / 3)));
        CHECK(r.deviation_deg == r.detected_fullchain_deg - r.theta_rx_deg);
        CHECK(r.range_compensated);
        CHECK(r.far_field_ok);
        CHECK(std::abs(r.detected_fullchain_deg - r.detected_closedform_deg) < 0.02);
        if (i < 3)
            CHECK(std::abs(r.deviation_deg) <= 0.005);
        if (r.subset == "1x4")
            CHECK(std::abs(r.deviation_deg - r.theta_tx_deg) <= 0.01);
    }
}

TEST_CASE("2x4 versus 2x2 ordering follows the fine-grid oracle")
{
    const auto spec = small_spec(6, {"2x4", "2x2"});
    const auto rows = run_sweep(spec);
    const auto base = reference_setup();
    for (std::size_t p = 0; p < 6; ++p) {
        const auto& wide = rows[2 * p];
        const auto& narrow = rows[2 * p + 1];
        const auto oracle_peak = [&](std::size_t nrx) {
            const oracle::Geometry g{2, nrx, base.array.tx_spacing_m, base.array.rx_spacing_m,
                                     0.0, oracle::rad(wide.theta_tx_deg), 1.0, 77e9, 1e9};
            return oracle::fine_grid_argmax_deg(
                [&](double a) { return oracle::direct_sum_magnitude(g, oracle::rad(a)); }, -10, 10,
                0.001);
        };
        const double o4 = oracle_peak(4), o2 = oracle_peak(2);
        CHECK(std::abs(wide.detected_fullchain_deg - o4) <= 0.005);
        CHECK(std::abs(narrow.detected_fullchain_deg - o2) <= 0.005);
        if (std::abs(o4 - o2) > 0.01)
            CHECK((wide.deviation_deg > narrow.deviation_deg) == (o4 > o2));
    }
}

TEST_CASE("2x4 deviation is nondecreasing in displacement")
{
    const auto rows = run_sweep(small_spec(51, {"2x4"}));
    REQUIRE(rows.size() == 51);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].deviation_deg >= rows[i - 1].deviation_deg);
}

TEST_CASE("sweep output is deterministic")
{
    const auto spec = small_spec(4);
    CHECK(csv(run_sweep(spec)) == csv(run_sweep(spec)));
}

TEST_CASE("per-point failures name the point")
{
    auto spec = small_spec(3);
    spec.base.grid = AngleGrid::from_degrees(-1, 1, 0.01); // 1x4 peak leaves the grid
    CHECK_THROWS_WITH_AS(run_sweep(spec), doctest::Contains("sweep point"), ModelError);
}

TEST_CASE("results CSV")
{
    const auto rows = run_sweep(small_spec(3));
    const auto text = csv(rows);
    CHECK(text.substr(0, text.find('\n')) == kSweepCsvHeader);
    CHECK(std::count(text.begin(), text.end(), '\n') == 10);

    std::istringstream in(text);
    const auto back = parse_results(in);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].subset == rows[i].subset);
        CHECK(back[i].range_compensated == rows[i].range_compensated);
        CHECK(back[i].d_rts_m == doctest::Approx(rows[i].d_rts_m).epsilon(1e-8));
        CHECK(back[i].theta_tx_deg == doctest::Approx(rows[i].theta_tx_deg).epsilon(1e-8));
        CHECK(back[i].detected_fullchain_deg ==
              doctest::Approx(rows[i].detected_fullchain_deg).epsilon(1e-8).scale(1e-8));
        CHECK(back[i].deviation_deg == doctest::Approx(rows[i].deviation_deg).epsilon(1e-8).scale(1e-8));
    }
    CHECK(csv(back) == text);

    std::istringstream bad("d_rts_m,oops\n1,2\n");
    CHECK_THROWS_AS(parse_results(bad), ParseError);
}

TEST_CASE("emit_results")
{
    const auto path = temp_path("rows.csv");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(emit_results({}, path), std::invalid_argument);
    CHECK_FALSE(std::filesystem::exists(path));

    const auto rows = run_sweep(small_spec(2, {"1x4"}));
    emit_results(rows, path);
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == csv(rows));
    std::filesystem::remove(path);

    CHECK_THROWS_AS(emit_results(rows, temp_path("missing_dir") / "x" / "rows.csv"), IoError);
}

TEST_CASE("summary per subset")
{
    const auto rows = run_sweep(small_spec(3, {"2x4", "1x4"}));
    const auto summary = summarize(rows);
    REQUIRE(summary.size() == 2);
    CHECK(summary[0].subset == "2x4");
    CHECK(summary[1].subset == "1x4");
    CHECK(summary[1].displacement_at_max_m == doctest::Approx(0.1));
    CHECK(summary[1].max_abs_deviation_deg == doctest::Approx(std::abs(rows[5].deviation_deg)));
}
