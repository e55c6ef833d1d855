// SPDX-License-Identifier: Apache-2.0
#include "qmrts/propagation.hpp"
#include "qmrts/scenario.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace qmrts;

TEST_CASE("zero-index elements see Rc/c0 on both legs")
{
    const auto s = reference_setup();
    const auto d = path_delays(s, 0, 0);
    CHECK(d.outbound_s == 1.0 / kSpeedOfLight);
    CHECK(d.return_s == 1.0 / kSpeedOfLight);
    CHECK(d.outbound_s == doctest::Approx(3.33564e-9).epsilon(1e-5));
    CHECK(d.free_space_s == 2.0 / kSpeedOfLight);
    CHECK(d.total_s == d.free_space_s);
}

TEST_CASE("outbound leg follows the RTS receiver angle")
{
    auto s = reference_setup();
    s.rts.theta_rx_rad = deg_to_rad(10.0);
    const auto d = path_delays(s, 1, 0);
    CHECK(d.outbound_s == doctest::Approx(3.34015e-9).epsilon(1e-5));
    CHECK(d.return_s == 1.0 / kSpeedOfLight);
    // receiver index does not see θrx
    CHECK(path_delays(s, 0, 3).outbound_s == 1.0 / kSpeedOfLight);
}

TEST_CASE("boresight delays are index independent")
{
    auto s = reference_setup();
    s.rts.delay_s = 3e-9;
    const auto ref = path_delays(s, 0, 0);
    for (std::size_t tx = 0; tx < 2; ++tx)
        for (std::size_t rx = 0; rx < 4; ++rx) {
            const auto d = path_delays(s, tx, rx);
            CHECK(d.outbound_s == ref.outbound_s);
            CHECK(d.return_s == ref.return_s);
            CHECK(d.total_s == ref.total_s);
        }
    CHECK(ref.total_s == ref.free_space_s + 3e-9);
}

TEST_CASE("index out of range")
{
    const auto s = reference_setup();
    CHECK_THROWS_AS(path_delays(s, 2, 0), std::out_of_range);
    CHECK_THROWS_AS(path_delays(s, 0, 4), std::out_of_range);
}

TEST_CASE("delays are affine and monotone in the element indices")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(-kPi / 2, kPi / 2);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = reference_setup();
        s.array = {6, 6, s.array.tx_spacing_m, s.array.rx_spacing_m};
        s.rts.theta_rx_rad = angle(rng);
        s.rts.theta_tx_rad = angle(rng);
        const double step_tx = s.array.tx_spacing_m * std::sin(s.rts.theta_rx_rad) / kSpeedOfLight;
        const double step_rx = s.array.rx_spacing_m * std::sin(s.rts.theta_tx_rad) / kSpeedOfLight;
        for (std::size_t i = 0; i + 1 < 6; ++i) {
            const auto a = path_delays(s, i, 0);
            const auto b = path_delays(s, i + 1, 0);
            CHECK((b.outbound_s - a.outbound_s) == doctest::Approx(step_tx).epsilon(1e-9));
            const auto c = path_delays(s, 0, i);
            const auto e = path_delays(s, 0, i + 1);
            CHECK((e.return_s - c.return_s) == doctest::Approx(step_rx).epsilon(1e-9));
            CHECK(b.free_space_s == b.outbound_s + b.return_s);
            if (s.rts.theta_rx_rad > 0)
                CHECK(b.total_s > a.total_s);
            if (s.rts.theta_rx_rad < 0)
                CHECK(b.total_s < a.total_s);
        }
    }
}

TEST_CASE("max_total_delay is the largest element delay")
{
    auto s = reference_setup();
    s.rts.theta_rx_rad = deg_to_rad(-20.0);
    s.rts.theta_tx_rad = deg_to_rad(35.0);
    double worst = 0.0;
    for (std::size_t tx = 0; tx < 2; ++tx)
        for (std::size_t rx = 0; rx < 4; ++rx)
            worst = std::max(worst, path_delays(s, tx, rx).total_s);
    CHECK(max_total_delay(s) == worst);
}

TEST_CASE("far-field distance")
{
    auto s = reference_setup();
    CHECK(far_field_distance(s) == doctest::Approx(0.0954).epsilon(1e-3));
    CHECK(is_far_field(s));

    auto point = s;
    point.array.tx_count = point.array.rx_count = 1;
    CHECK(far_field_distance(point) == 0.0);

    auto doubled = s;
    doubled.array.tx_spacing_m *= 2;
    doubled.array.rx_spacing_m *= 2;
    CHECK(far_field_distance(doubled) == doctest::Approx(4 * far_field_distance(s)).epsilon(1e-14));

    s.rts.distance_m = 0.05;
    CHECK_FALSE(is_far_field(s));
}
