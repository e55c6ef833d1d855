// SPDX-License-Identifier: Apache-2.0
#include "qmrts/peak_search.hpp"

#include "qmrts/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qmrts {

std::size_t argmax_first(std::span<const double> values)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best])
            best = i;
    return best;
}

std::vector<std::size_t> local_maxima(std::span<const double> values)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        if (values[i] > values[i - 1] && values[i] >= values[i + 1])
            out.push_back(i);
    return out;
}

double refine_parabolic_sin(std::span<const double> angles_rad, std::span<const double> power,
                            std::size_t i)
{
    if (angles_rad.size() != power.size() || angles_rad.size() < 3)
        throw ModelError("peak refinement needs at least 3 grid points");
    if (i == 0 || i + 1 >= angles_rad.size())
        throw ModelError(fmt::format("peak at grid boundary ({:.6g}°); widen the angle grid",
                                     angles_rad[i] * 180.0 / std::numbers::pi));

    const double x0 = std::sin(angles_rad[i - 1]);
    const double x1 = std::sin(angles_rad[i]);
    const double x2 = std::sin(angles_rad[i + 1]);
    const double h0 = x1 - x0;
    const double h1 = x2 - x1;
    const double a = power[i - 1] - power[i];
    const double c = power[i + 1] - power[i];

    // p(x1 + t) = k t² + m t through (-h0, a), (0, 0), (h1, c); k < 0 at a maximum.
    const double k_scaled = a * h1 + c * h0;
    if (!(k_scaled < 0.0))
        return angles_rad[i]; // flat neighbourhood
    const double t = 0.5 * (a * h1 * h1 - c * h0 * h0) / k_scaled;
    if (t == 0.0)
        return angles_rad[i];
    return std::asin(std::clamp(x1 + t, x0, x2));
}

} // namespace qmrts
