// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qmrts {

// Index of the largest value; the smallest index wins ties.
std::size_t argmax_first(std::span<const double> values);

// Indices i with values[i-1] < values[i] >= values[i+1], interior only.
std::vector<std::size_t> local_maxima(std::span<const double> values);

// Vertex of the parabola through (sin α, power) at i-1, i, i+1, returned as
// an angle. The nodes need not be equally spaced in sin α.
//
// Throws ModelError if i is the first or last grid point.
double refine_parabolic_sin(std::span<const double> angles_rad, std::span<const double> power,
                            std::size_t i);

} // namespace qmrts
