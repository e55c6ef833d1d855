// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qmrts/scenario.hpp"

#include <cstddef>

namespace qmrts {

// Delays seen by one virtual element (radar TX ntx, radar RX nrx).
struct PathDelays {
    double outbound_s = 0.0;   // radar TX element -> RTS receiver
    double return_s = 0.0;     // RTS transmitter -> radar RX element
    double free_space_s = 0.0; // outbound + return
    double total_s = 0.0;      // free space + RTS internal delay
};

// Plane-wave delays for element (tx, rx). The outbound leg depends on the
// RTS *receiver* angle and the TX element position, the return leg on the
// RTS *transmitter* angle and the RX element position.
//
// Throws std::out_of_range for an element index outside the array.
PathDelays path_delays(const Scenario& s, std::size_t tx, std::size_t rx);

// Largest total delay over all virtual elements.
double max_total_delay(const Scenario& s);

// Fraunhofer distance 2D²/λ of the virtual array, D = dtx(Ntx-1) + drx(Nrx-1).
double far_field_distance(const Scenario& s);

inline bool is_far_field(const Scenario& s)
{
    return s.rts.distance_m >= far_field_distance(s);
}

} // namespace qmrts
