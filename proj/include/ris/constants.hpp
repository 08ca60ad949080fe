#pragma once

namespace ris {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double speed_of_light = 299792458.0;      // m/s
inline constexpr double free_space_impedance = 376.730313668;  // ohm

} // namespace ris
