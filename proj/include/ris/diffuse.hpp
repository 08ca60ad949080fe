#pragma once

#include "ris/incident.hpp"
#include "ris/panel.hpp"
#include "ris/vec.hpp"
#include "ris/wave.hpp"

namespace ris {

/// Lambertian effective-roughness intensity at P (V^2/m^2), incoherent
/// per-tile power sum:
///   |E_s|^2 = sum_tiles S^2 |E_i(P')|^2 cos(theta_i) cos(theta_s) dS / (pi r_s^2).
/// Each tile spreads the fraction S^2 of its intercepted power over the front
/// hemisphere with a cos(theta_s) radiant-intensity lobe.
double diffuse_intensity(const RisPanel& panel, const WaveSpec& wave,
                         const IncidentWave& incident, double s_squared, const Vec3& p);

} // namespace ris
