#pragma once

#include <span>
#include <vector>

#include "ris/incident.hpp"
#include "ris/modulation.hpp"
#include "ris/panel.hpp"
#include "ris/vec.hpp"
#include "ris/wave.hpp"

namespace ris {

/// Huygens field source over the panel: per-tile tangential fields
///   E_a = -(1 - Gamma)/2 E_i_tan,  H_a = (1 + Gamma)/2 H_i_tan.
/// The linear variant keeps only the Gamma-proportional part
///   E_a = (Gamma/2) E_i_tan,  H_a = (Gamma/2) H_i_tan,
/// used for per-mode field breakdowns (sources add; the kernel is linear).
struct SurfaceSource {
    const RisPanel* panel = nullptr;
    std::vector<Vec3> centers;
    std::vector<CVec3> e_a;  // V/m, tangential
    std::vector<CVec3> h_a;  // A/m, tangential
    double tile_area = 0.0;
};

/// Equivalent surface currents J = (1 + Gamma)(H_i x n), M = (1 - Gamma)(n x E_i).
struct SurfaceCurrents {
    const RisPanel* panel = nullptr;
    std::vector<Vec3> centers;
    std::vector<CVec3> j;  // A/m
    std::vector<CVec3> m;  // V/m
    double tile_area = 0.0;
};

enum class SourcePart { full, gamma_linear };

/// Builds the modified Huygens source from tile-center Gamma samples
/// (panel index order). Requires tile_edge <= lambda/2 and front illumination.
SurfaceSource huygens_source(const WaveSpec& wave, const RisPanel& panel,
                             const IncidentWave& incident, std::span<const cplx> gamma,
                             SourcePart part = SourcePart::full);

SurfaceCurrents surface_currents(const WaveSpec& wave, const RisPanel& panel,
                                 const IncidentWave& incident, std::span<const cplx> gamma);

/// Radiation integral for E at P (midpoint rule, fixed tile order):
///   E(P) = sum j e^{-jkr}/(lambda r) [ r_hat x (eta n x H_a) x r_hat
///                                    + r_hat x (E_a x n) ] dS.
/// Valid in the front half-space, a few wavelengths away from the panel;
/// throws "wrong-half-space" behind the panel plane.
CVec3 reradiate_E(const SurfaceSource& src, const WaveSpec& wave, const Vec3& p);

/// Same field via the Kottler kernel with explicit currents:
///   E(P) = -jk sum G [ eta r_hat x (J x r_hat) + M x r_hat ] dS.
/// Algebraically identical to reradiate_E; kept as an independent route.
CVec3 reradiate_E_from_currents(const SurfaceCurrents& cur, const WaveSpec& wave, const Vec3& p);

/// Magnetic-field kernel:
///   H(P) = sum G [ -jk/eta r_hat x (M x r_hat) + jk J x r_hat ] dS.
CVec3 reradiate_H(const SurfaceCurrents& cur, const WaveSpec& wave, const Vec3& p);

/// Opt-in Fraunhofer accelerator: one shared direction and 1/r for the whole
/// panel, per-tile phase via the far-zone point response. Intended for
/// distances beyond ~10x the Fraunhofer distance of the panel.
CVec3 reradiate_E_far(const SurfaceSource& src, const WaveSpec& wave, const Vec3& p);

/// True when P is closer than 3 lambda to the panel plane (evanescent-zone
/// results are flagged, not rejected).
bool in_reactive_zone(const RisPanel& panel, const Vec3& p, double wavelength);

} // namespace ris
