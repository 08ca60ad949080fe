#pragma once

#include <variant>

#include "ris/panel.hpp"
#include "ris/vec.hpp"
#include "ris/wave.hpp"

namespace ris {

/// Uniform plane wave: E = E0 e^{j chi0} e^{-jk (k_hat . r)} p_hat.
struct PlaneWave {
    double amplitude_vpm = 1.0;
    Vec3 k_hat;  // propagation direction, unit
    Vec3 p_hat;  // polarization, unit, orthogonal to k_hat
    double chi0_rad = 0.0;
};

/// Far-field spherical source: E = sqrt(eta Pt Gt / 2 pi) e^{j chi0} e^{-jk r}/r p_hat,
/// with r measured from the phase center. The polarization vector is
/// transported unchanged (valid for small angular subtenses).
struct SphericalSource {
    double pt_gt_w = 1.0;  // Pt * Gt product
    Vec3 phase_center;
    Vec3 p_hat;
    double chi0_rad = 0.0;
};

class IncidentWave {
  public:
    IncidentWave(PlaneWave pw);
    IncidentWave(SphericalSource s);

    bool is_plane() const { return std::holds_alternative<PlaneWave>(kind_); }
    const PlaneWave* plane() const { return std::get_if<PlaneWave>(&kind_); }
    const SphericalSource* spherical() const { return std::get_if<SphericalSource>(&kind_); }

    CVec3 eval_E(const WaveSpec& wave, const Vec3& point) const;
    CVec3 eval_H(const WaveSpec& wave, const Vec3& point) const;

    /// Local propagation direction at the point (constant for a plane wave).
    Vec3 local_k_hat(const Vec3& point) const;

    /// Angle between the arrival direction and the panel normal, in [0, pi/2).
    /// Throws "back-illumination" if the wave reaches the tile from behind.
    double incidence_angle(const RisPanel& panel, const Vec3& tile_point) const;

    /// Signed in-plane incidence (positive toward +x'): asin(k_hat . x').
    double signed_incidence(const RisPanel& panel, const Vec3& tile_point) const;

  private:
    std::variant<PlaneWave, SphericalSource> kind_;
};

} // namespace ris
