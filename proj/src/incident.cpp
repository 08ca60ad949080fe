#include "ris/incident.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ris {

namespace {
constexpr double kUnitTol = 1e-12;

void require_unit(const Vec3& v, const char* name) {
    if (std::abs(norm(v) - 1.0) > kUnitTol)
        throw std::invalid_argument(std::string(name) + " is not unit length");
}
} // namespace

IncidentWave::IncidentWave(PlaneWave pw) : kind_(pw) {
    require_unit(pw.k_hat, "plane-wave direction");
    require_unit(pw.p_hat, "plane-wave polarization");
    if (std::abs(dot(pw.k_hat, pw.p_hat)) > kUnitTol)
        throw std::invalid_argument("plane-wave polarization is not orthogonal to propagation");
    if (!(pw.amplitude_vpm >= 0.0))
        throw std::invalid_argument("plane-wave amplitude must be non-negative");
}

IncidentWave::IncidentWave(SphericalSource s) : kind_(s) {
    require_unit(s.p_hat, "source polarization");
    if (!(s.pt_gt_w > 0.0))
        throw std::invalid_argument("source Pt*Gt must be positive");
}

CVec3 IncidentWave::eval_E(const WaveSpec& wave, const Vec3& point) const {
    double k = wave.wavenumber();
    if (const PlaneWave* pw = plane()) {
        cplx amp = std::polar(pw->amplitude_vpm, pw->chi0_rad - k * dot(pw->k_hat, point));
        return amp * CVec3(pw->p_hat);
    }
    const SphericalSource& s = *spherical();
    Vec3 d = point - s.phase_center;
    double r = norm(d);
    if (!(r > 0.0))
        throw std::domain_error("eval_E: observation point coincides with the source");
    double a1m = std::sqrt(wave.impedance() * s.pt_gt_w / (2.0 * pi));  // field at 1 m
    cplx amp = std::polar(a1m / r, s.chi0_rad - k * r);
    return amp * CVec3(s.p_hat);
}

CVec3 IncidentWave::eval_H(const WaveSpec& wave, const Vec3& point) const {
    CVec3 e = eval_E(wave, point);
    Vec3 kh = local_k_hat(point);
    return cross(kh, e) * (1.0 / wave.impedance());
}

Vec3 IncidentWave::local_k_hat(const Vec3& point) const {
    if (const PlaneWave* pw = plane())
        return pw->k_hat;
    const SphericalSource& s = *spherical();
    return normalized(point - s.phase_center);
}

double IncidentWave::incidence_angle(const RisPanel& panel, const Vec3& tile_point) const {
    Vec3 kh = local_k_hat(tile_point);
    double kn = dot(kh, panel.normal());
    if (kn >= -kUnitTol)
        throw std::domain_error("back-illumination: wave does not reach the panel from the front");
    double c = std::clamp(-kn, 0.0, 1.0);  // cos between -k_hat and n
    return std::acos(c);
}

double IncidentWave::signed_incidence(const RisPanel& panel, const Vec3& tile_point) const {
    incidence_angle(panel, tile_point);  // front-side check
    Vec3 kh = local_k_hat(tile_point);
    return std::asin(std::clamp(dot(kh, panel.x_axis()), -1.0, 1.0));
}

} // namespace ris
