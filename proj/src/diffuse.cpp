#include "ris/diffuse.hpp"

#include <cmath>
#include <stdexcept>

namespace ris {

double diffuse_intensity(const RisPanel& panel, const WaveSpec& wave,
                         const IncidentWave& incident, double s_squared, const Vec3& p) {
    if (!(s_squared >= 0.0 && s_squared <= 1.0))
        throw std::invalid_argument("diffuse_intensity: s_squared must lie in [0, 1]");
    if (!(panel.height_above(p) > 0.0))
        throw std::domain_error("wrong-half-space: observation point behind the panel");
    if (s_squared == 0.0)
        return 0.0;

    const Vec3 n = panel.normal();
    const double ds = panel.tile_area();
    double acc = 0.0;
    for (std::size_t u = 0; u < panel.nx(); ++u)
        for (std::size_t v = 0; v < panel.ny(); ++v) {
            Vec3 rp = panel.tile_center(u, v);
            double cos_i = std::cos(incident.incidence_angle(panel, rp));
            CVec3 e_i = incident.eval_E(wave, rp);
            Vec3 d = p - rp;
            double r2 = dot(d, d);
            double cos_s = dot(d, n) / std::sqrt(r2);
            if (cos_s <= 0.0)
                continue;
            double e2 = magnitude(e_i);
            acc += e2 * e2 * cos_i * cos_s * ds / (pi * r2);
        }
    return s_squared * acc;
}

} // namespace ris
