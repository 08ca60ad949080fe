#include "ris/integral_engine.hpp"

#include <cmath>
#include <stdexcept>

namespace ris {

namespace {

void require_sampling(const WaveSpec& wave, const RisPanel& panel) {
    if (panel.tile_edge() > 0.5 * wave.wavelength_m() + 1e-12)
        throw std::invalid_argument("panel tile edge exceeds lambda/2");
}

void require_gamma_size(const RisPanel& panel, std::span<const cplx> gamma) {
    if (gamma.size() != panel.tile_count())
        throw std::invalid_argument("gamma sample count does not match the panel tile grid");
}

void require_front(const RisPanel& panel, const Vec3& p) {
    if (!(panel.height_above(p) > 0.0))
        throw std::domain_error("wrong-half-space: observation point behind the panel");
}

} // namespace

SurfaceSource huygens_source(const WaveSpec& wave, const RisPanel& panel,
                             const IncidentWave& incident, std::span<const cplx> gamma,
                             SourcePart part) {
    require_sampling(wave, panel);
    require_gamma_size(panel, gamma);

    SurfaceSource src;
    src.panel = &panel;
    src.tile_area = panel.tile_area();
    src.centers.resize(panel.tile_count());
    src.e_a.resize(panel.tile_count());
    src.h_a.resize(panel.tile_count());

    const Vec3 n = panel.normal();
    std::size_t i = 0;
    for (std::size_t u = 0; u < panel.nx(); ++u)
        for (std::size_t v = 0; v < panel.ny(); ++v, ++i) {
            Vec3 rp = panel.tile_center(u, v);
            incident.incidence_angle(panel, rp);  // rejects back illumination per tile
            CVec3 e_tan = tangential_project(incident.eval_E(wave, rp), n);
            CVec3 h_tan = tangential_project(incident.eval_H(wave, rp), n);
            src.centers[i] = rp;
            if (part == SourcePart::full) {
                src.e_a[i] = -0.5 * (cplx(1, 0) - gamma[i]) * e_tan;
                src.h_a[i] = 0.5 * (cplx(1, 0) + gamma[i]) * h_tan;
            } else {
                src.e_a[i] = 0.5 * gamma[i] * e_tan;
                src.h_a[i] = 0.5 * gamma[i] * h_tan;
            }
        }
    return src;
}

SurfaceCurrents surface_currents(const WaveSpec& wave, const RisPanel& panel,
                                 const IncidentWave& incident, std::span<const cplx> gamma) {
    require_sampling(wave, panel);
    require_gamma_size(panel, gamma);

    SurfaceCurrents cur;
    cur.panel = &panel;
    cur.tile_area = panel.tile_area();
    cur.centers.resize(panel.tile_count());
    cur.j.resize(panel.tile_count());
    cur.m.resize(panel.tile_count());

    const Vec3 n = panel.normal();
    std::size_t i = 0;
    for (std::size_t u = 0; u < panel.nx(); ++u)
        for (std::size_t v = 0; v < panel.ny(); ++v, ++i) {
            Vec3 rp = panel.tile_center(u, v);
            incident.incidence_angle(panel, rp);
            CVec3 e_i = incident.eval_E(wave, rp);
            CVec3 h_i = incident.eval_H(wave, rp);
            cur.centers[i] = rp;
            // cross products with n keep only tangential parts of the full fields
            cur.j[i] = (cplx(1, 0) + gamma[i]) * cross(h_i, n);
            cur.m[i] = (cplx(1, 0) - gamma[i]) * cross(n, e_i);
        }
    return cur;
}

CVec3 reradiate_E(const SurfaceSource& src, const WaveSpec& wave, const Vec3& p) {
    require_front(*src.panel, p);
    const double k = wave.wavenumber();
    const double lambda = wave.wavelength_m();
    const double eta = wave.impedance();
    const Vec3 n = src.panel->normal();
    const double ds = src.tile_area;

    CVec3 acc;
    for (std::size_t i = 0; i < src.centers.size(); ++i) {
        Vec3 d = p - src.centers[i];
        double r = norm(d);
        Vec3 rh = d / r;
        // j e^{-jkr}/(lambda r) * dS
        cplx coeff = cplx(0, 1) * std::polar(ds / (lambda * r), -k * r);
        CVec3 v1 = cross(n, src.h_a[i]) * eta;
        CVec3 t1 = v1 - CVec3(rh) * dot(v1, rh);  // r x (v1 x r)
        CVec3 t2 = cross(rh, cross(src.e_a[i], n));
        acc += coeff * (t1 + t2);
    }
    return acc;
}

CVec3 reradiate_E_from_currents(const SurfaceCurrents& cur, const WaveSpec& wave, const Vec3& p) {
    require_front(*cur.panel, p);
    const double k = wave.wavenumber();
    const double eta = wave.impedance();
    const double ds = cur.tile_area;

    CVec3 acc;
    for (std::size_t i = 0; i < cur.centers.size(); ++i) {
        Vec3 d = p - cur.centers[i];
        double r = norm(d);
        Vec3 rh = d / r;
        cplx coeff = cplx(0, -k) * green(r, k) * ds;  // -jk G dS
        CVec3 jt = cur.j[i] - CVec3(rh) * dot(cur.j[i], rh);
        acc += coeff * (eta * jt + cross(cur.m[i], rh));
    }
    return acc;
}

CVec3 reradiate_H(const SurfaceCurrents& cur, const WaveSpec& wave, const Vec3& p) {
    require_front(*cur.panel, p);
    const double k = wave.wavenumber();
    const double eta = wave.impedance();
    const double ds = cur.tile_area;

    CVec3 acc;
    for (std::size_t i = 0; i < cur.centers.size(); ++i) {
        Vec3 d = p - cur.centers[i];
        double r = norm(d);
        Vec3 rh = d / r;
        cplx g = green(r, k) * ds;
        CVec3 mt = cur.m[i] - CVec3(rh) * dot(cur.m[i], rh);
        acc += cplx(0, -k / eta) * g * mt + cplx(0, k) * g * cross(cur.j[i], rh);
    }
    return acc;
}

CVec3 reradiate_E_far(const SurfaceSource& src, const WaveSpec& wave, const Vec3& p) {
    require_front(*src.panel, p);
    const double k = wave.wavenumber();
    const double eta = wave.impedance();
    const Vec3 center = src.panel->center();
    const Vec3 n = src.panel->normal();
    const double ds = src.tile_area;
    const Vec3 rel = p - center;
    const Vec3 rh = normalized(rel);

    CVec3 acc;
    for (std::size_t i = 0; i < src.centers.size(); ++i) {
        cplx coeff = 2.0 * cplx(0, k) * far_green(rel, src.centers[i] - center, k) * ds;
        CVec3 v1 = cross(n, src.h_a[i]) * eta;
        CVec3 t1 = v1 - CVec3(rh) * dot(v1, rh);
        CVec3 t2 = cross(rh, cross(src.e_a[i], n));
        acc += coeff * (t1 + t2);
    }
    return acc;
}

bool in_reactive_zone(const RisPanel& panel, const Vec3& p, double wavelength) {
    return panel.height_above(p) < 3.0 * wavelength;
}

} // namespace ris
