#include "ris/array_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace ris {

namespace {

constexpr double kDeltaMax = 0.5;
const double kDeltaMin = 1.0 / (2.0 * std::sqrt(pi));        // directivity >= 1
const double kDeltaLambertian = 1.0 / std::sqrt(2.0 * pi);   // alpha = 0 floor
const double kAlphaMax = pi / 2.0 - 1.0;                     // D <= pi
const double kDeltaHuygens = 0.5 * std::sqrt(3.0 / pi);      // D = 3 fits the aperture

// adaptive Simpson
double adapt_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double tol = std::abs(whole) * rel_tol + 1e-300;
    return adapt_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

struct TileGeom {
    Vec3 center;
    cplx e_inc;      // complex incident field scalar at the tile
    double theta_i;  // local incidence angle
    Vec3 p_m;        // reflected polarization
};

TileGeom tile_geom(const WaveSpec& wave, const RisPanel& panel, const IncidentWave& incident,
                   std::size_t u, std::size_t v) {
    TileGeom t;
    t.center = panel.tile_center(u, v);
    t.theta_i = incident.incidence_angle(panel, t.center);
    Vec3 p_i = incident.plane() ? incident.plane()->p_hat : incident.spherical()->p_hat;
    t.e_inc = dot(incident.eval_E(wave, t.center), p_i);
    t.p_m = normalized(reflect_across_plane(p_i, panel.normal()));
    return t;
}

void require_front(const RisPanel& panel, const Vec3& p) {
    if (!(panel.height_above(p) > 0.0))
        throw std::domain_error("wrong-half-space: observation point behind the panel");
}

} // namespace

ElementPattern ElementPattern::lambertian(double alpha) {
    if (!(alpha >= 0.0))
        throw std::invalid_argument("lambertian pattern: alpha must be non-negative");
    return ElementPattern(Kind::lambertian, alpha);
}

double ElementPattern::domain_max() const { return kind_ == Kind::huygens ? pi : pi / 2.0; }

double ElementPattern::value(double theta) const {
    if (theta < -1e-12 || theta > domain_max() + 1e-12)
        throw std::domain_error("element pattern: angle outside the pattern domain");
    double c = std::cos(theta);
    if (kind_ == Kind::huygens)
        return 0.25 * (1.0 + c) * (1.0 + c);
    return std::pow(std::max(c, 0.0), alpha_);
}

double ElementPattern::directivity() const {
    return kind_ == Kind::huygens ? 3.0 : 2.0 * (alpha_ + 1.0);
}

double ElementPattern::norm_integral() const {
    if (norm_cache_ < 0.0)
        norm_cache_ = integrate([this](double th) { return value(th) * std::sin(th); }, 0.0,
                                pi / 2.0, 1e-12);
    return norm_cache_;
}

std::vector<FeasibilityViolation> feasibility_check(const ElementPattern& pattern,
                                                    double tile_edge, double wavelength) {
    if (!(tile_edge > 0.0))
        throw std::invalid_argument("feasibility_check: tile edge must be positive");
    double delta = tile_edge / wavelength;
    std::vector<FeasibilityViolation> out;
    auto add = [&](FeasibilityViolation::Code code, double value, double bound, bool hard,
                   std::string msg) {
        out.push_back({code, value, bound, hard, std::move(msg)});
    };
    if (delta > kDeltaMax + 1e-12)
        add(FeasibilityViolation::Code::grating_lobes, delta, kDeltaMax, true,
            "delta = " + std::to_string(delta) + " > 1/2: grating lobes (engine refuses to run)");
    if (delta < kDeltaMin - 1e-12)
        add(FeasibilityViolation::Code::directivity_floor, delta, kDeltaMin, false,
            "delta = " + std::to_string(delta) +
                " < 1/(2 sqrt(pi)) ~ 0.28: element directivity below 1");
    if (pattern.kind() == ElementPattern::Kind::lambertian) {
        if (delta < kDeltaLambertian - 1e-12)
            add(FeasibilityViolation::Code::lambertian_pitch, delta, kDeltaLambertian, false,
                "delta = " + std::to_string(delta) +
                    " < 1/sqrt(2 pi) ~ 0.4: lambertian element too small");
        if (pattern.alpha() > kAlphaMax + 1e-12)
            add(FeasibilityViolation::Code::lambertian_alpha, pattern.alpha(), kAlphaMax, false,
                "alpha = " + std::to_string(pattern.alpha()) +
                    " > pi/2 - 1 ~ 0.57: directivity above pi");
    } else if (delta < kDeltaHuygens - 1e-12) {
        add(FeasibilityViolation::Code::huygens_pitch, delta, kDeltaHuygens, false,
            "delta = " + std::to_string(delta) +
                " < (1/2) sqrt(3/pi) ~ 0.49: huygens element too small");
    }
    return out;
}

double wavelet_norm(const ElementPattern& pattern, ElementNorm norm, double wavelength) {
    if (norm == ElementNorm::aperture)
        return wavelength * pattern.directivity() / (4.0 * pi);
    return (wavelength / (2.0 * pi)) / std::sqrt(2.0 * pattern.norm_integral());
}

double element_amplitude(const ElementPattern& pattern, ElementNorm norm, double wavelength,
                         double theta_i, double theta_m, double r_i, double r_m) {
    double c = wavelet_norm(pattern, norm, wavelength);
    // grouped so the exchange (theta_i, r_i) <-> (theta_m, r_m) is exact
    double q = std::sqrt(pattern.value(theta_i)) * std::sqrt(pattern.value(theta_m));
    return c * q / (r_i * r_m);
}

double power_wavelet_amplitude(const ElementPattern& pattern, double wavelength, double m,
                               double rayleigh, double e_i1, double theta_i, double r_i,
                               double r_m) {
    return (wavelength / (2.0 * pi)) * std::sqrt(m) * rayleigh * e_i1 *
           std::sqrt(pattern.value(theta_i)) /
           (std::sqrt(2.0 * pattern.norm_integral()) * r_i * r_m);
}

CVec3 element_field(const WaveSpec& wave, const RisPanel& panel, const IncidentWave& incident,
                    cplx gamma_uv, const ElementPattern& pattern, ElementNorm norm_kind,
                    std::size_t u, std::size_t v, const Vec3& p) {
    require_front(panel, p);
    TileGeom t = tile_geom(wave, panel, incident, u, v);
    Vec3 d = p - t.center;
    double r_m = norm(d);
    double theta_m = std::acos(std::clamp(dot(d, panel.normal()) / r_m, -1.0, 1.0));
    double amp = wavelet_norm(pattern, norm_kind, wave.wavelength_m()) *
                 std::sqrt(pattern.value(t.theta_i)) * std::sqrt(pattern.value(theta_m)) / r_m;
    cplx w = cplx(0, 1) * amp * gamma_uv * t.e_inc * std::polar(1.0, -wave.wavenumber() * r_m);
    return w * CVec3(t.p_m);
}

CVec3 huygens_element_field(const WaveSpec& wave, const RisPanel& panel,
                            const IncidentWave& incident, cplx gamma_uv, std::size_t u,
                            std::size_t v, const Vec3& p) {
    require_front(panel, p);
    TileGeom t = tile_geom(wave, panel, incident, u, v);
    Vec3 d = p - t.center;
    double r_m = norm(d);
    double c_m = std::clamp(dot(d, panel.normal()) / r_m, -1.0, 1.0);
    double amp = 3.0 * wave.wavelength_m() / (16.0 * pi) * (1.0 + std::cos(t.theta_i)) *
                 (1.0 + c_m) / r_m;
    cplx w = cplx(0, 1) * amp * gamma_uv * t.e_inc * std::polar(1.0, -wave.wavenumber() * r_m);
    return w * CVec3(t.p_m);
}

ArrayContext build_array_context(const WaveSpec& wave, const RisPanel& panel,
                                 const IncidentWave& incident, std::span<const cplx> gamma,
                                 const ElementPattern& pattern, ElementNorm norm_kind) {
    if (gamma.size() != panel.tile_count())
        throw std::invalid_argument("gamma sample count does not match the panel tile grid");
    if (panel.tile_edge() > kDeltaMax * wave.wavelength_m() + 1e-12)
        throw std::invalid_argument("array engine: tile edge exceeds lambda/2 (grating lobes)");

    ArrayContext ctx;
    ctx.panel = &panel;
    ctx.pattern = pattern;
    ctx.k = wave.wavenumber();
    ctx.centers.resize(panel.tile_count());
    ctx.source.resize(panel.tile_count());
    ctx.p_m.resize(panel.tile_count());

    double c = wavelet_norm(pattern, norm_kind, wave.wavelength_m());
    std::size_t i = 0;
    for (std::size_t u = 0; u < panel.nx(); ++u)
        for (std::size_t v = 0; v < panel.ny(); ++v, ++i) {
            TileGeom t = tile_geom(wave, panel, incident, u, v);
            ctx.centers[i] = t.center;
            ctx.source[i] =
                cplx(0, 1) * c * std::sqrt(pattern.value(t.theta_i)) * gamma[i] * t.e_inc;
            ctx.p_m[i] = t.p_m;
        }
    return ctx;
}

CVec3 array_field(const ArrayContext& ctx, const Vec3& p) {
    require_front(*ctx.panel, p);
    const Vec3 n = ctx.panel->normal();
    const bool huy = ctx.pattern.kind() == ElementPattern::Kind::huygens;
    CVec3 acc;
    for (std::size_t i = 0; i < ctx.centers.size(); ++i) {
        Vec3 d = p - ctx.centers[i];
        double r = norm(d);
        double c_m = std::clamp(dot(d, n) / r, -1.0, 1.0);
        double sf = huy ? 0.5 * (1.0 + c_m) : std::sqrt(ctx.pattern.value(std::acos(c_m)));
        cplx w = ctx.source[i] * std::polar(sf / r, -ctx.k * r);
        acc += w * CVec3(ctx.p_m[i]);
    }
    return acc;
}

CVec3 array_total_field(const WaveSpec& wave, const RisPanel& panel, const IncidentWave& incident,
                        std::span<const cplx> gamma, const ElementPattern& pattern,
                        ElementNorm norm_kind, const Vec3& p) {
    if (gamma.size() != panel.tile_count())
        throw std::invalid_argument("gamma sample count does not match the panel tile grid");
    if (panel.tile_edge() > kDeltaMax * wave.wavelength_m() + 1e-12)
        throw std::invalid_argument("array engine: tile edge exceeds lambda/2 (grating lobes)");
    CVec3 acc;
    std::size_t i = 0;
    for (std::size_t u = 0; u < panel.nx(); ++u)
        for (std::size_t v = 0; v < panel.ny(); ++v, ++i)
            acc += element_field(wave, panel, incident, gamma[i], pattern, norm_kind, u, v, p);
    return acc;
}

} // namespace ris
