#pragma once

#include <span>
#include <string>
#include <vector>

#include "ris/incident.hpp"
#include "ris/modulation.hpp"
#include "ris/panel.hpp"
#include "ris/vec.hpp"
#include "ris/wave.hpp"

namespace ris {

/// Element power radiation pattern f(theta): exponential-Lambertian cos^alpha
/// (front hemisphere) or the Huygens cardioid ((1+cos)/2)^2 (full sphere).
class ElementPattern {
  public:
    enum class Kind { lambertian, huygens };

    static ElementPattern huygens() { return ElementPattern(Kind::huygens, 0.0); }
    static ElementPattern lambertian(double alpha);

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double domain_max() const;  // pi/2 for lambertian, pi for huygens

    /// f(theta); domain error outside [0, domain_max].
    double value(double theta) const;

    /// Directivity over the pattern's own domain: 3 (huygens), 2(alpha+1) (lambertian).
    double directivity() const;

    /// int_0^{pi/2} f(theta) sin(theta) dtheta by adaptive quadrature (cached).
    double norm_integral() const;

  private:
    ElementPattern(Kind k, double a) : kind_(k), alpha_(a) {}

    Kind kind_;
    double alpha_;
    mutable double norm_cache_ = -1.0;
};

struct FeasibilityViolation {
    enum class Code {
        grating_lobes,     // delta > 1/2 (hard stop)
        directivity_floor, // delta < 1/(2 sqrt(pi))
        lambertian_pitch,  // delta < 1/sqrt(2 pi)
        lambertian_alpha,  // alpha > pi/2 - 1
        huygens_pitch,     // delta < (1/2) sqrt(3/pi)
    };
    Code code;
    double value;
    double bound;
    bool hard;
    std::string message;
};

/// Checks delta = tile_edge/lambda against the element feasibility bounds.
/// Report-only except grating lobes, on which the engine refuses to run.
std::vector<FeasibilityViolation> feasibility_check(const ElementPattern& pattern,
                                                    double tile_edge, double wavelength);

/// Wavelet amplitude normalization.
///  - aperture: lambda D_m / (4 pi): the effective-aperture form; reduces to the
///    closed-form Huygens expression and matches the radiation integral at the
///    matched pitch delta = sqrt(D_m / 4 pi).
///  - hemisphere: (lambda/2 pi)/sqrt(2 I_f): per-element hemisphere power
///    balance (the power-wavelet construction).
enum class ElementNorm { aperture, hemisphere };

double wavelet_norm(const ElementPattern& pattern, ElementNorm norm, double wavelength);

/// Scalar two-hop wavelet factor C sqrt(f(ti)) sqrt(f(tm)) / (ri rm); symmetric
/// under (ti, ri) <-> (tm, rm).
double element_amplitude(const ElementPattern& pattern, ElementNorm norm, double wavelength,
                         double theta_i, double theta_m, double r_i, double r_m);

/// Power-balanced wavelet amplitude |dE0| = (lambda/2 pi) sqrt(m) R E_i1
/// sqrt(f(ti)) / (sqrt(2 I_f) r_i r_m); its hemisphere-radiated power equals
/// m R^2 (lambda^2/4 pi) f(ti) |E_i|^2 / (2 eta) by construction.
double power_wavelet_amplitude(const ElementPattern& pattern, double wavelength, double m,
                               double rayleigh, double e_i1, double theta_i, double r_i,
                               double r_m);

/// Per-tile reradiated wavelet at P:
///   dE = j C Gamma(u,v) sqrt(f(theta_i)) sqrt(f(theta_m)) E_inc e^{-jk r_m}/r_m p_m,
/// with E_inc the complex incident field scalar at the tile (the spherical
/// e^{-jk r_i}/r_i factor, or the plane-wave field at the tile center) and
/// p_m the specularly reflected polarization. theta_m is the tile-to-P angle
/// off the normal. Throws "wrong-half-space" for P behind the panel.
CVec3 element_field(const WaveSpec& wave, const RisPanel& panel, const IncidentWave& incident,
                    cplx gamma_uv, const ElementPattern& pattern, ElementNorm norm, std::size_t u,
                    std::size_t v, const Vec3& p);

/// Closed-form Huygens wavelet (aperture normalization):
///   dE = j (3 lambda/16 pi)(1 + cos theta_i)(1 + cos theta_m) Gamma E_inc e^{-jk r_m}/r_m p_m.
CVec3 huygens_element_field(const WaveSpec& wave, const RisPanel& panel,
                            const IncidentWave& incident, cplx gamma_uv, std::size_t u,
                            std::size_t v, const Vec3& p);

/// Precomputed point-independent tile data for scan evaluation; array_field
/// over an ArrayContext equals summing element_field tile by tile.
struct ArrayContext {
    const RisPanel* panel = nullptr;
    ElementPattern pattern = ElementPattern::huygens();
    double k = 0;
    std::vector<Vec3> centers;
    std::vector<cplx> source;  // j * C * Gamma * E_inc * sqrt(f(theta_i)) per tile
    std::vector<Vec3> p_m;
};

ArrayContext build_array_context(const WaveSpec& wave, const RisPanel& panel,
                                 const IncidentWave& incident, std::span<const cplx> gamma,
                                 const ElementPattern& pattern, ElementNorm norm);

CVec3 array_field(const ArrayContext& ctx, const Vec3& p);

/// Sum of element_field over the N_X x N_Y grid in fixed index order.
/// Refuses to run past the grating-lobe bound (delta > 1/2).
CVec3 array_total_field(const WaveSpec& wave, const RisPanel& panel, const IncidentWave& incident,
                        std::span<const cplx> gamma, const ElementPattern& pattern,
                        ElementNorm norm, const Vec3& p);

} // namespace ris
