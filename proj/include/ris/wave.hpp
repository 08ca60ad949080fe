#pragma once

#include <complex>
#include <stdexcept>

#include "ris/constants.hpp"
#include "ris/vec.hpp"

namespace ris {

/// Frequency, derived wavelength/wavenumber, and medium impedance.
class WaveSpec {
  public:
    explicit WaveSpec(double frequency_hz, double impedance_ohm = free_space_impedance)
        : frequency_hz_(frequency_hz), impedance_(impedance_ohm) {
        if (!(frequency_hz > 0.0))
            throw std::invalid_argument("WaveSpec: frequency must be positive");
        if (!(impedance_ohm > 0.0))
            throw std::invalid_argument("WaveSpec: impedance must be positive");
        wavelength_ = speed_of_light / frequency_hz_;
        wavenumber_ = 2.0 * pi / wavelength_;
    }

    double frequency_hz() const { return frequency_hz_; }
    double wavelength_m() const { return wavelength_; }
    double wavenumber() const { return wavenumber_; }  // rad/m
    double impedance() const { return impedance_; }    // ohm

  private:
    double frequency_hz_;
    double impedance_;
    double wavelength_;
    double wavenumber_;
};

/// Free-space Green's function e^{-jkr}/(4 pi r).
inline cplx green(double r, double k) {
    if (!(r > 0.0))
        throw std::domain_error("green: distance must be positive");
    return std::polar(1.0 / (4.0 * pi * r), -k * r);
}

/// Fraunhofer form: e^{-jk|r|}/(4 pi |r|) * exp(+jk r_hat . r_src).
inline cplx far_green(const Vec3& r, const Vec3& r_src, double k) {
    double rm = norm(r);
    if (!(rm > 0.0))
        throw std::domain_error("far_green: observation point at origin");
    double phase_corr = k * dot(r, r_src) / rm;
    return std::polar(1.0 / (4.0 * pi * rm), -k * rm + phase_corr);
}

} // namespace ris
