#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ris/constants.hpp"
#include "ris/panel.hpp"
#include "ris/vec.hpp"

namespace ris {

/// One reradiated mode: power weight m, amplitude map A(x', y') and phase map
/// chi(x', y') over local panel coordinates. For plane-wave modes A is 1 and
/// the surface mean of A^2 is 1 by construction.
struct Mode {
    double weight = 1.0;  // m_n
    std::function<double(double, double)> amplitude;  // A_n(x', y')
    std::function<double(double, double)> phase;      // chi_n(x', y') in rad
    std::string label;
};

/// Linear phase ramp chi = k (sin(theta_i) - sin(theta_r)) x' steering the
/// reflection from theta_i to theta_r (angles signed, measured from the
/// normal in the x'-n plane). chi(0,0) = 0.
Mode gradient_profile(double theta_i_rad, double theta_r_rad, double k, double weight = 1.0,
                      std::string label = {});

/// Reflecting lens: chi = k (sqrt(x'^2 + y'^2 + z0^2) - |z0|) - k sin(theta_i) x';
/// the focus sits at distance |z0| from the panel center along the normal.
/// theta_i is positive when the wave arrives from the +x' side. chi(0,0) = 0.
Mode focus_profile(double theta_i_rad, double z0_m, double k, double weight = 1.0,
                   std::string label = {});

/// Constant coefficient (chi = 0, A = 1); the specular slot uses this.
Mode constant_profile(double weight, std::string label = {});

/// Macroscopic modulation coefficient Gamma(x', y') = R sum_n sqrt(m_n) A_n e^{j chi_n}
/// over the panel extents. Evaluation outside the panel is a domain error.
class ModulationProfile {
  public:
    ModulationProfile(std::vector<Mode> modes, double rayleigh, double half_x, double half_y);

    static ModulationProfile over_panel(std::vector<Mode> modes, double rayleigh,
                                        const RisPanel& panel) {
        return ModulationProfile(std::move(modes), rayleigh, panel.half_x(), panel.half_y());
    }

    std::size_t mode_count() const { return modes_.size(); }
    const Mode& mode(std::size_t n) const { return modes_[n]; }
    double rayleigh() const { return rayleigh_; }

    cplx gamma(double xp, double yp) const;
    cplx gamma_mode(std::size_t n, double xp, double yp) const;

    /// Tile-center samples in panel index order (u*ny + v); both engines
    /// consume these exact values.
    std::vector<cplx> sample(const RisPanel& panel) const;
    std::vector<cplx> sample_mode(std::size_t n, const RisPanel& panel) const;

    /// Surface mean of A_n^2 at tile resolution (1 for normalized modes).
    double amplitude_mean_square(std::size_t n, const RisPanel& panel) const;

  private:
    void check_domain(double xp, double yp) const;

    std::vector<Mode> modes_;
    double rayleigh_;
    double half_x_, half_y_;
};

/// Plane-wave multi-mode profile: one gradient mode per (weight, theta_r) pair.
ModulationProfile multimode_profile(const std::vector<std::pair<double, double>>& weight_theta_r,
                                    double theta_i_rad, double k, double rayleigh,
                                    const RisPanel& panel);

/// Gamma given directly as tile-center samples (x', y', Re, Im rows); each
/// panel tile center must match a row within half a tile edge.
ModulationProfile table_profile(const std::vector<std::array<double, 4>>& rows,
                                const RisPanel& panel, double rayleigh = 1.0);

} // namespace ris
