#include "ris/modulation.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace ris {

Mode gradient_profile(double theta_i, double theta_r, double k, double weight, std::string label) {
    if (!(std::abs(theta_i) < pi / 2) || !(std::abs(theta_r) < pi / 2))
        throw std::invalid_argument("gradient_profile: angles must satisfy |theta| < pi/2");
    double slope = k * (std::sin(theta_i) - std::sin(theta_r));
    return Mode{weight, [](double, double) { return 1.0; },
                [slope](double xp, double) { return slope * xp; }, std::move(label)};
}

Mode focus_profile(double theta_i, double z0, double k, double weight, std::string label) {
    if (z0 == 0.0)
        throw std::domain_error("focus_profile: focal offset z0 must be nonzero");
    double az0 = std::abs(z0);
    double si = std::sin(theta_i);
    return Mode{weight, [](double, double) { return 1.0; },
                [k, z0, az0, si](double xp, double yp) {
                    return k * (std::sqrt(xp * xp + yp * yp + z0 * z0) - az0) - k * si * xp;
                },
                std::move(label)};
}

Mode constant_profile(double weight, std::string label) {
    return Mode{weight, [](double, double) { return 1.0; }, [](double, double) { return 0.0; },
                std::move(label)};
}

ModulationProfile::ModulationProfile(std::vector<Mode> modes, double rayleigh, double half_x,
                                     double half_y)
    : modes_(std::move(modes)), rayleigh_(rayleigh), half_x_(half_x), half_y_(half_y) {
    if (!(rayleigh >= 0.0 && rayleigh <= 1.0))
        throw std::invalid_argument("ModulationProfile: rayleigh must lie in [0, 1]");
    for (const Mode& m : modes_) {
        if (!(m.weight >= 0.0))
            throw std::invalid_argument("ModulationProfile: mode weights must be non-negative");
        if (!m.amplitude || !m.phase)
            throw std::invalid_argument("ModulationProfile: mode maps must be callable");
    }
}

void ModulationProfile::check_domain(double xp, double yp) const {
    if (!(xp >= -half_x_ - 1e-12 && xp <= half_x_ + 1e-12 && yp >= -half_y_ - 1e-12 &&
          yp <= half_y_ + 1e-12))
        throw std::domain_error("gamma: point outside panel extents");
}

cplx ModulationProfile::gamma(double xp, double yp) const {
    check_domain(xp, yp);
    cplx sum{0, 0};
    for (const Mode& m : modes_)
        sum += std::sqrt(m.weight) * m.amplitude(xp, yp) * std::polar(1.0, m.phase(xp, yp));
    return rayleigh_ * sum;
}

cplx ModulationProfile::gamma_mode(std::size_t n, double xp, double yp) const {
    check_domain(xp, yp);
    const Mode& m = modes_.at(n);
    return rayleigh_ * std::sqrt(m.weight) * m.amplitude(xp, yp) *
           std::polar(1.0, m.phase(xp, yp));
}

std::vector<cplx> ModulationProfile::sample(const RisPanel& panel) const {
    std::vector<cplx> out(panel.tile_count());
    std::size_t i = 0;
    for (std::size_t u = 0; u < panel.nx(); ++u)
        for (std::size_t v = 0; v < panel.ny(); ++v, ++i)
            out[i] = gamma(panel.tile_x(u), panel.tile_y(v));
    return out;
}

std::vector<cplx> ModulationProfile::sample_mode(std::size_t n, const RisPanel& panel) const {
    std::vector<cplx> out(panel.tile_count());
    std::size_t i = 0;
    for (std::size_t u = 0; u < panel.nx(); ++u)
        for (std::size_t v = 0; v < panel.ny(); ++v, ++i)
            out[i] = gamma_mode(n, panel.tile_x(u), panel.tile_y(v));
    return out;
}

double ModulationProfile::amplitude_mean_square(std::size_t n, const RisPanel& panel) const {
    const Mode& m = modes_.at(n);
    double acc = 0.0;
    for (std::size_t u = 0; u < panel.nx(); ++u)
        for (std::size_t v = 0; v < panel.ny(); ++v) {
            double a = m.amplitude(panel.tile_x(u), panel.tile_y(v));
            acc += a * a;
        }
    return acc / double(panel.tile_count());
}

ModulationProfile multimode_profile(const std::vector<std::pair<double, double>>& weight_theta_r,
                                    double theta_i, double k, double rayleigh,
                                    const RisPanel& panel) {
    std::vector<Mode> modes;
    modes.reserve(weight_theta_r.size());
    std::size_t n = 1;
    for (const auto& [w, th_r] : weight_theta_r)
        modes.push_back(gradient_profile(theta_i, th_r, k, w, "mode" + std::to_string(n++)));
    return ModulationProfile::over_panel(std::move(modes), rayleigh, panel);
}

ModulationProfile table_profile(const std::vector<std::array<double, 4>>& rows,
                                const RisPanel& panel, double rayleigh) {
    if (rows.empty())
        throw std::invalid_argument("table_profile: empty table");
    // nearest-row lookup per tile center, required within half a tile edge
    auto lookup = [rows, tol = 0.5 * panel.tile_edge()](double xp, double yp) {
        double best = 1e300;
        std::size_t bi = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            double d = std::hypot(rows[i][0] - xp, rows[i][1] - yp);
            if (d < best) {
                best = d;
                bi = i;
            }
        }
        if (best > tol)
            throw std::domain_error("table_profile: no table row within half a tile edge of (" +
                                    std::to_string(xp) + ", " + std::to_string(yp) + ")");
        return rows[bi];
    };
    Mode m;
    m.weight = 1.0;
    m.label = "table";
    m.amplitude = [lookup](double xp, double yp) {
        auto r = lookup(xp, yp);
        return std::hypot(r[2], r[3]);
    };
    m.phase = [lookup](double xp, double yp) {
        auto r = lookup(xp, yp);
        return std::atan2(r[3], r[2]);
    };
    return ModulationProfile::over_panel({std::move(m)}, rayleigh, panel);
}

} // namespace ris
