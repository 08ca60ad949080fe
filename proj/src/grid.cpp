#include "ris/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace ris {

ObservationGrid::ObservationGrid(RasterGrid r) : kind_(r) {
    points_.reserve(r.count_a * r.count_b);
    Vec3 a = r.axis_a, b = r.axis_b;
    for (std::size_t ia = 0; ia < r.count_a; ++ia)
        for (std::size_t ib = 0; ib < r.count_b; ++ib)
            points_.push_back(r.origin + (double(ia) * r.step_a) * a + (double(ib) * r.step_b) * b);
}

ObservationGrid::ObservationGrid(AngularCut c) : kind_(c) {
    if (!(c.radius > 0.0))
        throw std::invalid_argument("ObservationGrid: cut radius must be positive");
    points_.reserve(c.angles_rad.size());
    for (double th : c.angles_rad)
        points_.push_back(c.center + c.radius * (std::sin(th) * c.axis_u + std::cos(th) * c.axis_n));
    kind_ = std::move(c);
}

std::vector<bool> ObservationGrid::reactive_flags(const RisPanel& panel, double wavelength) const {
    std::vector<bool> flags(points_.size(), false);
    for (std::size_t i = 0; i < points_.size(); ++i)
        flags[i] = panel.height_above(points_[i]) < 3.0 * wavelength;
    return flags;
}

void ObservationGrid::require_front_halfspace(const RisPanel& panel) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (!(panel.height_above(points_[i]) > 0.0))
            throw std::domain_error("wrong-half-space: grid point " + std::to_string(i) +
                                    " is not in front of the panel");
}

std::vector<double> linspace_angles_rad(double start_deg, double stop_deg, double step_deg) {
    if (!(step_deg > 0.0) || stop_deg < start_deg)
        throw std::invalid_argument("angle range: need stop >= start and step > 0");
    std::vector<double> out;
    std::size_t n = std::size_t(std::floor((stop_deg - start_deg) / step_deg + 0.5)) + 1;
    out.reserve(n);
    constexpr double d2r = pi / 180.0;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back((start_deg + double(i) * step_deg) * d2r);
    return out;
}

} // namespace ris
