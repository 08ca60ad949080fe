#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ris/constants.hpp"
#include "ris/panel.hpp"
#include "ris/vec.hpp"

namespace ris {

/// Planar raster of observation points: origin + ia*step_a*axis_a + ib*step_b*axis_b,
/// row index ia outer, ib fastest.
struct RasterGrid {
    Vec3 origin;
    Vec3 axis_a, axis_b;  // unit vectors
    std::size_t count_a = 0, count_b = 0;
    double step_a = 0, step_b = 0;
};

/// Angular arc at fixed radius: center + r*(sin(theta)*axis_u + cos(theta)*axis_n).
struct AngularCut {
    Vec3 center;
    double radius = 0;
    Vec3 axis_u;  // in-plane direction (theta > 0 side)
    Vec3 axis_n;  // boresight direction (theta = 0)
    std::vector<double> angles_rad;
};

class ObservationGrid {
  public:
    ObservationGrid(RasterGrid r);
    ObservationGrid(AngularCut c);

    std::size_t size() const { return points_.size(); }
    const std::vector<Vec3>& points() const { return points_; }
    const Vec3& point(std::size_t i) const { return points_[i]; }

    bool is_cut() const { return std::holds_alternative<AngularCut>(kind_); }
    const AngularCut* cut() const { return std::get_if<AngularCut>(&kind_); }
    const RasterGrid* raster() const { return std::get_if<RasterGrid>(&kind_); }

    /// All points must lie strictly in front of the panel; returns per-point
    /// reactive-zone flags (closer than 3 wavelengths to the panel plane).
    std::vector<bool> reactive_flags(const RisPanel& panel, double wavelength) const;
    void require_front_halfspace(const RisPanel& panel) const;

  private:
    std::variant<RasterGrid, AngularCut> kind_;
    std::vector<Vec3> points_;
};

std::vector<double> linspace_angles_rad(double start_deg, double stop_deg, double step_deg);

} // namespace ris
