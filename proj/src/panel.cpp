#include "ris/panel.hpp"

#include <cmath>

namespace ris {

namespace {
constexpr double kFrameTol = 1e-12;
}

RisPanel::RisPanel(double size_x_m, double size_y_m, const Vec3& center, const Vec3& normal,
                   const Vec3& x_axis, double tile_edge_m)
    : half_x_(0.5 * size_x_m), half_y_(0.5 * size_y_m), center_(center), normal_(normal),
      x_axis_(x_axis), tile_edge_(tile_edge_m) {
    if (!(size_x_m > 0.0) || !(size_y_m > 0.0))
        throw std::invalid_argument("RisPanel: panel extents must be positive");
    if (!(tile_edge_m > 0.0))
        throw std::invalid_argument("RisPanel: tile edge must be positive");
    if (std::abs(norm(normal_) - 1.0) > kFrameTol)
        throw std::invalid_argument("RisPanel: normal is not unit length");
    if (std::abs(norm(x_axis_) - 1.0) > kFrameTol)
        throw std::invalid_argument("RisPanel: x_axis is not unit length");
    if (std::abs(dot(normal_, x_axis_)) > kFrameTol)
        throw std::invalid_argument("RisPanel: x_axis is not orthogonal to normal");
    // right-handed triad: y' = n x x'
    y_axis_ = cross(normal_, x_axis_);

    auto tiles = [this](double half) {
        double n = std::round(2.0 * half / tile_edge_);
        return n < 1.0 ? std::size_t(1) : std::size_t(n);
    };
    nx_ = tiles(half_x_);
    ny_ = tiles(half_y_);
}

} // namespace ris
