#pragma once

#include <cstddef>
#include <stdexcept>

#include "ris/vec.hpp"

namespace ris {

/// Planar rectangular panel: extents, placement, orthonormal frame and tile pitch.
///
/// Local coordinates (x', y') run along x_axis/y_axis from the center;
/// the normal points into the reflection half-space. Tiles are squares of
/// edge tile_edge on a centered grid with nx = round(Lx/tile_edge) columns
/// (likewise ny); tile (u, v) has index u*ny + v, v fastest.
class RisPanel {
  public:
    RisPanel(double size_x_m, double size_y_m, const Vec3& center, const Vec3& normal,
             const Vec3& x_axis, double tile_edge_m);

    /// Panel in the z=0 plane, normal +z, x' = +x.
    static RisPanel centered(double size_x_m, double size_y_m, double tile_edge_m) {
        return RisPanel(size_x_m, size_y_m, {0, 0, 0}, {0, 0, 1}, {1, 0, 0}, tile_edge_m);
    }

    RisPanel with_tile_edge(double tile_edge_m) const {
        return RisPanel(2 * half_x_, 2 * half_y_, center_, normal_, x_axis_, tile_edge_m);
    }

    double half_x() const { return half_x_; }
    double half_y() const { return half_y_; }
    double size_x() const { return 2 * half_x_; }
    double size_y() const { return 2 * half_y_; }
    double area() const { return 4 * half_x_ * half_y_; }
    double max_dimension() const { return half_x_ > half_y_ ? 2 * half_x_ : 2 * half_y_; }
    const Vec3& center() const { return center_; }
    const Vec3& normal() const { return normal_; }
    const Vec3& x_axis() const { return x_axis_; }
    const Vec3& y_axis() const { return y_axis_; }

    double tile_edge() const { return tile_edge_; }
    double tile_area() const { return tile_edge_ * tile_edge_; }
    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    std::size_t tile_count() const { return nx_ * ny_; }

    /// Local tile-center coordinates of tile (u, v).
    double tile_x(std::size_t u) const { return (double(u) - 0.5 * double(nx_ - 1)) * tile_edge_; }
    double tile_y(std::size_t v) const { return (double(v) - 0.5 * double(ny_ - 1)) * tile_edge_; }

    Vec3 to_world(double xp, double yp) const {
        return center_ + xp * x_axis_ + yp * y_axis_;
    }
    Vec3 tile_center(std::size_t u, std::size_t v) const {
        return to_world(tile_x(u), tile_y(v));
    }

    /// Signed height of P above the panel plane (positive in the reflection half-space).
    double height_above(const Vec3& p) const { return dot(p - center_, normal_); }

    /// Local in-plane coordinates of P projected onto the panel plane.
    void to_local(const Vec3& p, double& xp, double& yp) const {
        Vec3 d = p - center_;
        xp = dot(d, x_axis_);
        yp = dot(d, y_axis_);
    }

    bool contains_local(double xp, double yp, double tol = 1e-12) const {
        return xp >= -half_x_ - tol && xp <= half_x_ + tol && yp >= -half_y_ - tol &&
               yp <= half_y_ + tol;
    }

  private:
    double half_x_, half_y_;
    Vec3 center_, normal_, x_axis_, y_axis_;
    double tile_edge_;
    std::size_t nx_, ny_;
};

} // namespace ris
