#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace ris {

using cplx = std::complex<double>;

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    if (n <= 0.0)
        throw std::domain_error("cannot normalize zero vector");
    return v / n;
}

/// Three-component complex phasor vector (E in V/m, H in A/m).
struct CVec3 {
    cplx x{0, 0}, y{0, 0}, z{0, 0};

    CVec3() = default;
    CVec3(cplx cx, cplx cy, cplx cz) : x(cx), y(cy), z(cz) {}
    CVec3(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

    CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    CVec3 operator*(cplx s) const { return {x * s, y * s, z * s}; }
    CVec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    CVec3& operator+=(const CVec3& o) {
        x += o.x; y += o.y; z += o.z;
        return *this;
    }
    CVec3 operator-() const { return {-x, -y, -z}; }
};

inline CVec3 operator*(cplx s, const CVec3& v) { return v * s; }
inline CVec3 operator*(double s, const CVec3& v) { return v * s; }

/// Unconjugated (bilinear) dot product; used with real direction vectors.
inline cplx dot(const CVec3& a, const CVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline cplx dot(const CVec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline cplx dot(const Vec3& a, const CVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline CVec3 cross(const CVec3& a, const CVec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline CVec3 cross(const Vec3& a, const CVec3& b) { return cross(CVec3(a), b); }
inline CVec3 cross(const CVec3& a, const Vec3& b) { return cross(a, CVec3(b)); }

/// sqrt(|x|^2 + |y|^2 + |z|^2)
inline double magnitude(const CVec3& v) {
    return std::sqrt(std::norm(v.x) + std::norm(v.y) + std::norm(v.z));
}

/// n_hat x (v x n_hat): tangential part of v with respect to the unit normal.
inline CVec3 tangential_project(const CVec3& v, const Vec3& n_hat) {
    if (std::abs(norm(n_hat) - 1.0) > 1e-12)
        throw std::invalid_argument("tangential_project: normal is not unit length");
    cplx vn = dot(v, n_hat);
    return v - CVec3(n_hat) * vn;
}

/// Mirror reflection about the plane with unit normal n: tangential kept, normal flipped.
inline Vec3 reflect_across_plane(const Vec3& v, const Vec3& n_hat) {
    return v - 2.0 * dot(v, n_hat) * n_hat;
}

} // namespace ris
