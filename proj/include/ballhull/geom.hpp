#pragma once

// Small fixed-dimension point types used by the geometry kernels.  Samplers
// accept any d >= 2 (generic vector-of-coordinates form); the hull and
// paraboloid machinery works on these 2/3-coordinate types.

#include <array>
#include <cmath>
#include <vector>

namespace ballhull {

struct P2 {
    double x = 0.0, y = 0.0;
};

inline P2 operator+(P2 a, P2 b) { return {a.x + b.x, a.y + b.y}; }
inline P2 operator-(P2 a, P2 b) { return {a.x - b.x, a.y - b.y}; }
inline P2 operator*(double s, P2 a) { return {s * a.x, s * a.y}; }
inline double dot(P2 a, P2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(P2 a, P2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(P2 a) { return dot(a, a); }
inline double norm(P2 a) { return std::sqrt(norm2(a)); }
inline double angle_of(P2 a) { return std::atan2(a.y, a.x); }
inline P2 unit_dir(double theta) { return {std::cos(theta), std::sin(theta)}; }

struct P3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline P3 operator+(P3 a, P3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline P3 operator-(P3 a, P3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline P3 operator*(double s, P3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(P3 a, P3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline P3 cross(P3 a, P3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(P3 a) { return dot(a, a); }
inline double norm(P3 a) { return std::sqrt(norm2(a)); }
inline P3 normalized(P3 a) {
    double n = norm(a);
    return {a.x / n, a.y / n, a.z / n};
}

using VecD = std::vector<double>;

inline double norm(const VecD& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

}  // namespace ballhull
