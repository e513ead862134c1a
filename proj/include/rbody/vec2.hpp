#pragma once

// Planar vectors and the handful of fixed 2x2 matrices the problem needs:
// the symplectic J = [[0, 1], [-1, 0]], its exponential e^{J theta}, and the
// reflection K = diag(1, -1).

#include <cmath>
#include <ostream>

namespace rbody {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
    friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Vec2& v) {
        return os << '(' << v.x << ", " << v.y << ')';
    }
};

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
constexpr double norm2(const Vec2& a) { return dot(a, a); }
inline double max_abs(const Vec2& a) { return std::fmax(std::fabs(a.x), std::fabs(a.y)); }

struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    constexpr Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    constexpr Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    constexpr Mat2 operator-() const { return {-a, -b, -c, -d}; }
    constexpr Mat2 transpose() const { return {a, c, b, d}; }
    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;

    static constexpr Mat2 identity() { return {}; }
};

/// J = [[0, 1], [-1, 0]].
inline constexpr Mat2 kJ{0.0, 1.0, -1.0, 0.0};
/// K = diag(1, -1), reflection across the x-axis.
inline constexpr Mat2 kK{1.0, 0.0, 0.0, -1.0};

constexpr Vec2 apply_j(const Vec2& v) { return {v.y, -v.x}; }

/// e^{J theta} = [[cos, sin], [-sin, cos]]; note this turns clockwise for theta > 0.
inline Mat2 exp_j(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, s, -s, c};
}

inline Vec2 rotate_j(double theta, const Vec2& v) { return exp_j(theta) * v; }

}  // namespace rbody
