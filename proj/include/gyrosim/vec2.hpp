#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace gyrosim {

/// Fixed-size 2-vector for the gyroscope's drive/sense axes.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr double& operator[](std::size_t i) { return i == 0 ? x : y; }
    constexpr double operator[](std::size_t i) const { return i == 0 ? x : y; }

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double c) const { return {c * x, c * y}; }
    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }

    constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
    constexpr bool operator==(const Vec2&) const = default;

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double c, Vec2 v) { return {c * v.x, c * v.y}; }

/// Row-major 2x2 matrix.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    constexpr Vec2 operator*(Vec2 v) const {
        return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
    }
    constexpr Mat2 operator+(Mat2 o) const {
        return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
    }
    constexpr Mat2 operator*(double c) const {
        return {c * a11, c * a12, c * a21, c * a22};
    }
    constexpr bool operator==(const Mat2&) const = default;
};

constexpr Mat2 operator*(double c, Mat2 m) { return m * c; }

/// sign with sign(0) = 0, the convention used by every switching term here.
inline double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace gyrosim
