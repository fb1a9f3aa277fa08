#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "medax/error.hpp"

namespace medax {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }

    constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
    constexpr double cross(Vec2 o) const { return x * o.y - y * o.x; }
    constexpr double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }

    // counterclockwise quarter turn
    constexpr Vec2 perp() const { return {-y, x}; }

    Vec2 normalized() const {
        const double n = norm();
        if (!(n > 0.0)) fail(errc::bad_input, "cannot normalize zero vector");
        return {x / n, y / n};
    }

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

inline double dist(Vec2 a, Vec2 b) { return (a - b).norm(); }

inline Vec2 rotate(Vec2 v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

inline Vec2 rotate_about(Vec2 p, Vec2 center, double angle) {
    return center + rotate(p - center, angle);
}

// lexicographic (x, then y); used for deterministic ordering of point lists
inline bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static constexpr Mat2 identity() { return {}; }
    static constexpr Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
    static Mat2 rotation(double angle) {
        const double co = std::cos(angle), si = std::sin(angle);
        return {co, -si, si, co};
    }
    static constexpr Mat2 outer(Vec2 u, Vec2 v) {
        return {u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y};
    }

    constexpr double det() const { return a * d - b * c; }
    constexpr Mat2 transpose() const { return {a, c, b, d}; }
    constexpr Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

    constexpr Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    constexpr Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    constexpr Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
    constexpr Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }

    Mat2 inverse() const {
        const double dt = det();
        if (std::abs(dt) <= 1e-12)
            fail(errc::singular_jacobian, "2x2 matrix is numerically singular");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    // spectral norm (largest singular value)
    double op_norm() const {
        const double q = a * a + b * b + c * c + d * d;
        const double dt = det();
        const double disc = std::sqrt(std::max(0.0, q * q - 4.0 * dt * dt));
        return std::sqrt(0.5 * (q + disc));
    }
};

struct SinglePoint {
    Vec2 p;
};

struct Segment {
    Vec2 a;
    Vec2 b;
};

struct Circle {
    Vec2 center;
    double radius = 0.0;
};

using Primitive = std::variant<SinglePoint, Segment, Circle>;

std::string describe(const Primitive& prim);

double distance_to_primitive(Vec2 x, const Primitive& prim);
Vec2 closest_point_on_primitive(Vec2 x, const Primitive& prim);

// A closed planar set given as a finite union of primitives. The bounding
// circle is always a member primitive and everything lies inside its ball.
class Shape {
public:
    Shape(std::vector<Primitive> primitives, Circle bounding);

    std::span<const Primitive> primitives() const { return primitives_; }
    const Circle& bounding() const { return bounding_; }
    Vec2 center() const { return bounding_.center; }
    double radius() const { return bounding_.radius; }

    double default_tau() const { return 1e-9 * bounding_.radius; }
    double default_delta() const { return 1e-3 * bounding_.radius; }

private:
    std::vector<Primitive> primitives_;
    Circle bounding_;
};

struct Witness {
    Vec2 point;
    std::size_t primitive_index = 0;
};

struct NearestSet {
    double distance = 0.0;
    std::vector<Witness> witnesses;
    double tolerance = 0.0;
    bool continuum = false;   // query sat at (or within tau of) a circle center
};

double distance(std::span<const Primitive> prims, Vec2 x);
double distance(const Shape& shape, Vec2 x);

NearestSet nearest_set(std::span<const Primitive> prims, Vec2 x, double tau, double delta);
NearestSet nearest_set(const Shape& shape, Vec2 x, double tau, double delta);
NearestSet nearest_set(const Shape& shape, Vec2 x);

double hausdorff_directed(std::span<const Vec2> from, std::span<const Vec2> to);
double hausdorff(std::span<const Vec2> a, std::span<const Vec2> b);

} // namespace medax
