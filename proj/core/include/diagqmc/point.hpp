#pragma once

#include <cmath>
#include <vector>

namespace diagqmc {

/// A point of the plane. Sample points live in [0,1]^2; intermediate
/// geometry (triangle vertices, affine images) may use the same type.
struct Point2 {
    double x1 = 0.0;
    double x2 = 0.0;

    friend constexpr bool operator==(const Point2&, const Point2&) = default;

    constexpr Point2& operator+=(const Point2& o) {
        x1 += o.x1;
        x2 += o.x2;
        return *this;
    }
    friend constexpr Point2 operator+(Point2 a, const Point2& b) { return a += b; }
    friend constexpr Point2 operator-(const Point2& a, const Point2& b) {
        return {a.x1 - b.x1, a.x2 - b.x2};
    }
    friend constexpr Point2 operator*(double s, const Point2& p) { return {s * p.x1, s * p.x2}; }
};

using PointSet = std::vector<Point2>;

inline bool in_unit_square(const Point2& p) {
    return std::isfinite(p.x1) && std::isfinite(p.x2) && p.x1 >= 0.0 && p.x1 <= 1.0 &&
           p.x2 >= 0.0 && p.x2 <= 1.0;
}

inline constexpr Point2 midpoint(const Point2& a, const Point2& b) {
    return {0.5 * (a.x1 + b.x1), 0.5 * (a.x2 + b.x2)};
}

}  // namespace diagqmc
