#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "diagqmc/point.hpp"

namespace diagqmc {

/// A non-degenerate triangle with vertices a, b, c. Vertex order fixes the
/// child labeling used by the triangular van der Corput construction.
class Triangle {
public:
    /// Throws std::invalid_argument when the vertices are collinear.
    Triangle(Point2 a, Point2 b, Point2 c);

    /// (0,0), (1,0), (0,1).
    static Triangle reference();

    const Point2& a() const { return a_; }
    const Point2& b() const { return b_; }
    const Point2& c() const { return c_; }

    double signed_area() const;
    double area() const;
    Point2 centroid() const;

    friend bool operator==(const Triangle&, const Triangle&) = default;

private:
    Point2 a_;
    Point2 b_;
    Point2 c_;
};

struct BarycentricCoord {
    double w_a = 0.0;
    double w_b = 0.0;
    double w_c = 0.0;
};

BarycentricCoord barycentric(const Triangle& t, const Point2& p);
Point2 from_barycentric(const Triangle& t, const BarycentricCoord& w);

/// True when every barycentric weight is >= -tol.
bool contains(const Triangle& t, const Point2& p, double tol = 0.0);

/// The four congruent children formed by the edge midpoints:
///   0: ((b+c)/2, (a+c)/2, (a+b)/2)   (the medial triangle)
///   1: (a, (a+b)/2, (a+c)/2)
///   2: ((a+b)/2, b, (b+c)/2)
///   3: ((a+c)/2, (b+c)/2, c)
std::array<Triangle, 4> medial_subtriangles(const Triangle& t);

/// The cell reached from `t` by taking the base-4 digits of `index`, least
/// significant first, as child labels for `depth` levels.
Triangle tvdc_cell(const Triangle& t, std::uint64_t index, int depth);

/// Centroid of tvdc_cell(t, index, depth). Requires index < 4^depth.
Point2 tvdc_point(const Triangle& t, std::uint64_t index, int depth);

/// Smallest depth >= 1 with 4^depth >= n.
int tvdc_depth(std::size_t n);

/// Points 0..n-1 at depth tvdc_depth(n).
PointSet tvdc_points(const Triangle& t, std::size_t n);

/// Index (digit-encoded like tvdc_cell) of the depth-`depth` cell holding `p`.
/// Boundary points go to the lowest-numbered child at every level.
std::uint64_t locate_cell(const Triangle& t, const Point2& p, int depth);

/// Affine map taking src's vertices to dst's; preserves barycentric weights.
PointSet map_points(const Triangle& src, const Triangle& dst, std::span<const Point2> pts);
Point2 map_point(const Triangle& src, const Triangle& dst, const Point2& p);

/// Uniformly distributed pseudo-random points in `t`.
PointSet uniform_triangle_points(const Triangle& t, std::size_t n, std::uint64_t seed);

struct StratificationReport {
    int depth = 0;
    std::size_t n_points = 0;
    std::size_t n_cells = 0;
    std::size_t occupied_cells = 0;  // cells holding at least one point
    std::size_t max_per_cell = 0;
    std::size_t uncovered_points = 0;  // points found in no cell
    bool pass = false;
};

/// Brute force: enumerates every depth-`depth` cell of `t` and counts, for
/// each of the first 4^depth tvdc points, which cell holds it (ties to the
/// lowest cell index). Passes when every cell holds exactly one point.
StratificationReport stratification_check(const Triangle& t, int depth);

/// Monte Carlo lower estimate of the local discrepancy sup over triangle test
/// sets: vertex-anchored similar copies of `t` and random half-plane cuts.
/// Throws std::invalid_argument when a point lies outside `t`.
double approx_star_discrepancy(std::span<const Point2> pts, const Triangle& t, int n_test,
                               std::uint64_t seed);

}  // namespace diagqmc
