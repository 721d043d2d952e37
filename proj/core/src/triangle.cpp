#include "diagqmc/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagqmc/lowdisc.hpp"

namespace diagqmc {

namespace {

double cross(const Point2& u, const Point2& v) { return u.x1 * v.x2 - u.x2 * v.x1; }

}  // namespace

Triangle::Triangle(Point2 a, Point2 b, Point2 c) : a_(a), b_(b), c_(c) {
    const double sa = signed_area();
    if (!std::isfinite(sa) || sa == 0.0) {
        throw std::invalid_argument("Triangle: vertices are collinear or non-finite");
    }
}

Triangle Triangle::reference() { return Triangle({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}); }

double Triangle::signed_area() const { return 0.5 * cross(b_ - a_, c_ - a_); }

double Triangle::area() const { return std::abs(signed_area()); }

Point2 Triangle::centroid() const {
    return {(a_.x1 + b_.x1 + c_.x1) / 3.0, (a_.x2 + b_.x2 + c_.x2) / 3.0};
}

BarycentricCoord barycentric(const Triangle& t, const Point2& p) {
    const double twice = 2.0 * t.signed_area();
    const double wa = cross(t.b() - p, t.c() - p) / twice;
    const double wb = cross(t.c() - p, t.a() - p) / twice;
    return {wa, wb, 1.0 - wa - wb};
}

Point2 from_barycentric(const Triangle& t, const BarycentricCoord& w) {
    return {w.w_a * t.a().x1 + w.w_b * t.b().x1 + w.w_c * t.c().x1,
            w.w_a * t.a().x2 + w.w_b * t.b().x2 + w.w_c * t.c().x2};
}

bool contains(const Triangle& t, const Point2& p, double tol) {
    const auto w = barycentric(t, p);
    return w.w_a >= -tol && w.w_b >= -tol && w.w_c >= -tol;
}

std::array<Triangle, 4> medial_subtriangles(const Triangle& t) {
    const Point2 ab = midpoint(t.a(), t.b());
    const Point2 ac = midpoint(t.a(), t.c());
    const Point2 bc = midpoint(t.b(), t.c());
    return {Triangle(bc, ac, ab), Triangle(t.a(), ab, ac), Triangle(ab, t.b(), bc),
            Triangle(ac, bc, t.c())};
}

Triangle tvdc_cell(const Triangle& t, std::uint64_t index, int depth) {
    if (depth < 0 || depth > 31) {
        throw std::invalid_argument("tvdc_cell: depth must lie in [0, 31]");
    }
    if (depth < 32 && index >= (std::uint64_t{1} << (2 * depth))) {
        throw std::invalid_argument("tvdc_cell: index " + std::to_string(index) +
                                    " >= 4^" + std::to_string(depth));
    }
    Triangle cell = t;
    for (int k = 0; k < depth; ++k) {
        cell = medial_subtriangles(cell)[index & 3U];
        index >>= 2;
    }
    return cell;
}

Point2 tvdc_point(const Triangle& t, std::uint64_t index, int depth) {
    if (depth < 1) throw std::invalid_argument("tvdc_point: depth must be >= 1");
    return tvdc_cell(t, index, depth).centroid();
}

int tvdc_depth(std::size_t n) {
    int depth = 1;
    std::size_t cells = 4;
    while (cells < n) {
        cells *= 4;
        ++depth;
    }
    return depth;
}

PointSet tvdc_points(const Triangle& t, std::size_t n) {
    if (n < 1) throw std::invalid_argument("tvdc_points: n must be >= 1");
    const int depth = tvdc_depth(n);
    PointSet pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(tvdc_point(t, i, depth));
    return pts;
}

std::uint64_t locate_cell(const Triangle& t, const Point2& p, int depth) {
    if (!contains(t, p, 1e-12)) {
        throw std::invalid_argument("locate_cell: point lies outside the triangle");
    }
    std::uint64_t index = 0;
    Triangle cell = t;
    for (int k = 0; k < depth; ++k) {
        const auto kids = medial_subtriangles(cell);
        // Pick the child with the largest minimum weight; ties go to the lowest label.
        std::size_t best = 0;
        double best_w = -INFINITY;
        for (std::size_t j = 0; j < 4; ++j) {
            const auto w = barycentric(kids[j], p);
            const double m = std::min({w.w_a, w.w_b, w.w_c});
            if (m >= 0.0) {
                best = j;
                break;
            }
            if (m > best_w) {
                best_w = m;
                best = j;
            }
        }
        index |= static_cast<std::uint64_t>(best) << (2 * k);
        cell = kids[best];
    }
    return index;
}

Point2 map_point(const Triangle& src, const Triangle& dst, const Point2& p) {
    if (src == dst) return p;
    return from_barycentric(dst, barycentric(src, p));
}

PointSet map_points(const Triangle& src, const Triangle& dst, std::span<const Point2> pts) {
    PointSet out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(map_point(src, dst, p));
    return out;
}

PointSet uniform_triangle_points(const Triangle& t, std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    PointSet out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = rng.next_open01();
        double v = rng.next_open01();
        if (u + v > 1.0) {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        out.push_back(from_barycentric(t, {1.0 - u - v, u, v}));
    }
    return out;
}

StratificationReport stratification_check(const Triangle& t, int depth) {
    if (depth < 1 || depth > 8) throw std::invalid_argument("stratification_check: depth must lie in [1, 8]");
    StratificationReport rep;
    rep.depth = depth;
    const std::size_t cells = std::size_t{1} << (2 * depth);
    rep.n_cells = cells;
    rep.n_points = cells;
    std::vector<Triangle> all;
    all.reserve(cells);
    for (std::size_t c = 0; c < cells; ++c) all.push_back(tvdc_cell(t, c, depth));
    std::vector<std::size_t> count(cells, 0);
    const PointSet pts = tvdc_points(t, cells);
    for (const auto& p : pts) {
        bool found = false;
        for (std::size_t c = 0; c < cells; ++c) {
            if (contains(all[c], p)) {
                ++count[c];
                found = true;
                break;
            }
        }
        if (!found) ++rep.uncovered_points;
    }
    for (std::size_t k : count) {
        if (k > 0) ++rep.occupied_cells;
        rep.max_per_cell = std::max(rep.max_per_cell, k);
    }
    rep.pass = rep.uncovered_points == 0 && rep.occupied_cells == cells && rep.max_per_cell == 1;
    return rep;
}

namespace {

double polygon_area(const std::vector<Point2>& poly) {
    double s = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        s += cross(poly[i], poly[(i + 1) % poly.size()]);
    }
    return 0.5 * std::abs(s);
}

// Area of {p in t : normal . p <= offset}, by clipping the triangle.
double clipped_area(const Triangle& t, const Point2& normal, double offset) {
    const std::array<Point2, 3> v{t.a(), t.b(), t.c()};
    std::vector<Point2> poly;
    for (std::size_t i = 0; i < 3; ++i) {
        const Point2& p = v[i];
        const Point2& q = v[(i + 1) % 3];
        const double dp = normal.x1 * p.x1 + normal.x2 * p.x2 - offset;
        const double dq = normal.x1 * q.x1 + normal.x2 * q.x2 - offset;
        if (dp <= 0.0) poly.push_back(p);
        if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
            const double s = dp / (dp - dq);
            poly.push_back(p + s * (q - p));
        }
    }
    return poly.size() < 3 ? 0.0 : polygon_area(poly);
}

}  // namespace

double approx_star_discrepancy(std::span<const Point2> pts, const Triangle& t, int n_test,
                               std::uint64_t seed) {
    if (pts.empty()) throw std::invalid_argument("approx_star_discrepancy: empty point set");
    std::vector<BarycentricCoord> w;
    w.reserve(pts.size());
    for (const auto& p : pts) {
        const auto b = barycentric(t, p);
        if (b.w_a < -1e-12 || b.w_b < -1e-12 || b.w_c < -1e-12) {
            throw std::invalid_argument("approx_star_discrepancy: point outside the triangle");
        }
        w.push_back(b);
    }
    const double n = static_cast<double>(pts.size());
    const double area = t.area();
    CounterRng rng(seed);
    double worst = 0.0;

    auto anchored = [&](int vertex, double lambda) {
        // Similar copy of t scaled by lambda about the vertex: weight of that vertex >= 1 - lambda.
        std::size_t count = 0;
        for (const auto& b : w) {
            const double wv = vertex == 0 ? b.w_a : (vertex == 1 ? b.w_b : b.w_c);
            if (wv >= 1.0 - lambda) ++count;
        }
        return std::abs(static_cast<double>(count) / n - lambda * lambda);
    };

    worst = std::max(worst, anchored(0, 1.0));
    for (int k = 0; k < n_test; ++k) {
        if (k % 2 == 0) {
            const int vertex = static_cast<int>(rng.next_u64() % 3);
            worst = std::max(worst, anchored(vertex, rng.next_open01()));
        } else {
            const double theta = 2.0 * std::numbers::pi * rng.next_unit();
            const Point2 normal{std::cos(theta), std::sin(theta)};
            auto proj = [&](const Point2& p) { return normal.x1 * p.x1 + normal.x2 * p.x2; };
            const double lo = std::min({proj(t.a()), proj(t.b()), proj(t.c())});
            const double hi = std::max({proj(t.a()), proj(t.b()), proj(t.c())});
            const double offset = lo + (hi - lo) * rng.next_unit();
            std::size_t count = 0;
            for (const auto& p : pts) {
                if (proj(p) <= offset) ++count;
            }
            const double frac = clipped_area(t, normal, offset) / area;
            worst = std::max(worst, std::abs(static_cast<double>(count) / n - frac));
        }
    }
    return std::min(worst, 1.0);
}

}  // namespace diagqmc
