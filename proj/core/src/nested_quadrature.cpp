#include "diagqmc/nested_quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace diagqmc {

namespace {

constexpr double half_pi = 0.5 * std::numbers::pi;
constexpr double t_max = 6.5;  // complement 1 - |x| is below 1e-300 beyond this

// Sum of w(t) * [f(b - r delta(t)) + f(a + r delta(t))] over t = k h, k odd
// (or every k when all_nodes), t in (0, t_max], where delta = 1 - tanh(pi/2 sinh t).
double tanh_sinh_level(const std::function<double(double)>& f, double a, double b, double h,
                       bool all_nodes) {
    const double r = 0.5 * (b - a);
    double sum = 0.0;
    const int step = all_nodes ? 1 : 2;
    for (int k = 1;; k += step) {
        const double t = k * h;
        if (t > t_max) break;
        const double sh = std::sinh(t);
        const double ch = std::cosh(t);
        const double q = std::exp(-2.0 * half_pi * sh);
        const double delta = 2.0 * q / (1.0 + q);
        const double w = half_pi * ch * 4.0 * q / ((1.0 + q) * (1.0 + q));
        if (r * delta == 0.0 || w == 0.0) break;
        const double xl = a + r * delta;
        const double xr = b - r * delta;
        if (xl <= a || xr >= b) break;
        sum += w * (f(xl) + f(xr));
    }
    return sum;
}

std::vector<double> legendre_nodes_weights(int n, std::vector<double>& weights) {
    std::vector<double> nodes(static_cast<std::size_t>(n));
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return nodes;
}

}  // namespace

QuadratureResult tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol,
                           int max_levels) {
    QuadratureResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    const double r = 0.5 * (b - a);
    const double mid = f(0.5 * (a + b));
    double h = 1.0;
    double sum = half_pi * mid + tanh_sinh_level(f, a, b, h, true);
    double prev = r * h * sum;
    for (int level = 1; level <= max_levels; ++level) {
        h *= 0.5;
        sum += tanh_sinh_level(f, a, b, h, false);
        const double cur = r * h * sum;
        res.value = cur;
        res.last_change = std::abs(cur - prev);
        res.levels = level;
        if (level >= 3 && res.last_change < tol) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    return res;
}

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        GaussRule rule;
        rule.nodes = legendre_nodes_weights(n, rule.weights);
        it = cache.emplace(n, std::move(rule)).first;
    }
    return it->second;
}

QuadratureResult gauss_legendre_adaptive(const std::function<double(double)>& f, double a, double b,
                                         double tol) {
    auto apply = [&](int n) {
        const GaussRule& g = gauss_legendre(n);
        const double c = 0.5 * (a + b), r = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * f(c + r * g.nodes[i]);
        return r * s;
    };
    QuadratureResult res;
    double prev = apply(16);
    for (int n = 32; n <= 256; n *= 2) {
        const double cur = apply(n);
        res.value = cur;
        res.last_change = std::abs(cur - prev);
        ++res.levels;
        if (res.last_change < tol) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    return res;
}

}  // namespace diagqmc
