#include "diagqmc/integrands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "diagqmc/errors.hpp"

namespace diagqmc {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_exponent(double A, const char* who) {
    if (!(A > 0.0 && A < 1.0)) {
        throw std::invalid_argument(std::string(who) + ": A must lie in (0,1), got " +
                                    std::to_string(A));
    }
}


Modulator constant_modulator(double c) {
    Modulator m;
    m.id = "const";
    m.value = [c](const Point2&) { return c; };
    m.eval = [c](const Point2&) { return Partials{c, 0, 0, 0, 0, 0}; };
    m.sup_h = std::abs(c);
    m.symmetric = true;
    m.line_profile = {2.0 * c, -2.0 * c};
    return m;
}

Modulator linear_modulator() {
    Modulator m;
    m.id = "linear";
    m.value = [](const Point2& x) { return x.x1 + x.x2; };
    m.eval = [](const Point2& x) { return Partials{x.x1 + x.x2, 1, 1, 0, 0, 0}; };
    m.sup_h = 2.0;
    m.sup_grad = 1.0;
    m.symmetric = true;
    // Along each segment x2 - x1 = s the integral of x1 + x2 is 1 - s.
    m.line_profile = {2.0, -2.0};
    return m;
}

// phi(s) = |s|^{-A} and its first two derivatives in s.
struct Power {
    double v;
    double d1;
    double d2;
};

Power power_terms(double A, double s) {
    const double r = std::abs(s);
    const double v = std::pow(r, -A);
    const double sign = s > 0.0 ? 1.0 : -1.0;
    return {v, -A * sign * v / r, A * (A + 1.0) * v / (r * r)};
}

}  // namespace

double profile_integral(const std::vector<double>& profile, double A, double s_max) {
    double total = 0.0;
    for (std::size_t k = 0; k < profile.size(); ++k) {
        const double p = static_cast<double>(k) + 1.0 - A;
        total += profile[k] * std::pow(s_max, p) / p;
    }
    return total;
}

Modulator builtin_modulator(const std::string& id) {
    if (id == "one") {
        Modulator m = constant_modulator(1.0);
        m.id = "one";
        return m;
    }
    if (id == "poly") {
        Modulator m;
        m.id = "poly";
        m.value = [](const Point2& x) { return 1.0 + x.x1 * x.x2; };
        m.eval = [](const Point2& x) { return Partials{1.0 + x.x1 * x.x2, x.x2, x.x1, 0, 0, 1}; };
        m.sup_h = 2.0;
        m.sup_grad = 1.0;
        m.sup_hess = 1.0;
        m.symmetric = true;
        // Along each segment the integral is 4/3 - 3s/2 + s^3/6.
        m.line_profile = {8.0 / 3.0, -3.0, 0.0, 1.0 / 3.0};
        return m;
    }
    if (id == "trig") {
        Modulator m;
        m.id = "trig";
        m.value = [](const Point2& x) {
            return 2.0 + std::sin(two_pi * x.x1) * std::cos(two_pi * x.x2);
        };
        m.eval = [](const Point2& x) {
            const double s1 = std::sin(two_pi * x.x1), c1 = std::cos(two_pi * x.x1);
            const double s2 = std::sin(two_pi * x.x2), c2 = std::cos(two_pi * x.x2);
            const double w2 = two_pi * two_pi;
            return Partials{2.0 + s1 * c2,   two_pi * c1 * c2, -two_pi * s1 * s2,
                            -w2 * s1 * c2,   -w2 * s1 * c2,    -w2 * c1 * s2};
        };
        m.sup_h = 3.0;
        m.sup_grad = two_pi;
        m.sup_hess = two_pi * two_pi;
        m.symmetric = false;
        return m;
    }
    throw std::invalid_argument("unknown modulator '" + id + "' (expected one, poly, trig)");
}

std::vector<std::string> builtin_modulator_ids() { return {"one", "poly", "trig"}; }

DiagonalSingularIntegrand::DiagonalSingularIntegrand(std::string name, double A, double B,
                                                     GapEval eval,
                                                     std::optional<double> exact_integral,
                                                     bool symmetric)
    : name_(std::move(name)),
      A_(A),
      B_(B),
      B0_(B),
      eval_(std::move(eval)),
      exact_(exact_integral),
      symmetric_(symmetric) {
    if (!(A >= 0.0 && A < 1.0)) throw std::invalid_argument("integrand: A must lie in [0,1)");
    if (!(B > 0.0)) throw std::invalid_argument("integrand: B must be positive");
}

DiagonalSingularIntegrand::DiagonalSingularIntegrand(std::string name, double A, Modulator h)
    : name_(std::move(name)), A_(A), symmetric_(h.symmetric) {
    if (!(A >= 0.0 && A < 1.0)) throw std::invalid_argument("integrand: A must lie in [0,1)");
    // With |s| <= 1 each order of the product rule is dominated by the
    // highest power of 1/|s|.
    B_ = std::max({h.sup_h, A * h.sup_h + h.sup_grad,
                   A * (A + 1.0) * h.sup_h + 2.0 * A * h.sup_grad + h.sup_hess});
    if (B_ <= 0.0) B_ = 1.0;
    B0_ = h.sup_h > 0.0 ? h.sup_h : 1.0;
    if (!h.line_profile.empty()) exact_ = profile_integral(h.line_profile, A, 1.0);
    if (A == 0.0) {
        eval_ = [value = h.value](const Point2& x, double) { return value(x); };
    } else {
        eval_ = [A, value = h.value](const Point2& x, double gap) {
            return std::pow(std::abs(gap), -A) * value(x);
        };
    }
    modulator_ = std::move(h);
}

double DiagonalSingularIntegrand::eval_gap(const Point2& x, double gap) const {
    if (A_ > 0.0 && gap == 0.0) {
        throw SingularEvaluation(name_ + ": evaluated on the diagonal x1 == x2");
    }
    return eval_(x, gap);
}

std::optional<Partials> DiagonalSingularIntegrand::partials(const Point2& x) const {
    if (!modulator_) return std::nullopt;
    const Partials h = modulator_->eval(x);
    if (A_ == 0.0) return h;
    const double s = x.x2 - x.x1;
    if (s == 0.0) throw SingularEvaluation(name_ + ": partials requested on the diagonal");
    const Power p = power_terms(A_, s);
    // d/dx1 = -d/ds, d/dx2 = +d/ds acting on phi(s).
    return Partials{
        p.v * h.f,
        -p.d1 * h.f + p.v * h.f10,
        p.d1 * h.f + p.v * h.f01,
        p.d2 * h.f - 2.0 * p.d1 * h.f10 + p.v * h.f20,
        p.d2 * h.f + 2.0 * p.d1 * h.f01 + p.v * h.f02,
        -p.d2 * h.f + p.d1 * (h.f10 - h.f01) + p.v * h.f11,
    };
}

DiagonalSingularIntegrand prototype(double A) {
    require_exponent(A, "prototype");
    return {"proto", A, builtin_modulator("one")};
}

DiagonalSingularIntegrand modulated(double A, const std::string& h_id) {
    require_exponent(A, "modulated");
    return {"modulated:" + h_id, A, builtin_modulator(h_id)};
}

DiagonalSingularIntegrand constant_integrand(double c) {
    if (!std::isfinite(c)) throw std::invalid_argument("constant_integrand: non-finite value");
    return {"const", 0.0, constant_modulator(c)};
}

DiagonalSingularIntegrand linear_integrand() { return {"linear", 0.0, linear_modulator()}; }

DiagonalSingularIntegrand oscillating_counterexample(double A) {
    require_exponent(A, "oscillating_counterexample");
    auto eval = [A](const Point2& x, double gap) {
        const double r = std::abs(gap);
        const double level = -std::log2(r);
        const double k0 = std::floor(level);
        const double frac = level - k0;
        const double t = x.x1 + x.x2;
        const double w0 = std::cos(0.5 * std::numbers::pi * frac);
        const double osc =
            w0 * w0 * std::sin(std::ldexp(t, static_cast<int>(k0))) +
            (1.0 - w0 * w0) * std::sin(std::ldexp(t, static_cast<int>(k0) + 1));
        return std::pow(r, -A) * (1.0 + 0.5 * osc);
    };
    // Growth constant from the product rule with |d rho/ds| <= pi/(2 ln2 |s|)
    // and frequencies 2^k <= 2/|s| on the support of rho_k.
    return {"oscillating", A, 25.0, eval, std::nullopt, false};
}

std::pair<DiagonalSingularIntegrand, DiagonalSingularIntegrand> extension_pair(double A,
                                                                               double eps) {
    require_exponent(A, "extension_pair");
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("extension_pair: eps must lie in (0,1)");
    }
    auto f1 = [A](const Point2&, double s) {
        const double v = std::pow(std::abs(s), -A);
        return s > 0.0 ? -v : v;
    };
    const double e0 = std::pow(eps, -A);
    const double e1 = -A * e0 / eps;
    const double e2 = A * (A + 1.0) * e0 / (eps * eps);
    auto f2 = [A, eps, e0, e1, e2](const Point2&, double s) {
        if (s < 0.0 && s >= -eps) {
            const double d = -s - eps;
            return e0 + e1 * d + 0.5 * e2 * d * d;
        }
        return std::pow(std::abs(s), -A);
    };
    const double B = 1.0 + A + 0.5 * A * (A + 1.0);
    return {DiagonalSingularIntegrand("extension-f1", A, B, f1, 0.0, false),
            DiagonalSingularIntegrand("extension-f2", A, B, f2, std::nullopt, false)};
}

Point2 transform_tau(const Point2& u, Half half) {
    const double r = std::sqrt(u.x2);
    const Point2 up{(1.0 - u.x1) * r, r};
    return half == Half::upper ? up : Point2{up.x2, up.x1};
}

double TransformedIntegrand::operator()(const Point2& u) const {
    if (base_->singular() && (u.x1 <= 0.0 || u.x2 <= 0.0)) {
        throw SingularEvaluation(base_->name() + ": transformed integrand evaluated on a lower edge");
    }
    const double r = std::sqrt(u.x2);
    const double gap = u.x1 * r;  // x2 - x1 on the upper half, computed without cancellation
    if (half_ == Half::upper) return base_->eval_gap({(1.0 - u.x1) * r, r}, gap);
    return base_->eval_gap({r, (1.0 - u.x1) * r}, -gap);
}

TransformedIntegrand transformed(const DiagonalSingularIntegrand& f, Half half) {
    return {std::make_shared<const DiagonalSingularIntegrand>(f), half};
}

// ---------------------------------------------------------------------------

Def1Report def1_check(const DiagonalSingularIntegrand& f, const std::vector<int>& grid_sizes,
                      double band, double slack) {
    constexpr double h1 = 1e-5;
    constexpr double h2 = 1e-4;
    Def1Report rep;
    rep.band = band;
    rep.B = f.B();
    rep.slack = slack;
    const double A = f.A();
    for (int n : grid_sizes) {
        if (n < 2 || n > 4096) throw std::invalid_argument("def1_check: grid size must lie in [2, 4096]");
        Def1Report::Grid g;
        g.size = n;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double x1 = (i + 0.5) / n;
                const double x2 = (j + 0.5) / n;
                const double s = std::abs(x2 - x1);
                if (s < band + 2.0 * h2) continue;
                auto F = [&](double a, double b) { return f({a, b}); };
                const double v = F(x1, x2);
                const double d10 = (F(x1 + h1, x2) - F(x1 - h1, x2)) / (2.0 * h1);
                const double d01 = (F(x1, x2 + h1) - F(x1, x2 - h1)) / (2.0 * h1);
                const double d20 = (F(x1 + h2, x2) - 2.0 * v + F(x1 - h2, x2)) / (h2 * h2);
                const double d02 = (F(x1, x2 + h2) - 2.0 * v + F(x1, x2 - h2)) / (h2 * h2);
                const double d11 = (F(x1 + h2, x2 + h2) - F(x1 + h2, x2 - h2) -
                                    F(x1 - h2, x2 + h2) + F(x1 - h2, x2 - h2)) /
                                   (4.0 * h2 * h2);
                const std::array<double, 3> ratio{
                    std::abs(v) * std::pow(s, A),
                    std::max(std::abs(d10), std::abs(d01)) * std::pow(s, A + 1.0),
                    std::max({std::abs(d20), std::abs(d02), std::abs(d11)}) * std::pow(s, A + 2.0)};
                for (std::size_t k = 0; k < 3; ++k) {
                    if (!std::isfinite(ratio[k])) {
                        ++rep.non_finite;
                        continue;
                    }
                    g.max_ratio[k] = std::max(g.max_ratio[k], ratio[k]);
                }
            }
        }
        for (std::size_t k = 0; k < 3; ++k) rep.max_ratio[k] = std::max(rep.max_ratio[k], g.max_ratio[k]);
        rep.grids.push_back(g);
    }
    rep.pass = rep.non_finite == 0 && !rep.grids.empty();
    for (double r : rep.max_ratio) rep.pass = rep.pass && r <= rep.B * (1.0 + slack);
    return rep;
}

Def2Report def2_check(const TransformedIntegrand& g, double A1, double A2,
                      const std::vector<int>& grid_sizes, double slack) {
    constexpr double rel1 = 1e-5;
    constexpr double rel2 = 1e-4;
    Def2Report rep;
    rep.A1 = A1;
    rep.A2 = A2;
    rep.slack = slack;
    for (int n : grid_sizes) {
        if (n < 1 || n > 1024) throw std::invalid_argument("def2_check: grid size must lie in [1, 1024]");
        Def2Report::Grid grid;
        grid.size = n;
        grid.u_min = std::exp2(-n / 4.0);
        for (int i = 0; i < n; ++i) {
            const double u1 = std::exp2(-(i + 1) / 4.0);
            for (int j = 0; j < n; ++j) {
                const double u2 = std::exp2(-(j + 1) / 4.0);
                auto G = [&](double a, double b) { return g({a, b}); };
                const double v = G(u1, u2);
                const double a1 = rel1 * u1, a2 = rel1 * u2;
                const double d10 = (G(u1 + a1, u2) - G(u1 - a1, u2)) / (2.0 * a1);
                const double d01 = (G(u1, u2 + a2) - G(u1, u2 - a2)) / (2.0 * a2);
                const double b1 = rel2 * u1, b2 = rel2 * u2;
                const double d11 = (G(u1 + b1, u2 + b2) - G(u1 + b1, u2 - b2) -
                                    G(u1 - b1, u2 + b2) + G(u1 - b1, u2 - b2)) /
                                   (4.0 * b1 * b2);
                const double w1 = std::pow(u1, A1), w2 = std::pow(u2, A2);
                const std::array<double, 4> ratio{std::abs(v) * w1 * w2,
                                                  std::abs(d10) * w1 * u1 * w2,
                                                  std::abs(d01) * w1 * w2 * u2,
                                                  std::abs(d11) * w1 * u1 * w2 * u2};
                for (std::size_t k = 0; k < 4; ++k) {
                    if (!std::isfinite(ratio[k])) {
                        ++rep.non_finite;
                        continue;
                    }
                    grid.max_ratio[k] = std::max(grid.max_ratio[k], ratio[k]);
                }
            }
        }
        rep.grids.push_back(grid);
    }
    rep.pass = rep.non_finite == 0 && !rep.grids.empty();
    for (std::size_t i = 1; i < rep.grids.size(); ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
            rep.pass = rep.pass &&
                       rep.grids[i].max_ratio[k] <= (1.0 + slack) * rep.grids[i - 1].max_ratio[k];
        }
    }
    if (!rep.grids.empty()) rep.constant = rep.grids.back().max_ratio;
    return rep;
}

}  // namespace diagqmc
