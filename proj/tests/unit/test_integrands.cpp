#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "diagqmc/errors.hpp"
#include "diagqmc/integrands.hpp"
#include "diagqmc/lowdisc.hpp"

using namespace diagqmc;

TEST_CASE("prototype values") {
    const auto f = prototype(0.5);
    CHECK(f(Point2{0.75, 0.5}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(f(Point2{0.5, 0.75}) == doctest::Approx(2.0).epsilon(1e-15));
    REQUIRE(f.exact_integral());
    CHECK(*f.exact_integral() == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(f.singular());
    CHECK(f.symmetric());
    CHECK(f.B0() == 1.0);
    CHECK_THROWS_AS(f(Point2{0.3, 0.3}), SingularEvaluation);
}

TEST_CASE("prototype parameter range") {
    CHECK_THROWS_AS(prototype(0.0), std::invalid_argument);
    CHECK_THROWS_AS(prototype(1.0), std::invalid_argument);
    CHECK_THROWS_AS(prototype(-0.2), std::invalid_argument);
    CHECK_THROWS_AS(modulated(1.5, "one"), std::invalid_argument);
    CHECK_THROWS_AS(modulated(0.5, "cubic"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_modulator("nope"), std::invalid_argument);
}

TEST_CASE("prototype attains its growth bound with equality") {
    for (double A : {0.1, 0.5, 0.9}) {
        const auto f = prototype(A);
        double worst = 0.0;
        for (const auto& p : uniform_points(1000, 21)) {
            worst = std::max(worst, std::abs(f(p) * std::pow(std::abs(p.x1 - p.x2), A) - 1.0));
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("identity modulator reproduces the prototype") {
    const auto f = prototype(0.4);
    const auto g = modulated(0.4, "one");
    for (const auto& p : uniform_points(1000, 2)) REQUIRE(g(p) == doctest::Approx(f(p)).epsilon(1e-15));
}

TEST_CASE("poly modulator arithmetic") {
    const auto f = modulated(0.5, "poly");
    CHECK(f(Point2{0.75, 0.5}) == doctest::Approx(2.75).epsilon(1e-14));
    CHECK(f.symmetric());
    REQUIRE(f.exact_integral());
    // by hand: integral of |s|^{-1/2} (1 + x1 x2) over the square = 8/3 + 16/21
    CHECK(*f.exact_integral() == doctest::Approx(8.0 / 3.0 + 16.0 / 21.0).epsilon(1e-13));
}

TEST_CASE("trig modulator") {
    const auto f = modulated(0.5, "trig");
    const Point2 x{0.125, 0.5};
    const double h = 2.0 + std::sin(2 * std::numbers::pi * 0.125) * std::cos(2 * std::numbers::pi * 0.5);
    CHECK(f(x) == doctest::Approx(h / std::sqrt(0.375)).epsilon(1e-14));
    CHECK_FALSE(f.symmetric());
    CHECK_FALSE(f.exact_integral());
}

TEST_CASE("analytic partials match finite differences") {
    for (const char* id : {"one", "poly", "trig"}) {
        const auto f = modulated(0.5, id);
        for (const auto& x : {Point2{0.2, 0.7}, Point2{0.9, 0.1}, Point2{0.45, 0.55}}) {
            const auto p = *f.partials(x);
            const double h = 1e-5;
            const double f10 = (f({x.x1 + h, x.x2}) - f({x.x1 - h, x.x2})) / (2 * h);
            const double f01 = (f({x.x1, x.x2 + h}) - f({x.x1, x.x2 - h})) / (2 * h);
            const double k = 1e-4;
            const double f20 = (f({x.x1 + k, x.x2}) - 2 * f(x) + f({x.x1 - k, x.x2})) / (k * k);
            const double f11 = (f({x.x1 + k, x.x2 + k}) - f({x.x1 + k, x.x2 - k}) - f({x.x1 - k, x.x2 + k}) +
                                f({x.x1 - k, x.x2 - k})) / (4 * k * k);
            CHECK(p.f == doctest::Approx(f(x)).epsilon(1e-14));
            CHECK(p.f10 == doctest::Approx(f10).epsilon(1e-6));
            CHECK(p.f01 == doctest::Approx(f01).epsilon(1e-6));
            CHECK(p.f20 == doctest::Approx(f20).epsilon(1e-4));
            CHECK(p.f11 == doctest::Approx(f11).epsilon(1e-4));
        }
    }
    CHECK_FALSE(oscillating_counterexample(0.5).partials({0.2, 0.6}));
}

TEST_CASE("smooth integrands") {
    const auto c = constant_integrand(3.0);
    CHECK(c(Point2{0.4, 0.4}) == 3.0);
    CHECK_FALSE(c.singular());
    CHECK(*c.exact_integral() == 3.0);
    const auto l = linear_integrand();
    CHECK(l(Point2{0.25, 0.25}) == 0.5);
    CHECK(*l.exact_integral() == 1.0);
}

TEST_CASE("free-form integrand validation") {
    auto eval = [](const Point2&, double) { return 1.0; };
    CHECK_THROWS_AS(DiagonalSingularIntegrand("x", 1.0, 1.0, eval), std::invalid_argument);
    CHECK_THROWS_AS(DiagonalSingularIntegrand("x", 0.5, 0.0, eval), std::invalid_argument);
}

TEST_CASE("extension pair") {
    const double A = 0.5, eps = 0.1;
    const auto [f1, f2] = extension_pair(A, eps);
    // s = x2 - x1 = -eps
    CHECK(f2(Point2{0.5, 0.4}) == doctest::Approx(std::pow(eps, -A)).epsilon(1e-12));
    for (const auto& p : uniform_points(1000, 5)) {
        const double s = p.x2 - p.x1;
        if (s > 0) CHECK(f1(p) == doctest::Approx(-f2(p)).epsilon(1e-15));
        if (s < -eps) CHECK(std::abs(f1(p)) == doctest::Approx(std::abs(f2(p))).epsilon(1e-15));
    }
    // one-sided difference quotients of f2 in r = x1 - x2 at r = eps
    const double h = 1e-7;
    const Point2 x{0.5, 0.4};
    const double outside = (f2({x.x1 + h, x.x2}) - f2(x)) / h;
    const double inside = (f2(x) - f2({x.x1 - h, x.x2})) / h;
    const double target = -A * std::pow(eps, -A - 1.0);
    CHECK(outside == doctest::Approx(target).epsilon(1e-4));
    CHECK(inside == doctest::Approx(target).epsilon(1e-4));
    // f2 stays bounded on the band right up to the diagonal
    CHECK(f2(Point2{0.3 + 1e-13, 0.3}) ==
          doctest::Approx(std::pow(eps, -A) * (1 + A + A * (A + 1) / 2)).epsilon(1e-9));
    CHECK_THROWS_AS(extension_pair(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(extension_pair(0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(extension_pair(1.0, 0.1), std::invalid_argument);
}

TEST_CASE("transform_tau") {
    const auto a = transform_tau({0.5, 0.25}, Half::upper);
    CHECK(a.x1 == doctest::Approx(0.25));
    CHECK(a.x2 == doctest::Approx(0.5));
    const auto b = transform_tau({0.0, 1.0}, Half::upper);
    CHECK(b.x1 == 1.0);
    CHECK(b.x2 == 1.0);
    const auto z = transform_tau({0.3, 0.0}, Half::upper);
    CHECK(z.x1 == 0.0);
    CHECK(z.x2 == 0.0);
    const auto l = transform_tau({0.5, 0.25}, Half::lower);
    CHECK(l.x1 == doctest::Approx(0.5));
    CHECK(l.x2 == doctest::Approx(0.25));
    for (const auto& u : uniform_points(10000, 9)) {
        const auto up = transform_tau(u, Half::upper);
        REQUIRE(up.x1 <= up.x2);
        const auto lo = transform_tau(u, Half::lower);
        REQUIRE(lo.x1 >= lo.x2);
    }
}

TEST_CASE("transformed integrand identities") {
    const double A = 0.5;
    const auto g = transformed(prototype(A), Half::upper);
    CHECK(g({0.25, 0.25}) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(g({0.0, 0.5}), SingularEvaluation);
    CHECK_THROWS_AS(g({0.5, 0.0}), SingularEvaluation);

    const auto gp = transformed(modulated(A, "poly"), Half::upper);
    const auto gl = transformed(prototype(A), Half::lower);
    const auto glp = transformed(modulated(A, "poly"), Half::lower);
    double worst_id = 0.0, worst_poly = 0.0, worst_sym = 0.0;
    for (const auto& u : uniform_points(1000, 13)) {
        const double w = std::pow(u.x1, -A) * std::pow(u.x2, -A / 2);
        worst_id = std::max(worst_id, std::abs(g(u) / w - 1.0));
        worst_poly = std::max(worst_poly, std::abs(gp(u) / (w * (1 + (1 - u.x1) * u.x2)) - 1.0));
        worst_sym = std::max({worst_sym, std::abs(gl(u) / g(u) - 1.0), std::abs(glp(u) / gp(u) - 1.0)});
    }
    CHECK(worst_id < 1e-12);
    CHECK(worst_poly < 1e-12);
    CHECK(worst_sym < 1e-14);
}

TEST_CASE("transformed integrand keeps the gap exact near u1 = 0") {
    const auto g = transformed(prototype(0.5), Half::upper);
    const Point2 u{1e-300, 0.81};
    // gap = u1 sqrt(u2) = 0.9e-300
    CHECK(g(u) == doctest::Approx(std::pow(0.9e-300, -0.5)).epsilon(1e-12));
}

TEST_CASE("def1_check on the prototype") {
    const auto r = def1_check(prototype(0.5), {32, 64, 128});
    CHECK(r.pass);
    CHECK(r.max_ratio[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(r.max_ratio[1] - 0.5) < 1e-3);
    CHECK(std::abs(r.max_ratio[2] - 0.75) < 1e-3);
    CHECK(r.non_finite == 0);
    CHECK(r.grids.size() == 3);
}

TEST_CASE("def1_check for the prototype at other exponents") {
    for (double A : {0.25, 0.75}) {
        const auto r = def1_check(prototype(A), {64});
        CHECK(r.pass);
        CHECK(std::abs(r.max_ratio[1] - A) < 1e-3);
        CHECK(std::abs(r.max_ratio[2] - A * (A + 1)) < 1e-3);
    }
}

TEST_CASE("def1_check on smooth and modulated functions") {
    const auto lin = def1_check(linear_integrand(), {32, 64});
    CHECK(lin.pass);
    CHECK(lin.max_ratio[2] < 1e-3);
    for (const char* id : {"one", "poly", "trig"}) CHECK(def1_check(modulated(0.5, id), {32, 64}).pass);
    CHECK(def1_check(oscillating_counterexample(0.5), {32, 64}).pass);
    CHECK_THROWS_AS(def1_check(prototype(0.5), {1}), std::invalid_argument);
}

TEST_CASE("def2_check on the modulated family") {
    const auto r = def2_check(transformed(prototype(0.5), Half::upper), 0.5, 0.25, {32, 64, 128});
    CHECK(r.pass);
    CHECK(r.constant[0] == doctest::Approx(1.0).epsilon(1e-9));
    for (const char* id : {"one", "poly", "trig"}) {
        for (Half h : {Half::upper, Half::lower}) {
            const auto rep = def2_check(transformed(modulated(0.5, id), h), 0.5, 0.25, {32, 64, 128});
            CHECK(rep.pass);
            CHECK(rep.non_finite == 0);
        }
    }
}

TEST_CASE("def2_check flags a function that is not of modulated form") {
    const auto r = def2_check(transformed(oscillating_counterexample(0.5), Half::upper), 0.5, 0.25, {32, 64, 128});
    CHECK_FALSE(r.pass);
    // the g01 ratio keeps growing as the grid reaches smaller u1
    CHECK(r.grids[2].max_ratio[2] > 10.0 * r.grids[0].max_ratio[2]);
}
