#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diagqmc/point.hpp"

namespace diagqmc {

/// Value and analytic partial derivatives f_rs = d^{r+s} f / dx1^r dx2^s.
struct Partials {
    double f = 0.0;
    double f10 = 0.0;
    double f01 = 0.0;
    double f20 = 0.0;
    double f02 = 0.0;
    double f11 = 0.0;
};

/// A smooth factor h with bounded first and second derivatives.
struct Modulator {
    std::string id;
    std::function<double(const Point2&)> value;
    std::function<Partials(const Point2&)> eval;  // h and its partials
    double sup_h = 0.0;                           // sup |h|
    double sup_grad = 0.0;                        // sup over |h_10|, |h_01|
    double sup_hess = 0.0;                        // sup over second partials
    bool symmetric = false;                       // h(x1,x2) == h(x2,x1)
    /// Coefficients c_k of P(s) = sum_k c_k s^k, the integral of h along the two
    /// segments x2 - x1 = +s and x2 - x1 = -s inside the square, when P is a
    /// polynomial. Empty when no closed form is known.
    std::vector<double> line_profile;
};

/// Built-in modulators: "one" (h = 1), "poly" (1 + x1 x2),
/// "trig" (2 + sin(2 pi x1) cos(2 pi x2)). Throws std::invalid_argument otherwise.
Modulator builtin_modulator(const std::string& id);
std::vector<std::string> builtin_modulator_ids();

/// Integral of s^{-A} P(s) over (0, s_max) for a line profile P.
double profile_integral(const std::vector<double>& profile, double A, double s_max);

/// Evaluation signature: the point and the exact signed gap x2 - x1. Callers
/// that know the gap more accurately than x.x2 - x.x1 (the transformed
/// integrands do) pass it in; everything else passes the plain difference.
using GapEval = std::function<double(const Point2& x, double gap)>;

/// An integrand on [0,1]^2 whose singularity along x1 = x2 is no worse than
/// |x1 - x2|^{-A}, together with the constant B of the growth bounds on the
/// function and its first and second partials.
///
/// Members of the power-modulated family |x1 - x2|^{-A} h(x) also carry their
/// modulator and analytic partials. A = 0 marks a smooth member of that
/// family (constants, linear test functions).
class DiagonalSingularIntegrand {
public:
    /// A free-form integrand. Only the value is known analytically.
    DiagonalSingularIntegrand(std::string name, double A, double B, GapEval eval,
                              std::optional<double> exact_integral = std::nullopt,
                              bool symmetric = false);

    /// Member of the power-modulated family.
    DiagonalSingularIntegrand(std::string name, double A, Modulator h);

    const std::string& name() const { return name_; }
    double A() const { return A_; }
    double B() const { return B_; }
    /// Constant of the zeroth-order bound |f| <= B0 |x1 - x2|^{-A} alone.
    double B0() const { return B0_; }
    bool singular() const { return A_ > 0.0; }
    bool symmetric() const { return symmetric_; }
    const std::optional<double>& exact_integral() const { return exact_; }
    const std::optional<Modulator>& modulator() const { return modulator_; }

    /// Throws SingularEvaluation on the diagonal when singular().
    double operator()(const Point2& x) const { return eval_gap(x, x.x2 - x.x1); }
    double eval_gap(const Point2& x, double gap) const;

    /// Analytic partials; only available for the power-modulated family.
    std::optional<Partials> partials(const Point2& x) const;

private:
    std::string name_;
    double A_;
    double B_;
    double B0_;
    GapEval eval_;
    std::optional<double> exact_;
    std::optional<Modulator> modulator_;
    bool symmetric_;
};

/// |x1 - x2|^{-A}. Requires 0 < A < 1.
DiagonalSingularIntegrand prototype(double A);

/// |x1 - x2|^{-A} h(x) for a built-in modulator id. Requires 0 < A < 1.
DiagonalSingularIntegrand modulated(double A, const std::string& h_id);

/// The constant c (a smooth member of the modulated family).
DiagonalSingularIntegrand constant_integrand(double c);

/// x1 + x2 (smooth).
DiagonalSingularIntegrand linear_integrand();

/// |s|^{-A} (1 + (1/2) sum_k rho_k(|s|) sin(2^k (x1 + x2))), s = x2 - x1, where
/// rho_k is a dyadic partition of unity in log2(1/|s|). It satisfies the
/// diagonal growth bounds yet oscillates along the diagonal at frequency
/// ~1/|s|, so it is not of modulated form.
DiagonalSingularIntegrand oscillating_counterexample(double A);

/// The pair f1, f2 that agree in absolute value away from the band
/// -eps <= x2 - x1 < 0 but differ inside it. f2 replaces |s|^{-A} on the band by
/// the quadratic Taylor polynomial of r^{-A} about r = eps, r = x1 - x2.
std::pair<DiagonalSingularIntegrand, DiagonalSingularIntegrand> extension_pair(double A,
                                                                               double eps);

enum class Half { upper, lower };

/// Maps the unit square onto T^u = {0 <= x1 <= x2 <= 1} (upper) by
/// ((1 - u1) sqrt(u2), sqrt(u2)); the lower half swaps the coordinates.
Point2 transform_tau(const Point2& u, Half half);

/// g(u) = f(tau(u)) on the unit square. The integral of f over the half equals
/// one half of the integral of g.
class TransformedIntegrand {
public:
    TransformedIntegrand(std::shared_ptr<const DiagonalSingularIntegrand> base, Half half)
        : base_(std::move(base)), half_(half) {}

    /// Throws SingularEvaluation when u1 <= 0 or u2 <= 0 and the base is singular.
    double operator()(const Point2& u) const;

    const DiagonalSingularIntegrand& base() const { return *base_; }
    Half half() const { return half_; }

private:
    std::shared_ptr<const DiagonalSingularIntegrand> base_;
    Half half_;
};

TransformedIntegrand transformed(const DiagonalSingularIntegrand& f, Half half);

// ---------------------------------------------------------------------------
// Growth-bound verifiers

/// Ratios reported per derivative order (0, 1, 2) for the diagonal bounds.
struct Def1Report {
    struct Grid {
        int size = 0;
        std::array<double, 3> max_ratio{};
    };
    std::vector<Grid> grids;
    std::array<double, 3> max_ratio{};  // over all grids
    double band = 0.0;
    double B = 0.0;
    double slack = 0.0;
    std::size_t non_finite = 0;
    bool pass = false;
};

/// Central finite differences (step 1e-5 for first order, 1e-4 for second)
/// on uniform cell-centred grids, skipping |x1 - x2| < band plus the stencil
/// reach. Ratio of order k: |d^k f| |x1 - x2|^{A + k}. Passes when each
/// order's maximum is at most B (1 + slack).
Def1Report def1_check(const DiagonalSingularIntegrand& f, const std::vector<int>& grid_sizes,
                      double band = 1e-3, double slack = 0.10);

/// Ratios for the lower-edge bounds on g, g_10, g_01, g_11.
struct Def2Report {
    struct Grid {
        int size = 0;
        double u_min = 0.0;
        std::array<double, 4> max_ratio{};  // g, g10, g01, g11
    };
    std::vector<Grid> grids;
    std::array<double, 4> constant{};  // maxima on the finest grid
    double A1 = 0.0;
    double A2 = 0.0;
    double slack = 0.0;
    std::size_t non_finite = 0;
    bool pass = false;
};

/// Tensor grid u = 2^{-(j+1)/4}, j < size, per coordinate, so larger grids
/// probe closer to the lower edges. Finite differences use steps relative to
/// the coordinate (1e-5 first order, 1e-4 mixed). Passes when every ratio's
/// maximum grows by at most (1 + slack) from one grid to the next.
Def2Report def2_check(const TransformedIntegrand& g, double A1, double A2,
                      const std::vector<int>& grid_sizes, double slack = 0.10);

}  // namespace diagqmc
