#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "diagqmc/integrands.hpp"
#include "diagqmc/lowdisc.hpp"
#include "diagqmc/triangle.hpp"

namespace diagqmc {

/// Output of one estimator run.
struct Estimate {
    double value = 0.0;
    std::size_t n_per_component = 0;  // points per triangle / per half / in the square
    std::size_t n_evaluations = 0;    // integrand evaluations actually spent
    double epsilon = 0.0;             // strip half-width, 0 when unused
    std::string method;
    int replicates = 1;
    std::optional<double> replicate_sd;  // present iff replicates > 1
    std::optional<std::uint64_t> seed;
    /// Per-component partial estimates: (upper, lower) triangle or half.
    std::optional<std::array<double, 2>> components;
};

/// The two triangles of S_eps = {|x1 - x2| >= eps}.
struct StripGeometry {
    double epsilon = 0.0;
    Triangle upper;  // (0,eps), (0,1), (1-eps,1)
    Triangle lower;  // (eps,0), (1,0), (1,1-eps)
    double volume_each = 0.0;
};

inline constexpr double default_eps_max = 0.25;

/// min(c sqrt(ln n / n), eps_max). Requires n >= 2, c > 0, eps_max in (0,1).
double epsilon_schedule(std::size_t n, double c = 1.0, double eps_max = default_eps_max);

/// Requires 0 < eps < 1.
StripGeometry strip_triangles(double epsilon);

/// 2 B eps^{1-A} / (1 - A), the mass the strip could hold under the zeroth-order bound.
double truncation_bound(double B, double A, double epsilon);

/// area(t) times the mean of fn over the first n triangular van der Corput points.
double triangle_qmc(const Triangle& t, std::size_t n, const std::function<double(const Point2&)>& fn);

/// Strip-avoiding estimate: n triangular van der Corput points on each of the
/// two triangles of S_eps. eps defaults to epsilon_schedule(2n, c, eps_max).
Estimate estimate_strip(const DiagonalSingularIntegrand& f, std::size_t n, double c = 1.0,
                        std::optional<double> eps_override = std::nullopt,
                        double eps_max = default_eps_max);

/// Even C^1 bridge of |s|^{-A} across |s| < eps: a + b s^2 with
/// b = -A eps^{-A-2} / 2 and a = eps^{-A} (1 + A/2).
double extension_bridge(double A, double epsilon, double s);

/// Equal-weight rule on the square applied to h(x) * bridge(x2 - x1). Only
/// defined for the power-modulated family; throws UnsupportedIntegrand otherwise.
Estimate estimate_extension(const DiagonalSingularIntegrand& f, std::size_t n, double epsilon,
                            const SequenceSpec& seq = {});

struct TransformMode {
    enum class Kind { halton, rqmc, mc };
    Kind kind = Kind::halton;
    int replicates = 1;  // rqmc needs >= 2

    static TransformMode halton() { return {Kind::halton, 1}; }
    static TransformMode rqmc(int r) { return {Kind::rqmc, r}; }
    static TransformMode mc(int r = 1) { return {Kind::mc, r}; }
};

std::string to_string(TransformMode::Kind kind);

/// Maps both triangles T^u and T^d onto the unit square and averages
/// (g_upper + g_lower) / 2 over one shared point set. Randomised modes need a seed.
Estimate estimate_transform(const DiagonalSingularIntegrand& f, std::size_t n, TransformMode mode,
                            std::optional<std::uint64_t> seed = std::nullopt);

/// The individual replicate values behind a randomised estimate_transform.
std::vector<double> transform_replicates(const DiagonalSingularIntegrand& f, std::size_t n,
                                         TransformMode mode, std::uint64_t seed);

/// Plain Monte Carlo on the square, optionally replicated with derived seeds.
Estimate estimate_mc(const DiagonalSingularIntegrand& f, std::size_t n, std::uint64_t seed,
                     int replicates = 1);

std::vector<double> mc_replicates(const DiagonalSingularIntegrand& f, std::size_t n,
                                  std::uint64_t seed, int replicates);

}  // namespace diagqmc
