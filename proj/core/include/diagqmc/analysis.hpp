#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diagqmc/integrands.hpp"
#include "diagqmc/quadrature.hpp"

namespace diagqmc {

// ---------------------------------------------------------------------------
// Reference integrals

enum class OraclePath { automatic, closed_form, quadrature };

inline constexpr double default_oracle_tol = 1e-11;

/// Which side(s) of the diagonal a gap band covers.
enum class Sides { upper, lower, both };

/// Integral of f over {x in [0,1]^2 : s_lo < |x2 - x1| < s_hi} restricted to
/// the chosen side (upper: x2 > x1). Works line by line in s = |x2 - x1| with
/// s = v^{1/(1-A)}, which turns s^{-A} ds into dv / (1 - A); tanh-sinh in v
/// outside, adaptive Gauss-Legendre along each segment inside.
/// Throws OracleFailure when the outer refinement does not converge.
double oracle_gap_band(const DiagonalSingularIntegrand& f, double s_lo, double s_hi, Sides sides,
                       double tol = default_oracle_tol);

/// Integral over the whole square.
double oracle_integral(const DiagonalSingularIntegrand& f, double tol = default_oracle_tol,
                       OraclePath path = OraclePath::automatic);

/// Integral over the band |x1 - x2| < eps.
double oracle_strip_integral(const DiagonalSingularIntegrand& f, double epsilon,
                             double tol = default_oracle_tol,
                             OraclePath path = OraclePath::automatic);

// ---------------------------------------------------------------------------
// Convergence sweeps

enum class SweepMethod { strip, extension, transform_halton, transform_rqmc, transform_mc, mc, synthetic };

std::string to_string(SweepMethod m);
/// Accepts strip, extension, transform (= transform-halton), transform-halton,
/// transform-rqmc, transform-mc, mc, synthetic.
SweepMethod parse_sweep_method(const std::string& name);

struct SweepRecord {
    std::string method;
    std::string integrand;
    double A = 0.0;
    std::size_t n_total = 0;
    double epsilon = 0.0;
    double estimate = 0.0;
    double abs_error = 0.0;
    int replicates = 1;
    std::optional<double> std_error;
};

struct SweepOptions {
    double c = 1.0;
    double eps_max = default_eps_max;
    int replicates = 1;
    std::uint64_t seed = 0;
    /// Overrides the oracle value of the integral.
    std::optional<double> mu_ref;
    /// Exponent for the synthetic method: abs_error = n^{-synthetic_rate}.
    double synthetic_rate = 0.5;
};

/// One record per entry of n_grid (points per component; see Estimate).
/// Randomised methods average abs_error over the replicates and report its
/// standard error.
std::vector<SweepRecord> run_sweep(SweepMethod method, const DiagonalSingularIntegrand& f,
                                   const std::vector<std::size_t>& n_grid,
                                   const SweepOptions& opts = {});

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t n_min = 0;
    std::size_t n_max = 0;
};

/// Least squares line through (ln n_total, ln abs_error). Needs >= 3 records;
/// throws DegenerateFit when an abs_error is zero.
RateFit fit_rate(const std::vector<SweepRecord>& records);
RateFit fit_power_law(const std::vector<double>& n, const std::vector<double>& err);

// ---------------------------------------------------------------------------
// Variation diagnostics on T_eps^u

struct VariationTerm {
    std::string name;
    int group = 0;  // 0: O(1), 1: O(eps^{-A}), 2: O(eps^{-A-1})
    double value = 0.0;
};

struct VariationReport {
    double epsilon = 0.0;
    std::vector<VariationTerm> terms;
    std::array<double, 3> group_total{};
    bool converged = true;  // every term met its tolerance
};

/// Evaluates the corner, edge, hypotenuse and interior terms that bound the
/// variation of f on the upper strip triangle, grouped by their order in eps.
/// Requires analytic partials (power-modulated family).
VariationReport variation_terms(const DiagonalSingularIntegrand& f, double epsilon,
                                double tol = 1e-10);

/// Integral of |f1 - f2| over the band |x1 - x2| < eps for extension_pair(A, eps).
double extension_gap(double A, double epsilon, double tol = default_oracle_tol);

}  // namespace diagqmc
