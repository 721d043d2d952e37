#pragma once

#include <functional>
#include <vector>

namespace diagqmc {

struct QuadratureResult {
    double value = 0.0;
    double last_change = 0.0;  // |I_k - I_{k-1}| at the final refinement
    int levels = 0;
    bool converged = false;
};

/// Tanh-sinh (double exponential) rule on [a,b], halving the step until two
/// successive levels differ by less than tol. The integrand is never
/// evaluated at the endpoints, so integrable endpoint singularities are fine.
QuadratureResult tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol,
                           int max_levels = 10);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

/// Gauss-Legendre on [a,b], doubling the order from 16 until two orders agree
/// to within tol (capped at 256 points).
QuadratureResult gauss_legendre_adaptive(const std::function<double(double)>& f, double a, double b,
                                         double tol);

}  // namespace diagqmc
