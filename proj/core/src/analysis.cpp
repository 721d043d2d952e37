#include "diagqmc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "detail/summation.hpp"
#include "diagqmc/errors.hpp"
#include "diagqmc/nested_quadrature.hpp"

namespace diagqmc {

namespace {

// Integral of f(x) |s|^A along the segment(s) at gap s, s > 0.
double line_integral(const DiagonalSingularIntegrand& f, double s, Sides sides, double tol) {
    const double A = f.A();
    const double len = 1.0 - s;
    if (len <= 0.0) return 0.0;
    const double weight = A == 0.0 ? 1.0 : std::pow(s, A);
    double total = 0.0;
    if (sides != Sides::lower) {
        total += gauss_legendre_adaptive(
                     [&](double t) { return f.eval_gap({t, t + s}, s) * weight; }, 0.0, len, tol)
                     .value;
    }
    if (sides != Sides::upper) {
        total += gauss_legendre_adaptive(
                     [&](double t) { return f.eval_gap({t + s, t}, -s) * weight; }, 0.0, len, tol)
                     .value;
    }
    return total;
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

double oracle_gap_band(const DiagonalSingularIntegrand& f, double s_lo, double s_hi, Sides sides,
                       double tol) {
    if (!(s_lo >= 0.0 && s_lo <= s_hi && s_hi <= 1.0)) {
        throw std::invalid_argument("oracle_gap_band: need 0 <= s_lo <= s_hi <= 1");
    }
    if (s_lo == s_hi) return 0.0;
    const double A = f.A();
    const double inner_tol = 0.01 * tol;
    QuadratureResult res;
    if (A == 0.0) {
        res = tanh_sinh([&](double s) { return line_integral(f, s, sides, inner_tol); }, s_lo, s_hi,
                        tol);
    } else {
        const double q = 1.0 - A;
        auto integrand = [&](double v) {
            double s = std::pow(v, 1.0 / q);
            if (s <= 0.0) s = std::numeric_limits<double>::denorm_min();
            return line_integral(f, s, sides, inner_tol) / q;
        };
        res = tanh_sinh(integrand, std::pow(s_lo, q), std::pow(s_hi, q), tol);
    }
    if (!res.converged) {
        throw OracleFailure("oracle for '" + f.name() + "' did not converge: last change " +
                            fmt_double(res.last_change) + " after " + std::to_string(res.levels) +
                            " levels (tol " + fmt_double(tol) + ")");
    }
    return res.value;
}

double oracle_integral(const DiagonalSingularIntegrand& f, double tol, OraclePath path) {
    if (path != OraclePath::quadrature && f.exact_integral()) return *f.exact_integral();
    if (path == OraclePath::closed_form) {
        throw OracleFailure("no closed form for the integral of '" + f.name() + "'");
    }
    return oracle_gap_band(f, 0.0, 1.0, Sides::both, tol);
}

double oracle_strip_integral(const DiagonalSingularIntegrand& f, double eps, double tol,
                             OraclePath path) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("oracle_strip_integral: epsilon must lie in [0,1]");
    }
    if (eps == 0.0) return 0.0;
    const bool has_closed = f.modulator() && !f.modulator()->line_profile.empty();
    if (path != OraclePath::quadrature && has_closed) {
        return profile_integral(f.modulator()->line_profile, f.A(), eps);
    }
    if (path == OraclePath::closed_form) {
        throw OracleFailure("no closed form for the strip integral of '" + f.name() + "'");
    }
    return oracle_gap_band(f, 0.0, eps, Sides::both, tol);
}

// ---------------------------------------------------------------------------

std::string to_string(SweepMethod m) {
    switch (m) {
        case SweepMethod::strip: return "strip";
        case SweepMethod::extension: return "extension";
        case SweepMethod::transform_halton: return "transform-halton";
        case SweepMethod::transform_rqmc: return "transform-rqmc";
        case SweepMethod::transform_mc: return "transform-mc";
        case SweepMethod::mc: return "mc";
        case SweepMethod::synthetic: return "synthetic";
    }
    return "?";
}

SweepMethod parse_sweep_method(const std::string& name) {
    if (name == "strip") return SweepMethod::strip;
    if (name == "extension") return SweepMethod::extension;
    if (name == "transform" || name == "transform-halton") return SweepMethod::transform_halton;
    if (name == "transform-rqmc") return SweepMethod::transform_rqmc;
    if (name == "transform-mc") return SweepMethod::transform_mc;
    if (name == "mc") return SweepMethod::mc;
    if (name == "synthetic") return SweepMethod::synthetic;
    throw std::invalid_argument("unknown sweep method '" + name + "'");
}

namespace {

void fill_replicated(SweepRecord& rec, const std::vector<double>& values, double mu) {
    detail::NeumaierSum est;
    detail::NeumaierSum err;
    for (double v : values) {
        est.add(v);
        err.add(std::abs(v - mu));
    }
    const double r = static_cast<double>(values.size());
    rec.estimate = est.value() / r;
    rec.abs_error = err.value() / r;
    rec.replicates = static_cast<int>(values.size());
    if (values.size() > 1) {
        detail::NeumaierSum ss;
        for (double v : values) {
            const double d = std::abs(v - mu) - rec.abs_error;
            ss.add(d * d);
        }
        rec.std_error = std::sqrt(ss.value() / (r - 1.0)) / std::sqrt(r);
    }
}

[[noreturn]] void rethrow_with_n(std::size_t n) {
    const std::string where = " (sweep point n=" + std::to_string(n) + ")";
    try {
        throw;
    } catch (const UnsupportedIntegrand& e) {
        throw UnsupportedIntegrand(e.what() + where);
    } catch (const SingularEvaluation& e) {
        throw SingularEvaluation(e.what() + where);
    } catch (const OracleFailure& e) {
        throw OracleFailure(e.what() + where);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(e.what() + where);
    } catch (const std::exception& e) {
        throw std::runtime_error(e.what() + where);
    }
}

}  // namespace

std::vector<SweepRecord> run_sweep(SweepMethod method, const DiagonalSingularIntegrand& f,
                                   const std::vector<std::size_t>& n_grid,
                                   const SweepOptions& opts) {
    if (n_grid.empty()) throw std::invalid_argument("run_sweep: empty n grid");
    for (std::size_t i = 1; i < n_grid.size(); ++i) {
        if (n_grid[i] <= n_grid[i - 1]) throw std::invalid_argument("run_sweep: n grid must be strictly ascending");
    }
    if (opts.replicates < 1) throw std::invalid_argument("run_sweep: replicates must be >= 1");
    const double mu = opts.mu_ref ? *opts.mu_ref
                                  : (method == SweepMethod::synthetic ? 0.0 : oracle_integral(f));
    std::vector<SweepRecord> out;
    for (std::size_t n : n_grid) {
        SweepRecord rec;
        rec.method = to_string(method);
        rec.integrand = f.name();
        rec.A = f.A();
        try {
            switch (method) {
                case SweepMethod::strip: {
                    const Estimate e = estimate_strip(f, n, opts.c, std::nullopt, opts.eps_max);
                    rec.n_total = e.n_evaluations;
                    rec.epsilon = e.epsilon;
                    rec.estimate = e.value;
                    rec.abs_error = std::abs(e.value - mu);
                    break;
                }
                case SweepMethod::extension: {
                    const double eps = epsilon_schedule(n, opts.c, opts.eps_max);
                    const Estimate e = estimate_extension(f, n, eps);
                    rec.n_total = e.n_evaluations;
                    rec.epsilon = eps;
                    rec.estimate = e.value;
                    rec.abs_error = std::abs(e.value - mu);
                    break;
                }
                case SweepMethod::transform_halton: {
                    const Estimate e = estimate_transform(f, n, TransformMode::halton());
                    rec.n_total = e.n_evaluations;
                    rec.estimate = e.value;
                    rec.abs_error = std::abs(e.value - mu);
                    break;
                }
                case SweepMethod::transform_rqmc:
                case SweepMethod::transform_mc: {
                    const TransformMode mode = method == SweepMethod::transform_rqmc
                                                   ? TransformMode::rqmc(opts.replicates)
                                                   : TransformMode::mc(opts.replicates);
                    fill_replicated(rec, transform_replicates(f, n, mode, derive_seed(opts.seed, n)), mu);
                    rec.n_total = 2 * n;
                    break;
                }
                case SweepMethod::mc:
                    fill_replicated(rec, mc_replicates(f, n, derive_seed(opts.seed, n), opts.replicates), mu);
                    rec.n_total = n;
                    break;
                case SweepMethod::synthetic:
                    rec.n_total = n;
                    rec.abs_error = std::pow(static_cast<double>(n), -opts.synthetic_rate);
                    rec.estimate = mu + rec.abs_error;
                    break;
            }
        } catch (...) {
            rethrow_with_n(n);
        }
        out.push_back(rec);
    }
    return out;
}

RateFit fit_power_law(const std::vector<double>& n, const std::vector<double>& err) {
    if (n.size() != err.size()) throw std::invalid_argument("fit_power_law: size mismatch");
    if (n.size() < 3) throw std::invalid_argument("fit_power_law: need at least 3 points");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(err[i] > 0.0) || !std::isfinite(err[i])) {
            throw DegenerateFit("fit_power_law: abs_error at n=" + fmt_double(n[i]) +
                                " is not positive; perturb the n grid");
        }
        x.push_back(std::log(n[i]));
        y.push_back(std::log(err[i]));
    }
    const double m = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw DegenerateFit("fit_power_law: all n are equal");
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    fit.n_min = static_cast<std::size_t>(*std::min_element(n.begin(), n.end()));
    fit.n_max = static_cast<std::size_t>(*std::max_element(n.begin(), n.end()));
    return fit;
}

RateFit fit_rate(const std::vector<SweepRecord>& records) {
    std::vector<double> n, err;
    for (const auto& r : records) {
        n.push_back(static_cast<double>(r.n_total));
        err.push_back(r.abs_error);
    }
    return fit_power_law(n, err);
}

// ---------------------------------------------------------------------------

namespace {

// Tanh-sinh to a tolerance relative to a coarse first estimate.
QuadratureResult relative_tanh_sinh(const std::function<double(double)>& g, double a, double b,
                                    double rel_tol) {
    const double rough = tanh_sinh(g, a, b, std::numeric_limits<double>::infinity(), 3).value;
    return tanh_sinh(g, a, b, rel_tol * std::max(1.0, std::abs(rough)), 9);
}

}  // namespace

VariationReport variation_terms(const DiagonalSingularIntegrand& f, double eps, double tol) {
    if (!f.modulator()) {
        throw UnsupportedIntegrand("variation_terms needs analytic partials; '" + f.name() +
                                   "' has none");
    }
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("variation_terms: epsilon must lie in (0,1)");
    auto P = [&](double x1, double x2) { return *f.partials({x1, x2}); };
    VariationReport rep;
    rep.epsilon = eps;

    auto add = [&](std::string name, int group, double value) {
        rep.terms.push_back({std::move(name), group, value});
        rep.group_total[static_cast<std::size_t>(group)] += value;
    };
    auto integrate_1d = [&](const std::function<double(double)>& g, double a, double b) {
        const auto r = relative_tanh_sinh(g, a, b, tol);
        rep.converged = rep.converged && r.converged;
        return r.value;
    };
    // Over T_eps^u in (s, x1) coordinates, s = exp(y) from eps to 1.
    auto integrate_interior = [&](const std::function<double(const Partials&)>& term) {
        auto outer = [&](double y) {
            const double s = std::exp(y);
            const auto inner = gauss_legendre_adaptive(
                [&](double x1) { return term(P(x1, x1 + s)); }, 0.0, 1.0 - s,
                tol * std::max(1.0, std::abs(term(P(0.0, s)))));
            return s * inner.value;
        };
        return integrate_1d(outer, std::log(eps), 0.0);
    };
    const double top = 1.0 - eps;

    add("corner |f(0,1)|", 0, std::abs(P(0.0, 1.0).f));
    add("edge x1=0 |f|", 0, integrate_1d([&](double x2) { return std::abs(P(0.0, x2).f); }, eps, 1.0));
    add("edge x2=1 |f|", 0, integrate_1d([&](double x1) { return std::abs(P(x1, 1.0).f); }, 0.0, top));
    add("interior |f|", 0, integrate_interior([](const Partials& p) { return std::abs(p.f); }));

    add("corner |f(0,eps)|", 1, std::abs(P(0.0, eps).f));
    add("corner |f(1-eps,1)|", 1, std::abs(P(top, 1.0).f));
    add("hypotenuse |f|", 1,
        integrate_1d([&](double x1) { return std::abs(P(x1, x1 + eps).f); }, 0.0, top));
    add("edge x1=0 |f01|", 1, integrate_1d([&](double x2) { return std::abs(P(0.0, x2).f01); }, eps, 1.0));
    add("edge x2=1 |f10|", 1, integrate_1d([&](double x1) { return std::abs(P(x1, 1.0).f10); }, 0.0, top));
    add("interior |f10|+|f01|", 1, integrate_interior([](const Partials& p) {
            return std::abs(p.f10) + std::abs(p.f01);
        }));

    add("hypotenuse |f10|", 2,
        integrate_1d([&](double x1) { return std::abs(P(x1, x1 + eps).f10); }, 0.0, top));
    add("hypotenuse |f01|", 2,
        integrate_1d([&](double x1) { return std::abs(P(x1, x1 + eps).f01); }, 0.0, top));
    add("interior |f20|+|f02|+|f11|", 2, integrate_interior([](const Partials& p) {
            return std::abs(p.f20) + std::abs(p.f02) + std::abs(p.f11);
        }));
    return rep;
}

double extension_gap(double A, double eps, double tol) {
    if (eps == 0.0) return 0.0;
    auto [f1, f2] = extension_pair(A, eps);
    const DiagonalSingularIntegrand diff(
        "extension-gap", A, f2.B() + f1.B(),
        [f1 = std::move(f1), f2 = std::move(f2)](const Point2& x, double s) {
            return std::abs(f1.eval_gap(x, s) - f2.eval_gap(x, s));
        });
    return oracle_gap_band(diff, 0.0, eps, Sides::both, tol);
}

}  // namespace diagqmc
