// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "diagqmc/analysis.hpp"
#include "diagqmc/errors.hpp"
#include "diagqmc/integrands.hpp"
#include "diagqmc/quadrature.hpp"
#include "diagqmc/triangle.hpp"

using namespace diagqmc;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::vector<std::size_t> powers(std::size_t base, int lo, int hi) {
    std::vector<std::size_t> v;
    std::size_t x = 1;
    for (int k = 0; k <= hi; ++k) {
        if (k >= lo) v.push_back(x);
        x *= base;
    }
    return v;
}

const double As[] = {0.3, 0.5, 0.7};

Outcome closed_form_recovery() {
    Outcome o{true, ""};
    for (double A : {0.25, 0.5, 0.75}) {
        const auto f = prototype(A);
        const double mu = 2.0 / ((1.0 - A) * (2.0 - A));
        const double dc = std::abs(oracle_integral(f, 1e-11, OraclePath::closed_form) - mu);
        const double dq = std::abs(oracle_integral(f, 1e-11, OraclePath::quadrature) - mu);
        o.pass = o.pass && dc <= 1e-8 && dq <= 1e-8;
        o.detail += "A=" + fmt("%.2f", A) + " |closed-mu|=" + fmt("%.1e", dc) + " |quad-mu|=" + fmt("%.1e", dq) + "; ";
    }
    return o;
}

Outcome strip_rate() {
    Outcome o{true, ""};
    for (double A : As) {
        const auto recs = run_sweep(SweepMethod::strip, prototype(A), powers(4, 4, 8));
        const auto fit = fit_rate(recs);
        const double limit = -(1.0 - A) / 2.0 + 0.10;
        o.pass = o.pass && fit.slope <= limit && fit.r_squared >= 0.9;
        o.detail += "A=" + fmt("%.1f", A) + " slope=" + fmt("%.3f", fit.slope) + " (<= " + fmt("%.2f", limit) +
                    ") r2=" + fmt("%.4f", fit.r_squared) + "; ";
    }
    return o;
}

Outcome transform_rate() {
    Outcome o{true, ""};
    for (double A : As) {
        const auto f = prototype(A);
        const auto fit = fit_rate(run_sweep(SweepMethod::transform_halton, f, powers(2, 8, 16)));
        const double limit = -(1.0 - A) + 0.10;
        // equal total budget 2^15: both methods use 2^14 points per component
        const double mu = *f.exact_integral();
        const double et = std::abs(estimate_transform(f, 1 << 14, TransformMode::halton()).value - mu);
        const double es = std::abs(estimate_strip(f, 1 << 14, 1.0).value - mu);
        o.pass = o.pass && fit.slope <= limit && et < es;
        o.detail += "A=" + fmt("%.1f", A) + " slope=" + fmt("%.3f", fit.slope) + " (<= " + fmt("%.2f", limit) +
                    ") err@2^15 transform=" + fmt("%.2e", et) + " strip=" + fmt("%.2e", es) + "; ";
    }
    return o;
}

Outcome truncation_inequality() {
    Outcome o{true, ""};
    for (double A : As) {
        for (double eps : {1e-1, 1e-2, 1e-3}) {
            const double v = oracle_strip_integral(prototype(A), eps);
            const double bound = 2.0 * std::pow(eps, 1.0 - A) / (1.0 - A);
            o.pass = o.pass && v <= bound;
        }
    }
    const double ratio = 2.0 * std::pow(1e-3, 0.5) / 0.5 / oracle_strip_integral(prototype(0.5), 1e-3);
    o.pass = o.pass && std::abs(ratio - 1.0) <= 0.10;
    o.detail = "bound holds at 9 (A, eps) pairs: " + std::string(o.pass ? "yes" : "no") +
               "; bound/value at A=0.5, eps=1e-3: " + fmt("%.5f", ratio);
    return o;
}

Outcome variation_scaling() {
    const auto f = prototype(0.5);
    const double growth = variation_terms(f, 1e-2).group_total[2] / variation_terms(f, 1e-1).group_total[2];
    const double predicted = std::pow(10.0, 1.5);
    return {std::abs(growth / predicted - 1.0) <= 0.25,
            "group growth " + fmt("%.3f", growth) + " vs 10^1.5=" + fmt("%.3f", predicted)};
}

Outcome extension_no_improvement() {
    Outcome o{true, ""};
    for (double A : As) {
        const auto strip = fit_rate(run_sweep(SweepMethod::strip, prototype(A), powers(4, 4, 8)));
        const auto ext = fit_rate(run_sweep(SweepMethod::extension, modulated(A, "one"), powers(2, 8, 16)));
        o.pass = o.pass && ext.slope >= strip.slope - 0.10;
        o.detail += "A=" + fmt("%.1f", A) + " extension=" + fmt("%.3f", ext.slope) + " strip=" + fmt("%.3f", strip.slope) + "; ";
    }
    return o;
}

Outcome gap_rate() {
    double lo = INFINITY, hi = 0.0;
    std::string d;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        const double r = extension_gap(0.5, eps) / std::sqrt(eps);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        d += fmt("%.4f", r) + " ";
    }
    return {hi / lo - 1.0 <= 0.25, "gap/eps^0.5 = " + d + "spread " + fmt("%.3f", hi / lo - 1.0)};
}

Outcome lower_edge_bounds() {
    Outcome o{true, ""};
    for (const char* id : {"one", "poly", "trig"}) {
        for (Half h : {Half::upper, Half::lower}) {
            const auto rep = def2_check(transformed(modulated(0.5, id), h), 0.5, 0.25, {32, 64, 128});
            o.pass = o.pass && rep.pass;
            if (h == Half::upper) {
                o.detail += std::string(id) + " constants " + fmt("%.3f", rep.constant[0]) + "," +
                            fmt("%.3f", rep.constant[1]) + "," + fmt("%.3f", rep.constant[2]) + "," +
                            fmt("%.3f", rep.constant[3]) + "; ";
            }
        }
    }
    return o;
}

Outcome stratification() {
    Outcome o{true, "cells filled once at K=1..6:"};
    for (int K = 1; K <= 6; ++K) {
        const bool p = stratification_check(Triangle::reference(), K).pass;
        o.pass = o.pass && p;
        o.detail += " " + std::to_string(K) + (p ? "y" : "n");
    }
    return o;
}

Outcome smooth_triangle() {
    const auto t = Triangle::reference();
    auto err = [&](std::size_t n) {
        return std::abs(triangle_qmc(t, n, [](const Point2& p) { return p.x1 + p.x2; }) - 1.0 / 3.0);
    };
    const std::size_t n8 = 1 << 16;
    const double e8 = err(n8);
    const double bound = 50.0 * std::log(static_cast<double>(n8)) / static_cast<double>(n8);
    Outcome o{e8 <= bound, "err@4^8=" + fmt("%.2e", e8) + " (<= " + fmt("%.2e", bound) + "); "};

    std::vector<double> n, e;
    for (std::size_t k : powers(4, 4, 8)) {
        n.push_back(static_cast<double>(k));
        e.push_back(err(k));
    }
    try {
        const auto fit = fit_power_law(n, e);
        o.pass = o.pass && fit.slope <= -0.85;
        o.detail += "slope over 4^4..4^8 = " + fmt("%.3f", fit.slope);
        return o;
    } catch (const DegenerateFit&) {
        o.detail += "4^4..4^8 are exact hits (degenerate fit); ";
    }
    // exact hits at full levels: refit on the perturbed grid 4^k - 1
    n.clear();
    e.clear();
    for (std::size_t k : powers(4, 4, 8)) {
        n.push_back(static_cast<double>(k - 1));
        e.push_back(err(k - 1));
    }
    const auto fit = fit_power_law(n, e);
    o.pass = o.pass && fit.slope <= -0.85;
    o.detail += "slope over 4^k-1, k=4..8 = " + fmt("%.3f", fit.slope) + " r2=" + fmt("%.4f", fit.r_squared);
    return o;
}

Outcome rqmc_unbiased() {
    const auto f = prototype(0.3);
    const double mu = oracle_integral(f);
    const auto e = estimate_transform(f, 1 << 12, TransformMode::rqmc(32), 7);
    const double tol = 3.0 * *e.replicate_sd / std::sqrt(32.0);
    const double d = std::abs(e.value - mu);
    return {d <= tol, "|mean-mu|=" + fmt("%.3e", d) + " (<= " + fmt("%.3e", tol) + ")"};
}

Outcome determinism() {
    const std::vector<std::vector<std::string>> commands{
        {"points", "--generator", "halton", "--n", "1000"},
        {"points", "--generator", "tvdc", "--n", "1000", "--triangle", "upper", "--epsilon", "0.05"},
        {"points", "--generator", "uniform", "--n", "1000", "--seed", "3"},
        {"sweep", "--method", "strip", "--A", "0.5", "--n-grid", "4^3..4^6"},
        {"sweep", "--method", "extension", "--A", "0.5", "--n-grid", "2^6..2^10"},
        {"sweep", "--method", "transform", "--A", "0.5", "--n-grid", "2^6..2^12"},
        {"sweep", "--method", "transform-rqmc", "--A", "0.3", "--n-grid", "2^6..2^10", "--replicates", "8", "--seed", "11"},
        {"integrate", "--method", "strip", "--A", "0.5", "--n", "4096", "--format", "csv"},
        {"verify", "--suite", "stratification", "--depth", "4"}};
    int same = 0;
    for (const auto& args : commands) {
        std::ostringstream a, b, ea, eb;
        const int ca = cli::run(args, a, ea);
        const int cb = cli::run(args, b, eb);
        if (ca == 0 && cb == 0 && a.str() == b.str() && !a.str().empty()) ++same;
    }
    return {same == static_cast<int>(commands.size()),
            std::to_string(same) + "/" + std::to_string(commands.size()) + " commands byte-identical"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double time_limit = 0.0;  // seconds, 0 for none
    };
    const std::vector<Criterion> criteria{
        {"closed-form recovery", closed_form_recovery, 10.0},
        {"strip method rate", strip_rate, 120.0},
        {"transform method rate and budget", transform_rate, 120.0},
        {"truncation inequality", truncation_inequality},
        {"variation scaling", variation_scaling},
        {"extension gives no better rate", extension_no_improvement},
        {"extension gap rate", gap_rate},
        {"lower-edge bounds", lower_edge_bounds},
        {"stratification", stratification},
        {"smooth triangle benchmark", smooth_triangle},
        {"rqmc unbiasedness", rqmc_unbiased},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criteria[i].time_limit > 0.0 && secs >= criteria[i].time_limit) {
            o.pass = false;
            o.detail += " over the time limit";
        }
        failed += !o.pass;
        std::printf("[%s] %2zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
