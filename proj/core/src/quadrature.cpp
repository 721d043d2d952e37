#include "diagqmc/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "diagqmc/errors.hpp"
#include "detail/summation.hpp"

namespace diagqmc {

double epsilon_schedule(std::size_t n, double c, double eps_max) {
    if (n < 2) throw std::invalid_argument("epsilon_schedule: n must be >= 2");
    if (!(c > 0.0)) throw std::invalid_argument("epsilon_schedule: c must be positive");
    if (!(eps_max > 0.0 && eps_max < 1.0)) {
        throw std::invalid_argument("epsilon_schedule: eps_max must lie in (0,1)");
    }
    const double nn = static_cast<double>(n);
    return std::min(c * std::sqrt(std::log(nn) / nn), eps_max);
}

StripGeometry strip_triangles(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("strip_triangles: epsilon must lie in (0,1)");
    }
    return {eps, Triangle({0.0, eps}, {0.0, 1.0}, {1.0 - eps, 1.0}),
            Triangle({eps, 0.0}, {1.0, 0.0}, {1.0, 1.0 - eps}), 0.5 * (1.0 - eps) * (1.0 - eps)};
}

double truncation_bound(double B, double A, double eps) {
    if (!(B > 0.0)) throw std::invalid_argument("truncation_bound: B must be positive");
    if (!(A > 0.0 && A < 1.0)) throw std::invalid_argument("truncation_bound: A must lie in (0,1)");
    if (!(eps >= 0.0 && eps < 1.0)) {
        throw std::invalid_argument("truncation_bound: epsilon must lie in [0,1)");
    }
    return 2.0 * B * std::pow(eps, 1.0 - A) / (1.0 - A);
}

double triangle_qmc(const Triangle& t, std::size_t n,
                    const std::function<double(const Point2&)>& fn) {
    detail::NeumaierSum sum;
    for (const auto& p : tvdc_points(t, n)) sum.add(fn(p));
    return t.area() * sum.value() / static_cast<double>(n);
}

Estimate estimate_strip(const DiagonalSingularIntegrand& f, std::size_t n, double c,
                        std::optional<double> eps_override, double eps_max) {
    if (n < 1) throw std::invalid_argument("estimate_strip: n must be >= 1");
    const double eps = eps_override ? *eps_override : epsilon_schedule(2 * n, c, eps_max);
    const StripGeometry geo = strip_triangles(eps);
    const Triangle ref = Triangle::reference();
    const PointSet base = tvdc_points(ref, n);

    auto component = [&](const Triangle& dst) {
        detail::NeumaierSum sum;
        for (const auto& p : base) sum.add(f(map_point(ref, dst, p)));
        return geo.volume_each * sum.value() / static_cast<double>(n);
    };
    const double up = component(geo.upper);
    const double down = component(geo.lower);

    Estimate e;
    e.value = up + down;
    e.n_per_component = n;
    e.n_evaluations = 2 * n;
    e.epsilon = eps;
    e.method = "strip";
    e.components = std::array<double, 2>{up, down};
    return e;
}

double extension_bridge(double A, double eps, double s) {
    const double r = std::abs(s);
    if (r >= eps) return std::pow(r, -A);
    const double e = std::pow(eps, -A);
    const double a = e * (1.0 + 0.5 * A);
    const double b = -0.5 * A * e / (eps * eps);
    return a + b * s * s;
}

Estimate estimate_extension(const DiagonalSingularIntegrand& f, std::size_t n, double eps,
                            const SequenceSpec& seq) {
    if (!f.modulator()) {
        throw UnsupportedIntegrand("extension method needs a |x1-x2|^{-A} h(x) integrand, got '" +
                                   f.name() + "'");
    }
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("estimate_extension: epsilon must lie in (0,1)");
    }
    const auto& h = f.modulator()->value;
    const double A = f.A();
    detail::NeumaierSum sum;
    for (const auto& x : generate_square_points(seq, n)) {
        const double psi = A == 0.0 ? 1.0 : extension_bridge(A, eps, x.x2 - x.x1);
        sum.add(h(x) * psi);
    }
    Estimate e;
    e.value = sum.value() / static_cast<double>(n);
    e.n_per_component = n;
    e.n_evaluations = n;
    e.epsilon = eps;
    e.method = "extension";
    if (seq.kind == SequenceKind::uniform_random) e.seed = seq.seed;
    return e;
}

std::string to_string(TransformMode::Kind kind) {
    switch (kind) {
        case TransformMode::Kind::halton: return "halton";
        case TransformMode::Kind::rqmc: return "rqmc";
        case TransformMode::Kind::mc: return "mc";
    }
    return "?";
}

namespace {

std::array<double, 2> transform_halves(const TransformedIntegrand& up, const TransformedIntegrand& lo,
                                       const PointSet& pts) {
    detail::NeumaierSum su;
    detail::NeumaierSum sl;
    for (const auto& u : pts) {
        su.add(up(u));
        sl.add(lo(u));
    }
    const double n = static_cast<double>(pts.size());
    return {0.5 * su.value() / n, 0.5 * sl.value() / n};
}

double sample_sd(const std::vector<double>& v, double mean) {
    detail::NeumaierSum ss;
    for (double x : v) ss.add((x - mean) * (x - mean));
    return std::sqrt(ss.value() / static_cast<double>(v.size() - 1));
}

double mean_of(const std::vector<double>& v) {
    detail::NeumaierSum s;
    for (double x : v) s.add(x);
    return s.value() / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> transform_replicates(const DiagonalSingularIntegrand& f, std::size_t n,
                                         TransformMode mode, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("estimate_transform: n must be >= 1");
    if (mode.replicates < 1) throw std::invalid_argument("estimate_transform: replicates must be >= 1");
    const auto up = transformed(f, Half::upper);
    const auto lo = transformed(f, Half::lower);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(mode.replicates));
    const PointSet halton = mode.kind == TransformMode::Kind::rqmc ? halton_points(n) : PointSet{};
    for (int r = 0; r < mode.replicates; ++r) {
        const std::uint64_t rs = derive_seed(seed, static_cast<std::uint64_t>(r));
        PointSet pts;
        if (mode.kind == TransformMode::Kind::rqmc) {
            CounterRng rng(rs);
            const Point2 shift{rng.next_unit(), rng.next_unit()};
            pts = cranley_patterson_shift(halton, shift);
        } else {
            pts = uniform_points(n, rs);
        }
        const auto halves = transform_halves(up, lo, pts);
        values.push_back(halves[0] + halves[1]);
    }
    return values;
}

Estimate estimate_transform(const DiagonalSingularIntegrand& f, std::size_t n, TransformMode mode,
                            std::optional<std::uint64_t> seed) {
    if (n < 1) throw std::invalid_argument("estimate_transform: n must be >= 1");
    Estimate e;
    e.n_per_component = n;
    e.n_evaluations = 2 * n;
    e.method = "transform-" + to_string(mode.kind);
    if (mode.kind == TransformMode::Kind::halton) {
        const auto halves =
            transform_halves(transformed(f, Half::upper), transformed(f, Half::lower), halton_points(n));
        e.value = halves[0] + halves[1];
        e.components = halves;
        return e;
    }
    if (!seed) throw std::invalid_argument("estimate_transform: randomised modes need a seed");
    if (mode.kind == TransformMode::Kind::rqmc && mode.replicates < 2) {
        throw std::invalid_argument("estimate_transform: rqmc needs at least 2 replicates");
    }
    const auto values = transform_replicates(f, n, mode, *seed);
    e.value = mean_of(values);
    e.replicates = mode.replicates;
    if (values.size() > 1) e.replicate_sd = sample_sd(values, e.value);
    e.seed = seed;
    e.n_evaluations = 2 * n * values.size();
    return e;
}

std::vector<double> mc_replicates(const DiagonalSingularIntegrand& f, std::size_t n,
                                  std::uint64_t seed, int replicates) {
    if (n < 1) throw std::invalid_argument("estimate_mc: n must be >= 1");
    if (replicates < 1) throw std::invalid_argument("estimate_mc: replicates must be >= 1");
    std::vector<double> values;
    for (int r = 0; r < replicates; ++r) {
        const std::uint64_t rs = replicates == 1 ? seed : derive_seed(seed, static_cast<std::uint64_t>(r));
        detail::NeumaierSum sum;
        for (const auto& x : uniform_points(n, rs)) sum.add(f(x));
        values.push_back(sum.value() / static_cast<double>(n));
    }
    return values;
}

Estimate estimate_mc(const DiagonalSingularIntegrand& f, std::size_t n, std::uint64_t seed,
                     int replicates) {
    const auto values = mc_replicates(f, n, seed, replicates);
    Estimate e;
    e.value = mean_of(values);
    e.n_per_component = n;
    e.n_evaluations = n * values.size();
    e.method = "mc";
    e.replicates = replicates;
    if (replicates > 1) e.replicate_sd = sample_sd(values, e.value);
    e.seed = seed;
    return e;
}

}  // namespace diagqmc
