#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "diagqmc/analysis.hpp"
#include "diagqmc/errors.hpp"
#include "diagqmc/integrands.hpp"
#include "diagqmc/lowdisc.hpp"
#include "diagqmc/quadrature.hpp"
#include "diagqmc/triangle.hpp"

namespace diagqmc::cli {

using Json = nlohmann::ordered_json;

namespace {

// A verification failure; the message names the failing invariant.
struct VerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct IntegrandOpts {
    std::string name = "proto";
    double A = 0.5;
    std::string h = "one";
    double value = 1.0;
};

void add_integrand_options(CLI::App* cmd, IntegrandOpts& o) {
    cmd->add_option("--integrand", o.name, "proto | modulated | const | linear | oscillating")
        ->check(CLI::IsMember({"proto", "modulated", "const", "linear", "oscillating"}));
    cmd->add_option("--A", o.A, "singularity exponent in (0,1)");
    cmd->add_option("--h", o.h, "modulator for --integrand modulated: one | poly | trig")
        ->check(CLI::IsMember({"one", "poly", "trig"}));
    cmd->add_option("--value", o.value, "value of the constant integrand");
}

DiagonalSingularIntegrand make_integrand(const IntegrandOpts& o) {
    if (o.name == "proto") return prototype(o.A);
    if (o.name == "modulated") return modulated(o.A, o.h);
    if (o.name == "const") return constant_integrand(o.value);
    if (o.name == "linear") return linear_integrand();
    if (o.name == "oscillating") return oscillating_counterexample(o.A);
    throw std::invalid_argument("unknown integrand '" + o.name + "'");
}

// Reference value used for abs_error: closed form, else the quadrature oracle
// for the power-modulated family. Free-form integrands report none.
std::optional<double> known_mu(const DiagonalSingularIntegrand& f) {
    if (f.exact_integral()) return f.exact_integral();
    if (f.modulator()) return oracle_integral(f);
    return std::nullopt;
}

Triangle parse_triangle(const std::string& text, std::optional<double> eps) {
    if (text == "reference") return Triangle::reference();
    if (text == "upper" || text == "lower") {
        if (!eps) throw std::invalid_argument("--triangle " + text + " needs --epsilon");
        const StripGeometry g = strip_triangles(*eps);
        return text == "upper" ? g.upper : g.lower;
    }
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error&) {
        throw std::invalid_argument("--triangle must be reference, upper, lower or JSON {\"a\":[x,y],...}");
    }
    auto vertex = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2) {
            throw std::invalid_argument(std::string("triangle JSON needs \"") + key + "\":[x,y]");
        }
        return Point2{j[key][0].get<double>(), j[key][1].get<double>()};
    };
    return Triangle(vertex("a"), vertex("b"), vertex("c"));
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
    file << text;
}

std::string points_csv(const PointSet& pts, std::uint64_t first_index) {
    std::string s = "index,x1,x2\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        s += std::to_string(first_index + i) + "," + fmt17(pts[i].x1) + "," + fmt17(pts[i].x2) + "\n";
    }
    return s;
}

std::string points_json(const PointSet& pts, std::uint64_t first_index) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        arr.push_back({{"index", first_index + i}, {"x1", pts[i].x1}, {"x2", pts[i].x2}});
    }
    return arr.dump() + "\n";
}

Json estimate_json(const Estimate& e, const DiagonalSingularIntegrand& f) {
    Json j;
    j["method"] = e.method;
    j["integrand"] = f.name();
    j["A"] = f.A();
    j["n"] = e.n_per_component;
    j["epsilon"] = e.epsilon;
    j["value"] = e.value;
    if (const auto mu = known_mu(f)) j["abs_error"] = std::abs(e.value - *mu);
    j["replicates"] = e.replicates;
    if (e.replicate_sd) j["replicate_sd"] = *e.replicate_sd;
    if (e.seed) j["seed"] = *e.seed;
    j["n_evaluations"] = e.n_evaluations;
    return j;
}

std::string sweep_csv(const std::vector<SweepRecord>& rs) {
    std::string s = "method,integrand,A,n_total,epsilon,estimate,abs_error,replicates,stderr\n";
    for (const auto& r : rs) {
        s += r.method + "," + r.integrand + "," + fmt17(r.A) + "," + std::to_string(r.n_total) + "," +
             fmt17(r.epsilon) + "," + fmt17(r.estimate) + "," + fmt17(r.abs_error) + "," +
             std::to_string(r.replicates) + "," + (r.std_error ? fmt17(*r.std_error) : "") + "\n";
    }
    return s;
}

Json sweep_records_json(const std::vector<SweepRecord>& rs) {
    Json arr = Json::array();
    for (const auto& r : rs) {
        Json j;
        j["method"] = r.method;
        j["integrand"] = r.integrand;
        j["A"] = r.A;
        j["n_total"] = r.n_total;
        j["epsilon"] = r.epsilon;
        j["estimate"] = r.estimate;
        j["abs_error"] = r.abs_error;
        j["replicates"] = r.replicates;
        j["stderr"] = r.std_error ? Json(*r.std_error) : Json(nullptr);
        arr.push_back(j);
    }
    return arr;
}

Json fit_json(const RateFit& fit) {
    return {{"slope", fit.slope},
            {"intercept", fit.intercept},
            {"r_squared", fit.r_squared},
            {"n_min", fit.n_min},
            {"n_max", fit.n_max}};
}

template <std::size_t N>
Json array_json(const std::array<double, N>& a) {
    Json j = Json::array();
    for (double v : a) j.push_back(v);
    return j;
}

// ---------------------------------------------------------------------------

struct PointsConfig {
    std::string generator;
    std::size_t n = 0;
    std::uint64_t start = 1;
    std::string triangle = "reference";
    std::optional<double> epsilon;
    std::optional<std::uint64_t> seed;
    bool randomize = false;
    std::string format = "csv";
    std::string out;
};

int cmd_points(const PointsConfig& c, std::ostream& out) {
    if (c.n < 1) throw std::invalid_argument("--n must be >= 1");
    PointSet pts;
    std::uint64_t first = 0;
    if (c.generator == "halton") {
        if (c.randomize != c.seed.has_value()) {
            throw std::invalid_argument("halton: --randomize and --seed go together");
        }
        pts = halton_points(c.n, c.start);
        first = c.start;
        if (c.randomize) {
            CounterRng rng(*c.seed);
            const Point2 shift{rng.next_unit(), rng.next_unit()};
            pts = cranley_patterson_shift(pts, shift);
        }
    } else if (c.generator == "tvdc") {
        if (c.seed) throw std::invalid_argument("tvdc points are deterministic; drop --seed");
        pts = tvdc_points(parse_triangle(c.triangle, c.epsilon), c.n);
    } else {
        if (!c.seed) throw std::invalid_argument("uniform points need --seed");
        pts = uniform_points(c.n, *c.seed);
    }
    emit(c.format == "json" ? points_json(pts, first) : points_csv(pts, first), c.out, out);
    return exit_ok;
}

struct EstimatorConfig {
    IntegrandOpts integrand;
    std::string method;
    std::size_t n = 4096;
    double c = 1.0;
    double eps_max = default_eps_max;
    std::optional<double> epsilon;
    std::string mode = "halton";
    int replicates = 1;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    std::string out;
};

bool randomized(const std::string& method, const std::string& mode) {
    return method == "mc" || (method == "transform" && mode != "halton");
}

void check_seed(bool needs_seed, const std::optional<std::uint64_t>& seed) {
    if (needs_seed && !seed) throw std::invalid_argument("randomised runs need an explicit --seed");
    if (!needs_seed && seed) throw std::invalid_argument("--seed given for a deterministic run");
}

int cmd_integrate(const EstimatorConfig& c, std::ostream& out) {
    if (c.n < 1) throw std::invalid_argument("--n must be >= 1");
    check_seed(randomized(c.method, c.mode), c.seed);
    const auto f = make_integrand(c.integrand);
    Estimate e;
    if (c.method == "strip") {
        e = estimate_strip(f, c.n, c.c, c.epsilon, c.eps_max);
    } else if (c.method == "extension") {
        const double eps = c.epsilon ? *c.epsilon : epsilon_schedule(std::max<std::size_t>(c.n, 2), c.c, c.eps_max);
        e = estimate_extension(f, c.n, eps);
    } else if (c.method == "transform") {
        TransformMode mode = TransformMode::halton();
        if (c.mode == "rqmc") mode = TransformMode::rqmc(c.replicates);
        if (c.mode == "mc") mode = TransformMode::mc(c.replicates);
        e = estimate_transform(f, c.n, mode, c.seed);
    } else {
        e = estimate_mc(f, c.n, *c.seed, c.replicates);
    }
    const Json j = estimate_json(e, f);
    std::string text;
    if (c.format == "csv") {
        std::string header, row;
        for (auto it = j.begin(); it != j.end(); ++it) {
            header += (header.empty() ? "" : ",") + it.key();
            const std::string v = it->is_string() ? it->get<std::string>()
                                  : it->is_number_float() ? fmt17(it->get<double>())
                                                          : it->dump();
            row += (row.empty() ? "" : ",") + v;
        }
        text = header + "\n" + row + "\n";
    } else {
        text = j.dump(2) + "\n";
    }
    emit(text, c.out, out);
    return exit_ok;
}

struct SweepConfig {
    IntegrandOpts integrand;
    std::string method;
    std::string n_grid;
    double c = 1.0;
    double eps_max = default_eps_max;
    int replicates = 1;
    std::optional<std::uint64_t> seed;
    double synthetic_rate = 0.5;
    std::string format = "csv";
    std::string out;
    std::string fit_out;
};

int cmd_sweep(const SweepConfig& c, std::ostream& out, std::ostream& err) {
    const SweepMethod method = parse_sweep_method(c.method);
    const bool needs_seed = method == SweepMethod::transform_rqmc ||
                            method == SweepMethod::transform_mc || method == SweepMethod::mc;
    check_seed(needs_seed, c.seed);
    if (method == SweepMethod::transform_rqmc && c.replicates < 2) {
        throw std::invalid_argument("transform-rqmc sweeps need --replicates >= 2");
    }
    const std::vector<std::size_t> grid = parse_n_grid(c.n_grid);
    const auto f = make_integrand(c.integrand);
    SweepOptions opts;
    opts.c = c.c;
    opts.eps_max = c.eps_max;
    opts.replicates = c.replicates;
    opts.seed = c.seed.value_or(0);
    opts.synthetic_rate = c.synthetic_rate;
    if (method != SweepMethod::synthetic) {
        const auto mu = known_mu(f);
        if (!mu) throw UnsupportedIntegrand("sweeps need an integrand with a known integral");
        opts.mu_ref = mu;
    }
    const auto records = run_sweep(method, f, grid, opts);

    std::optional<RateFit> fit;
    std::optional<std::string> degenerate;
    if (records.size() >= 3) {
        try {
            fit = fit_rate(records);
        } catch (const DegenerateFit& e) {
            degenerate = e.what();
        }
    } else {
        err << "sweep: fewer than 3 records, no rate fit\n";
    }

    if (c.format == "json") {
        Json doc;
        doc["records"] = sweep_records_json(records);
        doc["fit"] = fit ? fit_json(*fit) : Json(nullptr);
        emit(doc.dump(2) + "\n", c.out, out);
    } else {
        emit(sweep_csv(records), c.out, out);
        if (fit) {
            const std::string fj = fit_json(*fit).dump() + "\n";
            if (c.fit_out.empty()) {
                out << fj;
            } else {
                emit(fj, c.fit_out, out);
            }
        }
    }
    if (degenerate) {
        err << "sweep: " << *degenerate << "\n";
        return exit_degenerate;
    }
    return exit_ok;
}

struct VerifyConfig {
    IntegrandOpts integrand;
    std::string suite;
    int depth = 5;
    std::vector<int> grids;
    std::optional<double> A1;
    std::optional<double> A2;
    std::string half = "upper";
    std::vector<double> epsilons;
    std::string out;
};

int cmd_verify(const VerifyConfig& c, std::ostream& out, std::ostream& err) {
    Json j;
    j["suite"] = c.suite;
    bool pass = false;
    std::string failing;

    if (c.suite == "def1") {
        const auto f = make_integrand(c.integrand);
        const auto rep = def1_check(f, c.grids.empty() ? std::vector<int>{32, 64, 128} : c.grids);
        j["integrand"] = f.name();
        j["A"] = f.A();
        j["B"] = rep.B;
        j["band"] = rep.band;
        j["max_ratio"] = array_json(rep.max_ratio);
        Json grids = Json::array();
        for (const auto& g : rep.grids) grids.push_back({{"size", g.size}, {"max_ratio", array_json(g.max_ratio)}});
        j["grids"] = grids;
        j["non_finite"] = rep.non_finite;
        pass = rep.pass;
        failing = "derivative ratio exceeds B (1 + slack)";
    } else if (c.suite == "def2") {
        const auto f = make_integrand(c.integrand);
        const double A1 = c.A1.value_or(f.A());
        const double A2 = c.A2.value_or(0.5 * f.A());
        const auto g = transformed(f, c.half == "lower" ? Half::lower : Half::upper);
        const auto rep = def2_check(g, A1, A2, c.grids.empty() ? std::vector<int>{32, 64, 128} : c.grids);
        j["integrand"] = f.name();
        j["A"] = f.A();
        j["A1"] = A1;
        j["A2"] = A2;
        j["half"] = c.half;
        j["constant"] = array_json(rep.constant);
        Json grids = Json::array();
        for (const auto& gr : rep.grids) {
            grids.push_back({{"size", gr.size}, {"u_min", gr.u_min}, {"max_ratio", array_json(gr.max_ratio)}});
        }
        j["grids"] = grids;
        j["non_finite"] = rep.non_finite;
        pass = rep.pass;
        failing = "lower-edge ratio grows under grid refinement";
    } else if (c.suite == "stratification") {
        const auto rep = stratification_check(Triangle::reference(), c.depth);
        j["depth"] = rep.depth;
        j["n_points"] = rep.n_points;
        j["n_cells"] = rep.n_cells;
        j["occupied_cells"] = rep.occupied_cells;
        j["max_per_cell"] = rep.max_per_cell;
        pass = rep.pass;
        failing = "some level cell does not hold exactly one point";
    } else if (c.suite == "truncation") {
        const auto f = make_integrand(c.integrand);
        if (!f.singular()) throw std::invalid_argument("truncation suite needs a singular integrand");
        const std::vector<double> eps = c.epsilons.empty() ? std::vector<double>{1e-1, 1e-2, 1e-3} : c.epsilons;
        Json rows = Json::array();
        pass = true;
        for (double e : eps) {
            const double mass = std::abs(oracle_strip_integral(f, e));
            const double bound = truncation_bound(f.B0(), f.A(), e);
            pass = pass && mass <= bound;
            rows.push_back({{"epsilon", e}, {"strip_integral", mass}, {"bound", bound}, {"ratio", bound / mass}});
        }
        j["integrand"] = f.name();
        j["A"] = f.A();
        j["B0"] = f.B0();
        j["rows"] = rows;
        failing = "strip integral exceeds the truncation bound";
    } else if (c.suite == "extension-gap") {
        const double A = c.integrand.A;
        const std::vector<double> eps = c.epsilons.empty() ? std::vector<double>{1e-1, 1e-2, 1e-3} : c.epsilons;
        Json rows = Json::array();
        double lo = INFINITY, hi = 0.0;
        bool above = true;
        for (double e : eps) {
            const double gap = extension_gap(A, e);
            const double upper_band = 2.0 * (std::pow(e, 1.0 - A) / (1.0 - A) - std::pow(e, 2.0 - A) / (2.0 - A));
            const double ratio = gap / std::pow(e, 1.0 - A);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            above = above && gap >= upper_band;
            rows.push_back({{"epsilon", e}, {"gap", gap}, {"ratio", ratio}, {"upper_band_lower_bound", upper_band}});
        }
        j["A"] = A;
        j["rows"] = rows;
        j["spread"] = hi / lo - 1.0;
        pass = above && hi / lo - 1.0 <= 0.25;
        failing = above ? "gap / eps^{1-A} varies by more than 25%" : "gap below the upper-band lower bound";
    } else {  // variation
        const auto f = make_integrand(c.integrand);
        const std::vector<double> eps = c.epsilons.empty() ? std::vector<double>{1e-1, 1e-2} : c.epsilons;
        if (eps.size() != 2) throw std::invalid_argument("variation suite takes exactly two --epsilon values");
        const auto r0 = variation_terms(f, eps[0]);
        const auto r1 = variation_terms(f, eps[1]);
        const double growth = r1.group_total[2] / r0.group_total[2];
        const double predicted = std::pow(eps[0] / eps[1], f.A() + 1.0);
        Json reports = Json::array();
        for (const auto* r : {&r0, &r1}) {
            Json terms = Json::array();
            for (const auto& t : r->terms) terms.push_back({{"name", t.name}, {"group", t.group}, {"value", t.value}});
            reports.push_back({{"epsilon", r->epsilon}, {"group_total", array_json(r->group_total)}, {"terms", terms}});
        }
        j["integrand"] = f.name();
        j["A"] = f.A();
        j["reports"] = reports;
        j["growth"] = growth;
        j["predicted"] = predicted;
        pass = std::abs(growth / predicted - 1.0) <= 0.25;
        failing = "eps^{-A-1} group does not scale as predicted within 25%";
    }
    j["pass"] = pass;
    emit(j.dump(2) + "\n", c.out, out);
    if (!pass) {
        err << "verify " << c.suite << ": FAIL: " << failing << "\n";
        return exit_verification_failed;
    }
    return exit_ok;
}

void add_estimator_options(CLI::App* cmd, EstimatorConfig& c) {
    add_integrand_options(cmd, c.integrand);
    cmd->add_option("--method", c.method, "strip | extension | transform | mc")
        ->required()
        ->check(CLI::IsMember({"strip", "extension", "transform", "mc"}));
    cmd->add_option("--n", c.n, "points per component (default 4096)");
    cmd->add_option("--c", c.c, "constant of the eps schedule");
    cmd->add_option("--eps-max", c.eps_max, "clamp of the eps schedule");
    cmd->add_option("--epsilon", c.epsilon, "fixed eps (strip, extension)");
    cmd->add_option("--mode", c.mode, "transform mode: halton | rqmc | mc")
        ->check(CLI::IsMember({"halton", "rqmc", "mc"}));
    cmd->add_option("--replicates", c.replicates, "replicates for randomised modes");
    cmd->add_option("--seed", c.seed, "seed, required by randomised modes");
    cmd->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", c.out, "output path (default stdout)");
}

}  // namespace

std::vector<std::size_t> parse_n_grid(const std::string& text) {
    auto to_size = [&](const std::string& s) {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("n grid: cannot parse '" + s + "' in '" + text + "'");
        }
        if (pos != s.size() || s.empty() || s[0] == '-') {
            throw std::invalid_argument("n grid: cannot parse '" + s + "' in '" + text + "'");
        }
        return static_cast<std::size_t>(v);
    };
    std::vector<std::size_t> grid;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const std::string lo = text.substr(0, dots);
        const std::string hi = text.substr(dots + 2);
        const auto c1 = lo.find('^');
        const auto c2 = hi.find('^');
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::invalid_argument("n grid: range syntax is b^lo..b^hi, got '" + text + "'");
        }
        const std::size_t base = to_size(lo.substr(0, c1));
        if (to_size(hi.substr(0, c2)) != base) {
            throw std::invalid_argument("n grid: both ends of '" + text + "' need the same base");
        }
        const std::size_t e0 = to_size(lo.substr(c1 + 1));
        const std::size_t e1 = to_size(hi.substr(c2 + 1));
        if (base < 2 || e1 < e0) throw std::invalid_argument("n grid: need base >= 2 and lo <= hi in '" + text + "'");
        std::size_t v = 1;
        for (std::size_t e = 0; e <= e1; ++e) {
            if (e >= e0) grid.push_back(v);
            if (e < e1) {
                if (v > (std::size_t{1} << 40) / base) throw std::invalid_argument("n grid: '" + text + "' is too large");
                v *= base;
            }
        }
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) grid.push_back(to_size(item));
    }
    if (grid.empty()) throw std::invalid_argument("n grid: empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 1) throw std::invalid_argument("n grid: entries must be >= 1");
        if (i > 0 && grid[i] <= grid[i - 1]) throw std::invalid_argument("n grid: entries must be strictly ascending");
    }
    return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quadrature for integrands singular along the diagonal of the unit square", "diagqmc"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);

    PointsConfig pc;
    auto* points = app.add_subcommand("points", "write a point set as CSV");
    points->add_option("--generator", pc.generator, "halton | tvdc | uniform")
        ->required()
        ->check(CLI::IsMember({"halton", "tvdc", "uniform"}));
    points->add_option("--n", pc.n, "number of points")->required();
    points->add_option("--start", pc.start, "first halton index (>= 1)");
    points->add_option("--triangle", pc.triangle, "reference | upper | lower | JSON");
    points->add_option("--epsilon", pc.epsilon, "strip half-width for --triangle upper|lower");
    points->add_option("--seed", pc.seed, "seed (uniform, or halton with --randomize)");
    points->add_flag("--randomize", pc.randomize, "Cranley-Patterson shift of the halton set");
    points->add_option("--format", pc.format)->check(CLI::IsMember({"csv", "json"}));
    points->add_option("--out", pc.out, "output path (default stdout)");

    EstimatorConfig ic;
    auto* integrate = app.add_subcommand("integrate", "run one estimator, print its result as JSON");
    add_estimator_options(integrate, ic);

    SweepConfig sc;
    auto* sweep = app.add_subcommand("sweep", "convergence sweep: CSV records plus a rate fit");
    add_integrand_options(sweep, sc.integrand);
    sweep->add_option("--method", sc.method,
                      "strip | extension | transform[-halton|-rqmc|-mc] | mc | synthetic")
        ->required();
    sweep->add_option("--n-grid", sc.n_grid, "b^lo..b^hi or a comma list")->required();
    sweep->add_option("--c", sc.c);
    sweep->add_option("--eps-max", sc.eps_max);
    sweep->add_option("--replicates", sc.replicates);
    sweep->add_option("--seed", sc.seed);
    sweep->add_option("--synthetic-rate", sc.synthetic_rate, "exponent r of err = n^-r (synthetic)");
    sweep->add_option("--format", sc.format)->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", sc.out, "records path (default stdout)");
    sweep->add_option("--fit-out", sc.fit_out, "fit JSON path (default: appended to stdout)");

    VerifyConfig vc;
    auto* verify = app.add_subcommand("verify", "run a verifier, print a JSON report");
    add_integrand_options(verify, vc.integrand);
    verify->add_option("--suite", vc.suite)
        ->required()
        ->check(CLI::IsMember({"def1", "def2", "stratification", "truncation", "extension-gap", "variation"}));
    verify->add_option("--depth", vc.depth, "stratification depth");
    verify->add_option("--grid", vc.grids, "grid sizes (def1, def2)")->delimiter(',');
    verify->add_option("--A1", vc.A1);
    verify->add_option("--A2", vc.A2);
    verify->add_option("--half", vc.half)->check(CLI::IsMember({"upper", "lower"}));
    verify->add_option("--epsilon", vc.epsilons, "epsilon values")->delimiter(',');
    verify->add_option("--out", vc.out, "output path (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config_error;
    }

    try {
        if (*points) return cmd_points(pc, out);
        if (*integrate) return cmd_integrate(ic, out);
        if (*sweep) return cmd_sweep(sc, out, err);
        return cmd_verify(vc, out, err);
    } catch (const UnsupportedIntegrand& e) {
        err << "error: " << e.what() << "\n";
        return exit_unsupported;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const DegenerateFit& e) {
        err << "error: " << e.what() << "\n";
        return exit_degenerate;
    } catch (const OracleFailure& e) {
        err << "error: " << e.what() << "\n";
        return exit_degenerate;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_verification_failed;
    }
}

}  // namespace diagqmc::cli
