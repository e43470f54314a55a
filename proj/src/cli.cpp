#include "fraclog/cli.hpp"

#include "fraclog/dirichlet.hpp"
#include "fraclog/energy.hpp"
#include "fraclog/errors.hpp"
#include "fraclog/extension.hpp"
#include "fraclog/kernels.hpp"
#include "fraclog/pointwise.hpp"
#include "fraclog/spectral.hpp"
#include "fraclog/specfun.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fraclog::cli {

using nlohmann::json;

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a(data);
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// exit 2 after the files are written
class Uncertified : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    // text columns repeated on every row
    std::vector<std::pair<std::string, std::string>> labels;

    std::string csv() const {
        std::string s;
        for (std::size_t i = 0; i < header.size(); ++i) {
            s += (i ? "," : "") + header[i];
        }
        for (const auto& [name, value] : labels) s += "," + name;
        s += '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                s += (i ? "," : "") + format_number(row[i]);
            }
            for (const auto& [name, value] : labels) s += "," + value;
            s += '\n';
        }
        return s;
    }
};

struct Output {
    std::optional<Table> table;
    json summary = json::object();
};

struct Common {
    int n = 1;
    double s = 0.5;
    std::uint64_t seed = 1;
    std::string out;
};

void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open " + path + " for writing");
    }
    f << body;
    f.flush();
    if (!f) {
        throw IoError("write to " + path + " failed");
    }
}

void emit(const Output& o, const std::string& prefix, std::ostream& out) {
    const std::string js = o.summary.dump(2) + "\n";
    if (prefix.empty()) {
        if (o.table) out << o.table->csv();
        out << js;
        return;
    }
    if (o.table) write_file(prefix + ".csv", o.table->csv());
    write_file(prefix + ".json", js);
}

json metadata(const std::string& command, const Common& c) {
    json m;
    m["command"] = command;
    m["n"] = c.n;
    m["s"] = c.s;
    m["seed"] = c.seed;
    m["rng"] = FieldRng::algorithm();
    return m;
}

DomainSpec make_domain(int n, double lo, double hi, double lo1, double hi1) {
    DomainSpec d = n == 1 ? DomainSpec::interval(lo, hi) : DomainSpec::box(lo, hi, lo1, hi1);
    d.validate();
    return d;
}

Point to_point(const std::vector<double>& v, int n) {
    if (static_cast<int>(v.size()) != n && !(n == 2 && v.size() == 1)) {
        throw ConfigError("expected " + std::to_string(n) + " coordinates");
    }
    return Point{v[0], n == 2 ? v[v.size() - 1] : 0.0};
}

std::vector<Point> to_points(const std::vector<double>& flat, int n) {
    if (flat.size() % static_cast<std::size_t>(n) != 0) {
        throw ConfigError("--x takes " + std::to_string(n) + " coordinates per point");
    }
    std::vector<Point> pts;
    for (std::size_t i = 0; i < flat.size(); i += static_cast<std::size_t>(n)) {
        pts.push_back(Point{flat[i], n == 2 ? flat[i + 1] : 0.0});
    }
    return pts;
}

// ---- commands ------------------------------------------------------------

Output cmd_constants(const Common& c) {
    const OperatorParams p(c.n, c.s);
    const OperatorConstants k = constants(p);
    Output o;
    o.summary = metadata("constants", c);
    o.summary["c_ns"] = k.c_ns;
    o.summary["b_ns"] = k.b_ns;
    o.summary["p_ns"] = k.p_ns;
    o.summary["d_s"] = k.d_s;
    o.summary["b1"] = k.b1;
    o.summary["rho_n"] = k.rho_n;
    o.summary["c_n"] = k.c_n;
    o.summary["sphere_measure"] = k.sphere_measure;
    o.summary["ball_volume"] = k.ball_volume;
    return o;
}

struct SymbolOpts {
    std::string kind = "fraclog";
    double xi_min = 0.0;
    double xi_max = 10.0;
    int points = 101;
    bool multiplier = false;
};

Output cmd_symbol(const Common& c, const SymbolOpts& so) {
    const OperatorParams p(c.n, c.s);
    const SymbolKind kind = symbol_kind_from_string(so.kind.c_str());
    if (so.points < 1) throw ConfigError("--points must be at least 1");
    if (!(so.xi_min >= 0.0) || !(so.xi_max >= so.xi_min)) throw ConfigError("need 0 <= xi-min <= xi-max");
    Table t;
    t.header = {"xi", "value"};
    if (so.multiplier) t.header.push_back("form_multiplier");
    for (int i = 0; i < so.points; ++i) {
        const double xi = so.points == 1 ? so.xi_min
                                         : so.xi_min + (so.xi_max - so.xi_min) * i / (so.points - 1);
        std::vector<double> row{xi, symbol(xi, kind, p)};
        if (so.multiplier) row.push_back(form_multiplier(xi, p));
        t.rows.push_back(row);
    }
    Output o;
    o.table = t;
    o.summary = metadata("symbol", c);
    o.summary["kind"] = to_string(kind);
    return o;
}

struct FunctionOpts {
    std::string family = "gaussian";
    std::vector<double> center{0.0};
    double width = 1.0;
    double amplitude = 1.0;

    AnalyticTestFunction build(int n) const {
        AnalyticTestFunction u{family_from_string(family), to_point(center, n), width, amplitude};
        u.validate();
        return u;
    }
};

struct ApplyOpts {
    FunctionOpts fn;
    std::vector<double> x{0.0};
    std::string route = "pv";
    std::string kind = "fraclog";
    double h = 1e-3;
};

Output cmd_apply(const Common& c, const ApplyOpts& ao) {
    const OperatorParams p(c.n, c.s);
    const AnalyticTestFunction u = ao.fn.build(c.n);
    const SymbolKind kind = symbol_kind_from_string(ao.kind.c_str());
    const auto pts = to_points(ao.x, c.n);
    Table t;
    t.header = c.n == 1 ? std::vector<std::string>{"x", "value", "error_estimate"}
                        : std::vector<std::string>{"x0", "x1", "value", "error_estimate"};
    t.labels = {{"route", ao.route}};
    std::vector<std::vector<double>> rows(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point& x = pts[i];
        PointEvaluation e;
        if (ao.route == "pv") {
            switch (kind) {
                case SymbolKind::fraclog: e = eval_fraclog_pv(u, x, p); break;
                case SymbolKind::fractional: e = eval_fraclap(u, x, p); break;
                case SymbolKind::logarithmic: e = eval_loglap(u, x, c.n); break;
            }
        } else if (ao.route == "fourier") {
            e = eval_fourier(u, x, p, kind);
        } else if (ao.route == "diff") {
            if (kind != SymbolKind::fraclog) throw ConfigError("the diff route evaluates the fraclog operator only");
            e = diff_quotient(u, x, p, ao.h);
        } else {
            throw ConfigError("unknown route '" + ao.route + "' (pv, fourier, diff)");
        }
        rows[i] = c.n == 1 ? std::vector<double>{x[0], e.value, e.error_estimate}
                           : std::vector<double>{x[0], x[1], e.value, e.error_estimate};
    }
    t.rows = rows;
    Output o;
    o.table = t;
    o.summary = metadata("apply", c);
    o.summary["route"] = ao.route;
    o.summary["kind"] = to_string(kind);
    o.summary["family"] = to_string(u.family);
    return o;
}

struct DomainOpts {
    double low = -0.15;
    double high = 0.15;
    std::optional<double> low1;
    std::optional<double> high1;
    int elements = 64;

    DomainSpec build(int n) const { return make_domain(n, low, high, low1.value_or(low), high1.value_or(high)); }
};

struct FormOpts {
    DomainOpts dom;
    int fields = 10;
    std::string field_kind = "bump";
    bool multiplier = false;
};

Output cmd_form(const Common& c, const FormOpts& fo) {
    const OperatorParams p(c.n, c.s);
    const Grid grid(fo.dom.build(c.n), fo.dom.elements);
    if (fo.fields < 0) throw ConfigError("--fields must be nonnegative");
    if (fo.field_kind != "bump" && fo.field_kind != "random") throw ConfigError("--field-kind is bump or random");
    const FormMatrices m = form_matrices(grid, p);
    FieldRng rng(c.seed);
    Table t;
    t.header = {"index", "e_plus", "e_minus", "e_s", "total", "l2_norm_sq"};
    if (fo.multiplier) t.header.push_back("e_plus_multiplier");
    for (int i = 0; i < fo.fields; ++i) {
        const CompactField u = fo.field_kind == "bump" ? random_bump_field(grid, rng) : random_field(grid, rng);
        const FormBreakdown f = form_components(u, m);
        std::vector<double> row{static_cast<double>(i), f.e_plus, f.e_minus, f.e_s, f.total, f.l2_norm_sq};
        if (fo.multiplier) row.push_back(form_via_multiplier(u, p));
        t.rows.push_back(row);
    }
    Output o;
    o.table = t;
    o.summary = metadata("form", c);
    o.summary["elements"] = fo.dom.elements;
    o.summary["field_kind"] = fo.field_kind;
    o.summary["poincare_constant"] = poincare_constant(m);
    return o;
}

struct EigOpts {
    DomainOpts dom{-0.15, 0.15, {}, {}, 128};
    std::string route = "kernel";
    int count = 10;
    int torus_points = 0;
    int alias_images = 0;
};

Output cmd_eig(const Common& c, const EigOpts& eo) {
    const OperatorParams p(c.n, c.s);
    Discretization disc;
    disc.elements_per_axis = eo.dom.elements;
    disc.torus_points = eo.torus_points;
    disc.alias_images = eo.alias_images;
    const AssemblyRoute route = assembly_route_from_string(eo.route);
    const AssembledSystem sys = assemble(eo.dom.build(c.n), disc, p, route);
    if (eo.count < 1) throw ConfigError("--count must be positive");
    const SpectrumResult r = solve_eigs(sys, std::min(eo.count, sys.grid.interior_count()), true);
    Table t;
    t.header = {"k", "eigenvalue", "residual"};
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        t.rows.push_back({static_cast<double>(i + 1), r.eigenvalues[i], r.residuals[i]});
    }
    Output o;
    o.table = t;
    o.summary = metadata("eig", c);
    o.summary["route"] = to_string(route);
    o.summary["elements"] = eo.dom.elements;
    o.summary["gram_residual"] = r.gram_residual;
    o.summary["torus_side"] = sys.torus_side;
    o.summary["torus_points"] = sys.torus_points;
    if (r.eigenvectors.cols() > 0) {
        o.summary["first_one_signed"] = r.eigenvectors.col(0).minCoeff() * r.eigenvectors.col(0).maxCoeff() >= -1e-8;
    }
    return o;
}

struct PoissonOpts {
    DomainOpts dom{-0.15, 0.15, {}, {}, 128};
    double r = 0.1;
    double potential = 14.0;
    std::string source = "one";
};

Output cmd_poisson(const Common& c, const PoissonOpts& po) {
    const OperatorParams p(c.n, c.s);
    const double b = constants(p).b_ns;
    const double r_max = std::exp(-std::abs(b) / 2.0);
    if (!(po.r > 0.0 && po.r < r_max)) {
        throw ConfigError("--r must lie in (0, e^{-|b|/2}) = (0, " + format_number(r_max) + "), got " +
                          format_number(po.r));
    }
    Discretization disc;
    disc.elements_per_axis = po.dom.elements;
    const AssembledSystem sys = assemble(po.dom.build(c.n), disc, p, AssemblyRoute::kernel);
    const Grid& g = sys.grid;
    std::vector<double> v(static_cast<std::size_t>(g.node_count()), po.potential);
    std::vector<double> f(v.size(), 0.0);
    if (po.source != "one" && po.source != "zero" && po.source != "bump") {
        throw ConfigError("--source is one, zero or bump");
    }
    const DomainSpec& d = g.domain();
    for (int i1 = 0; i1 < (c.n == 2 ? g.nodes(1) : 1); ++i1) {
        for (int i0 = 0; i0 < g.nodes(0); ++i0) {
            const Point x = g.node_point(i0, i1);
            double val = 0.0;
            if (po.source == "one") {
                val = 1.0;
            } else if (po.source == "bump") {
                AnalyticTestFunction u{Family::bump,
                                       {0.5 * (d.low[0] + d.high[0]), 0.5 * (d.low[1] + d.high[1])},
                                       0.5 * std::min(d.length(0), c.n == 2 ? d.length(1) : d.length(0)), 1.0};
                val = u.value(x, c.n);
            }
            f[static_cast<std::size_t>(g.node_index(i0, i1))] = val;
        }
    }
    const PoissonResult res = solve_poisson(sys, v, f, po.r);
    Table t;
    t.header = {"x0", "x1", "u"};
    for (int k = 0; k < g.interior_count(); ++k) {
        const auto idx = g.interior_node(k);
        const Point x = g.node_point(idx[0], idx[1]);
        t.rows.push_back({x[0], x[1], res.coefficients[static_cast<std::size_t>(k)]});
    }
    Output o;
    o.table = t;
    o.summary = metadata("poisson", c);
    o.summary["r"] = po.r;
    o.summary["potential"] = po.potential;
    o.summary["source"] = po.source;
    o.summary["alpha_r"] = res.certificate.alpha_r;
    o.summary["condition_rhs"] = res.certificate.condition_rhs;
    o.summary["certified"] = res.certificate.certified;
    o.summary["system_pd"] = res.system_pd;
    o.summary["residual"] = res.residual;
    o.summary["form_norm"] = res.form_norm;
    o.summary["dual_norm"] = res.dual_norm;
    o.summary["bound_ratio"] = res.bound_ratio;
    o.summary["sup_norm"] = res.sup_norm;
    return o;
}

struct WeylOpts {
    double torus_side = 2.0 * kPi;
    double lambda_max = 100.0;
    int thresholds = 10;
    std::string kind = "fraclog";
    long long budget = 200'000'000;
};

Output cmd_weyl(const Common& c, const WeylOpts& wo) {
    const OperatorParams p(c.n, c.s);
    const SymbolKind kind = symbol_kind_from_string(wo.kind.c_str());
    if (wo.thresholds < 1) throw ConfigError("--thresholds must be positive");
    if (!(wo.lambda_max > 0.0)) throw ConfigError("--lambda-max must be positive");
    const auto eigs = torus_spectrum(wo.torus_side, p, wo.lambda_max, kind, wo.budget);
    std::vector<double> lams;
    for (int i = 1; i <= wo.thresholds; ++i) lams.push_back(wo.lambda_max * i / wo.thresholds);
    const double volume = std::pow(wo.torus_side, c.n);
    Table t;
    t.header = {"lambda", "count", "riesz", "phase_space", "geometric_ratio", "weyl_ratio"};
    Output o;
    o.summary = metadata("weyl", c);
    if (kind == SymbolKind::fraclog) {
        const CountingData d = counting_analysis(eigs, lams, volume, p);
        for (std::size_t i = 0; i < lams.size(); ++i) {
            t.rows.push_back({lams[i], static_cast<double>(d.counts[i]), d.riesz[i], d.phase_space[i],
                              d.geometric_ratio[i], d.weyl_ratio[i]});
        }
        o.summary["lattice_ball_count"] =
            lattice_ball_count(wo.torus_side, symbol_ball_radius(wo.lambda_max, p), c.n);
    } else {
        for (double lam : lams) {
            t.rows.push_back({lam, static_cast<double>(count_at_most(eigs, lam)), riesz_mean(eigs, lam),
                              std::nan(""), std::nan(""), std::nan("")});
        }
    }
    o.table = t;
    o.summary["kind"] = to_string(kind);
    o.summary["torus_side"] = wo.torus_side;
    o.summary["lambda_max"] = wo.lambda_max;
    o.summary["enumerated"] = eigs.size();
    return o;
}

struct ExtensionOpts {
    FunctionOpts fn;
    double x = 0.0;
    std::vector<double> t_list{0.1, 0.05, 0.025, 0.0125};
};

Output cmd_extension(const Common& c, const ExtensionOpts& eo) {
    const OperatorParams p(c.n, c.s);
    if (c.n != 1) throw UnsupportedError("the extension command runs in n = 1 only");
    const AnalyticTestFunction u = eo.fn.build(1);
    const Point x{eo.x, 0.0};
    const DtnResult d = dtn_limit(u, x, p, eo.t_list);
    const OperatorConstants k = constants(p);
    Table t;
    t.header = {"t", "w", "v", "dtn_term"};
    for (std::size_t i = 0; i < d.t.size(); ++i) {
        const ExtensionEvaluation e = eval_extension(u, x, d.t[i], p);
        t.rows.push_back({d.t[i], e.w, e.v, d.terms[i]});
    }
    Output o;
    o.table = t;
    o.summary = metadata("extension", c);
    o.summary["extrapolated"] = d.value;
    o.summary["exponent"] = d.exponent;
    o.summary["warning"] = d.warning;
    o.summary["b1"] = k.b1;
    o.summary["b1_integral"] = b1_integral(p);
    o.summary["x"] = eo.x;
    o.summary["family"] = to_string(u.family);
    if (u.family == Family::gaussian) {
        o.summary["fourier"] = eval_fraclog_fourier(u, x, p).value;
    }
    return o;
}

Output cmd_selftest(const Common& c, std::ostream& log) {
    json checks = json::object();
    auto record = [&](const std::string& name, bool ok, double metric) {
        checks[name] = {{"pass", ok}, {"metric", metric}};
        log << (ok ? "PASS " : "FAIL ") << name << " " << format_number(metric) << "\n";
    };
    {
        const OperatorConstants k = constants(OperatorParams(1, 0.5));
        const double dev = std::max({std::abs(k.c_ns - 1.0 / kPi), std::abs(k.b_ns - (2.0 - 2.0 * kEulerGamma)),
                                     std::abs(k.d_s - 1.0), std::abs(k.b1 + 2.0 * kLn2)});
        record("constants", dev <= 1e-12, dev);
    }
    {
        double worst = 0.0;
        for (int n : {1, 2}) {
            for (double s = 0.05; s < 0.96; s += 0.1) worst = std::max(worst, b_derivative_check(n, s, 1e-5));
        }
        record("order_derivative", worst < 1e-7, worst);
    }
    {
        const OperatorParams p(1, 0.5);
        const AnalyticTestFunction g{Family::gaussian, {0.0, 0.0}, 1.0, 1.0};
        const double pv = eval_fraclog_pv(g, {0.3, 0.0}, p).value;
        const double fo = eval_fraclog_fourier(g, {0.3, 0.0}, p).value;
        record("pv_vs_fourier", std::abs(pv - fo) <= 1e-4 * std::abs(fo), std::abs(pv - fo) / std::abs(fo));
        const double anchor = 2.0 * (kLn2 - kEulerGamma) / std::sqrt(2.0 * kPi);
        const double a = std::abs(eval_fraclog_fourier(g, {0.0, 0.0}, p).value - anchor);
        record("anchor", a <= 1e-6, a);
    }
    {
        const OperatorParams p(1, 0.5);
        const auto eigs = torus_spectrum(2.0 * kPi, p, 1e4);
        long long bad = 0;
        for (double lam : {3.0, 50.0, 700.0, 9000.0}) {
            bad += std::llabs(count_at_most(eigs, lam) -
                              lattice_ball_count(2.0 * kPi, symbol_ball_radius(lam, p), 1));
        }
        record("lattice_ball", bad == 0, static_cast<double>(bad));
    }
    {
        const OperatorParams p(1, 0.5);
        const double dev = std::abs(b1_integral(p) - constants(p).b1);
        record("b1_integral", dev <= 1e-8, dev);
    }
    {
        const OperatorParams p(1, c.s);
        const Grid grid(DomainSpec::interval(-0.15, 0.15), 32);
        const FormMatrices m = form_matrices(grid, p);
        FieldRng rng(c.seed);
        double worst = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 10; ++i) {
            const CompactField u = random_field(grid, rng);
            const FormBreakdown f = form_components(u, m);
            const double slack = minus_bound_constant(p) * f.l2_norm_sq - f.e_minus;
            worst = std::min(worst, slack / std::max(1.0, f.l2_norm_sq));
        }
        record("minus_bound", worst >= -1e-8, worst);
        record("poincare_positive", poincare_constant(m) > 0.0, poincare_constant(m));
    }
    {
        const OperatorParams p(1, 0.5);
        Discretization disc;
        disc.elements_per_axis = 32;
        const DomainSpec d = DomainSpec::interval(-0.15, 0.15);
        const auto a = solve_eigs(assemble(d, disc, p, AssemblyRoute::kernel), 5, false).eigenvalues;
        const auto b = solve_eigs(assemble(d, disc, p, AssemblyRoute::torus_symbol), 5, false).eigenvalues;
        double gap = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::abs(a[i] - b[i]) / std::abs(a[i]));
        record("dual_route", gap <= 0.02, gap);
    }
    Output o;
    o.summary = metadata("selftest", c);
    o.summary["checks"] = checks;
    bool all = true;
    for (const auto& [name, v] : checks.items()) all = all && v["pass"].get<bool>();
    o.summary["all_pass"] = all;
    return o;
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--n", c.n, "dimension (1 or 2)")->capture_default_str();
    app->add_option("--s", c.s, "order in (0,1)")->capture_default_str();
    app->add_option("--seed", c.seed, "seed for random fields")->capture_default_str();
    app->add_option("--out", c.out, "output prefix; writes PREFIX.csv and PREFIX.json (default: stdout)");
}

void add_domain(CLI::App* app, DomainOpts& d) {
    app->add_option("--low", d.low, "lower bound, first axis")->capture_default_str();
    app->add_option("--high", d.high, "upper bound, first axis")->capture_default_str();
    app->add_option("--low1", d.low1, "lower bound, second axis (default: --low)");
    app->add_option("--high1", d.high1, "upper bound, second axis (default: --high)");
    app->add_option("--elements", d.elements, "cells on the first axis")->capture_default_str();
}

void add_function(CLI::App* app, FunctionOpts& f) {
    app->add_option("--family", f.family, "gaussian or bump")->capture_default_str();
    app->add_option("--center", f.center, "center coordinates")->expected(1, 2);
    app->add_option("--width", f.width, "width")->capture_default_str();
    app->add_option("--amplitude", f.amplitude, "amplitude")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fractional-logarithmic Laplacian toolkit"};
    app.set_config("--config", "", "TOML/INI file; flags override its values");
    app.require_subcommand(1);

    Common common;
    SymbolOpts symbol_opts;
    ApplyOpts apply_opts;
    FormOpts form_opts;
    EigOpts eig_opts;
    PoissonOpts poisson_opts;
    WeylOpts weyl_opts;
    ExtensionOpts ext_opts;

    auto* c_constants = app.add_subcommand("constants", "closed-form constants");
    add_common(c_constants, common);

    auto* c_symbol = app.add_subcommand("symbol", "tabulate a Fourier symbol");
    add_common(c_symbol, common);
    c_symbol->add_option("--kind", symbol_opts.kind, "fraclog, fractional or logarithmic")->capture_default_str();
    c_symbol->add_option("--xi-min", symbol_opts.xi_min)->capture_default_str();
    c_symbol->add_option("--xi-max", symbol_opts.xi_max)->capture_default_str();
    c_symbol->add_option("--points", symbol_opts.points)->capture_default_str();
    c_symbol->add_flag("--multiplier", symbol_opts.multiplier, "add the energy-form multiplier column");

    auto* c_apply = app.add_subcommand("apply", "apply an operator to a test function");
    add_common(c_apply, common);
    add_function(c_apply, apply_opts.fn);
    c_apply->add_option("--x", apply_opts.x, "evaluation points, n coordinates each");
    c_apply->add_option("--route", apply_opts.route, "pv, fourier or diff")->capture_default_str();
    c_apply->add_option("--kind", apply_opts.kind, "fraclog, fractional or logarithmic")->capture_default_str();
    c_apply->add_option("--order-step", apply_opts.h, "order step of the diff route")->capture_default_str();

    auto* c_form = app.add_subcommand("form", "energy-form components of seeded fields");
    add_common(c_form, common);
    form_opts.dom.elements = 64;
    add_domain(c_form, form_opts.dom);
    c_form->add_option("--fields", form_opts.fields)->capture_default_str();
    c_form->add_option("--field-kind", form_opts.field_kind, "bump or random")->capture_default_str();
    c_form->add_flag("--multiplier", form_opts.multiplier, "add the Fourier-multiplier value of e_plus");

    auto* c_eig = app.add_subcommand("eig", "Dirichlet eigenvalues");
    add_common(c_eig, common);
    add_domain(c_eig, eig_opts.dom);
    c_eig->add_option("--route", eig_opts.route, "kernel or torus_symbol")->capture_default_str();
    c_eig->add_option("--count", eig_opts.count)->capture_default_str();
    c_eig->add_option("--torus-points", eig_opts.torus_points, "0 picks the smallest admissible torus");
    c_eig->add_option("--alias-images", eig_opts.alias_images, "0 picks the default");

    auto* c_poisson = app.add_subcommand("poisson", "certified Poisson solve with a constant potential");
    add_common(c_poisson, common);
    add_domain(c_poisson, poisson_opts.dom);
    c_poisson->add_option("--r", poisson_opts.r, "radius in (0, e^{-|b|/2})")->capture_default_str();
    c_poisson->add_option("--potential", poisson_opts.potential, "constant V")->capture_default_str();
    c_poisson->add_option("--source", poisson_opts.source, "one, zero or bump")->capture_default_str();

    auto* c_weyl = app.add_subcommand("weyl", "counting function on the flat torus");
    add_common(c_weyl, common);
    c_weyl->add_option("--torus-side", weyl_opts.torus_side)->capture_default_str();
    c_weyl->add_option("--lambda-max", weyl_opts.lambda_max)->capture_default_str();
    c_weyl->add_option("--thresholds", weyl_opts.thresholds, "evenly spaced thresholds up to lambda-max")
        ->capture_default_str();
    c_weyl->add_option("--kind", weyl_opts.kind, "fraclog or fractional")->capture_default_str();
    c_weyl->add_option("--budget", weyl_opts.budget, "lattice points visited at most")->capture_default_str();

    auto* c_ext = app.add_subcommand("extension", "half-space extension and its boundary limit");
    add_common(c_ext, common);
    add_function(c_ext, ext_opts.fn);
    c_ext->add_option("--x", ext_opts.x)->capture_default_str();
    c_ext->add_option("--t-list", ext_opts.t_list, "strictly decreasing heights");

    auto* c_self = app.add_subcommand("selftest", "quick invariant suite");
    add_common(c_self, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        Output o;
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "constants") o = cmd_constants(common);
        else if (name == "symbol") o = cmd_symbol(common, symbol_opts);
        else if (name == "apply") o = cmd_apply(common, apply_opts);
        else if (name == "form") o = cmd_form(common, form_opts);
        else if (name == "eig") o = cmd_eig(common, eig_opts);
        else if (name == "poisson") o = cmd_poisson(common, poisson_opts);
        else if (name == "weyl") o = cmd_weyl(common, weyl_opts);
        else if (name == "extension") o = cmd_extension(common, ext_opts);
        else o = cmd_selftest(common, err);
        emit(o, common.out, out);
        if (name == "poisson" && !o.summary["certified"].get<bool>()) {
            throw Uncertified("potential below the coercivity threshold; solution written but not certified");
        }
        if (name == "selftest" && !o.summary["all_pass"].get<bool>()) {
            err << "selftest: some checks failed\n";
            return kExitNumerical;
        }
        return kExitOk;
    } catch (const DomainError& e) {
        err << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ConfigError& e) {
        err << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const UnsupportedError& e) {
        err << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const PreconditionError& e) {
        err << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const BudgetError& e) {
        err << "budget exceeded: " << e.what() << " (partial count " << e.partial_count() << ")\n";
        return kExitNumerical;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << " (achieved " << format_number(e.achieved_estimate()) << ")\n";
        return kExitNumerical;
    } catch (const Uncertified& e) {
        err << "uncertified: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace fraclog::cli
