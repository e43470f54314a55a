#include "fraclog/pointwise.hpp"

#include "fraclog/errors.hpp"
#include "fraclog/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace fraclog {

const char* to_string(Family family) {
    return family == Family::gaussian ? "gaussian" : "bump";
}

Family family_from_string(const std::string& name) {
    if (name == "gaussian") return Family::gaussian;
    if (name == "bump") return Family::bump;
    throw ConfigError("unknown test-function family '" + name + "'");
}

const char* to_string(Route route) {
    switch (route) {
        case Route::pv_quadrature: return "pv_quadrature";
        case Route::fourier: return "fourier";
        case Route::diff_quotient: return "diff_quotient";
    }
    return "pv_quadrature";
}

void AnalyticTestFunction::validate() const {
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw DomainError("test-function width must be positive");
    }
    if (!std::isfinite(amplitude) || !std::isfinite(center[0]) || !std::isfinite(center[1])) {
        throw DomainError("test-function data must be finite");
    }
}

namespace {

double dist2(const Point& a, const Point& b, int n) {
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        r += d * d;
    }
    return r;
}

double dot(const Point& a, const Point& b, int n) {
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
        r += a[i] * b[i];
    }
    return r;
}

Point add(const Point& a, const Point& b, double sign) {
    return {a[0] + sign * b[0], a[1] + sign * b[1]};
}

}  // namespace

double AnalyticTestFunction::value(const Point& x, int n) const {
    const double r2 = dist2(x, center, n);
    if (family == Family::gaussian) {
        return amplitude * std::exp(-r2 / (2.0 * width * width));
    }
    const double t = r2 / (width * width);
    return t < 1.0 ? amplitude * std::exp(-1.0 / (1.0 - t)) : 0.0;
}

double AnalyticTestFunction::second_difference(const Point& x, const Point& y, int n) const {
    auto direct = [&] {
        return value(add(x, y, 1.0), n) + value(add(x, y, -1.0), n) - 2.0 * value(x, n);
    };
    const Point a = add(x, center, -1.0);
    const double yy = dot(y, y, n);
    const double ay = dot(a, y, n);
    const double w2 = width * width;
    if (family == Family::gaussian) {
        const double q = yy / (2.0 * w2);
        const double p = ay / w2;
        if (std::abs(p) > 0.5 || q > 0.5) {
            return direct();
        }
        const double sh = std::sinh(0.5 * p);
        return 2.0 * value(x, n) * (std::exp(-q) * 2.0 * sh * sh + std::expm1(-q));
    }
    const double m0 = 1.0 - dot(a, a, n) / w2;
    if (m0 <= 0.0) {
        return direct();
    }
    const double dp = (2.0 * ay + yy) / w2;
    const double dm = (-2.0 * ay + yy) / w2;
    if (std::abs(dp) > 0.25 * m0 || std::abs(dm) > 0.25 * m0) {
        return direct();
    }
    // exponents e_pm = -d_pm / (m0 (m0 - d_pm)); sum formed without cancellation
    const double ep = -dp / (m0 * (m0 - dp));
    const double em = -dm / (m0 * (m0 - dm));
    const double yw = yy / w2;
    const double aw = 2.0 * ay / w2;
    const double prod = yw * yw - aw * aw;
    const double sum = -(m0 * 2.0 * yw - 2.0 * prod) / (m0 * (m0 - dp) * (m0 - dm));
    const double diff = ep - em;
    const double sh = std::sinh(0.25 * diff);
    return 2.0 * value(x, n) * (std::exp(0.5 * sum) * 2.0 * sh * sh + std::expm1(0.5 * sum));
}

AnalyticTestFunction AnalyticTestFunction::scaled(double alpha) const {
    AnalyticTestFunction out = *this;
    out.amplitude *= alpha;
    return out;
}

AnalyticTestFunction AnalyticTestFunction::shifted(const Point& by) const {
    AnalyticTestFunction out = *this;
    out.center = add(center, by, 1.0);
    return out;
}

namespace {

constexpr int kFine = 20;
constexpr int kCoarse = 10;
constexpr int kAngles = 256;
constexpr double kGaussTail = 10.0;

// Spherical data of u around x sampled on a radial layout that depends on
// (u, x) only:
//   dt(rho) = -1/2 int_S (u(x+rho w) + u(x-rho w) - 2u(x)) dw
//   ub(rho) = int_S u(x+rho w) dw
struct Panel {
    double a, b;
};

struct RadialData {
    int n = 1;
    double ux = 0.0;
    double sphere = 2.0;
    double rho0 = 0.0;
    double dt0 = 0.0;
    double big_r = 0.0;
    std::vector<Panel> panels;
    std::vector<double> xf, wf, dtf, ubf;  // kFine nodes per panel
    std::vector<double> xc, wc, dtc, ubc;  // kCoarse nodes per panel
    long long evals = 0;
};

void spherical(const AnalyticTestFunction& u, const Point& x, int n, double rho, double& dt,
               double& ub, long long& evals) {
    if (n == 1) {
        dt = -u.second_difference(x, {rho, 0.0}, 1);
        ub = u.value({x[0] + rho, 0.0}, 1) + u.value({x[0] - rho, 0.0}, 1);
        evals += 3;
        return;
    }
    double sd = 0.0;
    double su = 0.0;
    const double step = kPi / kAngles;
    for (int j = 0; j < kAngles; ++j) {
        const double th = j * step;
        const Point y{rho * std::cos(th), rho * std::sin(th)};
        sd += u.second_difference(x, y, 2);
        su += u.value(add(x, y, 1.0), 2) + u.value(add(x, y, -1.0), 2);
    }
    evals += 5LL * kAngles;
    dt = -sd * step;
    ub = su * step;
}

RadialData build_radial(const AnalyticTestFunction& u, const Point& x, int n) {
    u.validate();
    RadialData d;
    d.n = n;
    d.ux = u.value(x, n);
    d.sphere = sphere_measure(n);
    const double w = u.width;
    const double ra = std::sqrt(dist2(x, u.center, n));
    std::vector<double> pts;
    if (u.family == Family::gaussian) {
        d.big_r = ra + kGaussTail * w;
    } else {
        d.big_r = ra + w;
        if (n == 1) {
            const double sa = x[0] - u.center[0];
            pts.push_back(std::abs(w - sa));
            pts.push_back(std::abs(w + sa));
        } else {
            pts.push_back(std::abs(w - ra));
        }
    }
    pts.push_back(1.0);
    std::vector<double> geo = quad::geometric_toward_zero(1e-12 * w, 0.25 * w, 2.0);
    d.rho0 = geo.front();
    pts.insert(pts.end(), geo.begin(), geo.end());
    std::vector<double> merged = quad::merge_breaks(pts, d.rho0, d.big_r);
    const double max_width = u.family == Family::gaussian ? 0.25 * w : w / 16.0;
    std::vector<double> breaks = quad::subdivide(merged, max_width);
    const quad::GaussRule& fine = quad::gauss_legendre(kFine);
    const quad::GaussRule& coarse = quad::gauss_legendre(kCoarse);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double a = breaks[p];
        const double b = breaks[p + 1];
        d.panels.push_back({a, b});
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        for (int i = 0; i < kFine; ++i) {
            d.xf.push_back(mid + half * fine.nodes[i]);
            d.wf.push_back(half * fine.weights[i]);
        }
        for (int i = 0; i < kCoarse; ++i) {
            d.xc.push_back(mid + half * coarse.nodes[i]);
            d.wc.push_back(half * coarse.weights[i]);
        }
    }
    d.dtf.resize(d.xf.size());
    d.ubf.resize(d.xf.size());
    d.dtc.resize(d.xc.size());
    d.ubc.resize(d.xc.size());
    for (std::size_t i = 0; i < d.xf.size(); ++i) {
        spherical(u, x, n, d.xf[i], d.dtf[i], d.ubf[i], d.evals);
    }
    for (std::size_t i = 0; i < d.xc.size(); ++i) {
        spherical(u, x, n, d.xc[i], d.dtc[i], d.ubc[i], d.evals);
    }
    double ub0 = 0.0;
    spherical(u, x, n, d.rho0, d.dt0, ub0, d.evals);
    return d;
}

struct Integral {
    double value = 0.0;
    double error = 0.0;
};

// int_{rho0}^{inf} rho^{-1-2s} (beta0 + beta1 ln rho) dt(rho) drho, with the
// O(rho^2) head below rho0 and the constant |S| u(x) tail above R.
Integral fraclog_radial(const RadialData& d, double s, double beta0, double beta1) {
    Integral out;
    auto kern = [&](double r) { return std::pow(r, -1.0 - 2.0 * s) * (beta0 + beta1 * std::log(r)); };
    for (std::size_t p = 0; p < d.panels.size(); ++p) {
        double qf = 0.0;
        double qc = 0.0;
        for (int i = 0; i < kFine; ++i) {
            const std::size_t k = p * kFine + i;
            qf += d.wf[k] * kern(d.xf[k]) * d.dtf[k];
        }
        for (int i = 0; i < kCoarse; ++i) {
            const std::size_t k = p * kCoarse + i;
            qc += d.wc[k] * kern(d.xc[k]) * d.dtc[k];
        }
        out.value += qf;
        out.error += std::abs(qf - qc);
    }
    const double a = 2.0 - 2.0 * s;
    const double r0 = d.rho0;
    const double l0 = std::log(r0);
    out.value += d.dt0 / (r0 * r0) * std::pow(r0, a) * (beta0 / a + beta1 * (l0 / a - 1.0 / (a * a)));
    const double big_r = d.big_r;
    const double rs = std::pow(big_r, -2.0 * s);
    const double lr = std::log(big_r);
    out.value += d.sphere * d.ux *
                 (beta0 * rs / (2.0 * s) + beta1 * rs * (lr / (2.0 * s) + 1.0 / (4.0 * s * s)));
    return out;
}

PointEvaluation make_eval(double value, double err, Route route, long long nodes) {
    PointEvaluation e;
    e.value = value;
    e.error_estimate = err;
    e.route = route;
    e.nodes_used = nodes;
    return e;
}

PointEvaluation fraclap_from(const RadialData& d, const OperatorParams& params) {
    const double c = fractional_constant(params.n(), params.s());
    const Integral r = fraclog_radial(d, params.s(), 1.0, 0.0);
    return make_eval(c * r.value, c * r.error, Route::pv_quadrature, d.evals);
}

PointEvaluation fraclog_from(const RadialData& d, const OperatorParams& params) {
    const double c = fractional_constant(params.n(), params.s());
    const double b = log_correction(params.n(), params.s());
    const Integral r = fraclog_radial(d, params.s(), b, -2.0);
    return make_eval(c * r.value, c * r.error, Route::pv_quadrature, d.evals);
}

PointEvaluation loglap_from(const RadialData& d) {
    const int n = d.n;
    const double cn = gamma_fn(0.5 * n) / std::pow(kPi, 0.5 * n);
    const double rho_n = 2.0 * kLn2 + digamma(0.5 * n) - kEulerGamma;
    double near = 0.0;
    double far = 0.0;
    double err = 0.0;
    for (std::size_t p = 0; p < d.panels.size(); ++p) {
        const bool inner = d.panels[p].b <= 1.0;
        double qf = 0.0;
        double qc = 0.0;
        for (int i = 0; i < kFine; ++i) {
            const std::size_t k = p * kFine + i;
            qf += d.wf[k] / d.xf[k] * (inner ? d.dtf[k] : -d.ubf[k]);
        }
        for (int i = 0; i < kCoarse; ++i) {
            const std::size_t k = p * kCoarse + i;
            qc += d.wc[k] / d.xc[k] * (inner ? d.dtc[k] : -d.ubc[k]);
        }
        (inner ? near : far) += qf;
        err += std::abs(qf - qc);
    }
    near += 0.5 * d.dt0;
    if (d.big_r < 1.0) {
        near += d.sphere * d.ux * std::log(1.0 / d.big_r);
    }
    return make_eval(cn * (near + far) + rho_n * d.ux, cn * err, Route::pv_quadrature, d.evals);
}

}  // namespace

PointEvaluation eval_fraclap(const AnalyticTestFunction& u, const Point& x,
                             const OperatorParams& params) {
    return fraclap_from(build_radial(u, x, params.n()), params);
}

PointEvaluation eval_loglap(const AnalyticTestFunction& u, const Point& x, int n) {
    if (n != 1 && n != 2) {
        throw DomainError("dimension n must be 1 or 2");
    }
    return loglap_from(build_radial(u, x, n));
}

PointEvaluation eval_fraclog_pv(const AnalyticTestFunction& u, const Point& x,
                                const OperatorParams& params) {
    return fraclog_from(build_radial(u, x, params.n()), params);
}

PointEvaluation diff_quotient(const AnalyticTestFunction& u, const Point& x,
                              const OperatorParams& params, double h) {
    if (!(h > 0.0)) {
        throw DomainError("difference step h must be positive");
    }
    const OperatorParams up = params.with_order(params.s() + h);
    const OperatorParams dn = params.with_order(params.s() - h);
    const RadialData d = build_radial(u, x, params.n());
    const PointEvaluation a = fraclap_from(d, up);
    const PointEvaluation b = fraclap_from(d, dn);
    return make_eval((a.value - b.value) / (2.0 * h), (a.error_estimate + b.error_estimate) / (2.0 * h),
                     Route::diff_quotient, d.evals);
}

PointEvaluation eval_fourier(const AnalyticTestFunction& u, const Point& x,
                             const OperatorParams& params, SymbolKind kind) {
    u.validate();
    if (u.family != Family::gaussian) {
        throw UnsupportedError("the Fourier route needs a closed-form transform (gaussian family)");
    }
    const int n = params.n();
    const double s = params.s();
    const double w = u.width;
    const Point a = add(x, u.center, -1.0);
    const double ra = std::sqrt(dot(a, a, n));
    const double sa = a[0];

    std::vector<double> breaks = quad::geometric_toward_zero(1e-14 / w, 1.0 / w, 2.0);
    const double xi0 = breaks.front();
    const double xi_max = 13.6 / w;
    double max_width = 0.25 / w;
    if (ra > 0.0) {
        max_width = std::min(max_width, 0.5 / ra);
    }
    std::vector<double> outer = quad::subdivide(std::vector<double>{1.0 / w, xi_max}, max_width);
    breaks.insert(breaks.end(), outer.begin() + 1, outer.end());

    const double pref = n == 1 ? std::sqrt(2.0 / kPi) * u.amplitude * w : u.amplitude * w * w;
    auto radial = [&](double xi, double& re, double& im) {
        const double g = symbol(xi, kind, params) * std::exp(-0.5 * w * w * xi * xi);
        if (n == 1) {
            re = g * std::cos(xi * sa);
            im = 0.5 * g * (std::sin(xi * sa) + std::sin(-xi * sa));
        } else {
            re = g * std::cyl_bessel_j(0.0, xi * ra) * xi;
            im = 0.0;
        }
    };
    const quad::GaussRule& fine = quad::gauss_legendre(kFine);
    const quad::GaussRule& coarse = quad::gauss_legendre(kCoarse);
    double val = 0.0;
    double imag = 0.0;
    double err = 0.0;
    long long nodes = 0;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double lo = breaks[p];
        const double hi = breaks[p + 1];
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        double qf = 0.0;
        double qc = 0.0;
        double re = 0.0;
        double im = 0.0;
        for (int i = 0; i < kFine; ++i) {
            radial(mid + half * fine.nodes[i], re, im);
            qf += half * fine.weights[i] * re;
            imag += half * fine.weights[i] * im;
        }
        for (int i = 0; i < kCoarse; ++i) {
            radial(mid + half * coarse.nodes[i], re, im);
            qc += half * coarse.weights[i] * re;
        }
        nodes += kFine + kCoarse;
        val += qf;
        err += std::abs(qf - qc);
    }
    // head on (0, xi0): symbol(xi) xi^{n-1} against the value 1 of the rest
    const double l0 = std::log(xi0);
    double head = 0.0;
    if (kind == SymbolKind::fractional) {
        head = std::pow(xi0, 2.0 * s + n) / (2.0 * s + n);
    } else {
        const double k = kind == SymbolKind::fraclog ? 2.0 * s + n : static_cast<double>(n);
        head = 2.0 * std::pow(xi0, k) * (l0 / k - 1.0 / (k * k));
    }
    val += head;
    PointEvaluation e = make_eval(pref * val, std::abs(pref) * err, Route::fourier, nodes);
    e.imag_part = pref * imag;
    return e;
}

SweepResult small_order_sweep(const AnalyticTestFunction& u, const std::vector<Point>& grid,
                              const std::vector<double>& s_list, int n) {
    for (std::size_t i = 0; i < s_list.size(); ++i) {
        OperatorParams(n, s_list[i]);
        if (i > 0 && !(s_list[i] < s_list[i - 1])) {
            throw DomainError("small_order_sweep needs a strictly decreasing order list");
        }
    }
    SweepResult out;
    out.s_values = s_list;
    out.deviations.assign(s_list.size(), 0.0);
    for (const Point& x : grid) {
        const RadialData d = build_radial(u, x, n);
        const double ll = loglap_from(d).value;
        for (std::size_t i = 0; i < s_list.size(); ++i) {
            const double v = fraclog_from(d, OperatorParams(n, s_list[i])).value;
            out.deviations[i] = std::max(out.deviations[i], std::abs(v - ll));
        }
    }
    out.strictly_decreasing = s_list.size() >= 2;
    for (std::size_t i = 1; i < out.deviations.size(); ++i) {
        if (!(out.deviations[i] < out.deviations[i - 1])) {
            out.strictly_decreasing = false;
        }
    }
    out.proven_regime = std::all_of(s_list.begin(), s_list.end(), [](double s) { return s < 0.25; });
    return out;
}

}  // namespace fraclog
