#include "fraclog/extension.hpp"

#include "fraclog/errors.hpp"
#include "fraclog/parallel.hpp"
#include "fraclog/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace fraclog {

namespace {

struct Tails {
    double zero = 0.0;  // integral of sin^{2s-1} over (0, phi)
    double one = 0.0;   // same with the factor 2 ln sin
};

// integrals over (0, phi) graded toward the endpoint singularity, plus the
// power-law head in closed form; `cos_power` covers the n = 2 measure
Tails angular_tails(double phi, double s, int cos_power) {
    Tails out;
    if (!(phi > 0.0)) return out;
    const double eps = 1e-14 * phi;
    const double a = 2.0 * s;
    out.zero = std::pow(eps, a) / a;
    out.one = 2.0 * (std::pow(eps, a) * std::log(eps) / a - std::pow(eps, a) / (a * a));
    std::vector<double> breaks{eps};
    for (double p : quad::geometric_toward_zero(eps, phi, 2.0)) {
        if (p > breaks.back()) breaks.push_back(p);
    }
    auto f0 = [&](double p) { return std::pow(std::cos(p), cos_power) * std::pow(std::sin(p), a - 1.0); };
    auto f1 = [&](double p) { return f0(p) * 2.0 * std::log(std::sin(p)); };
    out.zero += quad::integrate_panels(f0, breaks, 20).value;
    out.one += quad::integrate_panels(f1, breaks, 20).value;
    return out;
}

double support_radius(const AnalyticTestFunction& u) {
    return u.family == Family::bump ? u.width : 10.0 * u.width;
}

}  // namespace

ExtensionEvaluation eval_extension(const AnalyticTestFunction& u, const Point& x, double t,
                                   const OperatorParams& params) {
    if (params.n() != 1) {
        throw UnsupportedError("the half-space extension is implemented for n = 1 only");
    }
    if (!(t >= 1e-6) || !std::isfinite(t)) {
        throw ConfigError("extension height t must be at least 1e-6");
    }
    u.validate();
    const double s = params.s();
    const double p = poisson_constant(params.n(), params.s());
    const double b1 = constants(params).b1;
    const double alpha = 0.5 + s;
    const double ux = u.value(x, 1);

    ExtensionEvaluation out;
    out.x = x;
    out.t = t;
    if (u.amplitude == 0.0) {
        out.w = 0.0;
        out.v = 0.0;
        return out;
    }

    // in zeta = |y - x| / t the second difference is constant -2u(x) past Z
    const double dist = std::abs(x[0] - u.center[0]);
    const double reach = support_radius(u);
    const double z_end = (dist + reach) / t;
    std::vector<double> pts{0.0, z_end};
    if (z_end > 1.0) {
        for (double z = 1.0; z < z_end; z *= 1.5) pts.push_back(z);
    }
    for (double edge : {u.center[0] - reach, u.center[0] + reach, u.center[0]}) {
        pts.push_back(std::abs(edge - x[0]) / t);
    }
    auto breaks = quad::merge_breaks(pts, 0.0, z_end);
    const double feature = u.width / t / (u.family == Family::bump ? 16.0 : 4.0);
    breaks = quad::subdivide(breaks, std::min(feature, 1.0));

    auto weight = [&](double z) { return std::pow(z * z + 1.0, -alpha); };
    auto sd = [&](double z) { return u.second_difference(x, Point{t * z, 0.0}, 1); };
    auto fw = [&](double z) { return sd(z) * weight(z); };
    auto fv = [&](double z) { return -sd(z) * std::log1p(z * z) * weight(z); };
    const quad::QuadResult qw = quad::integrate_panels(fw, breaks, 20);
    const quad::QuadResult qv = quad::integrate_panels(fv, breaks, 20);

    const Tails tail = angular_tails(std::atan2(1.0, z_end), s, 0);
    const double w_minus_u = p * (qw.value - 2.0 * ux * tail.zero);
    const double v_minus_b1u = p * (qv.value - 2.0 * ux * tail.one);
    out.w = ux + w_minus_u;
    out.v = b1 * ux + v_minus_b1u;
    out.quadrature_error = p * (qw.error_estimate + qv.error_estimate);
    return out;
}

double pde_residual(const AnalyticTestFunction& u, const Point& x, double t,
                    const OperatorParams& params, double h) {
    if (!(h > 0.0) || !(t > 2.0 * h)) {
        throw DomainError("pde_residual needs t > 2h > 0");
    }
    const double s = params.s();
    auto at = [&](double dx, double dt) { return eval_extension(u, Point{x[0] + dx, x[1]}, t + dt, params); };
    const auto c = at(0.0, 0.0);
    const auto xp = at(h, 0.0);
    const auto xm = at(-h, 0.0);
    const auto tp = at(0.0, h);
    const auto tm = at(0.0, -h);
    const double e = 1.0 - 2.0 * s;
    const double vxx = std::pow(t, e) * (xp.v - 2.0 * c.v + xm.v) / (h * h);
    const double vtt = (std::pow(t + 0.5 * h, e) * (tp.v - c.v) - std::pow(t - 0.5 * h, e) * (c.v - tm.v)) / (h * h);
    const double rhs = 2.0 * std::pow(t, -2.0 * s) * (tp.w - tm.w) / (2.0 * h);
    const double scale = std::abs(vxx) + std::abs(vtt) + std::abs(rhs);
    if (scale == 0.0) {
        return 0.0;
    }
    return std::abs(vxx + vtt - rhs) / scale;
}

DtnResult dtn_limit(const AnalyticTestFunction& u, const Point& x, const OperatorParams& params,
                    const std::vector<double>& t_list) {
    if (t_list.size() < 3) {
        throw DomainError("dtn_limit needs at least three heights");
    }
    for (std::size_t i = 0; i < t_list.size(); ++i) {
        if (!(t_list[i] >= 1e-4) || !std::isfinite(t_list[i])) {
            throw DomainError("dtn_limit heights must be at least 1e-4");
        }
        if (i > 0 && !(t_list[i] < t_list[i - 1])) {
            throw DomainError("dtn_limit heights must be strictly decreasing");
        }
    }
    const OperatorConstants k = constants(params);
    const double s = params.s();
    const double ux = u.value(x, 1);
    DtnResult out;
    out.t = t_list;
    out.terms.assign(t_list.size(), 0.0);
    parallel_for(static_cast<int>(t_list.size()), [&](int i) {
        const double t = t_list[static_cast<std::size_t>(i)];
        const ExtensionEvaluation e = eval_extension(u, x, t, params);
        const double ts = std::pow(t, -2.0 * s);
        out.terms[static_cast<std::size_t>(i)] = -k.d_s * ((k.b_ns - 2.0 * std::log(t)) * ts * (e.w - ux) + ts * (e.v - k.b1 * ux));
    });

    // leading corrections of w - u and v - b1 u beyond t^{2s} are O(t^2)
    out.exponent = 2.0 - 2.0 * s;
    const Eigen::Index m = static_cast<Eigen::Index>(t_list.size());
    // with enough heights the next pair t^2 (ln t, 1) is fitted as well
    const Eigen::Index cols = m >= 6 ? 5 : 3;
    Eigen::MatrixXd design(m, cols);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double t = t_list[static_cast<std::size_t>(i)];
        const double tb = std::pow(t, out.exponent);
        design(i, 0) = 1.0;
        design(i, 1) = tb * std::log(t);
        design(i, 2) = tb;
        if (cols == 5) {
            design(i, 3) = t * t * std::log(t);
            design(i, 4) = t * t;
        }
        rhs(i) = out.terms[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
    out.value = coef(0);
    out.slope_log = coef(1);
    out.slope = coef(2);

    bool monotone = true;
    for (std::size_t i = 2; i < out.terms.size(); ++i) {
        const double d1 = out.terms[i - 1] - out.terms[i - 2];
        const double d2 = out.terms[i] - out.terms[i - 1];
        if (d1 * d2 < 0.0) monotone = false;
    }
    if (!monotone) {
        out.warning = "weighted boundary terms are not monotone in t; extrapolation may be unreliable";
    }
    return out;
}

double b1_integral(const OperatorParams& params) {
    const Tails whole = angular_tails(0.5 * kPi, params.s(), params.n() - 1);
    return poisson_constant(params.n(), params.s()) * sphere_measure(params.n()) * whole.one;
}

TraceStudy trace_study(const AnalyticTestFunction& u, const Point& x, const OperatorParams& params,
                       const std::vector<double>& t_list) {
    TraceStudy out;
    out.t = t_list;
    const double ux = u.value(x, params.n());
    const double b1 = constants(params).b1;
    out.w_deviation.assign(t_list.size(), 0.0);
    out.v_deviation.assign(t_list.size(), 0.0);
    parallel_for(static_cast<int>(t_list.size()), [&](int i) {
        const ExtensionEvaluation e = eval_extension(u, x, t_list[static_cast<std::size_t>(i)], params);
        out.w_deviation[static_cast<std::size_t>(i)] = std::abs(e.w - ux);
        out.v_deviation[static_cast<std::size_t>(i)] = std::abs(e.v - b1 * ux);
    });
    std::vector<std::size_t> order(t_list.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t_list[a] < t_list[b]; });
    out.monotone = order.size() >= 2;
    for (std::size_t j = 1; j < order.size(); ++j) {
        if (!(out.w_deviation[order[j]] > out.w_deviation[order[j - 1]]) ||
            !(out.v_deviation[order[j]] > out.v_deviation[order[j - 1]])) {
            out.monotone = false;
        }
    }
    if (order.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int cnt = 0;
        for (std::size_t i = 0; i < t_list.size(); ++i) {
            if (out.v_deviation[i] <= 0.0) continue;
            const double lx = std::log(t_list[i]);
            const double ly = std::log(out.v_deviation[i]);
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
            ++cnt;
        }
        if (cnt >= 2) {
            out.fitted_rate = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        }
    }
    return out;
}

}  // namespace fraclog
