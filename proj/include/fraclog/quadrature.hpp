#pragma once

// Gauss-Legendre rules and the panel integrators shared by every module.

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace fraclog::quad {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

/// Cached Gauss-Legendre rule, 1 <= order <= 128. Thread-safe.
const GaussRule& gauss_legendre(int order);

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long long nodes_used = 0;
    bool converged = true;
};

/// Fixed rule on one panel.
template <class F>
double integrate_gl(F&& f, double a, double b, const GaussRule& rule) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return sum * half;
}

/// Composite rule over consecutive breakpoints. The error estimate compares
/// the requested order against half that order on the same panels.
template <class F>
QuadResult integrate_panels(F&& f, std::span<const double> breaks, int order = 20) {
    QuadResult r;
    if (breaks.size() < 2) {
        return r;
    }
    const GaussRule& fine = gauss_legendre(order);
    const GaussRule& coarse = gauss_legendre(order / 2 > 0 ? order / 2 : 1);
    double err = 0.0;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double a = breaks[p];
        const double b = breaks[p + 1];
        if (!(b > a)) {
            continue;
        }
        const double qf = integrate_gl(f, a, b, fine);
        const double qc = integrate_gl(f, a, b, coarse);
        r.value += qf;
        err += std::abs(qf - qc);
        r.nodes_used += static_cast<long long>(fine.nodes.size() + coarse.nodes.size());
    }
    r.error_estimate = err;
    return r;
}

/// Globally adaptive Gauss-Legendre: bisects the panel with the largest
/// local error (order vs 2*order) until the total estimate drops below
/// max(abs_tol, rel_tol*|value|) or a panel reaches max_depth bisections.
QuadResult adaptive_gl(const std::function<double(double)>& f, std::span<const double> breaks,
                       double rel_tol, double abs_tol = 0.0, int max_depth = 20, int order = 10);

/// Breakpoints lo, lo*r^-1, ... refined geometrically toward `lo` until the
/// first panel is no wider than `innermost`. Helper for integrable end-point
/// singularities at zero: returns {innermost, 2*innermost, ..., hi}.
std::vector<double> geometric_toward_zero(double innermost, double hi, double ratio = 2.0);

/// Splits every panel of `breaks` so no panel is wider than `max_width`.
std::vector<double> subdivide(std::span<const double> breaks, double max_width);

/// Sorted, de-duplicated union of breakpoints restricted to [lo, hi] with
/// the end points included.
std::vector<double> merge_breaks(std::vector<double> points, double lo, double hi);

}  // namespace fraclog::quad
