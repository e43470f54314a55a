#include "fraclog/quadrature.hpp"

#include "fraclog/errors.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <queue>

namespace fraclog::quad {

namespace {

GaussRule build_rule(int order) {
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const double pi = 3.141592653589793238462643383279502884;
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (order == 1) {
                p0 = 1.0;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = order == 1 ? 1.0 : order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) {
        rule.nodes[order / 2] = 0.0;
    }
    if (order == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
    }
    return rule;
}

constexpr int kMaxOrder = 128;

}  // namespace

const GaussRule& gauss_legendre(int order) {
    if (order < 1 || order > kMaxOrder) {
        throw DomainError("Gauss-Legendre order must lie in [1, 128]");
    }
    static std::array<GaussRule, kMaxOrder + 1> rules;
    static std::array<std::once_flag, kMaxOrder + 1> flags;
    std::call_once(flags[order], [order] { rules[order] = build_rule(order); });
    return rules[order];
}

QuadResult adaptive_gl(const std::function<double(double)>& f, std::span<const double> breaks,
                       double rel_tol, double abs_tol, int max_depth, int order) {
    struct Panel {
        double a, b, value, error;
        int depth;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    const GaussRule& lo_rule = gauss_legendre(order);
    const GaussRule& hi_rule = gauss_legendre(2 * order);
    QuadResult r;
    auto evaluate = [&](double a, double b, int depth) {
        const double ql = integrate_gl(f, a, b, lo_rule);
        const double qh = integrate_gl(f, a, b, hi_rule);
        r.nodes_used += 3LL * order;
        return Panel{a, b, qh, std::abs(qh - ql), depth};
    };
    std::priority_queue<Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] > breaks[i]) {
            Panel p = evaluate(breaks[i], breaks[i + 1], 0);
            total += p.value;
            total_err += p.error;
            heap.push(p);
        }
    }
    r.converged = true;
    std::vector<Panel> frozen;
    while (!heap.empty() && total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        Panel p = heap.top();
        heap.pop();
        if (p.depth >= max_depth) {
            r.converged = false;
            frozen.push_back(p);
            continue;
        }
        const double mid = 0.5 * (p.a + p.b);
        Panel left = evaluate(p.a, mid, p.depth + 1);
        Panel right = evaluate(mid, p.b, p.depth + 1);
        total += left.value + right.value - p.value;
        total_err += left.error + right.error - p.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum in a fixed order to limit drift from incremental updates
    double value = 0.0;
    double err = 0.0;
    std::vector<Panel> all;
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    all.insert(all.end(), frozen.begin(), frozen.end());
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const Panel& p : all) {
        value += p.value;
        err += p.error;
    }
    r.value = value;
    r.error_estimate = err;
    if (err <= std::max(abs_tol, rel_tol * std::abs(value))) {
        r.converged = true;
    }
    return r;
}

std::vector<double> geometric_toward_zero(double innermost, double hi, double ratio) {
    std::vector<double> out;
    double x = hi;
    while (x > innermost * ratio) {
        out.push_back(x);
        x /= ratio;
    }
    out.push_back(x);
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<double> subdivide(std::span<const double> breaks, double max_width) {
    std::vector<double> out;
    if (breaks.empty()) {
        return out;
    }
    out.push_back(breaks[0]);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i];
        const double b = breaks[i + 1];
        const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / max_width - 1e-12)));
        for (int k = 1; k <= pieces; ++k) {
            out.push_back(k == pieces ? b : a + (b - a) * k / pieces);
        }
    }
    return out;
}

std::vector<double> merge_breaks(std::vector<double> points, double lo, double hi) {
    points.push_back(lo);
    points.push_back(hi);
    std::vector<double> out;
    for (double p : points) {
        if (p >= lo && p <= hi) {
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    std::vector<double> unique;
    for (double p : out) {
        if (unique.empty() || p - unique.back() > 1e-14 * std::max(1.0, std::abs(p))) {
            unique.push_back(p);
        } else {
            unique.back() = std::max(unique.back(), p);
        }
    }
    if (!unique.empty()) {
        unique.front() = lo;
        unique.back() = hi;
    }
    return unique;
}

}  // namespace fraclog::quad
