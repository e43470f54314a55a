#include "fraclog/spectral.hpp"

#include "fraclog/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fraclog {

std::vector<double> torus_spectrum(double side, const OperatorParams& params, double lambda_max,
                                   SymbolKind kind, std::int64_t budget) {
    if (!(side > 0.0) || !std::isfinite(side)) {
        throw DomainError("torus side must be positive");
    }
    if (kind == SymbolKind::logarithmic) {
        throw UnsupportedError("torus spectrum of the logarithmic symbol has an infinite zero mode");
    }
    const int n = params.n();
    const double dxi = 2.0 * kPi / side;
    // beyond this radius (and above 1) the symbol is increasing and exceeds lambda_max
    double rmax = 1.0;
    if (lambda_max > 0.0) {
        rmax = kind == SymbolKind::fraclog ? symbol_ball_radius(lambda_max, params)
                                           : std::pow(lambda_max, 1.0 / (2.0 * params.s()));
    }
    const std::int64_t kmax = static_cast<std::int64_t>(std::floor(std::max(rmax, 1.0) / dxi)) + 1;
    std::vector<double> out;
    if (n == 1) {
        if (2 * kmax + 1 > budget) {
            throw BudgetError("torus enumeration exceeds the node budget", 0);
        }
        for (std::int64_t k = -kmax; k <= kmax; ++k) {
            const double v = symbol(dxi * std::abs(static_cast<double>(k)), kind, params);
            if (v <= lambda_max) out.push_back(v);
        }
    } else {
        const double visits = static_cast<double>(2 * kmax + 1) * static_cast<double>(2 * kmax + 1);
        if (visits > static_cast<double>(budget)) {
            // partial count: rows that fit in the budget
            std::int64_t partial = 0;
            const std::int64_t rows = budget / (2 * kmax + 1);
            for (std::int64_t k1 = -kmax; k1 < -kmax + rows; ++k1) {
                for (std::int64_t k0 = -kmax; k0 <= kmax; ++k0) {
                    const double xi = dxi * std::hypot(static_cast<double>(k0), static_cast<double>(k1));
                    if (symbol(xi, kind, params) <= lambda_max) ++partial;
                }
            }
            throw BudgetError("torus enumeration exceeds the node budget", partial);
        }
        for (std::int64_t k1 = -kmax; k1 <= kmax; ++k1) {
            for (std::int64_t k0 = -kmax; k0 <= kmax; ++k0) {
                const double xi = dxi * std::hypot(static_cast<double>(k0), static_cast<double>(k1));
                const double v = symbol(xi, kind, params);
                if (v <= lambda_max) out.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double symbol_ball_radius(double lambda, const OperatorParams& params) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("symbol_ball_radius needs lambda > 0");
    }
    const double s = params.s();
    auto f = [&](double r) { return std::pow(r, 2.0 * s) * 2.0 * std::log(r) - lambda; };
    double lo = 1.0 + 1e-12;
    double hi = std::pow(lambda, 1.0 / (2.0 * s)) + 2.0;
    if (f(lo) >= 0.0) {
        return lo;
    }
    while (f(hi) < 0.0) {
        hi *= 2.0;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-6 * lo; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        const double fr = f(r);
        const double df = std::pow(r, 2.0 * s - 1.0) * (2.0 * s * 2.0 * std::log(r) + 2.0);
        double next = r - fr / df;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        (f(next) < 0.0 ? lo : hi) = next;
        if (std::abs(next - r) <= 1e-15 * r) {
            r = next;
            break;
        }
        r = next;
    }
    return r;
}

double phase_space_riesz(double lambda, const OperatorParams& params) {
    const int n = params.n();
    const double s = params.s();
    const double r = symbol_ball_radius(lambda, params);
    const double ns = n + 2.0 * s;
    return sphere_measure(n) * (2.0 * s * lambda * std::pow(r, n) / (n * ns) +
                                2.0 * std::pow(r, ns) / (ns * ns));
}

std::int64_t lattice_ball_count(double side, double radius, int n) {
    const double q = radius * side / (2.0 * kPi);
    if (q < 0.0) return 0;
    if (n == 1) {
        return 2 * static_cast<std::int64_t>(std::floor(q)) + 1;
    }
    const std::int64_t m = static_cast<std::int64_t>(std::floor(q));
    std::int64_t total = 0;
    for (std::int64_t k1 = -m; k1 <= m; ++k1) {
        const double rem = q * q - static_cast<double>(k1) * static_cast<double>(k1);
        std::int64_t w = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(0.0, rem))));
        while (static_cast<double>(w + 1) * (w + 1) <= rem) ++w;
        while (w > 0 && static_cast<double>(w) * w > rem) --w;
        total += 2 * w + 1;
    }
    return total;
}

double weyl_constant(double omega_volume, const OperatorParams& params) {
    const int n = params.n();
    const double s = params.s();
    return std::pow(2.0 * kPi, -n) * std::pow(s, n / (2.0 * s)) * ball_volume(n) * omega_volume;
}

std::int64_t count_at_most(const std::vector<double>& sorted_eigs, double lambda) {
    return std::upper_bound(sorted_eigs.begin(), sorted_eigs.end(), lambda) - sorted_eigs.begin();
}

double riesz_mean(const std::vector<double>& sorted_eigs, double lambda) {
    double acc = 0.0;
    for (double e : sorted_eigs) {
        if (e >= lambda) break;
        acc += lambda - e;
    }
    return acc;
}

CountingData counting_analysis(const std::vector<double>& eigs, const std::vector<double>& lambdas,
                               double omega_volume, const OperatorParams& params) {
    if (!std::is_sorted(eigs.begin(), eigs.end())) {
        throw DomainError("counting_analysis needs sorted eigenvalues");
    }
    const int n = params.n();
    const double s = params.s();
    CountingData d;
    d.thresholds = lambdas;
    const double weyl = weyl_constant(omega_volume, params);
    const double cell = std::pow(2.0 * kPi, -n) * omega_volume;
    for (double lam : lambdas) {
        const std::int64_t count = count_at_most(eigs, lam);
        d.counts.push_back(count);
        d.riesz.push_back(riesz_mean(eigs, lam));
        if (lam > 0.0) {
            const double r = symbol_ball_radius(lam, params);
            d.phase_space.push_back(cell * phase_space_riesz(lam, params));
            d.geometric_ratio.push_back(static_cast<double>(count) / (cell * ball_volume(n) * std::pow(r, n)));
        } else {
            d.phase_space.push_back(0.0);
            d.geometric_ratio.push_back(0.0);
        }
        if (lam > 1.0) {
            const double e = n / (2.0 * s);
            d.weyl_ratio.push_back(static_cast<double>(count) * std::pow(lam, -e) *
                                   std::pow(std::log(lam), e) / weyl);
        } else {
            d.weyl_ratio.push_back(0.0);
        }
    }
    return d;
}

KthLaw kth_eigenvalue_law(const std::vector<double>& sorted_eigs, const OperatorParams& params,
                          double omega_volume, const std::vector<int>& ks, bool with_log) {
    const int n = params.n();
    const double s = params.s();
    KthLaw out;
    const double base = std::pow(2.0 * kPi, 2.0 * s) * std::pow(ball_volume(n) * omega_volume, -2.0 * s / n);
    out.target = with_log ? (2.0 / n) * base : base;
    for (int k : ks) {
        if (k < 2 || k > static_cast<int>(sorted_eigs.size())) {
            throw DomainError("k must lie in [2, number of eigenvalues]");
        }
        double r = sorted_eigs[k - 1] * std::pow(static_cast<double>(k), -2.0 * s / n);
        if (with_log) r /= std::log(static_cast<double>(k));
        out.k.push_back(k);
        out.ratio.push_back(r);
    }
    return out;
}

}  // namespace fraclog
