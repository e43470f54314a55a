#include "fraclog/kernels.hpp"

#include "fraclog/errors.hpp"
#include "fraclog/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

namespace fraclog {

KernelSplit kernel_split(double r, const OperatorParams& params) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError("kernel radius must be positive and finite");
    }
    const int n = params.n();
    const double s = params.s();
    const double c = fractional_constant(n, s);
    const double b = log_correction(n, s);
    const double frac = c * std::pow(r, -n - 2.0 * s);
    const double lr = -std::log(r);
    KernelSplit k{};
    k.frac = frac;
    k.plus = lr > 0.0 ? frac * lr : 0.0;
    k.minus = lr < 0.0 ? -frac * lr : 0.0;
    k.full = frac * (b + 2.0 * lr);
    return k;
}

double kernel_sign_radius(const OperatorParams& params) {
    return std::exp(0.5 * log_correction(params.n(), params.s()));
}

const char* to_string(SymbolKind kind) {
    switch (kind) {
        case SymbolKind::fractional: return "fractional";
        case SymbolKind::logarithmic: return "logarithmic";
        case SymbolKind::fraclog: return "fraclog";
    }
    return "fraclog";
}

SymbolKind symbol_kind_from_string(const char* name) {
    if (std::strcmp(name, "fractional") == 0) return SymbolKind::fractional;
    if (std::strcmp(name, "logarithmic") == 0) return SymbolKind::logarithmic;
    if (std::strcmp(name, "fraclog") == 0) return SymbolKind::fraclog;
    throw ConfigError(std::string("unknown symbol kind '") + name + "'");
}

double symbol(double xi_norm, SymbolKind kind, const OperatorParams& params) {
    if (!(xi_norm >= 0.0)) {
        throw DomainError("symbol needs |xi| >= 0");
    }
    const double s = params.s();
    switch (kind) {
        case SymbolKind::fractional:
            return std::pow(xi_norm, 2.0 * s);
        case SymbolKind::logarithmic:
            return xi_norm == 0.0 ? -std::numeric_limits<double>::infinity()
                                  : 2.0 * std::log(xi_norm);
        case SymbolKind::fraclog:
            return xi_norm == 0.0 ? 0.0 : std::pow(xi_norm, 2.0 * s) * 2.0 * std::log(xi_norm);
    }
    return 0.0;
}

namespace {

// 1 - J0(x), with the power series where the direct form cancels.
double one_minus_j0(double x) {
    if (std::abs(x) < 0.5) {
        const double q = 0.25 * x * x;
        double term = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 12; ++k) {
            term *= -q / (static_cast<double>(k) * k);
            sum += term;
        }
        return -sum;
    }
    return 1.0 - std::cyl_bessel_j(0.0, x);
}

double one_minus_cos(double x) {
    const double h = std::sin(0.5 * x);
    return 2.0 * h * h;
}

}  // namespace

double form_multiplier(double xi_norm, const OperatorParams& params) {
    if (!(xi_norm >= 0.0)) {
        throw DomainError("form_multiplier needs |xi| >= 0");
    }
    if (xi_norm == 0.0) {
        return 0.0;
    }
    const int n = params.n();
    const double s = params.s();
    const double c = fractional_constant(n, s);
    const double pref = 2.0 * c * sphere_measure(n);
    const double xi = xi_norm;
    auto integrand = [&](double rho) {
        const double osc = n == 1 ? one_minus_cos(xi * rho) : one_minus_j0(xi * rho);
        return osc * std::pow(rho, -1.0 - 2.0 * s) * (-std::log(rho));
    };
    // geometric grading toward 0, then panels of at most a quarter period
    const double knee = std::min(1.0, 1.0 / xi);
    std::vector<double> breaks = quad::geometric_toward_zero(knee * 1e-14, knee, 2.0);
    if (knee < 1.0) {
        std::vector<double> outer = quad::subdivide(std::vector<double>{knee, 1.0}, 1.5 / xi);
        breaks.insert(breaks.end(), outer.begin() + 1, outer.end());
    }
    const quad::QuadResult r = quad::adaptive_gl(integrand, breaks, 1e-10, 0.0, 20, 10);
    // below the first break: (1-cos) ~ (xi rho)^2/2 (J0: /4)
    const double rho0 = breaks.front();
    const double a = 2.0 - 2.0 * s;
    const double head = (n == 1 ? 0.5 : 0.25) * xi * xi *
                        std::pow(rho0, a) * (1.0 / (a * a) - std::log(rho0) / a);
    if (!r.converged) {
        throw NumericalError("form multiplier quadrature did not converge",
                             r.error_estimate / std::max(std::abs(r.value), 1e-300));
    }
    return pref * (r.value + head);
}

double form_multiplier_bound_constant(const OperatorParams& params) {
    const int n = params.n();
    const double s = params.s();
    const double c = fractional_constant(n, s);
    const double b = log_correction(n, s);
    return std::max({2.0, std::abs(b), c * sphere_measure(n) / (s * s)});
}

}  // namespace fraclog
