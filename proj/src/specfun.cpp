#include "fraclog/specfun.hpp"

#include "fraclog/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace fraclog {

OperatorParams::OperatorParams(int n, double s) : n_(n), s_(s) {
    if (n != 1 && n != 2) {
        throw DomainError("dimension n must be 1 or 2, got " + std::to_string(n));
    }
    if (!(s > 0.0 && s < 1.0)) {
        throw DomainError("order s must lie in (0,1), got " + std::to_string(s));
    }
}

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw DomainError("gamma_fn requires x > 0, got " + std::to_string(x));
    }
    return std::tgamma(x);
}

double digamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("digamma requires x > 0, got " + std::to_string(x));
    }
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    // B_{2k} / (2k) for k = 1..7
    static constexpr std::array<double, 7> coeff = {
        1.0 / 12.0,    -1.0 / 120.0,     1.0 / 252.0,  -1.0 / 240.0,
        1.0 / 132.0,   -691.0 / 32760.0, 1.0 / 12.0,
    };
    const double inv2 = 1.0 / (x * x);
    double series = 0.0;
    for (int k = static_cast<int>(coeff.size()) - 1; k >= 0; --k) {
        series = (series + coeff[k]) * inv2;
    }
    return shift + std::log(x) - 0.5 / x - series;
}

double fractional_constant(int n, double s) {
    const double half_n = 0.5 * n;
    return std::exp(2.0 * s * kLn2 - half_n * std::log(kPi)) * s *
           gamma_fn(half_n + s) / gamma_fn(1.0 - s);
}

double log_correction(int n, double s) {
    return 2.0 * kLn2 + 1.0 / s + digamma(1.0 - s) + digamma(0.5 * n + s);
}

double poisson_constant(int n, double s) {
    return std::pow(kPi, -0.5 * n) * gamma_fn(0.5 * n + s) / gamma_fn(s);
}

double sphere_measure(int n) {
    return 2.0 * std::pow(kPi, 0.5 * n) / gamma_fn(0.5 * n);
}

double ball_volume(int n) {
    return std::pow(kPi, 0.5 * n) / gamma_fn(0.5 * n + 1.0);
}

OperatorConstants constants(const OperatorParams& params) {
    const int n = params.n();
    const double s = params.s();
    OperatorConstants k{};
    k.c_ns = fractional_constant(n, s);
    k.b_ns = log_correction(n, s);
    k.p_ns = poisson_constant(n, s);
    // independent of n: 4^s s Gamma(s) / Gamma(1-s)
    k.d_s = std::exp(2.0 * s * kLn2) * s * gamma_fn(s) / gamma_fn(1.0 - s);
    k.b1 = digamma(s) - digamma(0.5 * n + s);
    k.rho_n = 2.0 * kLn2 + digamma(0.5 * n) - kEulerGamma;
    k.c_n = gamma_fn(0.5 * n) / std::pow(kPi, 0.5 * n);
    k.sphere_measure = sphere_measure(n);
    k.ball_volume = ball_volume(n);
    return k;
}

double b_derivative_check(int n, double s, double h) {
    if (!(h > 0.0)) {
        throw DomainError("b_derivative_check requires h > 0");
    }
    if (!(s - h > 0.0 && s + h < 1.0)) {
        throw DomainError("b_derivative_check: s +- h must stay inside (0,1)");
    }
    const OperatorParams params(n, s);
    const double fd = (fractional_constant(n, s + h) - fractional_constant(n, s - h)) / (2.0 * h);
    const double c = fractional_constant(n, s);
    const double b = log_correction(n, s);
    return std::abs(fd - c * b) / (c * std::abs(b));
}

double b_sign_change_root(int n, double lo, double hi, double tol) {
    const OperatorParams check_lo(n, lo);
    const OperatorParams check_hi(n, hi);
    double f_lo = log_correction(n, lo);
    const double f_hi = log_correction(n, hi);
    if (f_lo * f_hi > 0.0) {
        throw DomainError("b_{n,s} does not change sign on the bracket");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = log_correction(n, mid);
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace fraclog
