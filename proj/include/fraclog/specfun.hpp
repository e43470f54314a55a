#pragma once

// Special functions and the closed-form constants attached to the
// fractional, logarithmic and fractional-logarithmic Laplacians.
//
// All formulas are dimension-generic; the library restricts n to {1, 2}
// because the quadrature and assembly layers are only built for those.

namespace fraclog {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.57721566490153286;
inline constexpr double kLn2 = 0.693147180559945309417232121458176568;

/// Dimension n and order s of every operator in the library.
class OperatorParams {
public:
    /// Throws DomainError unless n is 1 or 2 and 0 < s < 1.
    OperatorParams(int n, double s);

    int n() const noexcept { return n_; }
    double s() const noexcept { return s_; }

    /// Same dimension, different order; validated like the constructor.
    OperatorParams with_order(double s) const { return OperatorParams(n_, s); }

private:
    int n_;
    double s_;
};

struct OperatorConstants {
    double c_ns;            // fractional normalization: symbol |xi|^{2s}
    double b_ns;            // d/ds ln c_ns
    double p_ns;            // Poisson-kernel normalization of the extension
    double d_s;             // c_ns / p_ns, independent of n
    double b1;              // trace constant of the log-extension, -d/ds ln p_ns
    double rho_n;           // constant term of the logarithmic Laplacian
    double c_n;             // kernel constant of the logarithmic Laplacian
    double sphere_measure;  // |S^{n-1}|
    double ball_volume;     // volume of the unit ball in R^n
};

/// Gamma function for x > 0.
double gamma_fn(double x);

/// Digamma psi = Gamma'/Gamma for x > 0. Shifts the argument above 10 with
/// psi(x) = psi(x+1) - 1/x and finishes with the Bernoulli asymptotic series.
double digamma(double x);

/// c_{n,s} = 4^s pi^{-n/2} s Gamma((n+2s)/2) / Gamma(1-s).
double fractional_constant(int n, double s);

/// b_{n,s} = ln 4 + 1/s + psi(1-s) + psi((n+2s)/2).
double log_correction(int n, double s);

/// p_{n,s} = pi^{-n/2} Gamma((n+2s)/2) / Gamma(s).
double poisson_constant(int n, double s);

double sphere_measure(int n);
double ball_volume(int n);

OperatorConstants constants(const OperatorParams& params);

/// Relative mismatch between a central difference of s -> c_{n,s} with step
/// h and the closed form c_{n,s} b_{n,s}. Throws DomainError when s +- h
/// leaves (0,1) or h <= 0.
double b_derivative_check(int n, double s, double h);

/// Root s0 in (0,1) of s -> b_{n,s}, located by bisection on [lo, hi].
double b_sign_change_root(int n, double lo = 0.5, double hi = 0.999, double tol = 1e-13);

}  // namespace fraclog
