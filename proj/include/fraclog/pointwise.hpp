#pragma once

// Pointwise values of (-Delta)^s, Log(-Delta) and (-Delta)^{s+Log} on
// closed-form test functions, by singular-integral quadrature and by the
// Fourier route.

#include "fraclog/kernels.hpp"
#include "fraclog/specfun.hpp"

#include <array>
#include <string>
#include <vector>

namespace fraclog {

/// A point of R^n; the second coordinate is ignored when n = 1.
using Point = std::array<double, 2>;

enum class Family { gaussian, bump };

const char* to_string(Family family);
Family family_from_string(const std::string& name);

/// amplitude * exp(-|x-c|^2 / (2 width^2)), or the bump
/// amplitude * exp(-1 / (1 - |x-c|^2/width^2)) supported in the ball of radius width.
struct AnalyticTestFunction {
    Family family = Family::gaussian;
    Point center{0.0, 0.0};
    double width = 1.0;
    double amplitude = 1.0;

    /// Throws DomainError on a non-positive width or non-finite data.
    void validate() const;

    double value(const Point& x, int n) const;

    /// u(x+y) + u(x-y) - 2u(x), evaluated without the cancellation of the
    /// naive form when |y| is small.
    double second_difference(const Point& x, const Point& y, int n) const;

    AnalyticTestFunction scaled(double alpha) const;
    AnalyticTestFunction shifted(const Point& by) const;
};

enum class Route { pv_quadrature, fourier, diff_quotient };

const char* to_string(Route route);

struct PointEvaluation {
    double value = 0.0;
    double error_estimate = 0.0;  // refinement delta, not a bound
    Route route = Route::pv_quadrature;
    long long nodes_used = 0;
    double imag_part = 0.0;       // Fourier route only
};

/// c_{n,s} PV int (u(x) - u(y)) |x-y|^{-n-2s} dy.
PointEvaluation eval_fraclap(const AnalyticTestFunction& u, const Point& x,
                             const OperatorParams& params);

/// c_n int_{B_1} (u(x) - u(x+y)) |y|^{-n} dy - c_n int_{|y|>1} u(x+y) |y|^{-n} dy + rho_n u(x).
PointEvaluation eval_loglap(const AnalyticTestFunction& u, const Point& x, int n);

/// int c_{n,s} (b_{n,s} - 2 ln|y|) |y|^{-n-2s} (u(x) - u(x+y)) dy.
PointEvaluation eval_fraclog_pv(const AnalyticTestFunction& u, const Point& x,
                                const OperatorParams& params);

/// (2 pi)^{-n/2} int symbol(|xi|) u^(xi) e^{i xi.x} dxi for the Gaussian family.
/// Throws UnsupportedError for the bump.
PointEvaluation eval_fourier(const AnalyticTestFunction& u, const Point& x,
                             const OperatorParams& params, SymbolKind kind);

inline PointEvaluation eval_fraclog_fourier(const AnalyticTestFunction& u, const Point& x,
                                            const OperatorParams& params) {
    return eval_fourier(u, x, params, SymbolKind::fraclog);
}

/// ((-Delta)^{s+h} u(x) - (-Delta)^{s-h} u(x)) / (2h). The radial nodes do not
/// depend on the order, so the quotient is free of quadrature-layout noise.
PointEvaluation diff_quotient(const AnalyticTestFunction& u, const Point& x,
                              const OperatorParams& params, double h);

struct SweepResult {
    std::vector<double> s_values;
    std::vector<double> deviations;  // sup over the grid of |fraclog - loglap|
    bool strictly_decreasing = false;
    bool proven_regime = false;      // every s below 1/4
};

/// Requires a strictly decreasing s_list. Orders at or above 1/4 are
/// evaluated and reported with proven_regime = false.
SweepResult small_order_sweep(const AnalyticTestFunction& u, const std::vector<Point>& grid,
                              const std::vector<double>& s_list, int n);

}  // namespace fraclog
