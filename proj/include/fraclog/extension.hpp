#pragma once

// Half-space extension in one space dimension: the weighted Poisson integrals
// w_s, v_s, their boundary traces, the degenerate PDE they satisfy and the
// weighted boundary limit that recovers the fractional-logarithmic operator.

#include "fraclog/pointwise.hpp"
#include "fraclog/specfun.hpp"

#include <string>
#include <vector>

namespace fraclog {

struct ExtensionEvaluation {
    double w = 0.0;
    double v = 0.0;
    Point x{0.0, 0.0};
    double t = 0.0;
    double quadrature_error = 0.0;
};

/// w_s(x,t) and v_s(x,t). Only n = 1 (UnsupportedError otherwise); t below
/// 1e-6 raises ConfigError.
ExtensionEvaluation eval_extension(const AnalyticTestFunction& u, const Point& x, double t,
                                   const OperatorParams& params);

/// |t^{1-2s} v_xx + d_t(t^{1-2s} v_t) - 2 t^{-2s} d_t w| over the sum of the
/// three magnitudes, all by central differences with step h. Needs t > 2h > 0.
double pde_residual(const AnalyticTestFunction& u, const Point& x, double t,
                    const OperatorParams& params, double h);

struct DtnResult {
    double value = 0.0;
    std::vector<double> t;
    std::vector<double> terms;  // -d_s [(b - 2 ln t) t^{-2s}(w - u) + t^{-2s}(v - b1 u)]
    double exponent = 0.0;      // beta in the fit F0 + t^beta (A ln t + B)
    double slope_log = 0.0;     // A
    double slope = 0.0;         // B
    std::string warning;
};

/// Evaluates the weighted boundary expression on t_list (strictly decreasing,
/// at least three entries, all >= 1e-4) and extrapolates to t = 0. Six or
/// more heights add the t^2 (ln t, 1) pair to the least-squares fit.
DtnResult dtn_limit(const AnalyticTestFunction& u, const Point& x, const OperatorParams& params,
                    const std::vector<double>& t_list);

/// p_{n,s} times the integral of -ln(|z|^2+1) (|z|^2+1)^{-(n+2s)/2} over R^n.
double b1_integral(const OperatorParams& params);

struct TraceStudy {
    std::vector<double> t;
    std::vector<double> w_deviation;  // |w - u(x)|
    std::vector<double> v_deviation;  // |v - b1 u(x)|
    double fitted_rate = 0.0;         // log-log slope of v_deviation
    bool monotone = false;            // both deviations decrease with t
};

TraceStudy trace_study(const AnalyticTestFunction& u, const Point& x, const OperatorParams& params,
                       const std::vector<double>& t_list);

}  // namespace fraclog
