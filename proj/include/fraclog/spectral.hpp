#pragma once

// Counting functions, Riesz means and Weyl-type asymptotics; the flat torus
// provides an exactly diagonalizable reference spectrum.

#include "fraclog/kernels.hpp"
#include "fraclog/specfun.hpp"

#include <cstdint>
#include <vector>

namespace fraclog {

/// Symbol values at the lattice frequencies 2 pi k / L with value <= lambda_max,
/// sorted, with multiplicity and the zero mode. Throws BudgetError when more
/// than `budget` lattice points would have to be visited.
std::vector<double> torus_spectrum(double side, const OperatorParams& params, double lambda_max,
                                   SymbolKind kind = SymbolKind::fraclog,
                                   std::int64_t budget = 200'000'000);

/// Root r > 1 of r^{2s} 2 ln r = lambda: bisection on [1 + 1e-12, lambda^{1/(2s)} + 2]
/// followed by Newton polishing.
double symbol_ball_radius(double lambda, const OperatorParams& params);

/// |S| (2 s lambda r^n / (n (n+2s)) + 2 r^{2s+n} / (n+2s)^2), r the symbol-ball radius:
/// the integral of (symbol - lambda)_- over R^n.
double phase_space_riesz(double lambda, const OperatorParams& params);

/// Number of lattice points 2 pi k / L inside the closed ball of radius r.
std::int64_t lattice_ball_count(double side, double radius, int n);

struct CountingData {
    std::vector<double> thresholds;
    std::vector<std::int64_t> counts;
    std::vector<double> riesz;            // sum (lambda_k - Lambda)_-
    std::vector<double> phase_space;      // |Omega| (2 pi)^{-n} phase_space_riesz
    std::vector<double> geometric_ratio;  // N / ((2 pi)^{-n} |Omega| omega_n r^n)
    std::vector<double> weyl_ratio;       // N Lambda^{-n/2s} (ln Lambda)^{n/2s} / limit constant
};

/// (2 pi)^{-n} s^{n/(2s)} omega_n |Omega|.
double weyl_constant(double omega_volume, const OperatorParams& params);

CountingData counting_analysis(const std::vector<double>& eigs, const std::vector<double>& lambdas,
                               double omega_volume, const OperatorParams& params);

std::int64_t count_at_most(const std::vector<double>& sorted_eigs, double lambda);
double riesz_mean(const std::vector<double>& sorted_eigs, double lambda);

struct KthLaw {
    std::vector<int> k;
    std::vector<double> ratio;  // lambda_k k^{-2s/n} / ln k (or without ln k)
    double target = 0.0;
};

/// lambda_k k^{-2s/n} / ln k against (2/n)(2 pi)^{2s} (omega_n |Omega|)^{-2s/n}.
/// With with_log = false the ln k divisor is dropped and the target is the
/// pure fractional constant (2 pi)^{2s} (omega_n |Omega|)^{-2s/n}.
KthLaw kth_eigenvalue_law(const std::vector<double>& sorted_eigs, const OperatorParams& params,
                          double omega_volume, const std::vector<int>& ks, bool with_log = true);

}  // namespace fraclog
