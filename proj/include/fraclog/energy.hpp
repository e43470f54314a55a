#pragma once

// Energy forms E_+, E_-, E_s and E_{s+Log} of grid fields.
//
// A field is the P1/Q1 interpolant of its samples, extended by zero, so
// every form is a quadratic form in the interior samples with a Toeplitz
// matrix. The matrix entries are
//     A_d = int k(|z|) (2 Lam(dh) - Lam(dh+z) - Lam(dh-z)) dz,
// Lam being the autocorrelation of one hat function. The interaction with
// the exterior of Omega is part of these integrals.

#include "fraclog/grid.hpp"
#include "fraclog/specfun.hpp"

#include <Eigen/Dense>

#include <vector>

namespace fraclog {

/// Autocorrelation of the 1D hat of half-width h (a scaled cubic B-spline).
double hat_autocorrelation(double t, double h);

/// Toeplitz stencils over all offsets reachable inside the grid, indexed by
/// (|d0|, |d1|).
struct StencilTable {
    int n = 1;
    double h = 0.0;
    int span0 = 0;  // largest |d0|
    int span1 = 0;  // largest |d1| (0 when n = 1)
    std::vector<double> frac;   // kernel |z|^{-n-2s}
    std::vector<double> plus;   // kernel k_+
    std::vector<double> minus;  // kernel k_-
    std::vector<double> mass;   // Lam(dh): the L2 Gram stencil

    int index(int d0, int d1) const;
};

StencilTable build_stencils(const Grid& grid, const OperatorParams& params);

/// Dense matrices over the interior nodes.
struct FormMatrices {
    Eigen::MatrixXd frac, plus, minus, mass;
    double c_ns = 0.0;
    double b_ns = 0.0;

    /// A_+ - A_- + (b c / 2) A_s.
    Eigen::MatrixXd total() const;
};

FormMatrices form_matrices(const Grid& grid, const OperatorParams& params);
FormMatrices form_matrices(const Grid& grid, const StencilTable& table, const OperatorParams& params);

struct FormBreakdown {
    double e_plus = 0.0;
    double e_minus = 0.0;
    double e_s = 0.0;
    double total = 0.0;
    double l2_norm_sq = 0.0;
};

FormBreakdown form_components(const CompactField& u, const OperatorParams& params);
FormBreakdown form_components(const CompactField& u, const FormMatrices& m);

/// Bilinear version; total = e_plus - e_minus + (b c / 2) e_s.
FormBreakdown form_bilinear(const CompactField& u, const CompactField& w, const FormMatrices& m);

/// E_+ through the multiplier m(xi): the samples are embedded in a torus of
/// side at least 4 diam + 2 with a power-of-two point count, and
/// L^{-n} sum_k m(xi_k) |F_k|^2 is summed over the discrete frequencies.
/// The result is E_+ of the trigonometric interpolant of the samples.
double form_via_multiplier(const CompactField& u, const OperatorParams& params);

/// e_plus / l2_norm_sq; a zero field throws DomainError.
double poincare_ratio(const CompactField& u, const OperatorParams& params);
double poincare_ratio(const CompactField& u, const FormMatrices& m);

/// Smallest generalized eigenvalue of (A_+, M): the best constant in
/// E_+(u,u) >= C ||u||^2 over the grid's fields.
double poincare_constant(const FormMatrices& m);

/// RHS - E_s with RHS = E_+/(c ln(1/r)) + (2/s)|S| r^{-2s} ||u||^2.
double split_bound_check(const CompactField& u, double r, const OperatorParams& params);
double split_bound_check(const CompactField& u, double r, const FormMatrices& m,
                         const OperatorParams& params);

/// (1/s) c |S| diam^{-2s} (ln(1/diam) - 1/(2s)); needs diam < 1.
double small_diameter_constant(const DomainSpec& domain, const OperatorParams& params);

/// E_-(u,u) <= (c |S| / s^2) ||u||^2: returns the constant.
double minus_bound_constant(const OperatorParams& params);

/// total(u) - total(|u|), where |u| is the interpolant of the absolute
/// samples. Requires diam < e^{-1/(2s)} and b >= 0; otherwise throws
/// PreconditionError naming the failed hypothesis.
double modulus_contraction_check(const CompactField& u, const OperatorParams& params);
double modulus_contraction_check(const CompactField& u, const FormMatrices& m,
                                 const OperatorParams& params);

}  // namespace fraclog
