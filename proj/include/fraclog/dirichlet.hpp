#pragma once

// Galerkin discretization of the Dirichlet problem for (-Delta)^{s+Log} on a
// box: stiffness assembly by the kernel stencils or by the symbol on a
// padded torus, generalized eigenpairs and the Poisson solve.

#include "fraclog/energy.hpp"
#include "fraclog/grid.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace fraclog {

enum class AssemblyRoute { kernel, torus_symbol };

const char* to_string(AssemblyRoute route);
AssemblyRoute assembly_route_from_string(const std::string& name);

struct Discretization {
    int elements_per_axis = 64;
    /// Torus points per axis for the symbol route; 0 picks the smallest
    /// power of two with side >= 4 diam + 2. The side is points * h.
    int torus_points = 0;
    /// Alias images summed per axis on the symbol route.
    int alias_images = 0;  // 0: 256 in 1D, 16 in 2D
};

struct AssembledSystem {
    Grid grid;
    OperatorParams params;
    AssemblyRoute route;
    Eigen::MatrixXd stiffness;
    Eigen::MatrixXd mass;
    double torus_side = 0.0;  // symbol route only
    int torus_points = 0;
    /// Kernel-route form matrices, kept for the Poisson certificate.
    std::optional<FormMatrices> forms;
};

AssembledSystem assemble(const DomainSpec& domain, const Discretization& disc,
                         const OperatorParams& params, AssemblyRoute route);

/// Toeplitz stiffness stencil of the symbol route, indexed like StencilTable.
std::vector<double> torus_symbol_stencil(const Grid& grid, const OperatorParams& params,
                                         int torus_points, int alias_images);

/// Smallest admissible power-of-two torus size for the grid.
int default_torus_points(const Grid& grid);

struct SpectrumResult {
    std::vector<double> eigenvalues;
    Eigen::MatrixXd eigenvectors;  // mass-orthonormal columns; empty when not requested
    std::string route;
    std::vector<double> residuals;  // ||S v - lambda M v||
    double gram_residual = 0.0;     // max |V^T M V - I|
};

/// Lowest `count` pairs of S v = lambda M v via Cholesky reduction of M.
/// Each eigenvector's first entry above 1e-12 of its max is made positive.
SpectrumResult solve_eigs(const AssembledSystem& system, int count, bool with_vectors = true);

/// Lowest pairs of a dense symmetric-definite pencil.
SpectrumResult solve_eigs(const Eigen::MatrixXd& stiffness, const Eigen::MatrixXd& mass, int count,
                          bool with_vectors, const std::string& route);

struct CoercivityCertificate {
    double alpha_r = 0.0;
    double condition_rhs = 0.0;
    double min_v = 0.0;
    bool certified = false;
};

/// alpha_r = 1 - |b|/(2 ln(1/r)) and the potential threshold
/// c|S|/s^2 + |b| c |S| r^{-2s} / s. r must lie in (0, e^{-|b|/2}).
CoercivityCertificate coercivity_certificate(const OperatorParams& params, double r, double min_v);

struct PoissonResult {
    std::vector<double> coefficients;  // interior nodes
    CoercivityCertificate certificate;
    bool system_pd = false;
    double residual = 0.0;     // ||(S + M_V) c - F|| / ||F||
    double form_norm = 0.0;    // sqrt(E_+(u,u))
    double dual_norm = 0.0;    // sqrt(F^T A_+^{-1} F)
    double bound_ratio = 0.0;  // form_norm * alpha_r / dual_norm
    double sup_norm = 0.0;
};

/// V and f are sampled on every grid node. The solve is attempted even when
/// min V misses the threshold; the certificate then reports certified = false.
PoissonResult solve_poisson(const AssembledSystem& system, const std::vector<double>& v_nodes,
                            const std::vector<double>& f_nodes, double r);

/// Integral of V_h phi_i phi_j over interior nodes, V_h the nodal interpolant.
Eigen::MatrixXd potential_mass(const Grid& grid, const std::vector<double>& v_nodes);

/// Load vector F_i = int f_h phi_i.
Eigen::VectorXd load_vector(const Grid& grid, const std::vector<double>& f_nodes);

}  // namespace fraclog
