#include "fraclog/dirichlet.hpp"
#include "fraclog/errors.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

#include <cmath>

using namespace fraclog;

namespace {

const DomainSpec kInterval = DomainSpec::interval(-0.15, 0.15);

AssembledSystem build(int cells, AssemblyRoute route, double s = 0.5) {
    Discretization disc;
    disc.elements_per_axis = cells;
    return assemble(kInterval, disc, OperatorParams(1, s), route);
}

}  // namespace

TEST_CASE("eigenpairs satisfy the pencil and are mass-orthonormal") {
    const AssembledSystem sys = build(64, AssemblyRoute::kernel);
    const SpectrumResult r = solve_eigs(sys, 10);
    REQUIRE(r.eigenvalues.size() == 10);
    CHECK(std::is_sorted(r.eigenvalues.begin(), r.eigenvalues.end()));
    CHECK(r.gram_residual < 1e-10);
    for (std::size_t k = 0; k < 10; ++k) {
        CHECK(r.residuals[k] <= 1e-9 * std::abs(r.eigenvalues[k]) * sys.mass.norm());
    }
    CHECK(r.eigenvalues[0] > 0.0);
    const auto v = r.eigenvectors.col(0);
    CHECK(v.minCoeff() * v.maxCoeff() >= -1e-8);
    CHECK(v.maxCoeff() > 0.0);
}

TEST_CASE("kernel and torus-symbol assemblies agree") {
    const SpectrumResult a = solve_eigs(build(64, AssemblyRoute::kernel), 10, false);
    const SpectrumResult b = solve_eigs(build(64, AssemblyRoute::torus_symbol), 10, false);
    for (std::size_t k = 0; k < 10; ++k) {
        CHECK(std::abs(a.eigenvalues[k] - b.eigenvalues[k]) <= 0.02 * std::abs(a.eigenvalues[k]));
    }
}

TEST_CASE("a larger torus shrinks the dual-route gap") {
    Discretization disc;
    disc.elements_per_axis = 64;
    const OperatorParams p(1, 0.5);
    const auto ref = solve_eigs(assemble(kInterval, disc, p, AssemblyRoute::kernel), 5, false).eigenvalues;
    auto gap_for = [&](int points) {
        disc.torus_points = points;
        const auto t = solve_eigs(assemble(kInterval, disc, p, AssemblyRoute::torus_symbol), 5, false).eigenvalues;
        double g = 0.0;
        for (std::size_t k = 0; k < 5; ++k) g = std::max(g, std::abs(t[k] - ref[k]) / ref[k]);
        return g;
    };
    const int base = default_torus_points(Grid(kInterval, 64));
    CHECK(gap_for(4 * base) < 0.5 * gap_for(base));
}

TEST_CASE("two-dimensional routes agree on a small box") {
    Discretization disc;
    disc.elements_per_axis = 8;
    const OperatorParams p(2, 0.5);
    const DomainSpec box = DomainSpec::box(0.0, 0.2, 0.0, 0.2);
    const auto a = solve_eigs(assemble(box, disc, p, AssemblyRoute::kernel), 4, false).eigenvalues;
    const auto b = solve_eigs(assemble(box, disc, p, AssemblyRoute::torus_symbol), 4, false).eigenvalues;
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(std::abs(a[k] - b[k]) <= 0.02 * std::abs(a[k]));
    }
    // the square's symmetry doubles the second eigenvalue
    CHECK(a[1] == doctest::Approx(a[2]).epsilon(1e-9));
}

TEST_CASE("refinement lowers the eigenvalues") {
    const auto coarse = solve_eigs(build(32, AssemblyRoute::kernel), 3, false).eigenvalues;
    const auto fine = solve_eigs(build(64, AssemblyRoute::kernel), 3, false).eigenvalues;
    for (std::size_t k = 0; k < 3; ++k) CHECK(fine[k] <= coarse[k] * (1.0 + 1e-12));
}

TEST_CASE("coercivity certificate matches hand-derived values") {
    const double b = 2.0 - 2.0 * kEulerGamma;
    const double c = 1.0 / kPi;
    const double r = 0.1;
    const double alpha = 1.0 - b / (2.0 * std::log(1.0 / r));
    const double rhs = c * 2.0 / 0.25 + b * c * 2.0 / r / 0.5;
    const CoercivityCertificate cert = coercivity_certificate(OperatorParams(1, 0.5), r, 14.0);
    CHECK(std::abs(cert.alpha_r - alpha) <= 1e-12);
    CHECK(std::abs(cert.condition_rhs - rhs) <= 1e-10);
    CHECK(cert.alpha_r == doctest::Approx(0.8163871).epsilon(1e-6));
    CHECK(cert.condition_rhs == doctest::Approx(13.312594).epsilon(1e-6));
    CHECK(cert.certified);
    CHECK_FALSE(coercivity_certificate(OperatorParams(1, 0.5), r, 13.0).certified);
    CHECK_THROWS_AS(coercivity_certificate(OperatorParams(1, 0.5), 0.9, 14.0), DomainError);
    CHECK_THROWS_AS(coercivity_certificate(OperatorParams(1, 0.5), 0.0, 14.0), DomainError);
}

TEST_CASE("Poisson solve: definiteness, a priori bound, linearity and zero data") {
    const AssembledSystem sys = build(64, AssemblyRoute::kernel);
    const int nodes = sys.grid.node_count();
    std::vector<double> v(static_cast<std::size_t>(nodes), 14.0);
    std::vector<double> f(v.size(), 0.0), f2(v.size(), 0.0), zero(v.size(), 0.0);
    for (int i = 0; i < nodes; ++i) {
        const double x = sys.grid.node_point(i, 0)[0];
        f[static_cast<std::size_t>(i)] = std::cos(7.0 * x);
        f2[static_cast<std::size_t>(i)] = 2.0 * f[static_cast<std::size_t>(i)];
    }
    const PoissonResult r = solve_poisson(sys, v, f, 0.1);
    CHECK(r.system_pd);
    CHECK(r.certificate.certified);
    CHECK(r.residual < 1e-10);
    CHECK(r.bound_ratio <= 1.0);
    const PoissonResult r2 = solve_poisson(sys, v, f2, 0.1);
    for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
        CHECK(r2.coefficients[i] == doctest::Approx(2.0 * r.coefficients[i]).epsilon(1e-10));
    }
    const PoissonResult r0 = solve_poisson(sys, v, zero, 0.1);
    CHECK(r0.sup_norm == 0.0);
}

TEST_CASE("load vector and potential mass integrate exactly") {
    const Grid grid(kInterval, 16);
    std::vector<double> one(static_cast<std::size_t>(grid.node_count()), 1.0);
    const Eigen::VectorXd load = load_vector(grid, one);
    CHECK(load.sum() == doctest::Approx(0.3 - grid.h()).epsilon(1e-13));
    const Eigen::MatrixXd mv = potential_mass(grid, one);
    const FormMatrices m = form_matrices(grid, OperatorParams(1, 0.5));
    CHECK((mv - m.mass).norm() <= 1e-13 * m.mass.norm());
}

TEST_CASE("assembly options are validated") {
    CHECK(assembly_route_from_string("kernel") == AssemblyRoute::kernel);
    CHECK(assembly_route_from_string(to_string(AssemblyRoute::torus_symbol)) == AssemblyRoute::torus_symbol);
    CHECK_THROWS_AS(assembly_route_from_string("fem"), ConfigError);
    Discretization disc;
    disc.elements_per_axis = 32;
    disc.torus_points = 300;
    CHECK_THROWS_AS(assemble(kInterval, disc, OperatorParams(1, 0.5), AssemblyRoute::torus_symbol), ConfigError);
    disc.torus_points = 64;
    CHECK_THROWS_AS(assemble(kInterval, disc, OperatorParams(1, 0.5), AssemblyRoute::torus_symbol), ConfigError);
}
