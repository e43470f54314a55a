#include "fraclog/dirichlet.hpp"

#include "fraclog/errors.hpp"
#include "fraclog/kernels.hpp"
#include "fraclog/quadrature.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace fraclog {

const char* to_string(AssemblyRoute route) {
    return route == AssemblyRoute::kernel ? "kernel" : "torus_symbol";
}

AssemblyRoute assembly_route_from_string(const std::string& name) {
    if (name == "kernel") return AssemblyRoute::kernel;
    if (name == "torus_symbol" || name == "torus") return AssemblyRoute::torus_symbol;
    throw ConfigError("unknown assembly route '" + name + "'");
}

int default_torus_points(const Grid& grid) {
    const double need = 4.0 * grid.domain().diam() + 2.0;
    int nt = 2;
    while (nt * grid.h() < need) {
        nt *= 2;
    }
    return nt;
}

namespace {

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

// sum over alias images j in (J, inf) of sigma(xi_j) * 16 / (h^2 xi_j^4), by
// the midpoint Euler-Maclaurin integral from xi_start = xi(J + 1/2)
double alias_tail(double xi_start, double h, double s) {
    const double p1 = 3.0 - 2.0 * s;
    const double integral = 2.0 * std::pow(xi_start, -p1) * (std::log(xi_start) / p1 + 1.0 / (p1 * p1));
    return (h / (2.0 * kPi)) * 16.0 / (h * h) * integral;
}

}  // namespace

std::vector<double> torus_symbol_stencil(const Grid& grid, const OperatorParams& params,
                                         int torus_points, int alias_images) {
    const int n = grid.n();
    const double h = grid.h();
    const int nt = torus_points;
    const double side = nt * h;
    if (!is_pow2(nt)) {
        throw ConfigError("torus point count must be a power of two");
    }
    if (side < 4.0 * grid.domain().diam() + 2.0 - 1e-12) {
        throw ConfigError("torus side must be at least 4 diam(Omega) + 2");
    }
    if (nt < grid.cells(0) + 1 || (n == 2 && nt < grid.cells(1) + 1)) {
        throw ConfigError("torus too small for the grid");
    }
    const double s = params.s();
    const double dxi = 2.0 * kPi / side;
    const int span0 = grid.interior(0) - 1;
    const int span1 = n == 2 ? grid.interior(1) - 1 : 0;
    std::vector<double> out(static_cast<std::size_t>(span0 + 1) * (span1 + 1), 0.0);

    // 1D transform of the hat, squared, at xi = dxi * k
    auto hat2 = [&](long long k) {
        if (k == 0) return h * h;
        const double x = kPi * static_cast<double>(k) / nt;
        const double sn = std::sin(x) / x;
        return h * h * sn * sn * sn * sn;
    };

    if (n == 1) {
        const int jmax = alias_images > 0 ? alias_images : 256;
        std::vector<double> w(nt, 0.0);
        for (int k0 = 1; k0 < nt; ++k0) {
            double acc = 0.0;
            for (int j = -jmax; j <= jmax; ++j) {
                const long long k = k0 + static_cast<long long>(j) * nt;
                acc += symbol(dxi * std::abs(static_cast<double>(k)), SymbolKind::fraclog, params) * hat2(k);
            }
            const double sn = std::sin(kPi * k0 / nt);
            const double s4 = sn * sn * sn * sn;
            acc += s4 * alias_tail(dxi * ((jmax + 0.5) * nt + k0), h, s);
            acc += s4 * alias_tail(dxi * ((jmax + 0.5) * nt - k0), h, s);
            w[k0] = acc;
        }
        for (int d = 0; d <= span0; ++d) {
            double acc = 0.0;
            for (int k0 = 1; k0 < nt; ++k0) {
                acc += w[k0] * std::cos(2.0 * kPi * static_cast<double>(k0) * d / nt);
            }
            out[d] = acc / side;
        }
        return out;
    }

    const int jmax = alias_images > 0 ? alias_images : 16;
    std::vector<double> w(static_cast<std::size_t>(nt) * nt, 0.0);
    for (int k1 = 0; k1 < nt; ++k1) {
        for (int k0 = 0; k0 < nt; ++k0) {
            if (k0 == 0 && k1 == 0) continue;
            double acc = 0.0;
            for (int j1 = -jmax; j1 <= jmax; ++j1) {
                const long long q1 = k1 + static_cast<long long>(j1) * nt;
                const double h1 = hat2(q1);
                if (h1 == 0.0) continue;
                for (int j0 = -jmax; j0 <= jmax; ++j0) {
                    const long long q0 = k0 + static_cast<long long>(j0) * nt;
                    const double h0 = hat2(q0);
                    if (h0 == 0.0) continue;
                    const double xi = dxi * std::hypot(static_cast<double>(q0), static_cast<double>(q1));
                    acc += symbol(xi, SymbolKind::fraclog, params) * h0 * h1;
                }
            }
            w[static_cast<std::size_t>(k1) * nt + k0] = acc;
        }
    }
    std::vector<double> cosv(nt);
    for (int d1 = 0; d1 <= span1; ++d1) {
        for (int d0 = 0; d0 <= span0; ++d0) {
            double acc = 0.0;
            for (int k1 = 0; k1 < nt; ++k1) {
                const double c1 = std::cos(2.0 * kPi * static_cast<double>(k1) * d1 / nt);
                for (int k0 = 0; k0 < nt; ++k0) {
                    acc += w[static_cast<std::size_t>(k1) * nt + k0] * c1 *
                           std::cos(2.0 * kPi * static_cast<double>(k0) * d0 / nt);
                }
            }
            out[d0 + static_cast<std::size_t>(span0 + 1) * d1] = acc / (side * side);
        }
    }
    return out;
}

AssembledSystem assemble(const DomainSpec& domain, const Discretization& disc,
                         const OperatorParams& params, AssemblyRoute route) {
    if (domain.n != params.n()) {
        throw ConfigError("domain and operator dimensions differ");
    }
    Grid grid(domain, disc.elements_per_axis);
    const StencilTable table = build_stencils(grid, params);
    FormMatrices forms = form_matrices(grid, table, params);
    AssembledSystem sys{grid, params, route, Eigen::MatrixXd(), forms.mass, 0.0, 0, std::nullopt};
    if (route == AssemblyRoute::kernel) {
        sys.stiffness = forms.total();
    } else {
        const int nt = disc.torus_points > 0 ? disc.torus_points : default_torus_points(grid);
        const std::vector<double> st = torus_symbol_stencil(grid, params, nt, disc.alias_images);
        const int m = grid.interior_count();
        sys.stiffness.resize(m, m);
        for (int j = 0; j < m; ++j) {
            const auto pj = grid.interior_node(j);
            for (int i = 0; i < m; ++i) {
                const auto pi = grid.interior_node(i);
                sys.stiffness(i, j) = st[table.index(pi[0] - pj[0], pi[1] - pj[1])];
            }
        }
        sys.torus_points = nt;
        sys.torus_side = nt * grid.h();
    }
    sys.forms = std::move(forms);
    return sys;
}

SpectrumResult solve_eigs(const Eigen::MatrixXd& stiffness, const Eigen::MatrixXd& mass, int count,
                          bool with_vectors, const std::string& route) {
    const int dim = static_cast<int>(stiffness.rows());
    if (count < 0 || count > dim) {
        throw DomainError("eigenpair count exceeds the matrix dimension");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(mass);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("mass matrix is not positive definite (assembly integrity)", 0.0);
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
        stiffness, mass, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (es.info() != Eigen::Success) {
        throw NumericalError("generalized eigensolve failed", 0.0);
    }
    SpectrumResult out;
    out.route = route;
    Eigen::MatrixXd vecs = es.eigenvectors().leftCols(count);
    for (int k = 0; k < count; ++k) {
        out.eigenvalues.push_back(es.eigenvalues()(k));
        auto col = vecs.col(k);
        const double big = col.cwiseAbs().maxCoeff();
        for (int i = 0; i < dim; ++i) {
            if (std::abs(col(i)) > 1e-12 * big) {
                if (col(i) < 0.0) col *= -1.0;
                break;
            }
        }
        out.residuals.push_back((stiffness * col - es.eigenvalues()(k) * (mass * col)).norm());
    }
    if (count > 0) {
        const Eigen::MatrixXd gram = vecs.transpose() * mass * vecs;
        out.gram_residual = (gram - Eigen::MatrixXd::Identity(count, count)).cwiseAbs().maxCoeff();
    }
    if (with_vectors) {
        out.eigenvectors = std::move(vecs);
    }
    return out;
}

SpectrumResult solve_eigs(const AssembledSystem& system, int count, bool with_vectors) {
    return solve_eigs(system.stiffness, system.mass, count, with_vectors, to_string(system.route));
}

CoercivityCertificate coercivity_certificate(const OperatorParams& params, double r, double min_v) {
    const int n = params.n();
    const double s = params.s();
    const double b = log_correction(n, s);
    const double c = fractional_constant(n, s);
    const double sphere = sphere_measure(n);
    const double r_max = std::exp(-0.5 * std::abs(b));
    if (!(r > 0.0 && r < r_max)) {
        throw DomainError("r must lie in (0, e^{-|b|/2}) = (0, " + std::to_string(r_max) + ")");
    }
    CoercivityCertificate cert;
    cert.alpha_r = 1.0 - std::abs(b) / (2.0 * std::log(1.0 / r));
    cert.condition_rhs = c * sphere / (s * s) + std::abs(b) * c * sphere * std::pow(r, -2.0 * s) / s;
    cert.min_v = min_v;
    cert.certified = min_v >= cert.condition_rhs;
    return cert;
}

namespace {

// Cell loop with a 3-point Gauss rule per axis: exact for the P1/Q1 triple products.
template <class F>
void for_each_cell_gauss(const Grid& grid, F&& f) {
    const quad::GaussRule& g = quad::gauss_legendre(3);
    const double h = grid.h();
    const int n = grid.n();
    const int c1 = n == 2 ? grid.cells(1) : 1;
    const int q1 = n == 2 ? 3 : 1;
    for (int e1 = 0; e1 < c1; ++e1) {
        for (int e0 = 0; e0 < grid.cells(0); ++e0) {
            for (int a1 = 0; a1 < q1; ++a1) {
                for (int a0 = 0; a0 < 3; ++a0) {
                    const double x0 = 0.5 * (1.0 + g.nodes[a0]);
                    const double x1 = n == 2 ? 0.5 * (1.0 + g.nodes[a1]) : 0.0;
                    double wt = 0.5 * h * g.weights[a0];
                    if (n == 2) wt *= 0.5 * h * g.weights[a1];
                    // local nodes and basis values
                    std::array<int, 4> node{};
                    std::array<double, 4> phi{};
                    int cnt = 0;
                    for (int b1 = 0; b1 < (n == 2 ? 2 : 1); ++b1) {
                        for (int b0 = 0; b0 < 2; ++b0) {
                            node[cnt] = grid.node_index(e0 + b0, n == 2 ? e1 + b1 : 0);
                            double v = b0 ? x0 : 1.0 - x0;
                            if (n == 2) v *= b1 ? x1 : 1.0 - x1;
                            phi[cnt] = v;
                            ++cnt;
                        }
                    }
                    f(node, phi, cnt, wt);
                }
            }
        }
    }
}

std::vector<int> node_to_interior(const Grid& grid) {
    std::vector<int> map(grid.node_count(), -1);
    for (int k = 0; k < grid.interior_count(); ++k) {
        const auto p = grid.interior_node(k);
        map[grid.node_index(p[0], p[1])] = k;
    }
    return map;
}

}  // namespace

Eigen::MatrixXd potential_mass(const Grid& grid, const std::vector<double>& v_nodes) {
    if (static_cast<int>(v_nodes.size()) != grid.node_count()) {
        throw ConfigError("potential sample count does not match the grid");
    }
    const std::vector<int> map = node_to_interior(grid);
    const int m = grid.interior_count();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    for_each_cell_gauss(grid, [&](const std::array<int, 4>& node, const std::array<double, 4>& phi,
                                  int cnt, double wt) {
        double v = 0.0;
        for (int a = 0; a < cnt; ++a) v += v_nodes[node[a]] * phi[a];
        for (int a = 0; a < cnt; ++a) {
            const int i = map[node[a]];
            if (i < 0) continue;
            for (int b = 0; b < cnt; ++b) {
                const int j = map[node[b]];
                if (j < 0) continue;
                out(i, j) += wt * v * phi[a] * phi[b];
            }
        }
    });
    return out;
}

Eigen::VectorXd load_vector(const Grid& grid, const std::vector<double>& f_nodes) {
    if (static_cast<int>(f_nodes.size()) != grid.node_count()) {
        throw ConfigError("source sample count does not match the grid");
    }
    const std::vector<int> map = node_to_interior(grid);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(grid.interior_count());
    for_each_cell_gauss(grid, [&](const std::array<int, 4>& node, const std::array<double, 4>& phi,
                                  int cnt, double wt) {
        double f = 0.0;
        for (int a = 0; a < cnt; ++a) f += f_nodes[node[a]] * phi[a];
        for (int a = 0; a < cnt; ++a) {
            const int i = map[node[a]];
            if (i >= 0) out(i) += wt * f * phi[a];
        }
    });
    return out;
}

PoissonResult solve_poisson(const AssembledSystem& system, const std::vector<double>& v_nodes,
                            const std::vector<double>& f_nodes, double r) {
    const Grid& grid = system.grid;
    for (double v : v_nodes) {
        if (!std::isfinite(v)) throw DomainError("potential samples must be finite");
    }
    for (double v : f_nodes) {
        if (!std::isfinite(v)) throw DomainError("source samples must be finite");
    }
    if (static_cast<int>(v_nodes.size()) != grid.node_count() ||
        static_cast<int>(f_nodes.size()) != grid.node_count()) {
        throw ConfigError("potential/source sample counts do not match the grid");
    }
    const double min_v = *std::min_element(v_nodes.begin(), v_nodes.end());
    PoissonResult out;
    out.certificate = coercivity_certificate(system.params, r, min_v);

    const Eigen::MatrixXd a = system.stiffness + potential_mass(grid, v_nodes);
    const Eigen::VectorXd load = load_vector(grid, f_nodes);
    Eigen::VectorXd c;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    out.system_pd = llt.info() == Eigen::Success;
    if (out.system_pd) {
        c = llt.solve(load);
    } else {
        c = a.fullPivLu().solve(load);
    }
    const double fn = load.norm();
    out.residual = fn > 0.0 ? (a * c - load).norm() / fn : (a * c).norm();
    out.coefficients.assign(c.data(), c.data() + c.size());
    out.sup_norm = c.size() > 0 ? c.cwiseAbs().maxCoeff() : 0.0;

    const FormMatrices forms = system.forms ? *system.forms : form_matrices(grid, system.params);
    out.form_norm = std::sqrt(std::max(0.0, c.dot(forms.plus * c)));
    Eigen::LLT<Eigen::MatrixXd> plus_llt(forms.plus);
    if (plus_llt.info() != Eigen::Success) {
        throw NumericalError("E_+ matrix is not positive definite", 0.0);
    }
    out.dual_norm = std::sqrt(std::max(0.0, load.dot(plus_llt.solve(load))));
    out.bound_ratio = out.dual_norm > 0.0 ? out.form_norm * out.certificate.alpha_r / out.dual_norm : 0.0;
    return out;
}

}  // namespace fraclog
