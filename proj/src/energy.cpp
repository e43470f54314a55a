#include "fraclog/energy.hpp"

#include "fraclog/errors.hpp"
#include "fraclog/kernels.hpp"
#include "fraclog/parallel.hpp"
#include "fraclog/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <unordered_map>

namespace fraclog {

double hat_autocorrelation(double t, double h) {
    const double tau = std::abs(t) / h;
    if (tau >= 2.0) {
        return 0.0;
    }
    if (tau <= 1.0) {
        return h * (2.0 / 3.0 - tau * tau + 0.5 * tau * tau * tau);
    }
    const double r = 2.0 - tau;
    return h * r * r * r / 6.0;
}

int StencilTable::index(int d0, int d1) const {
    return std::abs(d0) + (span0 + 1) * std::abs(d1);
}

namespace {

struct Stencil {
    double frac = 0.0;
    double plus = 0.0;
    double minus = 0.0;
};

// int_a^inf r^{-1-2s} ln r dr
double log_tail(double a, double s) {
    return std::pow(a, -2.0 * s) * (std::log(a) / (2.0 * s) + 1.0 / (4.0 * s * s));
}

class StencilIntegrator {
public:
    StencilIntegrator(int n, double h, double s, double c) : n_(n), h_(h), s_(s), c_(c) {}

    Stencil compute(int d0, int d1) const {
        const double h = h_;
        const double lam_d = lam(d0 * h, d1 * h);
        const double g_inf = sphere_measure(n_) * 2.0 * lam_d;

        // radii where the non-constant part of g_d lives
        double near2 = 0.0;
        double far = 0.0;
        std::vector<double> breaks;
        if (n_ == 1) {
            near2 = std::pow(std::max(0.0, (std::abs(d0) - 2.0) * h), 2);
            far = (std::abs(d0) + 2.0) * h;
            for (int m = std::max(0, std::abs(d0) - 2); m <= std::abs(d0) + 2; ++m) {
                breaks.push_back(m * h);
            }
        } else {
            const int e0 = std::abs(d0);
            const int e1 = std::abs(d1);
            near2 = std::pow(std::max(0.0, (e0 - 2.0) * h), 2) +
                    std::pow(std::max(0.0, (e1 - 2.0) * h), 2);
            far = std::hypot((e0 + 2.0) * h, (e1 + 2.0) * h);
            for (int j0 = e0 - 2; j0 <= e0 + 2; ++j0) {
                for (int j1 = e1 - 2; j1 <= e1 + 2; ++j1) {
                    breaks.push_back(h * std::hypot(j0, j1));
                }
            }
            if (e1 < 2) {
                for (int j0 = e0 - 2; j0 <= e0 + 2; ++j0) breaks.push_back(std::abs(j0) * h);
            }
            if (e0 < 2) {
                for (int j1 = e1 - 2; j1 <= e1 + 2; ++j1) breaks.push_back(std::abs(j1) * h);
            }
        }
        const double rho1 = std::min(h, 1.0);
        const double start = std::max(rho1, std::sqrt(near2));
        Stencil st;

        // (0, rho1): G = rho^2 P(rho), deg P <= 4, integrated with exact moments
        if (std::sqrt(near2) < rho1) {
            Eigen::Matrix<double, 5, 5> vand;
            Eigen::Matrix<double, 5, 1> rhs;
            for (int j = 0; j < 5; ++j) {
                const double tau = 0.5 * (1.0 - std::cos(kPi * (j + 0.5) / 5.0));
                double p = tau * tau;
                for (int m = 0; m < 5; ++m) {
                    vand(j, m) = p;
                    p *= tau;
                }
                rhs(j) = radial_g(d0, d1, rho1 * tau);
            }
            const Eigen::Matrix<double, 5, 1> q = vand.fullPivLu().solve(rhs);
            const double r2s = std::pow(rho1, -2.0 * s_);
            const double lr = std::log(rho1);
            for (int m = 0; m < 5; ++m) {
                const double e = m + 2.0 - 2.0 * s_;
                st.frac += q(m) * r2s / e;
                st.plus += c_ * q(m) * r2s * (-lr / e + 1.0 / (e * e));
            }
        }

        // (start, far): Gauss-Legendre between the kinks of G and the kernel switch at 1
        if (far > start) {
            breaks.push_back(1.0);
            std::vector<double> b = quad::merge_breaks(breaks, start, far);
            b = quad::subdivide(b, h);
            const quad::GaussRule& rule = quad::gauss_legendre(20);
            for (std::size_t p = 0; p + 1 < b.size(); ++p) {
                const double lo = b[p];
                const double hi = b[p + 1];
                if (!(hi > lo)) continue;
                const double half = 0.5 * (hi - lo);
                const double mid = 0.5 * (hi + lo);
                for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                    const double r = mid + half * rule.nodes[i];
                    const double wg = half * rule.weights[i] * std::pow(r, -1.0 - 2.0 * s_) *
                                      radial_g(d0, d1, r);
                    const double lr = std::log(r);
                    st.frac += wg;
                    if (lr < 0.0) {
                        st.plus += c_ * wg * (-lr);
                    } else {
                        st.minus += c_ * wg * lr;
                    }
                }
            }
        }

        // (max(far, rho1), inf): G is the constant |S| 2 Lam(dh)
        if (g_inf != 0.0) {
            const double a = std::max(far, rho1);
            st.frac += g_inf * std::pow(a, -2.0 * s_) / (2.0 * s_);
            if (a < 1.0) {
                st.plus += g_inf * c_ * (1.0 / (4.0 * s_ * s_) - log_tail(a, s_));
            }
            st.minus += g_inf * c_ * log_tail(std::max(a, 1.0), s_);
        }
        return st;
    }

private:
    double lam(double t0, double t1) const {
        const double a = hat_autocorrelation(t0, h_);
        return n_ == 1 ? a : a * hat_autocorrelation(t1, h_);
    }

    // G_d(rho) = int_{|w|=1} (2 Lam(dh) - Lam(dh + rho w) - Lam(dh - rho w)) dw
    double radial_g(int d0, int d1, double rho) const {
        const double t0 = d0 * h_;
        const double t1 = d1 * h_;
        if (n_ == 1) {
            return 2.0 * (2.0 * lam(t0, 0.0) - lam(t0 + rho, 0.0) - lam(t0 - rho, 0.0));
        }
        return 2.0 * kPi * 2.0 * lam(t0, t1) - 2.0 * arc(d0, d1, rho);
    }

    // int_0^{2 pi} Lam(dh + rho (cos th, sin th)) d th, split where the circle
    // crosses the grid lines inside the support box of Lam(dh + .)
    double arc(int d0, int d1, double rho) const {
        const double h = h_;
        std::vector<double> angles{0.0, 2.0 * kPi};
        for (int j = -d0 - 2; j <= -d0 + 2; ++j) {
            const double q = j * h / rho;
            if (std::abs(q) < 1.0) {
                const double a = std::acos(q);
                angles.push_back(a);
                angles.push_back(2.0 * kPi - a);
            }
        }
        for (int j = -d1 - 2; j <= -d1 + 2; ++j) {
            const double q = j * h / rho;
            if (std::abs(q) < 1.0) {
                double a = std::asin(q);
                if (a < 0.0) a += 2.0 * kPi;
                angles.push_back(a);
                double b = kPi - std::asin(q);
                angles.push_back(b);
            }
        }
        std::sort(angles.begin(), angles.end());
        const quad::GaussRule& rule = quad::gauss_legendre(16);
        const double t0 = d0 * h;
        const double t1 = d1 * h;
        double total = 0.0;
        for (std::size_t p = 0; p + 1 < angles.size(); ++p) {
            const double lo = angles[p];
            const double hi = angles[p + 1];
            if (hi - lo < 1e-15) continue;
            const double mid = 0.5 * (lo + hi);
            if (lam(t0 + rho * std::cos(mid), t1 + rho * std::sin(mid)) == 0.0) continue;
            const double half = 0.5 * (hi - lo);
            double acc = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double th = mid + half * rule.nodes[i];
                acc += rule.weights[i] * lam(t0 + rho * std::cos(th), t1 + rho * std::sin(th));
            }
            total += half * acc;
        }
        return total;
    }

    int n_;
    double h_;
    double s_;
    double c_;
};

}  // namespace

StencilTable build_stencils(const Grid& grid, const OperatorParams& params) {
    if (grid.n() != params.n()) {
        throw ConfigError("grid and operator dimensions differ");
    }
    StencilTable t;
    t.n = grid.n();
    t.h = grid.h();
    t.span0 = grid.interior(0) - 1;
    t.span1 = grid.n() == 2 ? grid.interior(1) - 1 : 0;
    const int count = (t.span0 + 1) * (t.span1 + 1);
    t.frac.assign(count, 0.0);
    t.plus.assign(count, 0.0);
    t.minus.assign(count, 0.0);
    t.mass.assign(count, 0.0);
    const double c = fractional_constant(params.n(), params.s());
    const StencilIntegrator integ(t.n, t.h, params.s(), c);
    parallel_for(count, [&](int k) {
        const int d0 = k % (t.span0 + 1);
        const int d1 = k / (t.span0 + 1);
        // swap symmetry: reuse the mirrored entry when it is also in range
        if (t.n == 2 && d1 > d0 && d1 <= t.span0 && d0 <= t.span1) {
            return;
        }
        const Stencil st = integ.compute(d0, d1);
        t.frac[k] = st.frac;
        t.plus[k] = st.plus;
        t.minus[k] = st.minus;
    });
    for (int k = 0; k < count; ++k) {
        const int d0 = k % (t.span0 + 1);
        const int d1 = k / (t.span0 + 1);
        if (t.n == 2 && d1 > d0 && d1 <= t.span0 && d0 <= t.span1) {
            const int m = t.index(d1, d0);
            t.frac[k] = t.frac[m];
            t.plus[k] = t.plus[m];
            t.minus[k] = t.minus[m];
        }
        const double a = hat_autocorrelation(d0 * t.h, t.h);
        t.mass[k] = t.n == 1 ? a : a * hat_autocorrelation(d1 * t.h, t.h);
    }
    return t;
}

Eigen::MatrixXd FormMatrices::total() const {
    return plus - minus + (0.5 * b_ns * c_ns) * frac;
}

FormMatrices form_matrices(const Grid& grid, const OperatorParams& params) {
    return form_matrices(grid, build_stencils(grid, params), params);
}

FormMatrices form_matrices(const Grid& grid, const StencilTable& table, const OperatorParams& params) {
    const int m = grid.interior_count();
    FormMatrices out;
    out.c_ns = fractional_constant(params.n(), params.s());
    out.b_ns = log_correction(params.n(), params.s());
    out.frac.resize(m, m);
    out.plus.resize(m, m);
    out.minus.resize(m, m);
    out.mass.resize(m, m);
    for (int j = 0; j < m; ++j) {
        const auto pj = grid.interior_node(j);
        for (int i = 0; i < m; ++i) {
            const auto pi = grid.interior_node(i);
            const int k = table.index(pi[0] - pj[0], pi[1] - pj[1]);
            out.frac(i, j) = table.frac[k];
            out.plus(i, j) = table.plus[k];
            out.minus(i, j) = table.minus[k];
            out.mass(i, j) = table.mass[k];
        }
    }
    return out;
}

namespace {

Eigen::VectorXd as_vector(const CompactField& u) {
    u.validate();
    const std::vector<double> v = u.interior_values();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void check_size(const CompactField& u, const FormMatrices& m) {
    if (u.grid.interior_count() != m.mass.rows()) {
        throw ConfigError("field and form matrices belong to different grids");
    }
}

}  // namespace

FormBreakdown form_bilinear(const CompactField& u, const CompactField& w, const FormMatrices& m) {
    check_size(u, m);
    check_size(w, m);
    const Eigen::VectorXd a = as_vector(u);
    const Eigen::VectorXd b = as_vector(w);
    FormBreakdown f;
    f.e_plus = a.dot(m.plus * b);
    f.e_minus = a.dot(m.minus * b);
    f.e_s = a.dot(m.frac * b);
    f.l2_norm_sq = a.dot(m.mass * b);
    f.total = f.e_plus - f.e_minus + 0.5 * m.b_ns * m.c_ns * f.e_s;
    return f;
}

FormBreakdown form_components(const CompactField& u, const FormMatrices& m) {
    return form_bilinear(u, u, m);
}

FormBreakdown form_components(const CompactField& u, const OperatorParams& params) {
    return form_components(u, form_matrices(u.grid, params));
}

double form_via_multiplier(const CompactField& u, const OperatorParams& params) {
    u.validate();
    const Grid& g = u.grid;
    const int n = g.n();
    if (n != params.n()) {
        throw ConfigError("grid and operator dimensions differ");
    }
    if (u.is_zero()) {
        return 0.0;
    }
    const double h = g.h();
    const double need = 4.0 * g.domain().diam() + 2.0;
    int nt = 1;
    while (nt * h < need || nt < 2 * g.nodes(0) || (n == 2 && nt < 2 * g.nodes(1))) {
        nt *= 2;
    }
    const double side = nt * h;
    const double dxi = 2.0 * kPi / side;
    using cd = std::complex<double>;
    std::unordered_map<long long, double> cache;
    auto mult = [&](long long k2) {
        auto it = cache.find(k2);
        if (it != cache.end()) return it->second;
        const double v = form_multiplier(dxi * std::sqrt(static_cast<double>(k2)), params);
        cache.emplace(k2, v);
        return v;
    };
    const double hn = n == 1 ? h : h * h;
    double sum = 0.0;
    if (n == 1) {
        for (int k = -nt / 2; k < nt / 2; ++k) {
            cd f = 0.0;
            for (int i = 1; i < g.cells(0); ++i) {
                f += u.samples[i] * std::polar(1.0, -2.0 * kPi * static_cast<double>(k) * i / nt);
            }
            sum += mult(static_cast<long long>(k) * k) * std::norm(hn * f);
        }
        return sum / side;
    }
    const int n0 = g.nodes(0);
    const int n1 = g.nodes(1);
    std::vector<cd> rows(static_cast<std::size_t>(nt) * n1);
    for (int k0 = 0; k0 < nt; ++k0) {
        const int kk = k0 - nt / 2;
        for (int i1 = 0; i1 < n1; ++i1) {
            cd acc = 0.0;
            for (int i0 = 1; i0 + 1 < n0; ++i0) {
                acc += u.samples[g.node_index(i0, i1)] *
                       std::polar(1.0, -2.0 * kPi * static_cast<double>(kk) * i0 / nt);
            }
            rows[static_cast<std::size_t>(k0) * n1 + i1] = acc;
        }
    }
    for (int k1 = 0; k1 < nt; ++k1) {
        const int kk1 = k1 - nt / 2;
        for (int k0 = 0; k0 < nt; ++k0) {
            const int kk0 = k0 - nt / 2;
            cd f = 0.0;
            for (int i1 = 1; i1 + 1 < n1; ++i1) {
                f += rows[static_cast<std::size_t>(k0) * n1 + i1] *
                     std::polar(1.0, -2.0 * kPi * static_cast<double>(kk1) * i1 / nt);
            }
            const long long k2 = static_cast<long long>(kk0) * kk0 + static_cast<long long>(kk1) * kk1;
            sum += mult(k2) * std::norm(hn * f);
        }
    }
    return sum / (side * side);
}

double poincare_ratio(const CompactField& u, const FormMatrices& m) {
    const FormBreakdown f = form_components(u, m);
    if (!(f.l2_norm_sq > 0.0)) {
        throw DomainError("poincare_ratio needs a nonzero field");
    }
    return f.e_plus / f.l2_norm_sq;
}

double poincare_ratio(const CompactField& u, const OperatorParams& params) {
    return poincare_ratio(u, form_matrices(u.grid, params));
}

double poincare_constant(const FormMatrices& m) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(m.plus, m.mass, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericalError("generalized eigensolve failed", 0.0);
    }
    return es.eigenvalues().minCoeff();
}

double split_bound_check(const CompactField& u, double r, const FormMatrices& m,
                         const OperatorParams& params) {
    if (!(r > 0.0 && r < 1.0)) {
        throw DomainError("split radius r must lie in (0,1)");
    }
    const FormBreakdown f = form_components(u, m);
    const double s = params.s();
    const double rhs = f.e_plus / (m.c_ns * std::log(1.0 / r)) +
                       (2.0 / s) * sphere_measure(params.n()) * std::pow(r, -2.0 * s) * f.l2_norm_sq;
    return rhs - f.e_s;
}

double split_bound_check(const CompactField& u, double r, const OperatorParams& params) {
    return split_bound_check(u, r, form_matrices(u.grid, params), params);
}

double small_diameter_constant(const DomainSpec& domain, const OperatorParams& params) {
    const double d = domain.diam();
    if (!(d < 1.0)) {
        throw PreconditionError("small-diameter bound needs diam(Omega) < 1");
    }
    const double s = params.s();
    return fractional_constant(params.n(), s) * sphere_measure(params.n()) / s *
           std::pow(d, -2.0 * s) * (std::log(1.0 / d) - 0.5 / s);
}

double minus_bound_constant(const OperatorParams& params) {
    const double s = params.s();
    return fractional_constant(params.n(), s) * sphere_measure(params.n()) / (s * s);
}

double modulus_contraction_check(const CompactField& u, const FormMatrices& m,
                                 const OperatorParams& params) {
    const double s = params.s();
    const double limit = std::exp(-0.5 / s);
    if (!(u.grid.domain().diam() < limit)) {
        throw PreconditionError("modulus contraction needs diam(Omega) < e^{-1/(2s)} = " +
                                std::to_string(limit));
    }
    if (!(log_correction(params.n(), s) >= 0.0)) {
        throw PreconditionError("modulus contraction needs b_{n,s} >= 0");
    }
    return form_components(u, m).total - form_components(u.absolute(), m).total;
}

double modulus_contraction_check(const CompactField& u, const OperatorParams& params) {
    return modulus_contraction_check(u, form_matrices(u.grid, params), params);
}

}  // namespace fraclog
