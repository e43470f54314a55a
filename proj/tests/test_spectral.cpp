#include "fraclog/errors.hpp"
#include "fraclog/kernels.hpp"
#include "fraclog/spectral.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace fraclog;

namespace {

// direct loop over the lattice, no symbol-ball shortcut
long long brute_count(double side, double lambda, const OperatorParams& p) {
    const double dxi = 2.0 * kPi / side;
    const long long m = static_cast<long long>(std::pow(std::max(lambda, 1.0), 1.0 / (2.0 * p.s())) / dxi) + 3;
    long long count = 0;
    for (long long a = -m; a <= m; ++a) {
        for (long long b = (p.n() == 2 ? -m : 0); b <= (p.n() == 2 ? m : 0); ++b) {
            const double xi = dxi * std::hypot(static_cast<double>(a), static_cast<double>(b));
            if (symbol(xi, SymbolKind::fraclog, p) <= lambda) ++count;
        }
    }
    return count;
}

double oracle_radius(double lambda, double s) {
    auto f = [&](double r) { return std::pow(r, 2.0 * s) * 2.0 * std::log(r) - lambda; };
    boost::uintmax_t iters = 200;
    const auto bracket = boost::math::tools::toms748_solve(f, 1.0, std::exp(lambda) + 2.0,
                                                            boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (bracket.first + bracket.second);
}

}  // namespace

TEST_CASE("torus counts equal brute-force lattice enumeration and the lattice-ball count") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> dist(-0.5, 400.0);
    for (int n : {1, 2}) {
        const OperatorParams p(n, 0.5);
        const double side = n == 1 ? 2.0 * kPi : 5.0;
        const auto eigs = torus_spectrum(side, p, 400.0);
        for (int i = 0; i < 50; ++i) {
            const double lam = dist(gen);
            const long long count = count_at_most(eigs, lam);
            CHECK(count == brute_count(side, lam, p));
            if (lam > 0.0) {
                CHECK(count == lattice_ball_count(side, symbol_ball_radius(lam, p), n));
            }
        }
    }
}

TEST_CASE("torus spectrum at L = 2 pi, Lambda = 100") {
    const auto eigs = torus_spectrum(2.0 * kPi, OperatorParams(1, 0.5), 100.0);
    CHECK(eigs.size() == 35);
    CHECK(eigs.front() == 0.0);
}

TEST_CASE("modes inside the unit frequency ball are negative and counted") {
    const OperatorParams p(1, 0.5);
    const auto eigs = torus_spectrum(20.0, p, 0.0);
    CHECK(eigs.size() > 1);
    CHECK(eigs.front() < 0.0);
    CHECK(count_at_most(eigs, -1e-12) == static_cast<long long>(eigs.size()) - 1);
}

TEST_CASE("symbol ball radius") {
    for (double s : {0.1, 0.5, 0.9}) {
        const OperatorParams p(1, s);
        for (double lam = 1e-2; lam <= 1e8; lam *= 3.7) {
            const double r = symbol_ball_radius(lam, p);
            CHECK(std::abs(std::pow(r, 2.0 * s) * 2.0 * std::log(r) - lam) <= 1e-10 * lam);
            if (lam < 50.0) CHECK(r == doctest::Approx(oracle_radius(lam, s)).epsilon(1e-12));
        }
    }
    CHECK(symbol_ball_radius(2.0 * std::exp(1.0), OperatorParams(1, 0.5)) == doctest::Approx(std::exp(1.0)));
    CHECK_THROWS_AS(symbol_ball_radius(-1.0, OperatorParams(1, 0.5)), DomainError);
}

TEST_CASE("phase-space Riesz integral against radial quadrature") {
    for (int n : {1, 2}) {
        for (double s : {0.25, 0.5, 0.75}) {
            const OperatorParams p(n, s);
            for (double lam : {0.5, 10.0, 1e3}) {
                const double r = symbol_ball_radius(lam, p);
                auto f = [&](double rho) {
                    const double sym = rho > 0.0 ? std::pow(rho, 2.0 * s) * 2.0 * std::log(rho) : 0.0;
                    return (lam - sym) * std::pow(rho, n - 1);
                };
                boost::math::quadrature::tanh_sinh<double> ts;
                const double q = sphere_measure(n) *
                                 (ts.integrate(f, 0.0, 1.0, 1e-14) +
                                  boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 1.0, r, 12, 1e-14));
                CHECK(std::abs(phase_space_riesz(lam, p) - q) <= 1e-8 * q);
            }
        }
    }
}

TEST_CASE("Riesz-mean bracket and convexity on enumerated spectra") {
    for (int n : {1, 2}) {
        const OperatorParams p(n, 0.5);
        const double side = n == 1 ? 2.0 * kPi : 4.0;
        const auto eigs = torus_spectrum(side, p, 2200.0);
        for (double lam : {15.0, 120.0, 700.0, 1900.0}) {
            for (double kappa : {lam / 10.0, lam / 100.0}) {
                const double n_lam = static_cast<double>(count_at_most(eigs, lam));
                // summation rounding of the accumulated means
                const double slack = 64.0 * std::numeric_limits<double>::epsilon() * riesz_mean(eigs, lam + kappa);
                CHECK(riesz_mean(eigs, lam) - riesz_mean(eigs, lam - kappa) <= kappa * n_lam + slack);
                CHECK(kappa * n_lam <= riesz_mean(eigs, lam + kappa) - riesz_mean(eigs, lam) + slack);
            }
        }
        double prev_slope = -1.0;
        for (double lam = -1.0; lam < 2000.0; lam += 7.3) {
            const double slope = (riesz_mean(eigs, lam + 7.3) - riesz_mean(eigs, lam)) / 7.3;
            CHECK(slope >= prev_slope - 1e-12 * riesz_mean(eigs, lam + 7.3));
            prev_slope = slope;
        }
    }
}

TEST_CASE("Riesz mean tracks phase space on the torus") {
    const OperatorParams p(1, 0.5);
    const auto eigs = torus_spectrum(2.0 * kPi, p, 2e5);
    const CountingData d = counting_analysis(eigs, {1e4, 1e5, 2e5}, 2.0 * kPi, p);
    for (std::size_t i = 0; i < d.counts.size(); ++i) {
        CHECK(std::abs(d.riesz[i] - d.phase_space[i]) <= 1e-3 * d.phase_space[i]);
        CHECK(std::abs(d.geometric_ratio[i] - 1.0) <= 0.01);
    }
    CHECK_THROWS_AS(counting_analysis({2.0, 1.0}, {1.0}, 1.0, p), DomainError);
}

TEST_CASE("k-th eigenvalue law drifts toward its target; fractional control is sharp") {
    const OperatorParams p(1, 0.5);
    const auto eigs = torus_spectrum(2.0 * kPi, p, 2.2e5);
    const KthLaw law = kth_eigenvalue_law(eigs, p, 2.0 * kPi, {100, 1000, 10000, 20000});
    CHECK(law.target == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t i = 1; i < law.ratio.size(); ++i) CHECK(law.ratio[i] > law.ratio[i - 1]);
    CHECK(std::abs(law.ratio.back() - law.target) <= 0.3 * law.target);
    const auto frac = torus_spectrum(2.0 * kPi, p, 2e4, SymbolKind::fractional);
    const KthLaw control = kth_eigenvalue_law(frac, p, 2.0 * kPi, {20000}, false);
    CHECK(std::abs(control.ratio[0] - control.target) <= 0.01 * control.target);
    CHECK(std::isfinite(kth_eigenvalue_law(eigs, p, 2.0 * kPi, {2}).ratio[0]));
    CHECK_THROWS_AS(kth_eigenvalue_law(eigs, p, 2.0 * kPi, {1}), DomainError);
}

TEST_CASE("enumeration budget and unsupported symbol") {
    const OperatorParams p(2, 0.5);
    CHECK_THROWS_AS(torus_spectrum(50.0, p, 1e4, SymbolKind::fraclog, 1000), BudgetError);
    try {
        torus_spectrum(50.0, p, 1e4, SymbolKind::fraclog, 1000);
    } catch (const BudgetError& e) {
        CHECK(e.partial_count() >= 0);
    }
    CHECK_THROWS_AS(torus_spectrum(5.0, p, 10.0, SymbolKind::logarithmic), UnsupportedError);
    CHECK_THROWS_AS(torus_spectrum(-1.0, p, 10.0), DomainError);
}
