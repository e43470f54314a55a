#include "fraclog/errors.hpp"
#include "fraclog/extension.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <doctest.h>

#include <cmath>

using namespace fraclog;

namespace {

const AnalyticTestFunction kGauss{Family::gaussian, {0.0, 0.0}, 1.0, 1.0};
const AnalyticTestFunction kBump{Family::bump, {0.0, 0.0}, 1.0, 1.0};

// the defining y-integrals, split at y = x where the kernel peaks
std::pair<double, double> direct_extension(const AnalyticTestFunction& u, double x, double t, double s) {
    const double p = constants(OperatorParams(1, s)).p_ns;
    auto kernel = [&](double y) { return std::pow(t, 2.0 * s) * std::pow((x - y) * (x - y) + t * t, -0.5 - s); };
    auto fw = [&](double y) { return kernel(y) * u.value({y, 0.0}, 1); };
    auto fv = [&](double y) {
        return kernel(y) * u.value({y, 0.0}, 1) * (2.0 * std::log(t) - std::log((x - y) * (x - y) + t * t));
    };
    const double lo = u.center[0] - 12.0 * u.width;
    const double hi = u.center[0] + 12.0 * u.width;
    double e = 0.0;
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double w = GK::integrate(fw, lo, x, 25, 1e-14, &e) + GK::integrate(fw, x, hi, 25, 1e-14, &e);
    const double v = GK::integrate(fv, lo, x, 25, 1e-14, &e) + GK::integrate(fv, x, hi, 25, 1e-14, &e);
    return {p * w, p * v};
}

}  // namespace

TEST_CASE("extension values against direct integration") {
    for (double s : {0.25, 0.5, 0.75}) {
        for (double t : {0.3, 1.0}) {
            for (double x : {0.0, 0.8}) {
                const auto [w, v] = direct_extension(kGauss, x, t, s);
                const ExtensionEvaluation e = eval_extension(kGauss, {x, 0.0}, t, OperatorParams(1, s));
                CHECK(e.w == doctest::Approx(w).epsilon(1e-10));
                CHECK(e.v == doctest::Approx(v).epsilon(1e-10));
                CHECK(e.quadrature_error >= 0.0);
                CHECK(e.t == t);
            }
        }
    }
}

TEST_CASE("b1 integral matches its digamma form") {
    for (int n : {1, 2}) {
        for (double s = 0.05; s < 0.96; s += 0.1) {
            const OperatorParams p(n, s);
            const double closed = boost::math::digamma(s) - boost::math::digamma(n / 2.0 + s);
            CHECK(std::abs(b1_integral(p) - closed) <= 1e-8 * std::abs(closed));
        }
    }
    // independent z-space quadrature for n = 1
    for (double s : {0.3, 0.5, 0.8}) {
        const OperatorParams p(1, s);
        boost::math::quadrature::exp_sinh<double> es;
        const double q = es.integrate([&](double z) { return -std::log1p(z * z) * std::pow(z * z + 1.0, -0.5 - s); });
        CHECK(std::abs(2.0 * constants(p).p_ns * q - constants(p).b1) <= 1e-8 * std::abs(constants(p).b1));
    }
}

TEST_CASE("boundary traces") {
    const OperatorParams p(1, 0.5);
    const double u0 = kBump.value({0.0, 0.0}, 1);
    const ExtensionEvaluation e = eval_extension(kBump, {0.0, 0.0}, 1e-3, p);
    CHECK(std::abs(e.w - u0) <= 1e-2 * u0);
    const TraceStudy ts = trace_study(kBump, {0.0, 0.0}, p, {1e-2, 5e-3, 2e-3, 1e-3});
    CHECK(ts.monotone);
    CHECK(ts.fitted_rate > 0.0);
    const ExtensionEvaluation z = eval_extension(kBump.scaled(0.0), {0.0, 0.0}, 0.1, p);
    CHECK(z.w == 0.0);
    CHECK(z.v == 0.0);
}

TEST_CASE("degenerate PDE residual") {
    const OperatorParams p(1, 0.5);
    CHECK(pde_residual(kBump, {0.0, 0.0}, 0.5, p, 1e-3) <= 1e-3);
    for (double t : {0.1, 0.4, 1.0}) {
        for (double s : {0.3, 0.7}) {
            CHECK(pde_residual(kGauss, {0.3, 0.0}, t, OperatorParams(1, s), 1e-3) <= 1e-3);
        }
    }
    const double r1 = pde_residual(kBump, {0.0, 0.0}, 0.5, p, 1e-2);
    const double r2 = pde_residual(kBump, {0.0, 0.0}, 0.5, p, 5e-3);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.1));
    CHECK(pde_residual(kBump.scaled(0.0), {0.0, 0.0}, 0.5, p, 1e-3) == 0.0);
    CHECK_THROWS_AS(pde_residual(kBump, {0.0, 0.0}, 0.1, p, 0.06), DomainError);
}

TEST_CASE("weighted boundary limit recovers the operator") {
    const OperatorParams p(1, 0.5);
    const DtnResult d = dtn_limit(kGauss, {0.0, 0.0}, p, {0.1, 0.05, 0.025, 0.0125});
    const double ref = eval_fraclog_fourier(kGauss, {0.0, 0.0}, p).value;
    CHECK(std::abs(d.value - ref) <= 1e-2 * std::abs(ref));
    CHECK(d.terms.size() == 4);
    CHECK(d.exponent == doctest::Approx(1.0));

    std::vector<double> heights;
    for (int i = 0; i < 8; ++i) heights.push_back(0.1 / std::pow(2.0, i));
    for (double s : {0.25, 0.75}) {
        const OperatorParams q(1, s);
        const AnalyticTestFunction g{Family::gaussian, {0.2, 0.0}, 0.8, 1.3};
        const double value = dtn_limit(g, {0.7, 0.0}, q, heights).value;
        const double fourier = eval_fraclog_fourier(g, {0.7, 0.0}, q).value;
        CHECK(std::abs(value - fourier) <= 1e-2 * std::abs(fourier));
    }

    const double moved = dtn_limit(kGauss.shifted({2.5, 0.0}), {2.5, 0.0}, p, {0.1, 0.05, 0.025, 0.0125}).value;
    CHECK(moved == doctest::Approx(d.value).epsilon(1e-9));
    CHECK(dtn_limit(kGauss.scaled(0.0), {0.0, 0.0}, p, {0.1, 0.05, 0.025}).value == 0.0);
}

TEST_CASE("extension inputs are validated") {
    const OperatorParams p(1, 0.5);
    CHECK_THROWS_AS(eval_extension(kGauss, {0.0, 0.0}, 1e-7, p), ConfigError);
    CHECK_THROWS_AS(eval_extension(kGauss, {0.0, 0.0}, 0.1, OperatorParams(2, 0.5)), UnsupportedError);
    CHECK_THROWS_AS(dtn_limit(kGauss, {0.0, 0.0}, p, {0.05, 0.1, 0.01}), DomainError);
    CHECK_THROWS_AS(dtn_limit(kGauss, {0.0, 0.0}, p, {0.1, 0.05, 1e-5}), DomainError);
    CHECK_THROWS_AS(dtn_limit(kGauss, {0.0, 0.0}, p, {0.1, 0.05}), DomainError);
}
