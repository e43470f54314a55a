#include "fraclog/errors.hpp"
#include "fraclog/specfun.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

#include <cmath>
#include <limits>

using namespace fraclog;

namespace {

// independent closed forms through Boost
double oracle_c(int n, double s) {
    return std::pow(4.0, s) * std::pow(kPi, -n / 2.0) * s * boost::math::tgamma(n / 2.0 + s) /
           boost::math::tgamma(1.0 - s);
}
double oracle_b(int n, double s) {
    return std::log(4.0) + 1.0 / s + boost::math::digamma(1.0 - s) + boost::math::digamma(n / 2.0 + s);
}

}  // namespace

TEST_CASE("digamma matches boost") {
    for (double x : {1e-3, 0.05, 0.1, 0.5, 1.0, 1.4616321449683623, 2.7, 9.99, 10.0, 10.01, 33.3, 50.0, 1e4}) {
        const double ref = boost::math::digamma(x);
        CHECK(std::abs(digamma(x) - ref) <= 2e-14 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("gamma matches boost") {
    for (double x : {1e-3, 0.3, 0.5, 1.0, 2.5, 7.25, 20.0}) {
        const double ref = boost::math::tgamma(x);
        CHECK(std::abs(gamma_fn(x) - ref) <= 1e-14 * ref);
    }
}

TEST_CASE("special functions reject nonpositive arguments") {
    CHECK_THROWS_AS(digamma(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-1.0), DomainError);
}

TEST_CASE("closed-form anchors at n = 1, s = 1/2") {
    const OperatorConstants k = constants(OperatorParams(1, 0.5));
    CHECK(std::abs(k.c_ns - 1.0 / kPi) <= 1e-12);
    CHECK(std::abs(k.b_ns - (2.0 - 2.0 * kEulerGamma)) <= 1e-12);
    CHECK(std::abs(k.d_s - 1.0) <= 1e-12);
    CHECK(std::abs(k.b1 + 2.0 * kLn2) <= 1e-12);
    CHECK(std::abs(k.rho_n + 2.0 * kEulerGamma) <= 1e-12);
    CHECK(std::abs(k.c_n - 1.0) <= 1e-14);
    const OperatorConstants k2 = constants(OperatorParams(2, 0.5));
    CHECK(std::abs(k2.rho_n - (2.0 * kLn2 - 2.0 * kEulerGamma)) <= 1e-12);
    CHECK(std::abs(k2.c_n - 1.0 / kPi) <= 1e-14);
}

TEST_CASE("constants agree with boost-built closed forms") {
    for (int n : {1, 2}) {
        for (double s = 0.05; s < 0.96; s += 0.05) {
            const OperatorConstants k = constants(OperatorParams(n, s));
            CHECK(std::abs(k.c_ns - oracle_c(n, s)) <= 1e-13 * oracle_c(n, s));
            CHECK(std::abs(k.b_ns - oracle_b(n, s)) <= 1e-12 * std::max(1.0, std::abs(oracle_b(n, s))));
            const double p = std::pow(kPi, -n / 2.0) * boost::math::tgamma(n / 2.0 + s) / boost::math::tgamma(s);
            CHECK(std::abs(k.p_ns - p) <= 1e-13 * p);
            const double b1 = boost::math::digamma(s) - boost::math::digamma(n / 2.0 + s);
            CHECK(std::abs(k.b1 - b1) <= 1e-12 * std::abs(b1));
        }
    }
}

TEST_CASE("d_s does not depend on the dimension") {
    for (double s = 0.05; s < 0.96; s += 0.1) {
        const double d1 = constants(OperatorParams(1, s)).d_s;
        const double d2 = constants(OperatorParams(2, s)).d_s;
        CHECK(std::abs(d1 - d2) <= 1e-13 * d1);
    }
}

TEST_CASE("b is the logarithmic derivative of c") {
    for (int n : {1, 2}) {
        for (double s = 0.05; s < 0.96; s += 0.05) {
            CHECK(b_derivative_check(n, s, 1e-5) < 1e-7);
        }
    }
    CHECK_THROWS_AS(b_derivative_check(1, 0.01, 0.02), DomainError);
    CHECK_THROWS_AS(b_derivative_check(1, 0.5, 0.0), DomainError);
}

TEST_CASE("b changes sign exactly once on (1/2, 1)") {
    for (int n : {1, 2}) {
        const double root = b_sign_change_root(n);
        CHECK(std::abs(log_correction(n, root)) < 1e-10);
        CHECK(log_correction(n, root - 0.01) > 0.0);
        CHECK(log_correction(n, root + 0.01) < 0.0);
    }
}

TEST_CASE("sphere and ball measures") {
    CHECK(sphere_measure(1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sphere_measure(2) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
    CHECK(ball_volume(1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(ball_volume(2) == doctest::Approx(kPi).epsilon(1e-15));
}

TEST_CASE("operator parameters are validated") {
    CHECK_THROWS_AS(OperatorParams(3, 0.5), DomainError);
    CHECK_THROWS_AS(OperatorParams(1, 0.0), DomainError);
    CHECK_THROWS_AS(OperatorParams(1, 1.0), DomainError);
    CHECK_THROWS_AS(OperatorParams(1, std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK(OperatorParams(2, 0.3).with_order(0.7).s() == 0.7);
    CHECK_THROWS_AS(OperatorParams(2, 0.3).with_order(1.5), DomainError);
}
