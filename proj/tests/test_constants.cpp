#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "ineq/constants.hpp"
#include "ineq/rng.hpp"

using namespace ineq;

namespace {

constexpr double kPi = std::numbers::pi;

// Generic bisection root finder for oracle cross-checks.
template <typename F>
double bisect(F f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    REQUIRE(flo * f(hi) < 0.0);
    for (int i = 0; i < iters; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (flo * fm <= 0.0) hi = mid; else { lo = mid; flo = fm; }
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("sphere measures in low dimensions") {
    CHECK(constant(ConstantKind::sphere_measure, 1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(constant(ConstantKind::sphere_measure, 2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
    CHECK(constant(ConstantKind::sphere_measure, 3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
    CHECK(constant(ConstantKind::sphere_measure, 4) ==
          doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("Sobolev constants") {
    // d = 3: both closed forms of the same number.
    const double s3 = constant(ConstantKind::sobolev, 3);
    CHECK(s3 == doctest::Approx(5.477904089531332).epsilon(1e-13));
    CHECK(s3 == doctest::Approx(3.0 * std::pow(kPi / 2.0, 4.0 / 3.0)).epsilon(1e-14));
    CHECK(s3 == doctest::Approx(0.75 * std::pow(2.0 * kPi * kPi, 2.0 / 3.0)).epsilon(1e-14));
    // d = 1 variant has constant 1.
    CHECK(constant(ConstantKind::sobolev, 1) == 1.0);
    CHECK_THROWS_AS(constant(ConstantKind::sobolev, 2), std::domain_error);
}

TEST_CASE("GNS lower (proven) constants") {
    CHECK(constant(ConstantKind::gns_lower, 1) ==
          doctest::Approx(kPi * kPi / 15.0).epsilon(1e-14));
    CHECK(constant(ConstantKind::gns_lower, 2) ==
          doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-14));
    CHECK(constant(ConstantKind::gns_lower, 3) ==
          doctest::Approx(3.9066856048676547).epsilon(1e-13));
    // Printed 4-digit value.
    CHECK(constant(ConstantKind::gns_lower, 3) == doctest::Approx(3.907).epsilon(2e-4));
}

TEST_CASE("best known optimal GNS constants and rigor flags") {
    auto g1 = constant_info(ConstantKind::gns_optimal_known, 1);
    CHECK(g1.value == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-14));
    CHECK(g1.rigorous);
    auto g3 = constant_info(ConstantKind::gns_optimal_known, 3);
    CHECK(g3.value == doctest::Approx(9.578).epsilon(1e-12));
    CHECK_FALSE(g3.rigorous);
    CHECK_THROWS_AS(constant(ConstantKind::gns_optimal_known, 2), std::domain_error);
}

TEST_CASE("semiclassical constants") {
    CHECK(constant(ConstantKind::semiclassical, 1) ==
          doctest::Approx(kPi * kPi / 3.0).epsilon(1e-14));
    CHECK(constant(ConstantKind::semiclassical, 2) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-14));
    const double k3 = constant(ConstantKind::semiclassical, 3);
    CHECK(k3 == doctest::Approx(9.115599744691194).epsilon(1e-13));
    CHECK(k3 == doctest::Approx(0.6 * std::pow(6.0 * kPi * kPi, 2.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("local uncertainty constants") {
    CHECK(constant(ConstantKind::local_uncertainty, 1) ==
          doctest::Approx(kPi * kPi / 240.0).epsilon(1e-14));
    CHECK(constant(ConstantKind::local_uncertainty, 2) ==
          doctest::Approx(kPi * kPi / 96.0).epsilon(1e-14));
    CHECK(constant(ConstantKind::local_uncertainty, 2) == doctest::Approx(0.1028).epsilon(1e-3));
}

TEST_CASE("ball exclusion xi values solve their defining equations") {
    // d = 2: first positive zero of J_1'(x) = J_0(x) - J_1(x)/x.
    const double xi2 = bisect(
        [](double x) { return std::cyl_bessel_j(0, x) - std::cyl_bessel_j(1, x) / x; }, 1.5, 2.2);
    CHECK(constant(ConstantKind::ball_exclusion_xi, 2) == doctest::Approx(xi2).epsilon(1e-9));
    CHECK(constant(ConstantKind::ball_exclusion_xi, 2) == doctest::Approx(1.841184).epsilon(1e-6));

    // d = 3: smallest positive root of tan x = 2x/(2 - x^2); the bracket
    // [1.9, 2.2] avoids both the tan pole and x^2 = 2.
    const double xi3 =
        bisect([](double x) { return std::tan(x) - 2.0 * x / (2.0 - x * x); }, 1.9, 2.2);
    CHECK(constant(ConstantKind::ball_exclusion_xi, 3) == doctest::Approx(xi3).epsilon(1e-9));
    CHECK(constant(ConstantKind::ball_exclusion_xi, 3) == doctest::Approx(2.081576).epsilon(1e-6));

    CHECK_THROWS_AS(constant(ConstantKind::ball_exclusion_xi, 1), std::domain_error);
}

TEST_CASE("lt_dual closed-form values and round trip") {
    const double k3cl = constant(ConstantKind::semiclassical, 3);
    CHECK(lt_dual(k3cl, 3, DualDirection::K_to_L) ==
          doctest::Approx(0.006754745576155851).epsilon(1e-12));

    // Best proven kinetic constants K_d >= (pi/sqrt(3))^{-2/d} K_d^cl.
    const double chain1 =
        std::pow(kPi / std::sqrt(3.0), -2.0) * constant(ConstantKind::semiclassical, 1);
    CHECK(chain1 == doctest::Approx(1.0).epsilon(1e-14)); // exactly 1 in d = 1
    CHECK(lt_dual(1.0, 1, DualDirection::K_to_L) ==
          doctest::Approx(2.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-14));

    const double chain3 = std::pow(kPi / std::sqrt(3.0), -2.0 / 3.0) * k3cl;
    CHECK(chain3 == doctest::Approx(6.1290394586581585).epsilon(1e-13));
    CHECK(lt_dual(chain3, 3, DualDirection::K_to_L) ==
          doctest::Approx(0.012251753231595379).epsilon(1e-12));

    Rng rng(12345);
    for (int i = 0; i < 100; ++i) {
        int d = static_cast<int>(rng.uniform_int(1, 3));
        double k = std::exp(rng.uniform(-3.0, 3.0));
        double back = lt_dual(lt_dual(k, d, DualDirection::K_to_L), d, DualDirection::L_to_K);
        CHECK(back == doctest::Approx(k).epsilon(1e-12));
    }
    CHECK_THROWS_AS(lt_dual(0.0, 3, DualDirection::K_to_L), std::domain_error);
    CHECK_THROWS_AS(lt_dual(-1.0, 3, DualDirection::L_to_K), std::domain_error);
}

TEST_CASE("alpha statistics examples") {
    CHECK(alpha_statistics(1.0, 10) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(alpha_statistics(0.0, 5) == 0.0);
    CHECK(alpha_statistics(0.4, 2) == doctest::Approx(0.4).epsilon(1e-15));
    // alpha_2 = alpha on [0, 1].
    for (int i = 0; i <= 10; ++i) {
        double a = i / 10.0;
        CHECK(alpha_statistics(a, 2) == doctest::Approx(a).epsilon(1e-14));
    }
    CHECK_THROWS_AS(alpha_statistics(0.5, 1), std::domain_error);
}

TEST_CASE("alpha statistics symmetries and monotonicity") {
    Rng rng(777);
    for (int i = 0; i < 500; ++i) {
        double a = rng.uniform(-3.0, 3.0);
        int N = static_cast<int>(rng.uniform_int(2, 40));
        double v = alpha_statistics(a, N);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-15);
        CHECK(alpha_statistics(a + 2.0, N) == doctest::Approx(v).epsilon(5e-13));
        CHECK(alpha_statistics(-a, N) == doctest::Approx(v).epsilon(5e-13));
        CHECK(alpha_statistics(a, N + 5) <= v + 1e-14);
    }
}

TEST_CASE("alpha_star and large-N brute force agree") {
    CHECK(alpha_star(1, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(alpha_star(2, 3) == 0.0);
    CHECK(alpha_star(-3, 6) == doctest::Approx(0.5).epsilon(1e-15)); // reduces to -1/2
    CHECK(alpha_star(3, -7) == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
    CHECK(alpha_star(0, 5) == 0.0);
    CHECK_THROWS_AS(alpha_star(1, 0), std::domain_error);

    for (long long nu = 1; nu <= 12; ++nu) {
        for (long long mu = 1; mu <= 2 * nu; ++mu) {
            if (std::gcd(mu, nu) != 1) continue;
            double limit = alpha_star(mu, nu);
            double brute = alpha_statistics(double(mu) / double(nu), 1000);
            CHECK(std::abs(brute - limit) <= 1e-12);
        }
    }
}

TEST_CASE("covering constants and weak mass fraction") {
    CHECK(covering_constants(2, 1.0, 1.0) == doctest::Approx(64.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(covering_constants(2, 0.0, 1.0), std::domain_error);

    const double lambda = (8.0 / 3.0) * 16.0; // (8/3) 4^d q at d = 2, q = 1
    CHECK(weak_b(2, 1.0, 1.0, lambda) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(weak_b(2, 1.0, 0.0, lambda) == 1.0);
    CHECK_THROWS_AS(weak_b(2, 1.0, -1.0, lambda), std::domain_error);
    CHECK_THROWS_AS(weak_b(2, 1.0, 1.0, 0.0), std::domain_error);
}
