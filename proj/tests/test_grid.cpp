#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "ineq/grid.hpp"
#include "ineq/rng.hpp"

using namespace ineq;

namespace {

constexpr double kPi = std::numbers::pi;

SampledField sample_1d(const BoxGrid& g, double (*f)(double)) {
    SampledField u(g);
    for (std::size_t i = 0; i < u.values.size(); ++i) u.values[i] = f(g.coord(g.axis_index(i, 0)));
    return u;
}

SampledField random_field(const BoxGrid& g, Rng& rng, bool complex_values) {
    SampledField u(g);
    for (auto& v : u.values) {
        double re = rng.uniform(-1.0, 1.0);
        double im = complex_values ? rng.uniform(-1.0, 1.0) : 0.0;
        v = {re, im};
    }
    return u;
}

} // namespace

TEST_CASE("grid shapes, coordinates and weights") {
    BoxGrid gn(2, 8, 2.0, Boundary::Neumann);
    CHECK(gn.node_count() == 81);
    CHECK(gn.h() == doctest::Approx(0.25));
    CHECK(gn.coord(0) == 0.0);
    CHECK(gn.coord(8) == doctest::Approx(2.0));
    CHECK(gn.volume() == doctest::Approx(4.0));

    BoxGrid gd(3, 4, 1.0, Boundary::Dirichlet);
    CHECK(gd.node_count() == 27);
    CHECK(gd.coord(0) == doctest::Approx(0.25));
    CHECK(gd.coord(2) == doctest::Approx(0.75));

    // Weights sum to the volume on both grids.
    double wn = 0.0;
    for (std::size_t i = 0; i < gn.node_count(); ++i) wn += gn.weight(i);
    CHECK(wn == doctest::Approx(gn.volume()).epsilon(1e-13));
    // Dirichlet quadrature treats the implicit boundary zeros as trapezoid
    // endpoints, so the weight total is (side - h)^d, not side^d.
    double wd = 0.0;
    for (std::size_t i = 0; i < gd.node_count(); ++i) wd += gd.weight(i);
    CHECK(wd == doctest::Approx(std::pow(gd.side - gd.h(), 3)).epsilon(1e-13));

    CHECK_THROWS_AS(BoxGrid(4, 8, 1.0, Boundary::Neumann), std::domain_error);
    CHECK_THROWS_AS(BoxGrid(1, 1, 1.0, Boundary::Neumann), std::domain_error);
    CHECK_THROWS_AS(BoxGrid(1, 8, -1.0, Boundary::Neumann), std::domain_error);
}

TEST_CASE("kinetic energy on analytic 1D fields") {
    BoxGrid g(1, 64, 1.0, Boundary::Neumann);
    SampledField c(g);
    for (auto& v : c.values) v = 3.25;
    CHECK(kinetic_energy(c) == 0.0);

    // u(x) = x is exact under one-sided/central differences.
    SampledField lin = sample_1d(g, [](double x) { return x; });
    CHECK(kinetic_energy(lin) == doctest::Approx(1.0).epsilon(1e-10));

    BoxGrid fine(1, 1000, 1.0, Boundary::Neumann);
    SampledField s = sample_1d(fine, [](double x) { return std::sin(kPi * x); });
    CHECK(kinetic_energy(s) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-4));

    // On Dirichlet grids the quadrature misses the boundary cells, so use a
    // test function whose derivative vanishes there: u = sin^2(pi x), with
    // int |u'|^2 = pi^2/2 as well.
    BoxGrid fined(1, 1000, 1.0, Boundary::Dirichlet);
    SampledField sd = sample_1d(fined, [](double x) {
        double s = std::sin(kPi * x);
        return s * s;
    });
    CHECK(kinetic_energy(sd) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-4));
}

TEST_CASE("kinetic energy on a 2D product field") {
    BoxGrid g(2, 160, 1.0, Boundary::Neumann);
    SampledField u(g);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        double x = g.coord(g.axis_index(i, 0));
        double y = g.coord(g.axis_index(i, 1));
        u.values[i] = std::cos(kPi * x) * std::cos(kPi * y);
    }
    // int |grad u|^2 = pi^2/2 for cos(pi x) cos(pi y) on the unit square.
    CHECK(kinetic_energy(u) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-3));
}

TEST_CASE("kinetic energy converges at second order") {
    auto energy_error = [](int n) {
        BoxGrid g(1, n, 1.0, Boundary::Neumann);
        SampledField u(g);
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            double x = g.coord(g.axis_index(i, 0));
            u.values[i] = std::sin(kPi * x) + 0.25 * std::sin(3.0 * kPi * x);
        }
        const double exact = kPi * kPi / 2.0 + 0.0625 * 9.0 * kPi * kPi / 2.0;
        return std::abs(kinetic_energy(u) - exact);
    };
    const double e1 = energy_error(250);
    const double e2 = energy_error(500);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("modulus never increases the kinetic energy") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        int d = static_cast<int>(rng.uniform_int(1, 2));
        int n = static_cast<int>(rng.uniform_int(4, d == 1 ? 60 : 16));
        Boundary bc = rng.coin() ? Boundary::Neumann : Boundary::Dirichlet;
        BoxGrid g(d, n, rng.uniform(0.5, 3.0), bc);
        SampledField u = random_field(g, rng, true);
        SampledField mod(g);
        for (std::size_t i = 0; i < u.values.size(); ++i) mod.values[i] = std::abs(u.values[i]);
        const double t_u = kinetic_energy(u);
        const double t_mod = kinetic_energy(mod);
        CHECK(t_mod <= t_u + 1e-10 * std::max(1.0, t_u));
    }
}

TEST_CASE("lp norms") {
    BoxGrid g(1, 50, 1.0, Boundary::Neumann);
    SampledField one(g);
    for (auto& v : one.values) v = 1.0;
    CHECK(lp_norm(one, 2.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(lp_norm(one, 3.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(lp_norm(one, std::numeric_limits<double>::infinity()) == doctest::Approx(1.0));

    CHECK_THROWS_AS(lp_norm(one, 0.5), std::domain_error);

    // ||f||_1 <= ||f||_2 |Q|^{1/2} on random fields.
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        int d = static_cast<int>(rng.uniform_int(1, 3));
        int n = static_cast<int>(rng.uniform_int(3, d == 3 ? 8 : 20));
        BoxGrid gr(d, n, rng.uniform(0.5, 2.5), rng.coin() ? Boundary::Neumann : Boundary::Dirichlet);
        SampledField f = random_field(gr, rng, rng.coin());
        CHECK(lp_norm(f, 1.0) <=
              lp_norm(f, 2.0) * std::sqrt(gr.volume()) * (1.0 + 1e-12));
    }
}

TEST_CASE("layer cake equals the p-norm integral") {
    BoxGrid g(1, 40, 1.0, Boundary::Neumann);
    SampledField one(g);
    for (auto& v : one.values) v = 1.0;
    CHECK(layer_cake_norm(one, 3.0) == doctest::Approx(1.0).epsilon(1e-13));

    Rng rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        int d = static_cast<int>(rng.uniform_int(1, 2));
        int n = static_cast<int>(rng.uniform_int(3, 24));
        BoxGrid gr(d, n, rng.uniform(0.5, 2.0), rng.coin() ? Boundary::Neumann : Boundary::Dirichlet);
        SampledField f = random_field(gr, rng, rng.coin());
        double p = rng.uniform(1.0, 4.0);
        double direct = std::pow(lp_norm(f, p), p);
        double cake = layer_cake_norm(f, p);
        CHECK(std::abs(cake - direct) <= 1e-10 * std::max(direct, 1e-30));

        // Chebyshev: t^p lambda_f(t) <= int |f|^p for sampled thresholds.
        for (int k = 0; k < 5; ++k) {
            double t = rng.uniform(0.0, 1.2);
            CHECK(std::pow(t, p) * distribution_function(f, t) <= cake + 1e-12);
        }
    }
}

TEST_CASE("densities from orbitals") {
    BoxGrid g(1, 200, 1.0, Boundary::Dirichlet);
    // sin(k pi x) sampled on the interior nodes: exactly orthogonal under
    // the trapezoid rule, each with squared norm 1/2.
    const int N = 4;
    std::vector<SampledField> orbs;
    for (int k = 1; k <= N; ++k) {
        SampledField u(g);
        for (std::size_t i = 0; i < u.values.size(); ++i)
            u.values[i] = std::sqrt(2.0) * std::sin(k * kPi * g.coord(g.axis_index(i, 0)));
        orbs.push_back(u);
    }
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            auto ip = inner_product(orbs[j], orbs[k]);
            CHECK(std::abs(ip - (j == k ? 1.0 : 0.0)) < 1e-12);
        }

    DensityField rho = density_from_orbitals(orbs);
    CHECK(rho.mass() == doctest::Approx(double(N)).epsilon(1e-10));

    DensityField rho1 = density_from_orbitals({orbs[0]});
    CHECK(rho1.mass() == doctest::Approx(1.0).epsilon(1e-12));

    DensityField rho2 = density_from_orbitals({orbs[0], orbs[0]});
    for (std::size_t i = 0; i < rho2.values.size(); ++i)
        CHECK(rho2.values[i] == doctest::Approx(2.0 * std::norm(orbs[0].values[i])).epsilon(1e-12));

    BoxGrid other(1, 100, 1.0, Boundary::Dirichlet);
    SampledField bad(other);
    CHECK_THROWS_AS(density_from_orbitals({orbs[0], bad}), std::invalid_argument);
}

TEST_CASE("field round trips through binary + sidecar") {
    Rng rng(31337);
    BoxGrid g(2, 9, 1.75, Boundary::Dirichlet);
    SampledField f = random_field(g, rng, true);
    save_field(f, "tmp_grid_io_c");
    SampledField back = load_field("tmp_grid_io_c");
    REQUIRE(back.grid == g);
    for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(back.values[i] == f.values[i]);

    SampledField r = random_field(g, rng, false);
    save_field(r, "tmp_grid_io_r");
    SampledField rback = load_field("tmp_grid_io_r");
    CHECK(rback.is_real(0.0));
    for (std::size_t i = 0; i < r.values.size(); ++i) CHECK(rback.values[i] == r.values[i]);

    BoxGrid g3(3, 5, 2.0, Boundary::Neumann);
    DensityField rho(g3);
    for (auto& v : rho.values) v = rng.uniform(0.0, 2.0);
    save_density(rho, "tmp_grid_io_d");
    DensityField dback = load_density("tmp_grid_io_d");
    REQUIRE(dback.grid == g3);
    for (std::size_t i = 0; i < rho.values.size(); ++i) CHECK(dback.values[i] == rho.values[i]);

    for (const char* base : {"tmp_grid_io_c", "tmp_grid_io_r", "tmp_grid_io_d"}) {
        std::remove((std::string(base) + ".f64").c_str());
        std::remove((std::string(base) + ".json").c_str());
    }
}
