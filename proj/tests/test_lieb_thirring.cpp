#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ineq/constants.hpp"
#include "ineq/covering.hpp"
#include "ineq/grid.hpp"
#include "ineq/inequalities.hpp"
#include "ineq/lieb_thirring.hpp"
#include "ineq/rng.hpp"
#include "ineq/spectral.hpp"

using namespace ineq;

namespace {

constexpr double kPi = std::numbers::pi;

double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * (3.0 - 2.0 * t);
}

// Vanishes smoothly toward every wall of the box (keeps fields compact).
double wall_envelope(const BoxGrid& g, const double* x) {
    double env = 1.0;
    for (int a = 0; a < g.d; ++a)
        env *= smoothstep(x[a] / (0.15 * g.side)) *
               smoothstep((g.side - x[a]) / (0.15 * g.side));
    return env;
}

SampledField enveloped_random(const BoxGrid& g, Rng& rng) {
    struct Mode {
        double ar, ai, k[3], phase;
    };
    std::vector<Mode> modes(5);
    for (auto& m : modes) {
        m.ar = rng.uniform(-1.0, 1.0);
        m.ai = rng.uniform(-1.0, 1.0);
        for (int a = 0; a < 3; ++a) m.k[a] = rng.uniform(0.3, 2.5) * kPi / g.side;
        m.phase = rng.uniform(0.0, 2.0 * kPi);
    }
    SampledField f(g);
    double x[3];
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        g.coords(i, x);
        std::complex<double> v = 0.0;
        for (const auto& m : modes) {
            double arg = m.phase;
            for (int a = 0; a < g.d; ++a) arg += m.k[a] * x[a];
            v += std::complex<double>(m.ar * std::cos(arg), m.ai * std::sin(arg));
        }
        f.values[i] = v * wall_envelope(g, x);
    }
    return f;
}

OrbitalSet random_orthonormal_set(const BoxGrid& g, int count, Rng& rng) {
    std::vector<SampledField> fields;
    fields.reserve(count);
    for (int j = 0; j < count; ++j) fields.push_back(enveloped_random(g, rng));
    return orthonormalize(std::move(fields));
}

// One-body -Laplace matrix on a 1D Neumann grid: edge-based stiffness
// against the trapezoid mass matrix, symmetrized (independent rebuild of the
// operator convention, validated against the library solver below).
Eigen::MatrixXd one_body_matrix(const BoxGrid& g) {
    const int m = g.nodes_per_axis();
    const double h = g.h();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i + 1 < m; ++i) {
        A(i, i) += 1.0 / h;
        A(i + 1, i + 1) += 1.0 / h;
        A(i, i + 1) -= 1.0 / h;
        A(i + 1, i) -= 1.0 / h;
    }
    Eigen::VectorXd w(m);
    for (int i = 0; i < m; ++i) w(i) = g.axis_weight(i);
    Eigen::MatrixXd H = A;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) H(i, j) /= std::sqrt(w(i) * w(j));
    return H;
}

// Ground energy of two noninteracting particles on the antisymmetric
// subspace, by dense diagonalization over node pairs i < j.
double two_body_antisymmetric_ground(const Eigen::MatrixXd& h) {
    const int m = static_cast<int>(h.rows());
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    const int P = static_cast<int>(pairs.size());
    Eigen::MatrixXd H2(P, P);
    for (int a = 0; a < P; ++a) {
        const auto [i, j] = pairs[a];
        for (int b = 0; b < P; ++b) {
            const auto [k, l] = pairs[b];
            double v = 0.0;
            if (j == l) v += h(i, k);
            if (i == k) v += h(j, l);
            if (j == k) v -= h(i, l);
            if (i == l) v -= h(j, k);
            H2(a, b) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H2, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// Same for three particles over node triples i < j < k.
double three_body_antisymmetric_ground(const Eigen::MatrixXd& h) {
    const int m = static_cast<int>(h.rows());
    std::vector<std::array<int, 3>> triples;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k) triples.push_back({i, j, k});
    const int P = static_cast<int>(triples.size());
    static const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                   {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
    static const double sign[6] = {1.0, 1.0, 1.0, -1.0, -1.0, -1.0};
    Eigen::MatrixXd H3(P, P);
    for (int a = 0; a < P; ++a)
        for (int b = 0; b < P; ++b) {
            const auto& I = triples[a];
            const auto& J = triples[b];
            double v = 0.0;
            for (int s = 0; s < 6; ++s) {
                const int j0 = J[perm[s][0]], j1 = J[perm[s][1]], j2 = J[perm[s][2]];
                if (I[1] == j1 && I[2] == j2) v += sign[s] * h(I[0], j0);
                if (I[0] == j0 && I[2] == j2) v += sign[s] * h(I[1], j1);
                if (I[0] == j0 && I[1] == j1) v += sign[s] * h(I[2], j2);
            }
            H3(a, b) = v;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H3, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

bool message_contains(const std::exception& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("orthonormalize produces a quadrature-orthonormal set") {
    BoxGrid g(1, 96, 8.0, Boundary::Neumann);
    Rng rng(0x0B17A15E7ULL);
    OrbitalSet set = random_orthonormal_set(g, 6, rng);
    for (std::size_t j = 0; j < set.size(); ++j)
        for (std::size_t k = 0; k < set.size(); ++k) {
            const auto gjk = inner_product(set.orbitals[j], set.orbitals[k]);
            CHECK(std::abs(gjk - (j == k ? 1.0 : 0.0)) < 1e-12);
        }

    // Duplicated inputs are numerically dependent.
    std::vector<SampledField> dup{set.orbitals[0], set.orbitals[0]};
    CHECK_THROWS_AS(orthonormalize(dup), std::invalid_argument);

    // Mixed grids are rejected.
    BoxGrid g2(1, 48, 8.0, Boundary::Neumann);
    std::vector<SampledField> mixed{set.orbitals[0], SampledField(g2)};
    CHECK_THROWS_AS(orthonormalize(mixed), std::invalid_argument);
    CHECK_THROWS_AS(orthonormalize(std::vector<SampledField>{}), std::invalid_argument);
}

TEST_CASE("orbital sets reject Gram violations naming the offending pair") {
    BoxGrid g(1, 64, 4.0, Boundary::Neumann);
    Rng rng(0x06B17A15ULL);
    OrbitalSet set = random_orthonormal_set(g, 3, rng);

    // Knock orbital 1 off unit norm; both construction and the checker see it.
    OrbitalSet broken = set;
    for (auto& v : broken.orbitals[1].values) v *= 1.001;
    try {
        kinetic_form_check(broken);
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        CHECK(message_contains(e, "(1, 1)"));
        CHECK(message_contains(e, "Gram"));
    }
    CHECK_THROWS_AS(OrbitalSet(broken.orbitals), std::invalid_argument);
    CHECK_THROWS_AS(OrbitalSet(std::vector<SampledField>{}), std::invalid_argument);
}

TEST_CASE("kinetic form check with one orbital reduces to the single-field bound") {
    for (int d : {1, 2}) {
        CAPTURE(d);
        BoxGrid g(d, d == 1 ? 128 : 40, 6.0, Boundary::Neumann);
        Rng rng(0x5151E7EDULL + d);
        SampledField u = enveloped_random(g, rng);
        const double nrm = std::sqrt(std::real(inner_product(u, u)));
        for (auto& v : u.values) v /= nrm;

        InequalityReport joint = kinetic_form_check(OrbitalSet({u}));
        InequalityReport single = check_gns(u);
        CHECK(joint.lhs == doctest::Approx(single.lhs).epsilon(1e-12));
        CHECK(joint.rhs == doctest::Approx(single.rhs).epsilon(1e-10));
        CHECK(joint.passed);
    }
}

TEST_CASE("random orthonormal sets in d=1 pass with both proven constants") {
    BoxGrid g(1, 96, 8.0, Boundary::Neumann);
    Rng rng(0x20F1E1D5ULL);
    // Distinct carrier frequencies keep 20 fields numerically independent.
    std::vector<SampledField> fields;
    for (int j = 0; j < 20; ++j) {
        const double k = (j + 1) * 0.75 * kPi / g.side;
        const double phase = rng.uniform(0.0, 2.0 * kPi);
        SampledField carrier(g);
        double x[1];
        for (std::size_t i = 0; i < carrier.values.size(); ++i) {
            g.coords(i, x);
            carrier.values[i] = std::polar(wall_envelope(g, x), k * x[0] + phase);
        }
        SampledField noise = enveloped_random(g, rng);
        for (std::size_t i = 0; i < carrier.values.size(); ++i)
            carrier.values[i] += 0.25 * noise.values[i];
        fields.push_back(std::move(carrier));
    }
    OrbitalSet set = orthonormalize(std::move(fields));

    InequalityReport with_default = kinetic_form_check(set);
    CHECK(with_default.passed);
    CHECK(with_default.constant_used ==
          doctest::Approx(constant(ConstantKind::gns_lower, 1)));
    CHECK(with_default.ratio > 1.0);

    InequalityReport with_sharp = kinetic_form_check(set, kPi * kPi / 4.0);
    CHECK(with_sharp.passed);
    CHECK(with_sharp.ratio > 1.0);
}

TEST_CASE("cosine orbital sets approach the semiclassical ratio from below") {
    BoxGrid g(1, 512, 1.0, Boundary::Neumann);
    const double Kcl = constant(ConstantKind::semiclassical, 1);
    // Continuum ratios (quadrature oracle, closed-form kinetic sums):
    const struct {
        int N;
        double ratio;
    } frozen[] = {{2, 0.27272727272727273},
                  {4, 0.49851632047477745},
                  {8, 0.68655496526358807},
                  {12, 0.77163553183377812}};
    double previous = 0.0;
    for (const auto& c : frozen) {
        CAPTURE(c.N);
        std::vector<SampledField> orbs;
        for (int k = 0; k < c.N; ++k) {
            SampledField u(g);
            const double amp = k == 0 ? 1.0 : std::sqrt(2.0);
            for (std::size_t i = 0; i < u.values.size(); ++i)
                u.values[i] = amp * std::cos(k * kPi * g.coord(static_cast<int>(i)));
            orbs.push_back(std::move(u));
        }
        InequalityReport r = kinetic_form_check(OrbitalSet(std::move(orbs)), Kcl);
        CHECK(r.ratio == doctest::Approx(c.ratio).epsilon(5e-3));
        CHECK(r.ratio <= 1.0);
        CHECK(r.ratio > previous);
        previous = r.ratio;
    }
}

TEST_CASE("eigenvalue sum check: nonnegative potentials are trivial") {
    BoxGrid g(1, 64, 2.0, Boundary::Neumann);
    SchrodingerOperator op(g, [](const double* x) {
        return (x[0] - 1.0) * (x[0] - 1.0);
    });
    InequalityReport r = eigenvalue_sum_check(op);
    CHECK(r.passed);
    CHECK(r.lhs == 0.0);
    CHECK(r.rhs == 0.0);
    CHECK(r.constant_used ==
          doctest::Approx(lt_dual(constant(ConstantKind::gns_lower, 1), 1,
                                  DualDirection::K_to_L)));

    std::vector<double> bad(g.node_count(), 0.0);
    bad[3] = std::nan("");
    CHECK_THROWS_AS(SchrodingerOperator(g, std::move(bad)), std::invalid_argument);
}

TEST_CASE("eigenvalue sum check: square well matches the continuum sum") {
    // Well of depth 10 and half-width 1, centered in a box of side 16.
    BoxGrid g(1, 1024, 16.0, Boundary::Dirichlet);
    SchrodingerOperator op(g, [](const double* x) {
        return (x[0] >= 7.0 && x[0] <= 9.0) ? -10.0 : 0.0;
    });
    const double L_from_unit_K = lt_dual(1.0, 1, DualDirection::K_to_L);
    CHECK(L_from_unit_K == doctest::Approx(0.3849001794597505).epsilon(1e-14));
    InequalityReport r = eigenvalue_sum_check(op, L_from_unit_K);
    // Transcendental oracle: three bound states, E = -8.5927852752298389,
    // -4.6241940863297795, -0.0040192624533292855 (the last is loosely bound
    // and shifts at the walls, well inside the 0.5% band).
    CHECK(r.lhs == doctest::Approx(13.220998624012948).epsilon(5e-3));
    CHECK(r.rhs == doctest::Approx(24.343224778007382).epsilon(1e-2));
    CHECK(r.passed);
    CHECK(r.ratio < 0.56);
}

TEST_CASE("eigenvalue sum check: random multi-well potentials always pass") {
    const double L = lt_dual(1.0, 1, DualDirection::K_to_L);
    Rng rng(0x3A11B0E5ULL);
    for (int trial = 0; trial < 20; ++trial) {
        CAPTURE(trial);
        BoxGrid g(1, 768, 12.0, Boundary::Dirichlet);
        const int wells = 2 + static_cast<int>(rng.uniform_int(0, 3));
        std::vector<double> depth(wells), center(wells), width(wells);
        for (int w = 0; w < wells; ++w) {
            depth[w] = rng.uniform(1.0, 15.0);
            center[w] = rng.uniform(3.0, 9.0);
            width[w] = rng.uniform(0.15, 0.8);
        }
        SchrodingerOperator op(g, [&](const double* x) {
            double v = 0.0;
            for (int w = 0; w < wells; ++w) {
                const double t = (x[0] - center[w]) / width[w];
                v -= depth[w] * std::exp(-0.5 * t * t);
            }
            return v;
        });
        InequalityReport r = eigenvalue_sum_check(op, L);
        CHECK(r.passed);
        CHECK(r.lhs >= 0.0);
    }
}

TEST_CASE("kinetic and eigenvalue-sum forms are mutually consistent") {
    // Densities of passing orbital sets, fed back as potentials V = -c rho^{2/d},
    // never violate the dual form with the dual of the same constant.
    Rng rng(0xD0A1C0DEULL);
    int trials_run = 0;
    for (int trial = 0; trial < 85; ++trial) {
        CAPTURE(trial);
        BoxGrid g(1, 256, 8.0, Boundary::Dirichlet);
        OrbitalSet set = random_orthonormal_set(g, 1 + trial % 3, rng);
        const double K = constant(ConstantKind::gns_lower, 1);
        CHECK(kinetic_form_check(set, K).passed);

        DensityField rho = density_from_orbitals(set.orbitals);
        const double c = rng.uniform(0.5, 5.0);
        std::vector<double> V(rho.values.size());
        for (std::size_t i = 0; i < V.size(); ++i)
            V[i] = -c * rho.values[i] * rho.values[i]; // rho^{2/d}, d = 1
        InequalityReport r = eigenvalue_sum_check(
            SchrodingerOperator(g, std::move(V)), lt_dual(K, 1, DualDirection::K_to_L));
        CHECK(r.passed);
        ++trials_run;
    }
    for (int trial = 0; trial < 15; ++trial) {
        CAPTURE(trial);
        BoxGrid g(2, 12, 5.0, Boundary::Dirichlet);
        OrbitalSet set = random_orthonormal_set(g, 1 + trial % 2, rng);
        const double K = constant(ConstantKind::gns_lower, 2);
        CHECK(kinetic_form_check(set, K).passed);

        DensityField rho = density_from_orbitals(set.orbitals);
        const double c = rng.uniform(0.5, 5.0);
        std::vector<double> V(rho.values.size());
        for (std::size_t i = 0; i < V.size(); ++i) V[i] = -c * rho.values[i];
        InequalityReport r = eigenvalue_sum_check(
            SchrodingerOperator(g, std::move(V)), lt_dual(K, 2, DualDirection::K_to_L));
        CHECK(r.passed);
        ++trials_run;
    }
    CHECK(trials_run == 100);
}

TEST_CASE("local uncertainty: uniform densities give a negative bound") {
    BoxGrid g(2, 32, 2.0, Boundary::Neumann);
    DensityField rho(g);
    std::fill(rho.values.begin(), rho.values.end(), 3.0);
    const Cube Q = bounding_cube(g);
    const double Cd = constant(ConstantKind::local_uncertainty, 2);
    const double mass = rho.mass();
    CHECK(mass == doctest::Approx(12.0).epsilon(1e-13));
    for (double eps : {0.05, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95}) {
        CAPTURE(eps);
        LocalEnergyBound b = local_uncertainty_bound(rho, Q, eps);
        CHECK(b.kind == LocalBoundKind::uncertainty);
        CHECK(b.mass == doctest::Approx(mass).epsilon(1e-13));
        CHECK(b.bound < 0.0);
        const double p = 1.0 + 4.0 / 2;
        const double expected = Cd * (mass / std::pow(Q.volume(), 1.0)) *
                                (std::pow(eps, p) -
                                 (1.0 + std::pow(eps / (1.0 - eps), p)));
        CHECK(b.bound == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("local uncertainty: concentrated gaussians flip the bound positive") {
    // Width = side/20, eps = 1/2; closed-form continuum oracles per dimension.
    const struct {
        int d;
        int n;
        double frozen;
    } cases[] = {{1, 256, -0.0043881466842247191},
                 {2, 128, 0.0031957032110946532},
                 {3, 64, 0.0012087722102874529}};
    for (const auto& c : cases) {
        CAPTURE(c.d);
        BoxGrid g(c.d, c.n, 1.0, Boundary::Neumann);
        DensityField rho(g);
        const double sigma = 1.0 / 20.0;
        double x[3];
        for (std::size_t i = 0; i < rho.values.size(); ++i) {
            g.coords(i, x);
            double r2 = 0.0;
            for (int a = 0; a < c.d; ++a) r2 += (x[a] - 0.5) * (x[a] - 0.5);
            rho.values[i] = std::exp(-r2 / (2.0 * sigma * sigma));
        }
        LocalEnergyBound b = local_uncertainty_bound(rho, bounding_cube(g), 0.5);
        CHECK(b.bound == doctest::Approx(c.frozen).epsilon(1e-6));
        if (c.d >= 2) CHECK(b.bound > 0.0); // a pinch this tight beats the cube term
    }
}

TEST_CASE("local uncertainty: limits, restrictions, and domain errors") {
    BoxGrid g(1, 64, 2.0, Boundary::Neumann);
    DensityField rho(g);
    for (std::size_t i = 0; i < rho.values.size(); ++i)
        rho.values[i] = g.coord(static_cast<int>(i));
    const Cube root = bounding_cube(g);

    // eps -> 0 collapses onto the pure cube term.
    const double Cd = constant(ConstantKind::local_uncertainty, 1);
    LocalEnergyBound small_eps = local_uncertainty_bound(rho, root, 1e-4);
    CHECK(small_eps.bound ==
          doctest::Approx(-Cd * small_eps.mass / std::pow(root.volume(), 2.0))
              .epsilon(1e-6));

    // Dyadic sub-cube restriction integrates only the left half.
    Cube left{1, {0.0, 0.0, 0.0}, 1.0};
    LocalEnergyBound half = local_uncertainty_bound(rho, left, 0.5);
    CHECK(half.mass == doctest::Approx(0.5).epsilon(0.05)); // int_0^1 x dx
    CHECK(half.cube.side == 1.0);

    CHECK_THROWS_AS(local_uncertainty_bound(rho, root, 0.0), std::domain_error);
    CHECK_THROWS_AS(local_uncertainty_bound(rho, root, 1.0), std::domain_error);
    CHECK_THROWS_AS(local_uncertainty_bound(rho, root, -0.3), std::domain_error);
    Cube off{1, {0.3, 0.0, 0.0}, 1.0};
    CHECK_THROWS_AS(local_uncertainty_bound(rho, off, 0.5), std::invalid_argument);

    DensityField zero(g);
    CHECK_THROWS_AS(local_uncertainty_bound(zero, root, 0.5), std::domain_error);
    DensityField negative(g);
    negative.values[5] = -1.0;
    CHECK_THROWS_AS(local_uncertainty_bound(negative, root, 0.5), std::domain_error);
}

TEST_CASE("local exclusion bound: closed forms") {
    LocalEnergyBound at_q = local_exclusion_bound(1.0, 2.0, 2, 1);
    CHECK(at_q.bound == 0.0);
    CHECK(at_q.kind == LocalBoundKind::exclusion);

    LocalEnergyBound below = local_exclusion_bound(0.4, 5.0, 3, 2);
    CHECK(below.bound == 0.0);

    LocalEnergyBound two = local_exclusion_bound(2.0, 1.0, 1, 1);
    CHECK(two.bound == kPi * kPi);
    CHECK(two.cube.side == 1.0);

    LocalEnergyBound d3 = local_exclusion_bound(5.0, 8.0, 3, 1);
    CHECK(d3.bound == doctest::Approx(kPi * kPi * 4.0 / 4.0).epsilon(1e-14));
    CHECK(d3.cube.side == doctest::Approx(2.0).epsilon(1e-14));

    CHECK_THROWS_AS(local_exclusion_bound(1.0, 0.0, 2, 1), std::domain_error);
    CHECK_THROWS_AS(local_exclusion_bound(-1.0, 1.0, 2, 1), std::domain_error);
    CHECK_THROWS_AS(local_exclusion_bound(1.0, 1.0, 2, 0), std::domain_error);
    CHECK_THROWS_AS(local_exclusion_bound(1.0, 1.0, 4, 1), std::domain_error);
}

TEST_CASE("exclusion oracle: antisymmetric ground energies dominate the bound") {
    // Two fermions on [0,1], Neumann walls.
    BoxGrid g2(1, 40, 1.0, Boundary::Neumann);
    Eigen::MatrixXd h2 = one_body_matrix(g2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(h2, Eigen::EigenvaluesOnly);

    // The rebuilt operator matches the library solver.
    Spectrum lib = lowest_eigenvalues(
        SchrodingerOperator(g2, std::vector<double>(g2.node_count(), 0.0)), 4);
    for (int k = 0; k < 4; ++k)
        CHECK(es2.eigenvalues()(k) ==
              doctest::Approx(lib.eigenvalues[k]).epsilon(1e-8).scale(kPi * kPi));

    // Brute-force two-body antisymmetric ground = sum of two lowest levels.
    const double E2 = two_body_antisymmetric_ground(h2);
    CHECK(E2 == doctest::Approx(es2.eigenvalues()(0) + es2.eigenvalues()(1))
                    .epsilon(1e-9));
    CHECK(E2 == doctest::Approx(kPi * kPi).epsilon(0.01)); // continuum 0 + pi^2

    // Three fermions on a coarser grid.
    BoxGrid g3(1, 16, 1.0, Boundary::Neumann);
    Eigen::MatrixXd h3 = one_body_matrix(g3);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es3(h3, Eigen::EigenvaluesOnly);
    const double E3 = three_body_antisymmetric_ground(h3);
    CHECK(E3 == doctest::Approx(es3.eigenvalues()(0) + es3.eigenvalues()(1) +
                                es3.eigenvalues()(2))
                    .epsilon(1e-9));

    // Exact box levels dominate the local bound (equality at N = 2, q = 1).
    Spectrum exact = cube_spectrum_exact(1, 1.0, 3, Boundary::Neumann);
    const double exact2 = exact.eigenvalues[0] + exact.eigenvalues[1];
    const double exact3 = exact2 + exact.eigenvalues[2];
    CHECK(exact2 >= local_exclusion_bound(2.0, 1.0, 1, 1).bound - 1e-12);
    CHECK(exact2 == doctest::Approx(local_exclusion_bound(2.0, 1.0, 1, 1).bound)
                        .epsilon(1e-14));
    CHECK(exact3 >= local_exclusion_bound(3.0, 1.0, 1, 1).bound - 1e-12);
    CHECK(exact3 >= local_exclusion_bound(3.0, 1.0, 1, 2).bound - 1e-12);
    // The discrete energies sit within a h^2 whisker of the exact ones.
    CHECK(E3 == doctest::Approx(exact3).epsilon(0.05));
}

TEST_CASE("summed exclusion bounds over a partition match the gas formula") {
    BoxGrid g(1, 64, 4.0, Boundary::Neumann);
    DensityField rho(g);
    std::fill(rho.values.begin(), rho.values.end(), 4.0); // mass 16 on side 4
    const Cube root = bounding_cube(g);
    MassOracle oracle = [&](const Cube& c) { return cube_mass(rho, c, root); };
    MassPartition p = partition(oracle, root, 3.0); // 8 leaves of mass ~2

    REQUIRE(p.leaves.size() == 8);
    double sum = 0.0;
    for (const auto& leaf : p.leaves) {
        CHECK(leaf.mass > 1.0); // every leaf is in the linear regime
        sum += local_exclusion_bound(leaf.mass, leaf.cube.volume(), 1, 1).bound;
    }
    // pi^2 (N M^2 - q M^{d+2}) / side^2 with N = 16, M = 8, q = 1, side = 4.
    const double expected = kPi * kPi * (16.0 * 64.0 - 512.0) / 16.0;
    CHECK(sum == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("boson exclusion bounds: pair counting and hard-core values") {
    CHECK(boson_exclusion_bound_stupid(1, 1.0, 3, 2.0).bound == 0.0);
    CHECK(boson_exclusion_bound_stupid(0, 1.0, 3, 2.0).bound == 0.0);
    CHECK(boson_exclusion_bound_hardcore(1, 1.0, 3, 0.1).bound == 0.0);

    // beta n (n-1) / (2 d |Q|^{2/d}) at n=3, beta=2, d=3, |Q|=1.
    LocalEnergyBound s = boson_exclusion_bound_stupid(3, 1.0, 3, 2.0);
    CHECK(s.bound == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s.kind == LocalBoundKind::boson_stupid);

    // (2/sqrt3)(R/|Q|)(2 - R/|Q|^{1/3})^{-2} at R = 0.1, |Q| = 1, n = 2.
    LocalEnergyBound hc = boson_exclusion_bound_hardcore(2, 1.0, 3, 0.1);
    CHECK(hc.bound == doctest::Approx(0.031986164498040209).epsilon(1e-14));
    CHECK(hc.kind == LocalBoundKind::boson_hardcore);

    // n lifts linearly through e_n >= (n/2) e_2.
    LocalEnergyBound hc5 = boson_exclusion_bound_hardcore(5, 1.0, 3, 0.1);
    CHECK(hc5.bound == doctest::Approx(2.5 * hc.bound / 1.0).epsilon(1e-14));

    CHECK_THROWS_AS(boson_exclusion_bound_hardcore(2, 1.0, 2, 0.1), std::domain_error);
    CHECK_THROWS_AS(boson_exclusion_bound_hardcore(2, 1.0, 3, 1.5), std::domain_error);
    CHECK_THROWS_AS(boson_exclusion_bound_hardcore(2, 1.0, 3, 0.0), std::domain_error);
    CHECK_THROWS_AS(boson_exclusion_bound_stupid(2, 1.0, 3, 0.0), std::domain_error);
    CHECK_THROWS_AS(boson_exclusion_bound_stupid(-1, 1.0, 3, 1.0), std::domain_error);
    CHECK_THROWS_AS(boson_exclusion_bound_stupid(2, -1.0, 3, 1.0), std::domain_error);
}

TEST_CASE("synthesized kinetic constant: frozen chain values") {
    // Independent scan oracle (float arithmetic mirrored step for step).
    const struct {
        int d;
        double K, lambda, eo, ei;
    } frozen[] = {
        {1, 3.539014179600006e-05, 10.666666666666666, 0.49734984747347677, 0.7225},
        {2, 0.0005772485363531326, 42.666666666666664, 0.5, 0.7825},
        {3, 0.0015651561318056513, 170.66666666666666, 0.5, 0.8075},
    };
    for (const auto& f : frozen) {
        CAPTURE(f.d);
        LtSynthesis s = synthesize_lt_constant(f.d, 1);
        CHECK(s.K == doctest::Approx(f.K).epsilon(1e-12));
        CHECK(s.lambda == doctest::Approx(f.lambda).epsilon(1e-14));
        CHECK(s.eps_outer == doctest::Approx(f.eo).epsilon(1e-12));
        CHECK(s.eps_inner == doctest::Approx(f.ei).epsilon(1e-14));
        CHECK(s.K > 0.0);
    }

    // A 10x finer scan lands on the same plateau (within 2% — the coarse
    // grid is not a subset of the fine one, so small shifts both ways occur).
    for (int d : {1, 2, 3}) {
        CAPTURE(d);
        const double Cd = constant(ConstantKind::local_uncertainty, d);
        const double base = (8.0 / 3.0) * std::pow(4.0, d);
        const double p = 1.0 + 4.0 / d;
        double fine = -1.0;
        for (int i = 0; i < 2000; ++i) {
            const double e = (i + 0.5) / 2000.0;
            const double C1 = Cd * std::pow(e, p);
            const double C2 = Cd * (1.0 + std::pow(e / (1.0 - e), p));
            const double eps = std::min(kPi * kPi / (4.0 * C2), 0.5);
            fine = std::max(fine, eps * C1 * std::pow(base, -2.0 / d));
        }
        LtSynthesis s = synthesize_lt_constant(d, 1);
        CHECK(std::abs(fine - s.K) <= 0.02 * s.K);
    }
}

TEST_CASE("synthesized kinetic constant: exact q scaling and dominance") {
    // Dominated by the proven literature value (the local route is lossy).
    const double literature[] = {1.0, 3.4641016151377546, 6.1290394586581585};
    for (int d : {1, 2, 3}) {
        CAPTURE(d);
        LtSynthesis one = synthesize_lt_constant(d, 1);
        for (int q : {1, 2, 4}) {
            LtSynthesis s = synthesize_lt_constant(d, q);
            CHECK(s.K > 0.0);
            // Bitwise: the q power is factored onto the q = 1 constant.
            CHECK(s.K == std::pow(static_cast<double>(q), -2.0 / d) * one.K);
            CHECK(s.lambda == doctest::Approx(one.lambda * q).epsilon(1e-14));
            CHECK(s.K <= literature[d - 1] * std::pow(static_cast<double>(q), -2.0 / d));
        }
    }
    CHECK_THROWS_AS(synthesize_lt_constant(1, 0), std::domain_error);
    CHECK_THROWS_AS(synthesize_lt_constant(0, 1), std::domain_error);
}

TEST_CASE("synthesized constant never fails on random orbital sets") {
    Rng rng(0x5CA1AB1E5ULL);
    for (int trial = 0; trial < 40; ++trial) {
        CAPTURE(trial);
        BoxGrid g(1, 128, rng.uniform(4.0, 10.0), Boundary::Neumann);
        OrbitalSet set = random_orthonormal_set(g, 1 + trial % 5, rng);
        InequalityReport r = kinetic_form_check(set, synthesize_lt_constant(1, 1).K);
        CHECK(r.passed);
        CHECK(r.ratio > 1.0);
    }
    for (int trial = 0; trial < 20; ++trial) {
        CAPTURE(trial);
        BoxGrid g(2, 20, 5.0, Boundary::Neumann);
        OrbitalSet set = random_orthonormal_set(g, 1 + trial % 3, rng);
        InequalityReport r = kinetic_form_check(set, synthesize_lt_constant(2, 1).K);
        CHECK(r.passed);
    }
}

TEST_CASE("interaction-kinetic constant synthesizer: frozen scan results") {
    const struct {
        int d;
        double beta, K, lambda, ei;
        bool improved;
    } frozen[] = {
        {1, 1.0, 1.1719225110070508e-05, 10.666666666666666, 0.5825, false},
        {3, 0.1, 3.040851079188227e-05, 12420.853509346709, 0.5775, true},
        {3, 10.0, 0.0009349417730245906, 170.66666666666666, 0.6475, false},
        {2, 0.01, 1.491112053261994e-06, 878.5634194593142, 0.5125, true},
    };
    for (const auto& f : frozen) {
        CAPTURE(f.d);
        CAPTURE(f.beta);
        BltSynthesis s = synthesize_blt_constant(f.d, f.beta);
        CHECK(s.K == doctest::Approx(f.K).epsilon(1e-9));
        CHECK(s.lambda == doctest::Approx(f.lambda).epsilon(1e-9));
        CHECK(s.eps_inner == doctest::Approx(f.ei).epsilon(1e-12));
        CHECK(s.improved_route == f.improved);
        CHECK(s.K > 0.0);
        CHECK(s.eps_outer > 0.0);
        CHECK(s.eps_outer <= 0.5);
    }

    // Monotone in the repulsion strength.
    CHECK(synthesize_blt_constant(3, 0.1).K <= synthesize_blt_constant(3, 1.0).K);
    CHECK(synthesize_blt_constant(3, 1.0).K <= synthesize_blt_constant(3, 10.0).K);
    CHECK_THROWS_AS(synthesize_blt_constant(3, 0.0), std::domain_error);
    CHECK_THROWS_AS(synthesize_blt_constant(3, -1.0), std::domain_error);
}

TEST_CASE("density functional lower bound: homogeneous value and errors") {
    BoxGrid g(2, 32, 2.0, Boundary::Neumann);
    DensityField rho(g);
    std::fill(rho.values.begin(), rho.values.end(), 1.25); // mass 5 on volume 4
    std::vector<double> zero(g.node_count(), 0.0);
    const double K = 2.3;
    // K N^{1+2/d} / |Omega|^{2/d} with N = 5, |Omega| = 4, d = 2.
    CHECK(density_functional_lower_bound(rho, zero, K) ==
          doctest::Approx(K * 25.0 / 4.0).epsilon(1e-12));

    DensityField empty(g);
    CHECK(density_functional_lower_bound(empty, zero, K) == 0.0);

    // The potential term adds int V rho.
    std::vector<double> V(g.node_count());
    double x[2];
    for (std::size_t i = 0; i < V.size(); ++i) {
        g.coords(i, x);
        V[i] = std::sin(x[0]) - 0.3 * x[1];
    }
    double v_term = 0.0;
    for (std::size_t i = 0; i < V.size(); ++i)
        v_term += g.weight(i) * V[i] * rho.values[i];
    CHECK(density_functional_lower_bound(rho, V, K) ==
          doctest::Approx(K * 25.0 / 4.0 + v_term).epsilon(1e-12));

    CHECK_THROWS_AS(density_functional_lower_bound(rho, zero, 0.0), std::domain_error);
    CHECK_THROWS_AS(density_functional_lower_bound(rho, zero, -1.0), std::domain_error);
    std::vector<double> short_V(3, 0.0);
    CHECK_THROWS_AS(density_functional_lower_bound(rho, short_V, K),
                    std::invalid_argument);
}
