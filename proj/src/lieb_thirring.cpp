#include "ineq/lieb_thirring.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ineq/constants.hpp"

namespace ineq {

namespace {

constexpr double kPi = std::numbers::pi;

// Scale-invariant slack for second-order discretizations, matching the
// convention of the single-field checkers.
double default_tol(const BoxGrid& g, double kinetic, double norm2) {
    const double h = g.h();
    return std::max(1e-9, 6.0 * h * h * kinetic / std::max(norm2, 1e-300));
}

void require_dimension(int d, const char* where) {
    if (d < 1 || d > 3)
        throw std::domain_error(std::string(where) + ": dimension must be 1, 2, or 3, got " +
                                std::to_string(d));
}

double checked_volume(double volume, const char* where) {
    if (!(volume > 0.0) || !std::isfinite(volume))
        throw std::domain_error(std::string(where) + ": volume must be positive, got " +
                                std::to_string(volume));
    return volume;
}

Cube cube_of_volume(int d, double volume) {
    return Cube{d, {0.0, 0.0, 0.0}, std::pow(volume, 1.0 / d)};
}

// Objective of the inner-eps scan shared by the synthesizers: for a given
// eps' the pair (C1, C2) of the local uncertainty bound.
struct UncertaintyPair {
    double C1 = 0.0;
    double C2 = 0.0;
};

UncertaintyPair uncertainty_pair(int d, double eps_inner) {
    const double Cd = constant(ConstantKind::local_uncertainty, d);
    const double p = 1.0 + 4.0 / d;
    return {Cd * std::pow(eps_inner, p),
            Cd * (1.0 + std::pow(eps_inner / (1.0 - eps_inner), p))};
}

} // namespace

OrbitalSet::OrbitalSet(std::vector<SampledField> orbs, double tol)
    : orbitals(std::move(orbs)), gram_tol(tol) {
    if (orbitals.empty())
        throw std::invalid_argument("OrbitalSet: at least one orbital is required");
    if (!(gram_tol > 0.0))
        throw std::invalid_argument("OrbitalSet: gram_tol must be positive");
    for (std::size_t j = 1; j < orbitals.size(); ++j)
        if (!(orbitals[j].grid == orbitals[0].grid))
            throw std::invalid_argument(
                "OrbitalSet: orbital " + std::to_string(j) +
                " lives on a different grid than orbital 0");
    verify_gram();
}

const BoxGrid& OrbitalSet::grid() const { return orbitals.at(0).grid; }

void OrbitalSet::verify_gram() const {
    for (std::size_t j = 0; j < orbitals.size(); ++j)
        for (std::size_t k = j; k < orbitals.size(); ++k) {
            const std::complex<double> g = inner_product(orbitals[j], orbitals[k]);
            const double expected = j == k ? 1.0 : 0.0;
            const double dev = std::abs(g - expected);
            if (!(dev <= gram_tol))
                throw std::invalid_argument(
                    "OrbitalSet: Gram deviation " + std::to_string(dev) + " at pair (" +
                    std::to_string(j) + ", " + std::to_string(k) + ") exceeds tolerance " +
                    std::to_string(gram_tol));
        }
}

OrbitalSet orthonormalize(std::vector<SampledField> fields, double gram_tol) {
    if (fields.empty())
        throw std::invalid_argument("orthonormalize: at least one field is required");
    for (std::size_t j = 1; j < fields.size(); ++j)
        if (!(fields[j].grid == fields[0].grid))
            throw std::invalid_argument("orthonormalize: field " + std::to_string(j) +
                                        " lives on a different grid than field 0");
    std::vector<SampledField> out;
    out.reserve(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
        SampledField v = std::move(fields[j]);
        const double original = std::sqrt(std::real(inner_product(v, v)));
        for (int pass = 0; pass < 2; ++pass)
            for (const SampledField& u : out) {
                const std::complex<double> c = inner_product(u, v);
                for (std::size_t i = 0; i < v.values.size(); ++i)
                    v.values[i] -= c * u.values[i];
            }
        const double nrm = std::sqrt(std::real(inner_product(v, v)));
        if (!(nrm > 1e-10 * std::max(original, 1e-300)))
            throw std::invalid_argument(
                "orthonormalize: field " + std::to_string(j) +
                " is numerically dependent on the preceding fields");
        for (auto& x : v.values) x /= nrm;
        out.push_back(std::move(v));
    }
    return OrbitalSet(std::move(out), gram_tol);
}

InequalityReport kinetic_form_check(const OrbitalSet& orbs) {
    const int d = orbs.grid().d;
    InequalityReport r =
        kinetic_form_check(orbs, constant(ConstantKind::gns_lower, d));
    r.note = "constant: proven lower bound of the orthonormal kinetic inequality";
    return r;
}

InequalityReport kinetic_form_check(const OrbitalSet& orbs, double constant_K) {
    orbs.verify_gram();
    const BoxGrid& g = orbs.grid();
    double lhs = 0.0, norm2 = 0.0;
    for (const SampledField& u : orbs.orbitals) {
        lhs += kinetic_energy(u);
        norm2 += std::real(inner_product(u, u));
    }
    const DensityField rho = density_from_orbitals(orbs.orbitals);
    const double p = 1.0 + 2.0 / g.d;
    double integral = 0.0;
    for (std::size_t i = 0; i < rho.values.size(); ++i)
        integral += g.weight(i) * std::pow(rho.values[i], p);
    const double rhs = constant_K * integral;
    return InequalityReport::make("lt-kinetic-form", lhs, rhs, constant_K,
                                  default_tol(g, lhs, norm2), Sense::GreaterEq);
}

InequalityReport eigenvalue_sum_check(const SchrodingerOperator& op) {
    const int d = op.grid.d;
    const double K = constant(ConstantKind::gns_lower, d);
    InequalityReport r =
        eigenvalue_sum_check(op, lt_dual(K, d, DualDirection::K_to_L));
    r.note = "constant: dual of the proven kinetic lower bound" +
             (r.note.empty() ? "" : "; " + r.note);
    return r;
}

InequalityReport eigenvalue_sum_check(const SchrodingerOperator& op, double L) {
    const BoxGrid& g = op.grid;
    for (std::size_t i = 0; i < op.potential.size(); ++i)
        if (!std::isfinite(op.potential[i]))
            throw std::domain_error("eigenvalue_sum_check: potential not finite at node " +
                                    std::to_string(i));
    const NegativeSumResult neg = negative_eigenvalue_sum(op);
    const double lhs = -neg.sum;
    const double p = 1.0 + g.d / 2.0;
    double integral = 0.0;
    for (std::size_t i = 0; i < op.potential.size(); ++i)
        if (op.potential[i] < 0.0)
            integral += g.weight(i) * std::pow(-op.potential[i], p);
    InequalityReport r = InequalityReport::make("lt-eigenvalue-sum", lhs, L * integral, L,
                                                1e-6, Sense::LessEq);
    if (!neg.converged)
        r.note = "doubled-box convergence check did not settle (box-size effects)";
    return r;
}

LocalEnergyBound local_uncertainty_bound(const DensityField& rho, const Cube& Q,
                                         double eps) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw std::domain_error("local_uncertainty_bound: eps must lie in (0,1), got " +
                                std::to_string(eps));
    const BoxGrid& g = rho.grid;
    for (std::size_t i = 0; i < rho.values.size(); ++i)
        if (!std::isfinite(rho.values[i]) || rho.values[i] < 0.0)
            throw std::domain_error(
                "local_uncertainty_bound: density must be finite and nonnegative, node " +
                std::to_string(i));
    const Cube root = bounding_cube(g);
    const double mass = cube_mass(rho, Q, root);
    if (!(mass > 0.0))
        throw std::domain_error("local_uncertainty_bound: the cube carries no mass");
    const double p_rho = 1.0 + 2.0 / g.d;
    DensityField rho_p(g);
    for (std::size_t i = 0; i < rho.values.size(); ++i)
        rho_p.values[i] = std::pow(rho.values[i], p_rho);
    const double integral_p = cube_mass(rho_p, Q, root);

    const UncertaintyPair c = uncertainty_pair(g.d, eps);
    const double bound = c.C1 * integral_p / std::pow(mass, 2.0 / g.d) -
                         c.C2 * mass / std::pow(Q.volume(), 2.0 / g.d);
    return {Q, mass, bound, LocalBoundKind::uncertainty};
}

LocalEnergyBound local_exclusion_bound(double mass, double volume, int d, int q) {
    require_dimension(d, "local_exclusion_bound");
    checked_volume(volume, "local_exclusion_bound");
    if (!(mass >= 0.0) || !std::isfinite(mass))
        throw std::domain_error("local_exclusion_bound: mass must be nonnegative");
    if (q < 1)
        throw std::domain_error("local_exclusion_bound: q must be at least 1");
    const double bound =
        kPi * kPi * std::max(mass - q, 0.0) / std::pow(volume, 2.0 / d);
    return {cube_of_volume(d, volume), mass, bound, LocalBoundKind::exclusion};
}

LocalEnergyBound boson_exclusion_bound_stupid(int n, double volume, int d, double beta) {
    require_dimension(d, "boson_exclusion_bound_stupid");
    checked_volume(volume, "boson_exclusion_bound_stupid");
    if (n < 0)
        throw std::domain_error("boson_exclusion_bound_stupid: n must be nonnegative");
    if (!(beta > 0.0))
        throw std::domain_error("boson_exclusion_bound_stupid: beta must be positive");
    const double pairs = static_cast<double>(n) * std::max(n - 1, 0);
    const double bound = beta * pairs / (2.0 * d * std::pow(volume, 2.0 / d));
    return {cube_of_volume(d, volume), static_cast<double>(n), bound,
            LocalBoundKind::boson_stupid};
}

LocalEnergyBound boson_exclusion_bound_hardcore(int n, double volume, int d, double R) {
    if (d != 3)
        throw std::domain_error(
            "boson_exclusion_bound_hardcore: the hard-sphere bound requires d = 3, got " +
            std::to_string(d));
    checked_volume(volume, "boson_exclusion_bound_hardcore");
    if (n < 0)
        throw std::domain_error("boson_exclusion_bound_hardcore: n must be nonnegative");
    const double len = std::cbrt(volume);
    if (!(R > 0.0) || !(R < len))
        throw std::domain_error(
            "boson_exclusion_bound_hardcore: R must lie in (0, volume^{1/3}), got " +
            std::to_string(R));
    const double e2 = (2.0 / std::sqrt(3.0)) * (R / volume) / ((2.0 - R / len) * (2.0 - R / len));
    const double bound = n >= 2 ? 0.5 * n * e2 : 0.0;
    return {cube_of_volume(3, volume), static_cast<double>(n), bound,
            LocalBoundKind::boson_hardcore};
}

LtSynthesis synthesize_lt_constant(int d, int q) {
    require_dimension(d, "synthesize_lt_constant");
    if (q < 1)
        throw std::domain_error("synthesize_lt_constant: q must be at least 1");
    const double base = (8.0 / 3.0) * std::pow(4.0, d);
    LtSynthesis best;
    best.K = -1.0;
    for (int i = 0; i < 200; ++i) {
        const double e = (i + 0.5) / 200.0;
        const UncertaintyPair c = uncertainty_pair(d, e);
        const double eps = std::min(kPi * kPi / (4.0 * c.C2), 0.5);
        const double K1 = eps * c.C1 * std::pow(base, -2.0 / d);
        if (K1 > best.K) best = {K1, base, eps, e};
    }
    // Multiply the q factors afterwards so K(d, q) = q^{-2/d} K(d, 1) exactly.
    best.K *= std::pow(static_cast<double>(q), -2.0 / d);
    best.lambda = base * q;
    return best;
}

BltSynthesis synthesize_blt_constant(int d, double beta) {
    require_dimension(d, "synthesize_blt_constant");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::domain_error("synthesize_blt_constant: beta must be positive");
    const double base = (8.0 / 3.0) * std::pow(4.0, d);
    BltSynthesis best;
    best.K = -1.0;
    for (int i = 0; i < 200; ++i) {
        const double e = (i + 0.5) / 200.0;
        const UncertaintyPair c = uncertainty_pair(d, e);
        const double eps = std::min(beta / (8.0 * d * c.C2), 0.5);
        const double K = eps * c.C1 * std::pow(base, -2.0 / d);
        if (K > best.K) best = {K, base, eps, e, false};
    }
    const double Ccov = covering_constants(d, 2.0 / d, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double e = (i + 0.5) / 200.0;
        const UncertaintyPair c = uncertainty_pair(d, e);
        for (int j = 0; j < 600; ++j) {
            const double t = std::pow(10.0, -4.0 + 16.0 * j / 599.0);
            const double lam = Ccov * (1.0 + t);
            const double A = (beta / (2.0 * d)) * (lam / Ccov - 1.0);
            const double eps = A / (A + c.C2);
            const double K = eps * c.C1 * std::pow(lam, -2.0 / d);
            if (K > best.K) best = {K, lam, eps, e, true};
        }
    }
    return best;
}

double density_functional_lower_bound(const DensityField& rho,
                                      const std::vector<double>& V, double K) {
    if (!(K > 0.0))
        throw std::domain_error("density_functional_lower_bound: K must be positive");
    if (V.size() != rho.values.size())
        throw std::invalid_argument(
            "density_functional_lower_bound: V has " + std::to_string(V.size()) +
            " node values but the density grid has " + std::to_string(rho.values.size()));
    const BoxGrid& g = rho.grid;
    const double p = 1.0 + 2.0 / g.d;
    double total = 0.0;
    for (std::size_t i = 0; i < rho.values.size(); ++i)
        total += g.weight(i) * (K * std::pow(rho.values[i], p) + V[i] * rho.values[i]);
    return total;
}

} // namespace ineq
