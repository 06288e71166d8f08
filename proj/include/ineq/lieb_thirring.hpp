#pragma once

#include <vector>

#include "ineq/covering.hpp"
#include "ineq/grid.hpp"
#include "ineq/report.hpp"
#include "ineq/spectral.hpp"

namespace ineq {

// An L^2-orthonormal family of fields on one shared grid (quadrature inner
// products). Construction verifies the Gram matrix against the identity and
// throws std::invalid_argument naming the first offending pair.
struct OrbitalSet {
    std::vector<SampledField> orbitals;
    double gram_tol = 1e-8;

    OrbitalSet() = default;
    explicit OrbitalSet(std::vector<SampledField> orbs, double gram_tol = 1e-8);

    const BoxGrid& grid() const; // the shared grid (set is never empty)
    std::size_t size() const { return orbitals.size(); }

    // Re-checks |<u_j, u_k> - delta_jk| <= gram_tol for all pairs; throws
    // std::invalid_argument naming the first offending pair.
    void verify_gram() const;
};

// Modified Gram-Schmidt (two projection passes) under the quadrature inner
// product. Throws std::invalid_argument if the inputs are (numerically)
// linearly dependent or live on different grids.
OrbitalSet orthonormalize(std::vector<SampledField> fields, double gram_tol = 1e-8);

enum class LocalBoundKind { uncertainty, exclusion, boson_stupid, boson_hardcore };

// A lower bound on the local (kinetic or kinetic-plus-interaction) energy
// attached to a cube carrying the given mass.
struct LocalEnergyBound {
    Cube cube;
    double mass = 0.0;
    double bound = 0.0;
    LocalBoundKind kind = LocalBoundKind::uncertainty;
};

// sum_j kinetic(u_j) >= constant * integral rho^{1+2/d} with
// rho = sum_j |u_j|^2. The default constant is the proven GNS-chain lower
// bound for the dimension; the single-orbital case is exactly check_gns.
InequalityReport kinetic_form_check(const OrbitalSet& orbs);
InequalityReport kinetic_form_check(const OrbitalSet& orbs, double constant);

// |sum of negative eigenvalues of op| <= L * integral |V_-|^{1+d/2}.
// The default L is the dual of the proven kinetic-form constant. The report
// note records when the doubled-box convergence check did not settle.
InequalityReport eigenvalue_sum_check(const SchrodingerOperator& op);
InequalityReport eigenvalue_sum_check(const SchrodingerOperator& op, double L);

// Local uncertainty bound on the dyadic sub-cube Q of the grid's bounding
// cube (Q may be the bounding cube itself):
//   bound = C_d eps^{1+4/d} (int_Q rho^{1+2/d}) / (int_Q rho)^{2/d}
//         - C_d (1 + (eps/(1-eps))^{1+4/d}) (int_Q rho) / |Q|^{2/d}.
// Requires 0 < eps < 1 and positive mass on Q (domain errors otherwise).
LocalEnergyBound local_uncertainty_bound(const DensityField& rho, const Cube& Q,
                                         double eps);

// Fermionic local exclusion: bound = pi^2 (mass - q)_+ / volume^{2/d}.
LocalEnergyBound local_exclusion_bound(double mass, double volume, int d, int q);

// Inverse-square repulsion W(x) = beta |x|^{-2}:
//   bound = beta n (n-1)_+ / (2 d volume^{2/d}).
LocalEnergyBound boson_exclusion_bound_stupid(int n, double volume, int d, double beta);

// Hard spheres of radius R in d = 3 (other d -> domain error), requiring
// 0 < R < volume^{1/3}:
//   e_2 >= (2/sqrt 3) (R/volume) (2 - R/volume^{1/3})^{-2},
// lifted to n particles via e_n >= (n/2) e_2 (zero when n < 2).
LocalEnergyBound boson_exclusion_bound_hardcore(int n, double volume, int d, double R);

// The local method's explicit kinetic-form constant. eps_inner is chosen by
// a 200-point scan of (0,1) maximizing K; then
//   C1 = C_d eps_inner^{1+4/d},  C2 = C_d (1 + (eps_inner/(1-eps_inner))^{1+4/d}),
//   lambda = (8/3) 4^d q,        eps_outer = min(pi^2/(4 C2), 1/2),
//   K = eps_outer * C1 * lambda^{-2/d}.
// The q-dependence is factored so that K(d, q) = q^{-2/d} K(d, 1) exactly.
struct LtSynthesis {
    double K = 0.0;
    double lambda = 0.0;
    double eps_outer = 0.0;
    double eps_inner = 0.0;
};
LtSynthesis synthesize_lt_constant(int d, int q);

// Kinetic-plus-interaction constant for inverse-square repulsion of
// strength beta, by the better of two scanned routes (heuristic scan, not
// an optimized constant):
//   - fixed lambda = (8/3) 4^d with the pairwise infimum bound
//     (eps_outer = min(beta/(8 d C2), 1/2));
//   - improved route scanning lambda (~1/beta for small beta) against the
//     aggregated quadratic exclusion term, eps_outer = A/(A + C2) with
//     A = (beta/(2d)) (lambda / C_{d,2/d,2} - 1).
struct BltSynthesis {
    double K = 0.0;
    double lambda = 0.0;
    double eps_outer = 0.0;
    double eps_inner = 0.0;
    bool improved_route = false;
};
BltSynthesis synthesize_blt_constant(int d, double beta);

// integral (K rho^{1+2/d} + V rho) by grid quadrature; V holds node values.
double density_functional_lower_bound(const DensityField& rho,
                                      const std::vector<double>& V, double K);

} // namespace ineq
