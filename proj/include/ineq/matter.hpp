#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "ineq/report.hpp"

namespace ineq {

// Two-species charged system: N mobile unit-charge particles at x (q spin
// states each, mass m) and M centers of charge Z > 0 at R.
struct MatterConfig {
    int N = 0;
    int M = 0;
    double Z = 1.0;
    int q = 1;
    double m = 1.0;
    std::vector<std::array<double, 3>> x; // size N
    std::vector<std::array<double, 3>> R; // size M
};

// Parse {"x": [[..,..,..], ...], "R": [...], "Z": .., "q": .., "m": ..,
// "N": .., "M": ..}. N and M default to the array lengths; when given they
// must match. Malformed input or bad parameter values throw invalid_argument.
MatterConfig matter_config_from_json(const std::string& text);

// Labeled scalar energy bound with a per-particle normalization and an echo
// of the inputs (and derived companions) that produced it.
struct EnergyBoundReport {
    std::string label;
    double value = 0.0;
    double per_particle = 0.0;
    std::vector<std::pair<std::string, double>> inputs;
};

// JSON object {label, value, per_particle, inputs: {name: value, ...}}.
std::string energy_report_to_json(const EnergyBoundReport& r);

// Total electrostatic energy:
//   sum_{i<j} 1/|x_i-x_j| - Z sum_{j,k} 1/|x_j-R_k| + Z^2 sum_{k<l} 1/|R_k-R_l|.
// Coincident interacting points throw domain_error naming the pair.
double coulomb_energy(const MatterConfig& cfg);

// Nearest-neighbor reduction of the electrostatic energy: checks
//   coulomb_energy >= -(2Z+1) sum_j dist(x_j, R)^{-1}
//                     + (Z^2/4) sum_k dist(R_k, R minus R_k)^{-1}.
// The first sum is empty for M = 0 and the second for M <= 1 (a particle
// with no counterpart contributes nothing). Tolerance 1e-9.
InequalityReport baxter_check(const MatterConfig& cfg);

// Ground-state bounds for the attractive 1/|x| problem at coupling Z:
//   exact        = -Z^2/4                  (known ground state)
//   hardy        = -Z^2                    (pointwise domination bound)
//   gns          = -9 (pi/2)^{4/3} Z^2 / (5 G_3), best known numerical G_3
//                  (non-rigorous constant)
//   gns_fallback = -3 Z^2 / 5, the same bound with the proven G_3 >= S_3
struct HydrogenBounds {
    double exact = 0.0;
    double hardy = 0.0;
    double gns = 0.0;
    double gns_fallback = 0.0;
};
HydrogenBounds hydrogen_bounds(double Z);

// Best currently known eigenvalue-sum constant L_d (proven bound, not known
// to be optimal): the dual of the kinetic-form constant (pi/sqrt 3)^{-2/d}
// K_d^cl. Supported for d = 1, 2, 3.
double best_known_dual_constant(int d);

// Lower bound for the energy of N mobile fermions plus M charge-Z centers:
//   sharp form:  -(3/2) (5 pi^2 q L3)^{2/3} m (2Z+1)^2 M^{2/3} N^{1/3}
//   linear form: -(3/2) (5 pi^2 q L3)^{2/3} m (2Z+1)^2 (N+M)
// The returned value is the linear form (per_particle over N+M); the echo
// carries the sharp form ("sharp_form") and the linear coefficient
// ("linear_coefficient" = (3/2)(5 pi^2 q L3)^{2/3}, about 1.073 for q = 1
// with the best known L3).
EnergyBoundReport stability_bound(int N, int M, double Z, int q, double m, double L3);

// Same pipeline for mobile bosons carrying an inverse-square repulsion of
// strength beta: the spin-weighted constant q*L3 is replaced by the supplied
// interaction-kinetic constant L3beta (e.g. the dual of
// synthesize_blt_constant(3, beta).K).
EnergyBoundReport inverse_square_stability_bound(int N, int M, double Z, double m,
                                                 double beta, double L3beta);

enum class FermiGasMode { exact_fill, weyl, local_lower };

// Ground-state energy of N free fermions with q spin states in a box of the
// given volume:
//   exact_fill  — sum of the lowest zero-flux box levels, each holding up
//                 to q particles;
//   weyl        — semiclassical value q^{-2/d} K_d^cl N^{1+2/d} / V^{2/d};
//   local_lower — proven lower bound max_s pi^2 (N s^2 - q s^{d+2}) / V^{2/d}
//                 over integer subdivisions s (scan around the analytic
//                 optimizer (2N/((d+2)q))^{1/d}, which can round either way).
EnergyBoundReport fermi_gas_energy(int N, double volume, int d, int q, FermiGasMode mode);

// Ground-state energy of N fermions in an isotropic harmonic trap with level
// spacing omega: d = 1 fills omega(k + 1/2) giving omega N^2/2; d = 2
// requires a complete-shell count N = n(n+1)/2 and gives omega N sqrt(8N+1)/3.
// Non-triangular N in d = 2 throws domain_error naming the nearest complete
// fillings.
double harmonic_fermion_energy(int N, int d, double omega);

// Largest particle number a sub-volume of size eps*N can hold in a state
// whose kinetic (plus repulsive) energy is at most 4cN while obeying the
// kinetic lower bound with constant K3: (4c/K3)^{3/5} eps^{2/5} N.
double extensivity_max_particles(double c, double K3, double eps, double N);

// Note: for attractive systems without any exclusion mechanism the energy is
// known to grow superlinearly (reference shapes -N^{5/3} with fixed centers,
// -N^{7/5} with mobile ones); no explicit constants are available, so the
// library exposes no API for those curves.

} // namespace ineq
