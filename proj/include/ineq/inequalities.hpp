#pragma once

#include <complex>
#include <vector>

#include "ineq/grid.hpp"
#include "ineq/report.hpp"

namespace ineq {

// <p^2><x^2> >= d^2/4 for the internally normalized field; the second moment
// is taken about the box center. Zero field -> domain error.
InequalityReport check_heisenberg(const SampledField& field);

enum class HardyVariant { standard, log2d, antipodal };

// Gradient bounds against inverse-square weights centered at the box center c:
//   standard:  d in {1,3}; field must vanish within 2 cells of c;
//              kinetic >= ((d-2)^2/4) int |u|^2/|x-c|^2
//   log2d:     d = 2; field must vanish within 2 cells of c and of the unit
//              circle |x-c| = 1;
//              kinetic >= (1/4) int |u|^2/(|x-c|^2 ln^2|x-c|)
//   antipodal: u(2c-x) = -u(x) at every node (checked to 1e-12);
//              kinetic >= (d^2/4) int |u|^2/|x-c|^2
// Violated preconditions raise errors identifying the offending node.
InequalityReport check_hardy(const SampledField& field, HardyVariant variant);

// Substitution potential W = alpha(1-alpha)|grad f|^2/f^2 + alpha(-lap f)/f
// from discrete derivatives of f (per node).
std::vector<double> gsr_potential(const SampledField& f, double alpha);

// Checks the factorization identity
//   kinetic(u) = int W |u|^2 + int |grad(f^-alpha u)|^2 f^(2 alpha)
// to first order in h (the potential W carries second derivatives of f).
// Requires f > 0 wherever u is supported and u vanishing within 2 cells of
// the box boundary.
InequalityReport gsr_identity_check(const SampledField& f, const SampledField& u,
                                    double alpha);

// kinetic * ||u||_2^(4/d) >= G * int |u|^(2+4/d). The default G is the proven
// lower bound; use_optimal_constant selects the best known optimal value
// instead (rigorous for d = 1 only; the report's note flags the d = 3 value).
InequalityReport check_gns(const SampledField& field, bool use_optimal_constant = false);

// d = 3: kinetic >= S_3 ||u||_6^2;  d = 1: kinetic >= ||u||_inf^4 / ||u||_2^2.
// Other d -> domain error.
InequalityReport check_sobolev(const SampledField& field);

// Interval with natural boundary conditions:
//   kinetic >= (pi^2/side^2) int |u - mean(u)|^2.   Requires d = 1.
InequalityReport check_poincare(const SampledField& field);

// Adaptive quadrature of int_0^inf [A - B t^(d/4)]_+^2 dt checked against the
// closed form d^2 A^(2+4/d) B^(-4/d) / ((d+2)(d+4)) to relative accuracy 1e-8.
InequalityReport gns_integral_identity(double A, double B, int d);

// N-particle wave function sampled on the N-fold tensor power of a one-body
// grid (total axes N*d capped at 6, per-axis cells capped at 24).
struct ManyBodyField {
    enum class Symmetry { none, symmetric, antisymmetric };

    int N = 2;
    BoxGrid grid; // one-body grid; the tensor grid has N*grid.d axes
    std::vector<std::complex<double>> values; // axis 0 fastest
    Symmetry symmetry = Symmetry::none;

    ManyBodyField(int N, const BoxGrid& one_body, Symmetry s);
    ManyBodyField(int N, const BoxGrid& one_body, std::vector<std::complex<double>> v,
                  Symmetry s);

    int d() const { return grid.d; }
    int axes() const { return N * grid.d; }
    std::size_t value_count() const;

    // Verifies the declared exchange symmetry on sampled particle
    // transpositions (tolerance 1e-12 relative to the max modulus); throws
    // identifying the first offending node.
    void verify_symmetry() const;
};

enum class ManyBodyHardyVariant { onedim, fermionic };

// onedim (d = 1; psi must vanish within 2 cells of every diagonal x_j = x_k):
//   sum_j int |grad_j psi|^2 >= (1/2) sum_{j<k} int |psi|^2/|x_j - x_k|^2
// fermionic (antisymmetric psi, d in {1,2,3}):
//   sum_j int |grad_j psi|^2 >= (d^2/N) sum_{j<k} int |psi|^2/|x_j - x_k|^2
// (the nonnegative center-of-mass term of the full fermionic bound is
// dropped, which only weakens the right-hand side).
InequalityReport check_manybody_hardy(const ManyBodyField& psi,
                                      ManyBodyHardyVariant variant);

} // namespace ineq
