#pragma once

#include <string>

namespace ineq {

// Closed-form constants used across the library. Each kind maps to exactly
// one defining formula (recorded in ConstantInfo::definition).
enum class ConstantKind {
    sphere_measure,     // |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)
    sobolev,            // S_d = d(d-2)|S^d|^{2/d}/4 (d >= 3); d = 1 sup-norm variant
    gns_lower,          // G_d' = (2pi)^2 d^{2+2/d} |S^{d-1}|^{-2/d} / ((d+2)(d+4))
    gns_optimal_known,  // best known value of the optimal GNS constant G_d
    semiclassical,      // K_d^cl = (d/(d+2)) (2pi)^2 omega_d^{-2/d}
    local_uncertainty,  // C_d = d^2 pi^2 / (16 (d+2)(d+4))
    ball_exclusion_xi,  // xi: lowest nonzero Neumann eigenvalue of the unit ball is xi^2
};

struct ConstantInfo {
    double value = 0.0;
    bool rigorous = true;      // false: numerically computed, not proven
    std::string definition;    // the defining formula / equation
};

// Full record (value + rigor flag + defining formula).
// Throws std::domain_error for unsupported (kind, d) pairs.
ConstantInfo constant_info(ConstantKind kind, int d);

// Value only.
double constant(ConstantKind kind, int d);

const char* constant_kind_name(ConstantKind kind);

// Conversion between the kinetic-form constant K and the eigenvalue-sum
// constant L:  L = (2/(d+2)) (d/(d+2))^{d/2} K^{-d/2}, and its inverse.
enum class DualDirection { K_to_L, L_to_K };
double lt_dual(double value, int d, DualDirection direction);

// alpha_N = min over p in {0,...,N-2} and integer q of |(2p+1) alpha - 2q|.
// Brute force; the q window |q| <= ceil(|(2p+1)alpha|/2)+1 is exhaustive
// because the objective is monotone in q outside it.
double alpha_statistics(double alpha, int N);

// Limit N -> infinity of alpha_statistics for rational alpha = mu/nu:
// 1/nu when the reduced numerator is odd, 0 when it is even.
// The fraction is reduced internally.
double alpha_star(long long mu, long long nu);

// Dyadic covering constant C_{d,alpha,beta} = 2^{d(alpha+beta+1)} / (2^{d alpha} - 1).
double covering_constants(int d, double alpha, double beta);

// Weak-exclusion mass fraction b = 1 - (q/lambda) 2^{d(alpha+2)} / (2^{d alpha} - 1).
// May be <= 0; the caller interprets the sign.
double weak_b(int d, double alpha, double q, double lambda);

} // namespace ineq
