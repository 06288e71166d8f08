#include "ineq/constants.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ineq {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void unsupported(ConstantKind kind, int d) {
    throw std::domain_error(std::string("constant: unsupported pair (") +
                            constant_kind_name(kind) + ", d=" + std::to_string(d) + ")");
}

// |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)
double sphere_measure(int d) {
    return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

// Volume of the unit d-ball.
double ball_volume(int d) {
    return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

} // namespace

const char* constant_kind_name(ConstantKind kind) {
    switch (kind) {
        case ConstantKind::sphere_measure: return "sphere_measure";
        case ConstantKind::sobolev: return "sobolev";
        case ConstantKind::gns_lower: return "gns_lower";
        case ConstantKind::gns_optimal_known: return "gns_optimal_known";
        case ConstantKind::semiclassical: return "semiclassical";
        case ConstantKind::local_uncertainty: return "local_uncertainty";
        case ConstantKind::ball_exclusion_xi: return "ball_exclusion_xi";
    }
    return "unknown";
}

ConstantInfo constant_info(ConstantKind kind, int d) {
    if (d < 1) unsupported(kind, d);
    ConstantInfo info;
    switch (kind) {
        case ConstantKind::sphere_measure:
            info.value = sphere_measure(d);
            info.definition = "|S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)";
            return info;

        case ConstantKind::sobolev:
            if (d == 1) {
                // Best constant in int |u'|^2 >= ||u||_2^{-2} ||u||_inf^4.
                info.value = 1.0;
                info.definition = "S_1 = 1: int|u'|^2 ||u||_2^2 >= ||u||_inf^4";
                return info;
            }
            if (d >= 3) {
                info.value = d * (d - 2) * std::pow(sphere_measure(d + 1), 2.0 / d) / 4.0;
                info.definition = "S_d = d(d-2)|S^d|^{2/d}/4";
                return info;
            }
            unsupported(kind, d); // d = 2: no such constant (borderline case)

        case ConstantKind::gns_lower:
            info.value = std::pow(2.0 * kPi, 2.0) * std::pow(double(d), 2.0 + 2.0 / d) *
                         std::pow(sphere_measure(d), -2.0 / d) / ((d + 2.0) * (d + 4.0));
            info.definition = "G_d' = (2pi)^2 d^{2+2/d} |S^{d-1}|^{-2/d} / ((d+2)(d+4))";
            return info;

        case ConstantKind::gns_optimal_known:
            if (d == 1) {
                info.value = kPi * kPi / 4.0;
                info.definition = "G_1 = pi^2/4 (proven optimal)";
                return info;
            }
            if (d == 3) {
                info.value = 9.578;
                info.rigorous = false;
                info.definition = "G_3 ~ 9.578 (numerical, non-rigorous)";
                return info;
            }
            unsupported(kind, d); // optimal constant unknown otherwise

        case ConstantKind::semiclassical:
            info.value = (double(d) / (d + 2.0)) * std::pow(2.0 * kPi, 2.0) *
                         std::pow(ball_volume(d), -2.0 / d);
            info.definition = "K_d^cl = (d/(d+2)) (2pi)^2 omega_d^{-2/d}";
            return info;

        case ConstantKind::local_uncertainty:
            info.value = d * d * kPi * kPi / (16.0 * (d + 2.0) * (d + 4.0));
            info.definition = "C_d = d^2 pi^2 / (16 (d+2)(d+4))";
            return info;

        case ConstantKind::ball_exclusion_xi:
            // Lowest nonzero Neumann eigenvalue of -Laplace on the unit
            // d-ball equals xi^2, with xi the root below (6+ digits).
            if (d == 2) {
                info.value = 1.8411837813406593; // first positive zero of J_1'
                info.definition = "xi_2: first positive root of J_1'(x) = 0";
                return info;
            }
            if (d == 3) {
                info.value = 2.0815759778181006; // root of tan x = 2x/(2 - x^2)
                info.definition = "xi_3: smallest positive root of tan x = 2x/(2-x^2)";
                return info;
            }
            unsupported(kind, d);
    }
    unsupported(kind, d);
}

double constant(ConstantKind kind, int d) { return constant_info(kind, d).value; }

double lt_dual(double value, int d, DualDirection direction) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::domain_error("lt_dual: value must be positive and finite");
    if (d < 1) throw std::domain_error("lt_dual: d must be >= 1");
    const double c = (2.0 / (d + 2.0)) * std::pow(double(d) / (d + 2.0), 0.5 * d);
    if (direction == DualDirection::K_to_L) return c * std::pow(value, -0.5 * d);
    return std::pow(c / value, 2.0 / d);
}

double alpha_statistics(double alpha, int N) {
    if (N < 2) throw std::domain_error("alpha_statistics: N must be >= 2");
    if (!std::isfinite(alpha)) throw std::domain_error("alpha_statistics: alpha must be finite");
    double best = std::numeric_limits<double>::infinity();
    for (int p = 0; p <= N - 2; ++p) {
        const double t = (2.0 * p + 1.0) * alpha;
        const long long window = static_cast<long long>(std::ceil(std::abs(t) / 2.0)) + 1;
        for (long long q = -window; q <= window; ++q) {
            best = std::min(best, std::abs(t - 2.0 * q));
        }
    }
    return best;
}

double alpha_star(long long mu, long long nu) {
    if (nu == 0) throw std::domain_error("alpha_star: denominator must be nonzero");
    if (nu < 0) { nu = -nu; mu = -mu; }
    const long long g = std::gcd(mu < 0 ? -mu : mu, nu);
    if (g > 1) { mu /= g; nu /= g; }
    // mu = 0 reduces to 0/1 with even numerator.
    return (mu % 2 != 0) ? 1.0 / static_cast<double>(nu) : 0.0;
}

double covering_constants(int d, double alpha, double beta) {
    if (d < 1) throw std::domain_error("covering_constants: d must be >= 1");
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::domain_error("covering_constants: alpha and beta must be positive");
    return std::pow(2.0, d * (alpha + beta + 1.0)) / (std::pow(2.0, d * alpha) - 1.0);
}

double weak_b(int d, double alpha, double q, double lambda) {
    if (d < 1) throw std::domain_error("weak_b: d must be >= 1");
    if (!(alpha > 0.0)) throw std::domain_error("weak_b: alpha must be positive");
    if (!(lambda > 0.0)) throw std::domain_error("weak_b: lambda must be positive");
    if (q < 0.0) throw std::domain_error("weak_b: q must be >= 0");
    return 1.0 - (q / lambda) * std::pow(2.0, d * (alpha + 2.0)) /
                     (std::pow(2.0, d * alpha) - 1.0);
}

} // namespace ineq
