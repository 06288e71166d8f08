#include "ineq/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ineq/constants.hpp"
#include "ineq/rng.hpp"

namespace ineq {

namespace {

constexpr double kPi = std::numbers::pi;

// Default tolerance for the inequality checks: h^2 <p^2> is the
// scale-invariant size of the stencil/quadrature error relative to the
// checked quantities (it matters only near optimizers; the sampled interval
// cosine at equality has a relative deficit of exactly h^2 <p^2> / 3).
double default_tol(const BoxGrid& g, double kinetic, double norm2) {
    const double p2 = kinetic / std::max(norm2, 1e-300);
    return std::max(1e-9, 6.0 * g.h() * g.h() * p2);
}

double max_abs(const std::vector<std::complex<double>>& v) {
    double mx = 0.0;
    for (const auto& z : v) mx = std::max(mx, std::abs(z));
    return mx;
}

std::string node_label(const BoxGrid& g, std::size_t idx) {
    double x[3];
    g.coords(idx, x);
    std::string s = "node " + std::to_string(idx) + " at (";
    for (int a = 0; a < g.d; ++a) {
        if (a) s += ", ";
        s += std::to_string(x[a]);
    }
    s += ")";
    return s;
}

// Squared distance from node idx to the box center.
double center_dist2(const BoxGrid& g, std::size_t idx) {
    const double c = 0.5 * g.side;
    double x[3], r2 = 0.0;
    g.coords(idx, x);
    for (int a = 0; a < g.d; ++a) r2 += (x[a] - c) * (x[a] - c);
    return r2;
}

// Per-axis derivative of a complex field with the same stencils as
// kinetic_energy: central in the interior, one-sided at Neumann walls,
// implicit zero ghosts at Dirichlet walls.
std::complex<double> axis_derivative(const BoxGrid& g,
                                     const std::vector<std::complex<double>>& v,
                                     std::size_t idx, int i, std::size_t stride) {
    const int m = g.nodes_per_axis();
    const double h = g.h();
    if (g.bc == Boundary::Neumann) {
        if (i == 0) return (v[idx + stride] - v[idx]) / h;
        if (i == m - 1) return (v[idx] - v[idx - stride]) / h;
        return (v[idx + stride] - v[idx - stride]) / (2.0 * h);
    }
    const std::complex<double> up = (i == m - 1) ? 0.0 : v[idx + stride];
    const std::complex<double> dn = (i == 0) ? 0.0 : v[idx - stride];
    return (up - dn) / (2.0 * h);
}

// Kinetic-type energy with a per-node weight: sum_x quad(x) w(x) |grad v(x)|^2.
double weighted_kinetic(const SampledField& field, const std::vector<double>& w) {
    const BoxGrid& g = field.grid;
    const int m = g.nodes_per_axis();
    const auto& v = field.values;
    double energy = 0.0;
    std::size_t stride = 1;
    for (int axis = 0; axis < g.d; ++axis) {
        const std::size_t outer = g.node_count() / m;
        for (std::size_t o = 0; o < outer; ++o) {
            const std::size_t low = o % stride;
            const std::size_t high = o / stride;
            const std::size_t base = low + high * stride * m;
            for (int i = 0; i < m; ++i) {
                const std::size_t idx = base + static_cast<std::size_t>(i) * stride;
                if (w[idx] == 0.0) continue;
                energy += g.weight(idx) * w[idx] *
                          std::norm(axis_derivative(g, v, idx, i, stride));
            }
        }
        stride *= m;
    }
    return energy;
}

// Hardy-type right-hand integral int |u|^2 / w(x) where w is an inverse
// weight per node; nodes with w = 0 are skipped (the preconditions force the
// field to vanish there).
double inverse_weighted_mass(const SampledField& u, const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        if (w[i] == 0.0) continue;
        s += u.grid.weight(i) * std::norm(u.values[i]) / w[i];
    }
    return s;
}

void require_vanishing(const SampledField& u, const std::vector<bool>& zone,
                       const char* what) {
    const double floor = 1e-12 * std::max(1.0, max_abs(u.values));
    for (std::size_t i = 0; i < u.values.size(); ++i)
        if (zone[i] && std::abs(u.values[i]) > floor)
            throw std::invalid_argument(std::string("check_hardy: field not vanishing ") +
                                        what + ": " + node_label(u.grid, i));
}

} // namespace

InequalityReport check_heisenberg(const SampledField& field) {
    const BoxGrid& g = field.grid;
    double norm2 = 0.0, moment2 = 0.0;
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        const double m = g.weight(i) * std::norm(field.values[i]);
        norm2 += m;
        moment2 += m * center_dist2(g, i);
    }
    if (norm2 <= 0.0)
        throw std::domain_error("check_heisenberg: zero field");
    const double T = kinetic_energy(field);
    const double lhs = (T / norm2) * (moment2 / norm2);
    const double rhs = 0.25 * g.d * g.d;
    return InequalityReport::make("heisenberg", lhs, rhs, rhs, default_tol(g, T, norm2));
}

InequalityReport check_hardy(const SampledField& field, HardyVariant variant) {
    const BoxGrid& g = field.grid;
    const std::size_t total = g.node_count();
    const double h = g.h();
    const double band = 2.0 * h * (1.0 - 1e-12);
    std::vector<double> w(total, 0.0);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < total; ++i) norm2 += g.weight(i) * std::norm(field.values[i]);

    switch (variant) {
    case HardyVariant::standard: {
        if (g.d != 3 && g.d != 1)
            throw std::domain_error("check_hardy(standard): requires d = 3 or d = 1");
        std::vector<bool> zone(total, false);
        for (std::size_t i = 0; i < total; ++i) {
            const double r2 = center_dist2(g, i);
            if (r2 < band * band)
                zone[i] = true;
            else
                w[i] = r2;
        }
        require_vanishing(field, zone, "within 2 cells of the center");
        const double c = 0.25 * (g.d - 2) * (g.d - 2);
        const double lhs = kinetic_energy(field);
        const double rhs = c * inverse_weighted_mass(field, w);
        return InequalityReport::make("hardy-standard", lhs, rhs, c,
                                      default_tol(g, lhs, norm2));
    }
    case HardyVariant::log2d: {
        if (g.d != 2)
            throw std::domain_error("check_hardy(log2d): requires d = 2");
        std::vector<bool> zone(total, false);
        for (std::size_t i = 0; i < total; ++i) {
            const double r = std::sqrt(center_dist2(g, i));
            if (r < band || std::abs(r - 1.0) < band) {
                zone[i] = true;
            } else {
                const double lg = std::log(r);
                w[i] = r * r * lg * lg;
            }
        }
        require_vanishing(field, zone, "within 2 cells of the center or the unit circle");
        const double c = 0.25;
        const double lhs = kinetic_energy(field);
        const double rhs = c * inverse_weighted_mass(field, w);
        return InequalityReport::make("hardy-log-2d", lhs, rhs, c,
                                      default_tol(g, lhs, norm2));
    }
    case HardyVariant::antipodal: {
        const int m = g.nodes_per_axis();
        const double floor = 1e-12 * std::max(1.0, max_abs(field.values));
        for (std::size_t i = 0; i < total; ++i) {
            // Antipodal node: every per-axis index i_a -> m-1-i_a.
            std::size_t rest = i, anti = 0, stride = 1;
            for (int a = 0; a < g.d; ++a) {
                const int ia = static_cast<int>(rest % m);
                rest /= m;
                anti += static_cast<std::size_t>(m - 1 - ia) * stride;
                stride *= m;
            }
            if (std::abs(field.values[anti] + field.values[i]) > floor)
                throw std::invalid_argument(
                    "check_hardy(antipodal): field is not antisymmetric about the "
                    "center: " + node_label(g, i));
        }
        // The exact center (if it is a node) carries u = 0 by antisymmetry;
        // roundoff can leave its distance at ~1 ulp instead of zero, so snap
        // it out of the weight rather than divide by it.
        const double tiny2 = 1e-18 * g.side * g.side;
        for (std::size_t i = 0; i < total; ++i) {
            const double r2 = center_dist2(g, i);
            w[i] = r2 < tiny2 ? 0.0 : r2;
        }
        const double c = 0.25 * g.d * g.d;
        const double lhs = kinetic_energy(field);
        const double rhs = c * inverse_weighted_mass(field, w);
        return InequalityReport::make("hardy-antipodal", lhs, rhs, c,
                                      default_tol(g, lhs, norm2));
    }
    }
    throw std::domain_error("check_hardy: unknown variant");
}

std::vector<double> gsr_potential(const SampledField& f, double alpha) {
    const BoxGrid& g = f.grid;
    const int m = g.nodes_per_axis();
    if (m < 3)
        throw std::domain_error("gsr_potential: grid too coarse for second differences");
    const double h = g.h();
    const std::size_t total = g.node_count();
    std::vector<double> grad2(total, 0.0), lap(total, 0.0);

    std::size_t stride = 1;
    for (int axis = 0; axis < g.d; ++axis) {
        const std::size_t outer = total / m;
        for (std::size_t o = 0; o < outer; ++o) {
            const std::size_t low = o % stride;
            const std::size_t high = o / stride;
            const std::size_t base = low + high * stride * m;
            for (int i = 0; i < m; ++i) {
                const std::size_t idx = base + static_cast<std::size_t>(i) * stride;
                grad2[idx] += std::norm(axis_derivative(g, f.values, idx, i, stride));
                // Second difference; one-sided copies at the walls (the
                // identity check forces u = 0 there, so the value is moot).
                const int ic = std::clamp(i, 1, m - 2);
                const std::size_t c = base + static_cast<std::size_t>(ic) * stride;
                lap[idx] += (f.values[c + stride] - 2.0 * f.values[c] +
                             f.values[c - stride])
                                .real() /
                            (h * h);
            }
        }
        stride *= m;
    }

    std::vector<double> W(total, 0.0);
    for (std::size_t i = 0; i < total; ++i) {
        const double fv = f.values[i].real();
        if (fv == 0.0) continue; // caller guarantees u = 0 here
        W[i] = alpha * (1.0 - alpha) * grad2[i] / (fv * fv) + alpha * (-lap[i]) / fv;
    }
    return W;
}

InequalityReport gsr_identity_check(const SampledField& f, const SampledField& u,
                                    double alpha) {
    const BoxGrid& g = u.grid;
    if (!(f.grid == g))
        throw std::invalid_argument("gsr_identity_check: f and u must share a grid");
    if (!f.is_real(1e-12 * std::max(1.0, max_abs(f.values))))
        throw std::domain_error("gsr_identity_check: f must be real");
    const int m = g.nodes_per_axis();
    const std::size_t total = g.node_count();
    const double floor = 1e-12 * std::max(1.0, max_abs(u.values));

    // u must vanish within 2 cells of the box boundary, and f must be
    // positive wherever u lives (plus one neighbor layer, so that the
    // substituted field f^-alpha u is differentiable there).
    std::vector<bool> support(total, false);
    for (std::size_t i = 0; i < total; ++i) {
        bool boundary = false;
        std::size_t rest = i;
        for (int a = 0; a < g.d; ++a) {
            const int ia = static_cast<int>(rest % m);
            rest /= m;
            const double x = g.coord(ia);
            const double layer = 2.0 * g.h() * (1.0 + 1e-12);
            if (x < layer || x > g.side - layer) boundary = true;
        }
        if (std::abs(u.values[i]) > floor) {
            if (boundary)
                throw std::invalid_argument(
                    "gsr_identity_check: u not vanishing on the 2-cell boundary "
                    "layer: " + node_label(g, i));
            support[i] = true;
        }
    }
    // Dilate the support by one node per axis (neighbors enter derivatives).
    std::vector<bool> touched = support;
    {
        std::size_t stride = 1;
        for (int axis = 0; axis < g.d; ++axis) {
            std::vector<bool> grown = touched;
            const std::size_t outer = total / m;
            for (std::size_t o = 0; o < outer; ++o) {
                const std::size_t low = o % stride;
                const std::size_t high = o / stride;
                const std::size_t base = low + high * stride * m;
                for (int i = 0; i < m; ++i) {
                    const std::size_t idx = base + static_cast<std::size_t>(i) * stride;
                    if (!touched[idx]) continue;
                    if (i > 0) grown[idx - stride] = true;
                    if (i < m - 1) grown[idx + stride] = true;
                }
            }
            touched = std::move(grown);
            stride *= m;
        }
    }
    for (std::size_t i = 0; i < total; ++i)
        if (touched[i] && !(f.values[i].real() > 0.0))
            throw std::domain_error("gsr_identity_check: f <= 0 on the support of u: " +
                                    node_label(g, i));

    const double lhs = kinetic_energy(u);

    const std::vector<double> W = gsr_potential(f, alpha);
    double term_W = 0.0;
    for (std::size_t i = 0; i < total; ++i)
        if (support[i]) term_W += g.weight(i) * W[i] * std::norm(u.values[i]);

    SampledField v(g);
    std::vector<double> f2a(total, 0.0);
    for (std::size_t i = 0; i < total; ++i) {
        if (touched[i]) {
            const double fv = f.values[i].real();
            v.values[i] = u.values[i] * std::pow(fv, -alpha);
            f2a[i] = std::pow(fv, 2.0 * alpha);
        }
    }
    const double term_v = weighted_kinetic(v, f2a);

    const double rhs = term_W + term_v;
    const double tol = 0.5 * g.h();
    return InequalityReport::make("gsr-identity", lhs, rhs, alpha, tol, Sense::CloseTo);
}

InequalityReport check_gns(const SampledField& field, bool use_optimal_constant) {
    const BoxGrid& g = field.grid;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < field.values.size(); ++i)
        norm2 += g.weight(i) * std::norm(field.values[i]);
    if (norm2 <= 0.0)
        throw std::domain_error("check_gns: zero field");
    const double p = 2.0 + 4.0 / g.d;
    const double interaction = std::pow(lp_norm(field, p), p);
    const ConstantInfo info = constant_info(
        use_optimal_constant ? ConstantKind::gns_optimal_known : ConstantKind::gns_lower,
        g.d);
    const double T = kinetic_energy(field);
    const double lhs = T * std::pow(norm2, 2.0 / g.d);
    const double rhs = info.value * interaction;
    auto r = InequalityReport::make("gns", lhs, rhs, info.value, default_tol(g, T, norm2));
    if (!info.rigorous)
        r.note = "constant is the best known numerical value, not a proven bound";
    return r;
}

InequalityReport check_sobolev(const SampledField& field) {
    const BoxGrid& g = field.grid;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < field.values.size(); ++i)
        norm2 += g.weight(i) * std::norm(field.values[i]);
    if (norm2 <= 0.0)
        throw std::domain_error("check_sobolev: zero field");
    const double lhs = kinetic_energy(field);
    const double tol = default_tol(g, lhs, norm2);
    if (g.d == 3) {
        const double S3 = constant(ConstantKind::sobolev, 3);
        const double q = lp_norm(field, 6.0);
        return InequalityReport::make("sobolev", lhs, S3 * q * q, S3, tol);
    }
    if (g.d == 1) {
        const double sup = lp_norm(field, std::numeric_limits<double>::infinity());
        const double rhs = sup * sup * sup * sup / norm2;
        return InequalityReport::make("sobolev", lhs, rhs, 1.0, tol);
    }
    throw std::domain_error("check_sobolev: requires d = 3 or d = 1");
}

InequalityReport check_poincare(const SampledField& field) {
    const BoxGrid& g = field.grid;
    if (g.d != 1)
        throw std::domain_error("check_poincare: requires d = 1");
    double vol = 0.0, norm2 = 0.0;
    std::complex<double> mean = 0.0;
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        vol += g.weight(i);
        norm2 += g.weight(i) * std::norm(field.values[i]);
        mean += g.weight(i) * field.values[i];
    }
    mean /= vol;
    double variance = 0.0;
    for (std::size_t i = 0; i < field.values.size(); ++i)
        variance += g.weight(i) * std::norm(field.values[i] - mean);
    const double c = kPi * kPi / (g.side * g.side);
    const double lhs = kinetic_energy(field);
    return InequalityReport::make("poincare", lhs, c * variance, c,
                                  default_tol(g, lhs, norm2));
}

namespace {

double adaptive_simpson(double (*f)(double, double, double, double), double A, double B,
                        double dd, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm, A, B, dd), frm = f(rm, A, B, dd);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, A, B, dd, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, A, B, dd, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double cutoff_square(double t, double A, double B, double dd) {
    const double v = A - B * std::pow(t, dd / 4.0);
    return v > 0.0 ? v * v : 0.0;
}

} // namespace

InequalityReport gns_integral_identity(double A, double B, int d) {
    if (!(B > 0.0))
        throw std::domain_error("gns_integral_identity: B must be > 0");
    if (!(A >= 0.0))
        throw std::domain_error("gns_integral_identity: A must be >= 0");
    if (d < 1)
        throw std::domain_error("gns_integral_identity: d must be >= 1");
    const double dd = d;
    const double rhs =
        dd * dd * std::pow(A, 2.0 + 4.0 / dd) * std::pow(B, -4.0 / dd) / ((dd + 2.0) * (dd + 4.0));
    double lhs = 0.0;
    if (A > 0.0) {
        const double upper = std::pow(A / B, 4.0 / dd);
        const double fa = cutoff_square(0.0, A, B, dd);
        const double fm = cutoff_square(0.5 * upper, A, B, dd);
        const double fb = cutoff_square(upper, A, B, dd);
        const double whole = upper / 6.0 * (fa + 4.0 * fm + fb);
        lhs = adaptive_simpson(cutoff_square, A, B, dd, 0.0, upper, fa, fm, fb, whole,
                               1e-12 * std::max(1.0, std::abs(whole)), 40);
    }
    return InequalityReport::make("gns-integral-identity", lhs, rhs, dd * dd, 1e-8,
                                  Sense::CloseTo);
}

// ------------------------------------------------------------- many-body ---

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void check_many_body_caps(int N, const BoxGrid& g) {
    if (N != 2 && N != 3)
        throw std::domain_error("ManyBodyField: N must be 2 or 3, got " + std::to_string(N));
    if (N * g.d > 6)
        throw std::domain_error("ManyBodyField: total dimension N*d capped at 6, got " +
                                std::to_string(N * g.d));
    if (g.n > 24)
        throw std::domain_error("ManyBodyField: per-axis cells capped at 24, got " +
                                std::to_string(g.n));
}

} // namespace

ManyBodyField::ManyBodyField(int N, const BoxGrid& one_body, Symmetry s)
    : N(N), grid(one_body), symmetry(s) {
    check_many_body_caps(N, grid);
    values.assign(value_count(), 0.0);
}

ManyBodyField::ManyBodyField(int N, const BoxGrid& one_body,
                             std::vector<std::complex<double>> v, Symmetry s)
    : N(N), grid(one_body), values(std::move(v)), symmetry(s) {
    check_many_body_caps(N, grid);
    if (values.size() != value_count())
        throw std::invalid_argument("ManyBodyField: expected " +
                                    std::to_string(value_count()) + " values, got " +
                                    std::to_string(values.size()));
    verify_symmetry();
}

std::size_t ManyBodyField::value_count() const {
    return ipow(static_cast<std::size_t>(grid.nodes_per_axis()), axes());
}

void ManyBodyField::verify_symmetry() const {
    if (symmetry == Symmetry::none) return;
    const double sign = symmetry == Symmetry::antisymmetric ? -1.0 : 1.0;
    const double floor = 1e-12 * std::max(1.0, max_abs(values));
    const std::size_t m = static_cast<std::size_t>(grid.nodes_per_axis());
    const int D = axes();
    const std::size_t total = values.size();
    Rng rng(0x5EEDFACE0ULL);
    const std::size_t samples = std::min<std::size_t>(total, 4000);
    int a[6];
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t idx = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<long long>(total) - 1));
        std::size_t rest = idx;
        for (int i = 0; i < D; ++i) {
            a[i] = static_cast<int>(rest % m);
            rest /= m;
        }
        // Random transposition of two particles (coordinate blocks).
        const int j = static_cast<int>(rng.uniform_int(0, N - 1));
        int k = static_cast<int>(rng.uniform_int(0, N - 2));
        if (k >= j) ++k;
        std::size_t perm = 0, stride = 1;
        for (int i = 0; i < D; ++i) {
            const int particle = i / grid.d, comp = i % grid.d;
            const int src = particle == j ? k * grid.d + comp
                          : particle == k ? j * grid.d + comp
                                          : i;
            perm += static_cast<std::size_t>(a[src]) * stride;
            stride *= m;
        }
        if (std::abs(values[idx] - sign * values[perm]) > floor)
            throw std::invalid_argument(
                "ManyBodyField: declared symmetry violated at flat node " +
                std::to_string(idx));
    }
}

InequalityReport check_manybody_hardy(const ManyBodyField& psi,
                                      ManyBodyHardyVariant variant) {
    const BoxGrid& g = psi.grid;
    const int D = psi.axes();
    const std::size_t m = static_cast<std::size_t>(g.nodes_per_axis());
    const double h = g.h();
    const std::size_t total = psi.values.size();

    if (variant == ManyBodyHardyVariant::onedim && g.d != 1)
        throw std::domain_error("check_manybody_hardy(onedim): requires d = 1");
    if (variant == ManyBodyHardyVariant::fermionic) {
        if (psi.symmetry != ManyBodyField::Symmetry::antisymmetric)
            throw std::invalid_argument(
                "check_manybody_hardy(fermionic): field must be declared antisymmetric");
        psi.verify_symmetry();
    }

    const double floor = 1e-12 * std::max(1.0, max_abs(psi.values));
    const double band = 2.0 * h * (1.0 - 1e-12);

    // Pass over all nodes: tensor quadrature weight, pairwise distances,
    // kinetic terms along every axis.
    double lhs = 0.0, pair_sum = 0.0, norm2 = 0.0;
    int a[6];
    double x[6];
    std::size_t strides[6];
    strides[0] = 1;
    for (int i = 1; i < D; ++i) strides[i] = strides[i - 1] * m;

    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        double w = 1.0;
        for (int i = 0; i < D; ++i) {
            a[i] = static_cast<int>(rest % m);
            rest /= m;
            w *= g.axis_weight(a[i]);
            x[i] = g.coord(a[i]);
        }
        const double p2 = std::norm(psi.values[idx]);
        norm2 += w * p2;

        double inv_dist = 0.0;
        for (int j = 0; j < psi.N; ++j)
            for (int k = j + 1; k < psi.N; ++k) {
                double dist2 = 0.0;
                for (int c = 0; c < g.d; ++c) {
                    const double dxc = x[j * g.d + c] - x[k * g.d + c];
                    dist2 += dxc * dxc;
                }
                if (variant == ManyBodyHardyVariant::onedim && dist2 < band * band) {
                    if (std::abs(psi.values[idx]) > floor)
                        throw std::invalid_argument(
                            "check_manybody_hardy(onedim): field not vanishing within "
                            "2 cells of the diagonal x_" + std::to_string(j + 1) +
                            " = x_" + std::to_string(k + 1) + " at flat node " +
                            std::to_string(idx));
                    continue;
                }
                if (dist2 > 0.0) inv_dist += p2 / dist2;
            }
        pair_sum += w * inv_dist;

        for (int i = 0; i < D; ++i)
            lhs += w * std::norm(axis_derivative(g, psi.values, idx, a[i], strides[i]));
    }

    const double c = variant == ManyBodyHardyVariant::onedim
                         ? 0.5
                         : static_cast<double>(g.d) * g.d / psi.N;
    const char* name = variant == ManyBodyHardyVariant::onedim ? "manybody-hardy-1d"
                                                               : "manybody-hardy-fermionic";
    return InequalityReport::make(name, lhs, c * pair_sum, c,
                                  default_tol(g, lhs, norm2));
}

} // namespace ineq
