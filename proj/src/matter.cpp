#include "ineq/matter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "ineq/constants.hpp"
#include "ineq/spectral.hpp"

namespace ineq {

namespace {

constexpr double kPi = std::numbers::pi;

double dist(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void validate_config(const MatterConfig& cfg) {
    if (cfg.N < 0 || cfg.M < 0)
        throw std::domain_error("MatterConfig: particle counts must be >= 0");
    if (!(cfg.Z > 0.0) || !std::isfinite(cfg.Z))
        throw std::domain_error("MatterConfig: Z must be positive");
    if (cfg.q < 1) throw std::domain_error("MatterConfig: q must be >= 1");
    if (!(cfg.m > 0.0) || !std::isfinite(cfg.m))
        throw std::domain_error("MatterConfig: m must be positive");
    if (cfg.x.size() != static_cast<std::size_t>(cfg.N))
        throw std::invalid_argument("MatterConfig: x has " + std::to_string(cfg.x.size()) +
                                    " points but N = " + std::to_string(cfg.N));
    if (cfg.R.size() != static_cast<std::size_t>(cfg.M))
        throw std::invalid_argument("MatterConfig: R has " + std::to_string(cfg.R.size()) +
                                    " points but M = " + std::to_string(cfg.M));
    for (const auto& p : cfg.x)
        for (double c : p)
            if (!std::isfinite(c))
                throw std::domain_error("MatterConfig: coordinates must be finite");
    for (const auto& p : cfg.R)
        for (double c : p)
            if (!std::isfinite(c))
                throw std::domain_error("MatterConfig: coordinates must be finite");
}

[[noreturn]] void throw_coincident(const char* a, int i, const char* b, int j) {
    throw std::domain_error(std::string("coulomb_energy: points ") + a + "[" +
                            std::to_string(i) + "] and " + b + "[" + std::to_string(j) +
                            "] coincide");
}

EnergyBoundReport stability_from_effective(
    int N, int M, double Z, double m, double effective_L, std::string label,
    std::vector<std::pair<std::string, double>> inputs) {
    if (N < 1 || M < 1)
        throw std::domain_error(label + ": N and M must be >= 1");
    if (!(Z > 0.0) || !(m > 0.0) || !(effective_L > 0.0))
        throw std::domain_error(label + ": Z, m and the kinetic constant must be positive");

    const double coefficient = 1.5 * std::pow(5.0 * kPi * kPi * effective_L, 2.0 / 3.0);
    const double charge2 = (2.0 * Z + 1.0) * (2.0 * Z + 1.0);
    const double base = coefficient * m * charge2;
    const double sharp =
        -base * std::pow(static_cast<double>(M), 2.0 / 3.0) *
        std::pow(static_cast<double>(N), 1.0 / 3.0);
    const double linear = -base * (N + M);

    EnergyBoundReport r;
    r.label = std::move(label);
    r.value = linear;
    r.per_particle = linear / (N + M);
    r.inputs = std::move(inputs);
    r.inputs.emplace_back("N", N);
    r.inputs.emplace_back("M", M);
    r.inputs.emplace_back("Z", Z);
    r.inputs.emplace_back("m", m);
    r.inputs.emplace_back("sharp_form", sharp);
    r.inputs.emplace_back("linear_coefficient", coefficient);
    return r;
}

} // namespace

MatterConfig matter_config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("matter_config_from_json: ") + e.what());
    }
    MatterConfig cfg;
    try {
        auto read_points = [&](const char* key) {
            std::vector<std::array<double, 3>> pts;
            if (!j.contains(key)) return pts;
            for (const auto& row : j.at(key)) {
                if (!row.is_array() || row.size() != 3)
                    throw std::invalid_argument(
                        std::string("matter_config_from_json: every point in '") + key +
                        "' must have 3 coordinates");
                pts.push_back({row[0].get<double>(), row[1].get<double>(),
                               row[2].get<double>()});
            }
            return pts;
        };
        cfg.x = read_points("x");
        cfg.R = read_points("R");
        cfg.N = j.value("N", static_cast<int>(cfg.x.size()));
        cfg.M = j.value("M", static_cast<int>(cfg.R.size()));
        cfg.Z = j.value("Z", 1.0);
        cfg.q = j.value("q", 1);
        cfg.m = j.value("m", 1.0);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("matter_config_from_json: ") + e.what());
    }
    validate_config(cfg);
    return cfg;
}

std::string energy_report_to_json(const EnergyBoundReport& r) {
    nlohmann::ordered_json j;
    j["label"] = r.label;
    j["value"] = r.value;
    j["per_particle"] = r.per_particle;
    nlohmann::ordered_json in = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.inputs) in[k] = v;
    j["inputs"] = std::move(in);
    return j.dump();
}

double coulomb_energy(const MatterConfig& cfg) {
    validate_config(cfg);
    double energy = 0.0;
    for (int i = 0; i < cfg.N; ++i)
        for (int j = i + 1; j < cfg.N; ++j) {
            const double r = dist(cfg.x[i], cfg.x[j]);
            if (r == 0.0) throw_coincident("x", i, "x", j);
            energy += 1.0 / r;
        }
    for (int j = 0; j < cfg.N; ++j)
        for (int k = 0; k < cfg.M; ++k) {
            const double r = dist(cfg.x[j], cfg.R[k]);
            if (r == 0.0) throw_coincident("x", j, "R", k);
            energy -= cfg.Z / r;
        }
    for (int k = 0; k < cfg.M; ++k)
        for (int l = k + 1; l < cfg.M; ++l) {
            const double r = dist(cfg.R[k], cfg.R[l]);
            if (r == 0.0) throw_coincident("R", k, "R", l);
            energy += cfg.Z * cfg.Z / r;
        }
    return energy;
}

InequalityReport baxter_check(const MatterConfig& cfg) {
    const double lhs = coulomb_energy(cfg); // also validates the configuration
    double rhs = 0.0;
    if (cfg.M >= 1) {
        for (int j = 0; j < cfg.N; ++j) {
            double nearest = std::numeric_limits<double>::infinity();
            for (int k = 0; k < cfg.M; ++k)
                nearest = std::min(nearest, dist(cfg.x[j], cfg.R[k]));
            rhs -= (2.0 * cfg.Z + 1.0) / nearest;
        }
    }
    if (cfg.M >= 2) {
        for (int k = 0; k < cfg.M; ++k) {
            double nearest = std::numeric_limits<double>::infinity();
            for (int l = 0; l < cfg.M; ++l)
                if (l != k) nearest = std::min(nearest, dist(cfg.R[k], cfg.R[l]));
            rhs += cfg.Z * cfg.Z / (4.0 * nearest);
        }
    }
    return InequalityReport::make("baxter-nearest-neighbor", lhs, rhs,
                                  2.0 * cfg.Z + 1.0, 1e-9, Sense::GreaterEq);
}

HydrogenBounds hydrogen_bounds(double Z) {
    if (!(Z > 0.0) || !std::isfinite(Z))
        throw std::domain_error("hydrogen_bounds: Z must be positive");
    HydrogenBounds b;
    b.exact = -Z * Z / 4.0;
    b.hardy = -Z * Z;
    const double G3 = constant(ConstantKind::gns_optimal_known, 3);
    b.gns = -9.0 * std::pow(kPi / 2.0, 4.0 / 3.0) * Z * Z / (5.0 * G3);
    b.gns_fallback = -3.0 * Z * Z / 5.0;
    return b;
}

double best_known_dual_constant(int d) {
    const double K_best = std::pow(kPi / std::sqrt(3.0), -2.0 / d) *
                          constant(ConstantKind::semiclassical, d);
    return lt_dual(K_best, d, DualDirection::K_to_L);
}

EnergyBoundReport stability_bound(int N, int M, double Z, int q, double m, double L3) {
    if (q < 1) throw std::domain_error("stability_bound: q must be >= 1");
    if (!(L3 > 0.0)) throw std::domain_error("stability_bound: L3 must be positive");
    return stability_from_effective(N, M, Z, m, q * L3, "stability-linear",
                                    {{"q", static_cast<double>(q)}, {"L3", L3}});
}

EnergyBoundReport inverse_square_stability_bound(int N, int M, double Z, double m,
                                                 double beta, double L3beta) {
    if (!(beta > 0.0))
        throw std::domain_error("inverse_square_stability_bound: beta must be positive");
    if (!(L3beta > 0.0))
        throw std::domain_error("inverse_square_stability_bound: L3beta must be positive");
    return stability_from_effective(N, M, Z, m, L3beta, "inverse-square-stability-linear",
                                    {{"beta", beta}, {"L3beta", L3beta}});
}

EnergyBoundReport fermi_gas_energy(int N, double volume, int d, int q, FermiGasMode mode) {
    if (N < 1) throw std::domain_error("fermi_gas_energy: N must be >= 1");
    if (!(volume > 0.0)) throw std::domain_error("fermi_gas_energy: volume must be positive");
    if (d < 1 || d > 3) throw std::domain_error("fermi_gas_energy: d must be in {1,2,3}");
    if (q < 1) throw std::domain_error("fermi_gas_energy: q must be >= 1");

    EnergyBoundReport r;
    switch (mode) {
        case FermiGasMode::exact_fill: {
            const int levels = (N + q - 1) / q;
            Spectrum sp = cube_spectrum_exact(d, volume, levels, Boundary::Neumann);
            double total = 0.0;
            int remaining = N;
            for (int i = 0; i < levels; ++i) {
                const int take = std::min(q, remaining);
                total += take * sp.eigenvalues[i];
                remaining -= take;
            }
            r.label = "fermi-gas-exact-fill";
            r.value = total;
            break;
        }
        case FermiGasMode::weyl: {
            r.label = "fermi-gas-weyl";
            r.value = std::pow(static_cast<double>(q), -2.0 / d) *
                      constant(ConstantKind::semiclassical, d) *
                      std::pow(static_cast<double>(N), 1.0 + 2.0 / d) /
                      std::pow(volume, 2.0 / d);
            break;
        }
        case FermiGasMode::local_lower: {
            // The analytic optimizer can round either way, so scan around it.
            const double center = std::pow(2.0 * N / ((d + 2.0) * q), 1.0 / d);
            const long mid = std::lround(center);
            double best = -std::numeric_limits<double>::infinity();
            for (long s = std::max<long>(1, mid - 2); s <= std::max<long>(1, mid + 2); ++s) {
                const double sd = static_cast<double>(s);
                const double v = kPi * kPi / std::pow(volume, 2.0 / d) *
                                 (N * sd * sd - q * std::pow(sd, d + 2.0));
                best = std::max(best, v);
            }
            r.label = "fermi-gas-local-lower";
            r.value = best;
            break;
        }
    }
    r.per_particle = r.value / N;
    r.inputs = {{"N", static_cast<double>(N)},
                {"volume", volume},
                {"d", static_cast<double>(d)},
                {"q", static_cast<double>(q)}};
    return r;
}

double harmonic_fermion_energy(int N, int d, double omega) {
    if (N < 1) throw std::domain_error("harmonic_fermion_energy: N must be >= 1");
    if (!(omega > 0.0))
        throw std::domain_error("harmonic_fermion_energy: omega must be positive");
    if (d == 1) return omega * N * N / 2.0;
    if (d == 2) {
        const long n = std::lround((std::sqrt(8.0 * N + 1.0) - 1.0) / 2.0);
        if (n * (n + 1) / 2 != N) {
            const long lo = static_cast<long>((std::sqrt(8.0 * N + 1.0) - 1.0) / 2.0);
            throw std::domain_error(
                "harmonic_fermion_energy: N = " + std::to_string(N) +
                " is not a complete shell; nearest complete fillings are " +
                std::to_string(lo * (lo + 1) / 2) + " and " +
                std::to_string((lo + 1) * (lo + 2) / 2));
        }
        return omega * N * std::sqrt(8.0 * N + 1.0) / 3.0;
    }
    throw std::domain_error("harmonic_fermion_energy: d must be 1 or 2");
}

double extensivity_max_particles(double c, double K3, double eps, double N) {
    if (!(c > 0.0) || !(K3 > 0.0) || !(eps > 0.0) || !(N > 0.0))
        throw std::domain_error("extensivity_max_particles: all inputs must be positive");
    return std::pow(4.0 * c / K3, 3.0 / 5.0) * std::pow(eps, 2.0 / 5.0) * N;
}

} // namespace ineq
