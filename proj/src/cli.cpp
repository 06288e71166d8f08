#include "ineq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ineq/constants.hpp"
#include "ineq/covering.hpp"
#include "ineq/grid.hpp"
#include "ineq/inequalities.hpp"
#include "ineq/lieb_thirring.hpp"
#include "ineq/matter.hpp"
#include "ineq/report.hpp"
#include "ineq/rng.hpp"
#include "ineq/spectral.hpp"

namespace ineq {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr const char* kVersion = "1.0.0";

struct Options {
    int d = 1;
    int n = -1;        // -1: dimension/command-dependent default
    double side = -1;  // -1: command-dependent default
    std::string bc = "neumann";
    int trials = 20;
    unsigned long long seed = 0;
    double tol = std::numeric_limits<double>::quiet_NaN(); // NaN: per-check defaults
    double Z = 1.0;
    int N = -1; // -1: command-dependent default
    int M = 8;
    int q = 1;
    double m = 1.0;
    double beta = std::numeric_limits<double>::quiet_NaN(); // NaN: skip beta variants
    double lambda = -1; // -1: randomized per trial
    double alpha = 0.5;
    std::string kind;
    std::string out_path;
    std::string csv_path;

    // selectors (check)
    bool sel_heisenberg = false, sel_hardy = false, sel_sobolev = false;
    bool sel_gns = false, sel_poincare = false, sel_kinetic = false;
    // selectors (matter)
    bool sel_stability = false, sel_hydrogen = false, sel_baxter = false;

    Boundary boundary() const {
        return bc == "dirichlet" ? Boundary::Dirichlet : Boundary::Neumann;
    }
    int nodes() const { return n > 0 ? n : (d == 1 ? 256 : d == 2 ? 40 : 14); }
    double box_side(double fallback = 1.0) const { return side > 0 ? side : fallback; }
    std::optional<double> tol_override() const {
        return std::isnan(tol) ? std::nullopt : std::optional<double>(tol);
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Report collection: JSON entries (typed union) + flat CSV rows + pass stats.

struct Collector {
    nlohmann::json entries = nlohmann::json::array();
    std::vector<std::string> csv_rows;
    std::size_t failed = 0;
    std::optional<double> tol_override;

    void add(InequalityReport r) {
        if (tol_override) {
            r.tolerance = *tol_override;
            r.passed = report_passes(r.lhs, r.rhs, r.tolerance, r.sense);
        }
        if (!r.passed) ++failed;
        auto j = nlohmann::json::parse(report_to_json(r));
        j["type"] = "inequality";
        entries.push_back(std::move(j));
        char buf[512];
        std::snprintf(buf, sizeof(buf), "inequality,%s,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%s,,",
                      r.name.c_str(), r.passed ? 1 : 0, r.lhs, r.rhs, r.constant_used,
                      r.ratio, r.tolerance,
                      r.sense == Sense::GreaterEq ? "ge"
                      : r.sense == Sense::LessEq  ? "le"
                                                  : "close");
        csv_rows.emplace_back(buf);
    }

    void add(const EnergyBoundReport& r) {
        auto j = nlohmann::json::parse(energy_report_to_json(r));
        j["type"] = "energy";
        entries.push_back(std::move(j));
        char buf[512];
        std::snprintf(buf, sizeof(buf), "energy,%s,,,,,,,,%.17g,%.17g", r.label.c_str(),
                      r.value, r.per_particle);
        csv_rows.emplace_back(buf);
    }

    void add_partition(const MassPartition& p, double total_mass) {
        double max_mass = 0.0;
        int max_depth = 0;
        for (const auto& leaf : p.leaves) {
            max_mass = std::max(max_mass, leaf.mass);
            max_depth = std::max(max_depth, leaf.depth);
        }
        nlohmann::json j;
        j["type"] = "partition";
        j["d"] = p.d;
        j["lambda"] = p.lambda;
        j["leaf_count"] = p.leaves.size();
        j["max_leaf_mass"] = max_mass;
        j["max_depth"] = max_depth;
        j["total_mass"] = total_mass;
        entries.push_back(std::move(j));
    }
};

double find_echo(const EnergyBoundReport& r, const std::string& key) {
    for (const auto& [k, v] : r.inputs)
        if (k == key) return v;
    throw std::runtime_error("report '" + r.label + "' lacks input '" + key + "'");
}

// ---------------------------------------------------------------------------
// Randomized inputs shared by the sweep commands.

double smoothstep(double t) {
    t = std::clamp(t, 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

SampledField random_bump_field(const BoxGrid& g, Rng& rng) {
    const double side = g.side;
    const int bumps = 2 + static_cast<int>(rng.uniform_int(0, 2));
    struct Bump {
        double c[3], k[3], w;
        std::complex<double> amp;
    };
    std::vector<Bump> bs(bumps);
    const double wmin = std::max(0.06 * side, 3.0 * g.h());
    for (auto& b : bs) {
        for (int a = 0; a < 3; ++a) b.c[a] = rng.uniform(0.2 * side, 0.8 * side);
        for (int a = 0; a < 3; ++a) b.k[a] = rng.uniform(-2.0, 2.0) * kPi / side;
        b.w = rng.uniform(wmin, 0.3 * side);
        b.amp = std::polar(rng.uniform(0.3, 1.0), rng.uniform(0.0, 2.0 * kPi));
    }
    SampledField f(g);
    double x[3];
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        g.coords(i, x);
        std::complex<double> v = 0.0;
        for (const auto& b : bs) {
            double r2 = 0.0, phase = 0.0;
            for (int a = 0; a < g.d; ++a) {
                r2 += (x[a] - b.c[a]) * (x[a] - b.c[a]);
                phase += b.k[a] * x[a];
            }
            v += b.amp * std::exp(-r2 / (2.0 * b.w * b.w)) * std::polar(1.0, phase);
        }
        f.values[i] = v;
    }
    return f;
}

// Zeroes the field near the box center (and near the unit circle about the
// center when `ring` is set) with a smooth shoulder, as the weighted-gradient
// checks require.
void apply_center_mask(SampledField& f, bool ring) {
    const BoxGrid& g = f.grid;
    const double r0 = 3.5 * g.h(), r1 = 7.0 * g.h();
    double x[3];
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        g.coords(i, x);
        double r2 = 0.0;
        for (int a = 0; a < g.d; ++a)
            r2 += (x[a] - 0.5 * g.side) * (x[a] - 0.5 * g.side);
        const double r = std::sqrt(r2);
        f.values[i] *= smoothstep((r - r0) / (r1 - r0));
        if (ring) f.values[i] *= smoothstep((std::abs(r - 1.0) - r0) / (r1 - r0));
    }
}

double max_abs(const SampledField& f) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

SampledField random_field(const BoxGrid& g, Rng& rng, bool center_mask = false,
                          bool ring_mask = false) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        SampledField f = random_bump_field(g, rng);
        if (center_mask || ring_mask) apply_center_mask(f, ring_mask);
        if (max_abs(f) > 1e-9) return f;
    }
    throw std::runtime_error("random_field: generated field vanished identically");
}

// Distinct separable cosine modes mixed by random complex coefficients; the
// mixture is full-rank with overwhelming probability, so a couple of retries
// cover numerical degeneracy.
OrbitalSet random_orbital_set(const BoxGrid& g, Rng& rng, int count) {
    const int want = count + 2;
    const int kmax = g.d == 1 ? want + 1 : 4;
    std::vector<std::array<int, 3>> modes;
    std::array<int, 3> k{0, 0, 0};
    for (k[0] = 0; k[0] <= kmax; ++k[0])
        for (k[1] = 0; k[1] <= (g.d > 1 ? kmax : 0); ++k[1])
            for (k[2] = 0; k[2] <= (g.d > 2 ? kmax : 0); ++k[2])
                if (k[0] + k[1] + k[2] > 0) modes.push_back(k);
    std::sort(modes.begin(), modes.end(), [](const auto& a, const auto& b) {
        const int sa = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
        const int sb = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
        return sa != sb ? sa < sb : a < b;
    });
    modes.resize(std::min<std::size_t>(modes.size(), want));

    std::vector<SampledField> base;
    double x[3];
    for (const auto& mode : modes) {
        SampledField f(g);
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            g.coords(i, x);
            double v = 1.0;
            for (int a = 0; a < g.d; ++a) v *= std::cos(mode[a] * kPi * x[a] / g.side);
            f.values[i] = v;
        }
        base.push_back(std::move(f));
    }

    for (int attempt = 0; attempt < 5; ++attempt) {
        std::vector<SampledField> raw;
        for (int j = 0; j < count; ++j) {
            SampledField f(g);
            for (const auto& mode : base) {
                const std::complex<double> c =
                    std::polar(rng.uniform(0.2, 1.0), rng.uniform(0.0, 2.0 * kPi));
                for (std::size_t i = 0; i < f.values.size(); ++i)
                    f.values[i] += c * mode.values[i];
            }
            raw.push_back(std::move(f));
        }
        try {
            return orthonormalize(std::move(raw));
        } catch (const std::invalid_argument&) {
            continue; // re-draw the mixing coefficients
        }
    }
    throw std::runtime_error("random_orbital_set: could not build an independent family");
}

// Finite sum of negative Gaussian wells kept away from the box walls so that
// the zero extension used by the doubled-box convergence check is accurate.
std::function<double(const double*)> random_wells(int d, double side, Rng& rng) {
    struct Well {
        double c[3], w, depth;
    };
    auto wells = std::make_shared<std::vector<Well>>(1 + rng.uniform_int(0, 3));
    for (auto& wl : *wells) {
        for (int a = 0; a < 3; ++a) wl.c[a] = rng.uniform(0.35 * side, 0.65 * side);
        wl.w = rng.uniform(0.03 * side, 0.08 * side);
        wl.depth = rng.uniform(5.0, 60.0) / (side * side);
    }
    return [d, wells](const double* x) {
        double v = 0.0;
        for (const auto& wl : *wells) {
            double r2 = 0.0;
            for (int a = 0; a < d; ++a) r2 += (x[a] - wl.c[a]) * (x[a] - wl.c[a]);
            v -= wl.depth * std::exp(-r2 / (2.0 * wl.w * wl.w));
        }
        return v;
    };
}

// ---------------------------------------------------------------------------
// Commands.

void params_common(RunManifest& man, const Options& o) {
    man.parameters.emplace_back("d", std::to_string(o.d));
    man.parameters.emplace_back("trials", std::to_string(o.trials));
    if (!std::isnan(o.tol)) man.parameters.emplace_back("tol", fmt(o.tol));
}

void run_constants(const Options& o, Collector& col, RunManifest& man) {
    std::string k = o.kind;
    std::replace(k.begin(), k.end(), '_', '-');
    man.parameters.emplace_back("kind", k);
    man.parameters.emplace_back("d", std::to_string(o.d));

    if (k == "alpha-statistics") {
        const int N = o.N >= 0 ? o.N : 1000;
        man.parameters.emplace_back("alpha", fmt(o.alpha));
        man.parameters.emplace_back("N", std::to_string(N));
        const double v = alpha_statistics(o.alpha, N);
        col.add(EnergyBoundReport{"alpha-statistics", v, v,
                                  {{"alpha", o.alpha}, {"N", double(N)}}});
        return;
    }

    static const std::vector<std::pair<std::string, ConstantKind>> kinds = {
        {"sphere-measure", ConstantKind::sphere_measure},
        {"sobolev", ConstantKind::sobolev},
        {"gns-lower", ConstantKind::gns_lower},
        {"gns-optimal-known", ConstantKind::gns_optimal_known},
        {"semiclassical", ConstantKind::semiclassical},
        {"local-uncertainty", ConstantKind::local_uncertainty},
        {"ball-exclusion-xi", ConstantKind::ball_exclusion_xi},
    };
    for (const auto& [name, kind] : kinds) {
        if (name != k) continue;
        const ConstantInfo info = constant_info(kind, o.d);
        EnergyBoundReport r{"constant-" + name, info.value, info.value,
                            {{"d", double(o.d)}, {"rigorous", info.rigorous ? 1.0 : 0.0}}};
        col.add(r);
        return;
    }
    throw std::domain_error(
        "constants: unknown kind '" + k +
        "' (expected sphere-measure, sobolev, gns-lower, gns-optimal-known, "
        "semiclassical, local-uncertainty, ball-exclusion-xi, or alpha-statistics)");
}

void run_check(const Options& o, Collector& col, RunManifest& man, Rng& rng) {
    bool heis = o.sel_heisenberg, hardy = o.sel_hardy, sob = o.sel_sobolev;
    bool gns = o.sel_gns, poi = o.sel_poincare, kin = o.sel_kinetic;
    if (!(heis || hardy || sob || gns || poi || kin)) {
        heis = hardy = gns = kin = true; // run everything applicable in this d
        sob = o.d != 2;
        poi = o.d == 1;
    }
    const BoxGrid g(o.d, o.nodes(), o.box_side(), o.boundary());
    params_common(man, o);
    man.parameters.emplace_back("n", std::to_string(g.n));
    man.parameters.emplace_back("side", fmt(g.side));
    man.parameters.emplace_back("bc", o.bc);
    std::string sel;
    for (const auto& [name, on] :
         std::initializer_list<std::pair<const char*, bool>>{{"heisenberg", heis},
                                                             {"hardy", hardy},
                                                             {"sobolev", sob},
                                                             {"gns", gns},
                                                             {"poincare", poi},
                                                             {"kinetic", kin}})
        if (on) sel += (sel.empty() ? "" : ",") + std::string(name);
    man.parameters.emplace_back("selectors", sel);

    for (int t = 0; t < o.trials; ++t) {
        if (heis) col.add(check_heisenberg(random_field(g, rng)));
        if (hardy)
            col.add(check_hardy(random_field(g, rng, true, g.d == 2),
                                g.d == 2 ? HardyVariant::log2d : HardyVariant::standard));
        if (sob) col.add(check_sobolev(random_field(g, rng)));
        if (gns) {
            col.add(check_gns(random_field(g, rng)));
            col.add(gns_integral_identity(rng.uniform(0.1, 5.0), rng.uniform(0.1, 5.0),
                                          o.d));
        }
        if (poi) col.add(check_poincare(random_field(g, rng)));
        if (kin) col.add(kinetic_form_check(random_orbital_set(g, rng, 3)));
    }
}

void run_cover(const Options& o, Collector& col, RunManifest& man, Rng& rng) {
    const BoxGrid g(o.d, o.nodes(), o.box_side(), o.boundary());
    params_common(man, o);
    man.parameters.emplace_back("n", std::to_string(g.n));
    man.parameters.emplace_back("side", fmt(g.side));
    if (o.lambda > 0) man.parameters.emplace_back("lambda", fmt(o.lambda));

    const Cube root = bounding_cube(g);
    for (int t = 0; t < o.trials; ++t) {
        DensityField rho(g);
        const SampledField f = random_field(g, rng);
        for (std::size_t i = 0; i < rho.values.size(); ++i)
            rho.values[i] = std::norm(f.values[i]);
        const MassOracle oracle = [&rho, &root](const Cube& c) {
            return cube_mass(rho, c, root);
        };
        const double total = oracle(root);
        const double lambda = o.lambda > 0 ? o.lambda : total / rng.uniform(2.0, 40.0);

        const MassPartition p = partition(oracle, root, lambda);
        col.add_partition(p, total);

        double max_mass = 0.0, vol = 0.0, sum = 0.0;
        for (const auto& leaf : p.leaves) {
            max_mass = std::max(max_mass, leaf.mass);
            vol += leaf.cube.volume();
            sum += leaf.mass;
        }
        col.add(InequalityReport::make("partition-max-leaf-mass", max_mass, lambda,
                                       lambda, 1e-12, Sense::LessEq));
        col.add(InequalityReport::make("partition-tiling", vol, root.volume(), 0.0,
                                       1e-12, Sense::CloseTo));
        col.add(InequalityReport::make("partition-additivity", sum, total, 0.0, 1e-9,
                                       Sense::CloseTo));

        if (total < lambda) continue; // the aggregate guarantee needs total >= lambda

        const double alpha = rng.uniform(1e-3, 3.0);
        const double beta = rng.uniform(1e-3, 3.0);
        const double gamma = rng.uniform(0.0, beta);
        const double bound = aggregate_bound(p, alpha, beta, gamma);
        const double C = covering_constants(o.d, alpha, beta);
        double scale = 0.0;
        for (const auto& leaf : p.leaves)
            scale += std::pow(leaf.cube.volume(), -alpha) *
                     (std::pow(leaf.mass, beta) +
                      std::pow(lambda, beta - gamma) / C * std::pow(leaf.mass, gamma));
        col.add(InequalityReport::make("covering-aggregate", bound,
                                       -1e-12 * std::max(scale, 1.0), C, 0.0,
                                       Sense::GreaterEq));

        const double qw = rng.uniform(0.0, 1.0) * lambda;
        const double wbound = aggregate_bound_weak(p, alpha, qw);
        const double b = weak_b(o.d, alpha, qw, lambda);
        double wscale = 0.0;
        for (const auto& leaf : p.leaves)
            wscale += std::pow(leaf.cube.volume(), -alpha) *
                      (std::max(leaf.mass - qw, 0.0) + std::abs(b) * leaf.mass);
        col.add(InequalityReport::make("covering-aggregate-weak", wbound,
                                       -1e-12 * std::max(wscale, 1.0), b, 0.0,
                                       Sense::GreaterEq));
    }
}

void run_lt(const Options& o, Collector& col, RunManifest& man, Rng& rng) {
    params_common(man, o);
    man.parameters.emplace_back("q", std::to_string(o.q));
    if (!std::isnan(o.beta)) man.parameters.emplace_back("beta", fmt(o.beta));

    const LtSynthesis s = synthesize_lt_constant(o.d, o.q);
    col.add(EnergyBoundReport{"lt-kinetic-constant",
                              s.K,
                              s.K,
                              {{"d", double(o.d)},
                               {"q", double(o.q)},
                               {"lambda", s.lambda},
                               {"eps_outer", s.eps_outer},
                               {"eps_inner", s.eps_inner}}});
    const double L = lt_dual(s.K, o.d, DualDirection::K_to_L);
    col.add(EnergyBoundReport{
        "lt-eigenvalue-sum-constant", L, L, {{"d", double(o.d)}, {"q", double(o.q)}}});
    if (!std::isnan(o.beta)) {
        const BltSynthesis b = synthesize_blt_constant(o.d, o.beta);
        col.add(EnergyBoundReport{"blt-kinetic-constant",
                                  b.K,
                                  b.K,
                                  {{"d", double(o.d)},
                                   {"beta", o.beta},
                                   {"lambda", b.lambda},
                                   {"eps_outer", b.eps_outer},
                                   {"eps_inner", b.eps_inner},
                                   {"improved_route", b.improved_route ? 1.0 : 0.0}}});
    }

    const BoxGrid g(o.d, o.nodes(), o.box_side(), o.boundary());
    man.parameters.emplace_back("n", std::to_string(g.n));
    man.parameters.emplace_back("side", fmt(g.side));
    for (int t = 0; t < o.trials; ++t) {
        const SchrodingerOperator op(g, random_wells(o.d, g.side, rng));
        col.add(eigenvalue_sum_check(op)); // proven dual constant
        InequalityReport synth = eigenvalue_sum_check(op, L);
        synth.note += std::string(synth.note.empty() ? "" : "; ") + "synthesized constant";
        col.add(std::move(synth));

        const OrbitalSet orbs = random_orbital_set(g, rng, 3);
        col.add(kinetic_form_check(orbs)); // proven kinetic-form constant
        InequalityReport ksynth = kinetic_form_check(orbs, s.K);
        ksynth.note +=
            std::string(ksynth.note.empty() ? "" : "; ") + "synthesized constant";
        col.add(std::move(ksynth));
    }
}

void run_fermi(const Options& o, Collector& col, RunManifest& man) {
    const int N = o.N >= 0 ? o.N : 8;
    const double volume = std::pow(o.box_side(), o.d);
    man.parameters.emplace_back("d", std::to_string(o.d));
    man.parameters.emplace_back("N", std::to_string(N));
    man.parameters.emplace_back("q", std::to_string(o.q));
    man.parameters.emplace_back("side", fmt(o.box_side()));

    const EnergyBoundReport exact =
        fermi_gas_energy(N, volume, o.d, o.q, FermiGasMode::exact_fill);
    const EnergyBoundReport weyl =
        fermi_gas_energy(N, volume, o.d, o.q, FermiGasMode::weyl);
    const EnergyBoundReport local =
        fermi_gas_energy(N, volume, o.d, o.q, FermiGasMode::local_lower);
    col.add(exact);
    col.add(weyl);
    col.add(local);
    col.add(InequalityReport::make("fermi-local-lower-vs-exact", local.value, exact.value,
                                   kPi * kPi, 1e-12, Sense::LessEq));
}

void run_matter(const Options& o, Collector& col, RunManifest& man, Rng& rng) {
    bool stab = o.sel_stability, hyd = o.sel_hydrogen, bax = o.sel_baxter;
    if (!(stab || hyd || bax)) stab = true;
    const int N = o.N >= 0 ? o.N : 8;
    man.parameters.emplace_back("N", std::to_string(N));
    man.parameters.emplace_back("M", std::to_string(o.M));
    man.parameters.emplace_back("Z", fmt(o.Z));
    man.parameters.emplace_back("q", std::to_string(o.q));
    man.parameters.emplace_back("m", fmt(o.m));
    std::string sel;
    for (const auto& [name, on] : std::initializer_list<std::pair<const char*, bool>>{
             {"stability", stab}, {"hydrogen", hyd}, {"baxter", bax}})
        if (on) sel += (sel.empty() ? "" : ",") + std::string(name);
    man.parameters.emplace_back("selectors", sel);

    if (stab) {
        const double L3 = best_known_dual_constant(3);
        col.add(stability_bound(N, o.M, o.Z, o.q, o.m, L3));
        const EnergyBoundReport spinless = stability_bound(N, o.M, o.Z, 1, o.m, L3);
        const double coeff = find_echo(spinless, "linear_coefficient");
        col.add(EnergyBoundReport{
            "stability-linear-coefficient", coeff, coeff, {{"q", 1.0}, {"L3", L3}}});
        if (!std::isnan(o.beta)) {
            man.parameters.emplace_back("beta", fmt(o.beta));
            const double L3b =
                lt_dual(synthesize_blt_constant(3, o.beta).K, 3, DualDirection::K_to_L);
            col.add(inverse_square_stability_bound(N, o.M, o.Z, o.m, o.beta, L3b));
        }
    }

    if (hyd) {
        const HydrogenBounds h = hydrogen_bounds(o.Z);
        const double rig =
            constant_info(ConstantKind::gns_optimal_known, 3).rigorous ? 1.0 : 0.0;
        col.add(EnergyBoundReport{"hydrogen-exact", h.exact, h.exact, {{"Z", o.Z}}});
        col.add(EnergyBoundReport{"hydrogen-hardy", h.hardy, h.hardy, {{"Z", o.Z}}});
        col.add(EnergyBoundReport{
            "hydrogen-gns", h.gns, h.gns, {{"Z", o.Z}, {"rigorous", rig}}});
        col.add(EnergyBoundReport{
            "hydrogen-gns-fallback", h.gns_fallback, h.gns_fallback, {{"Z", o.Z}}});
        const double rmax = o.side > 0 ? o.side : 40.0;
        const int rn = o.n > 0 ? o.n : 2000;
        const double radial = radial_hydrogen_ground(o.Z, rmax, rn);
        col.add(EnergyBoundReport{"hydrogen-radial-ground",
                                  radial,
                                  radial,
                                  {{"Z", o.Z}, {"rmax", rmax}, {"n", double(rn)}}});
        col.add(InequalityReport::make("hydrogen-radial-vs-hardy", radial, h.hardy,
                                       1.0, 1e-12, Sense::GreaterEq));
    }

    if (bax) {
        const double box = o.side > 0 ? o.side : 4.0;
        const double zchoices[3] = {1.0, 2.0, 17.0};
        for (int t = 0; t < o.trials; ++t) {
            MatterConfig cfg;
            cfg.N = static_cast<int>(rng.uniform_int(0, N));
            cfg.M = static_cast<int>(rng.uniform_int(0, o.M));
            cfg.Z = o.Z != 1.0 ? o.Z : zchoices[rng.uniform_int(0, 2)];
            cfg.q = o.q;
            cfg.m = o.m;
            cfg.x.resize(cfg.N);
            cfg.R.resize(cfg.M);
            for (auto& p : cfg.x)
                p = {rng.uniform(0.0, box), rng.uniform(0.0, box), rng.uniform(0.0, box)};
            for (auto& p : cfg.R)
                p = {rng.uniform(0.0, box), rng.uniform(0.0, box), rng.uniform(0.0, box)};
            col.add(baxter_check(cfg));
        }
    }
}

// ---------------------------------------------------------------------------

void write_outputs(const Options& o, const RunManifest& man, const Collector& col) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : man.parameters) params[k] = v;
    nlohmann::json out;
    out["manifest"] = {{"command", man.command},
                       {"parameters", params},
                       {"seed", man.seed},
                       {"version", man.version}};
    out["reports"] = col.entries;
    out["summary"] = {{"total", col.entries.size()},
                      {"passed", col.entries.size() - col.failed},
                      {"failed", col.failed}};
    const std::string text = out.dump(2) + "\n";

    if (o.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out_path);
        if (!f) throw std::runtime_error("cannot open --out path: " + o.out_path);
        f << text;
        std::cerr << "wrote " << o.out_path << " (total=" << col.entries.size()
                  << ", failed=" << col.failed << ")\n";
    }
    if (!o.csv_path.empty()) {
        std::ofstream f(o.csv_path);
        if (!f) throw std::runtime_error("cannot open --csv path: " + o.csv_path);
        f << "type,name,passed,lhs,rhs,constant_used,ratio,tolerance,sense,value,"
             "per_particle\n";
        for (const auto& row : col.csv_rows) f << row << "\n";
    }
}

void add_common_flags(CLI::App* sub, Options& o) {
    sub->add_option("--d", o.d, "dimension (1-3)")->check(CLI::Range(1, 3));
    sub->add_option("--n", o.n, "grid nodes per axis (default depends on d)");
    sub->add_option("--side", o.side, "box side length (default 1; 40 for the radial solve)");
    sub->add_option("--bc", o.bc, "boundary condition")
        ->check(CLI::IsMember({"dirichlet", "neumann"}));
    sub->add_option("--trials", o.trials, "randomized trials")->check(CLI::Range(0, 1000000));
    sub->add_option("--seed", o.seed, "PRNG seed (splitmix64 stream; default 0)");
    sub->add_option("--tol", o.tol,
                    "tolerance override applied to every emitted check "
                    "(default: per-check tolerances)");
    sub->add_option("--Z", o.Z, "mobile/center charge");
    sub->add_option("--N", o.N, "particle count / sweep cap");
    sub->add_option("--M", o.M, "center count / sweep cap");
    sub->add_option("--q", o.q, "internal states per level");
    sub->add_option("--m", o.m, "particle mass");
    sub->add_option("--beta", o.beta, "inverse-square repulsion strength");
    sub->add_option("--lambda", o.lambda, "partition mass cap (default: randomized)");
    sub->add_option("--alpha", o.alpha, "statistics parameter (constants)");
    sub->add_option("--out", o.out_path, "write the JSON report to this path");
    sub->add_option("--csv", o.csv_path, "write a flat CSV table to this path");
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{
        "Numerical checks of uncertainty/exclusion inequalities, spectral bounds, "
        "and many-body energy estimates"};
    app.require_subcommand(1);
    Options o;

    CLI::App* c_constants =
        app.add_subcommand("constants", "evaluate a named closed-form constant");
    c_constants
        ->add_option("--kind", o.kind,
                     "constant name (sphere-measure, sobolev, gns-lower, "
                     "gns-optimal-known, semiclassical, local-uncertainty, "
                     "ball-exclusion-xi, alpha-statistics)")
        ->required();
    CLI::App* c_check =
        app.add_subcommand("check", "randomized single-field inequality sweeps");
    c_check->add_flag("--heisenberg", o.sel_heisenberg, "product-of-moments bound");
    c_check->add_flag("--hardy", o.sel_hardy, "inverse-square weighted bound");
    c_check->add_flag("--sobolev", o.sel_sobolev, "critical-norm bound (d = 1, 3)");
    c_check->add_flag("--gns", o.sel_gns, "interpolation bound + integral identity");
    c_check->add_flag("--poincare", o.sel_poincare, "mean-zero variance bound (d = 1)");
    c_check->add_flag("--kinetic", o.sel_kinetic, "orbital-family kinetic-form bound");
    CLI::App* c_cover =
        app.add_subcommand("cover", "adaptive dyadic mass partitions and aggregate bounds");
    CLI::App* c_lt = app.add_subcommand(
        "lt", "synthesized kinetic-form constants and eigenvalue-sum sweeps");
    CLI::App* c_fermi =
        app.add_subcommand("fermi", "noninteracting gas energies in a box");
    CLI::App* c_matter =
        app.add_subcommand("matter", "many-body Coulomb bounds and stability chains");
    c_matter->add_flag("--stability", o.sel_stability, "N+M-linear lower bound");
    c_matter->add_flag("--hydrogen", o.sel_hydrogen, "one-center bound family");
    c_matter->add_flag("--baxter", o.sel_baxter, "nearest-neighbor reduction sweep");
    CLI::App* c_all = app.add_subcommand("all", "run every suite with the shared flags");

    for (CLI::App* sub : {c_constants, c_check, c_cover, c_lt, c_fermi, c_matter, c_all})
        add_common_flags(sub, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        Collector col;
        col.tol_override = o.tol_override();
        RunManifest man;
        man.seed = o.seed;
        man.version = kVersion;
        Rng rng(o.seed);

        if (c_constants->parsed()) {
            man.command = "constants";
            run_constants(o, col, man);
        } else if (c_check->parsed()) {
            man.command = "check";
            run_check(o, col, man, rng);
        } else if (c_cover->parsed()) {
            man.command = "cover";
            run_cover(o, col, man, rng);
        } else if (c_lt->parsed()) {
            man.command = "lt";
            run_lt(o, col, man, rng);
        } else if (c_fermi->parsed()) {
            man.command = "fermi";
            run_fermi(o, col, man);
        } else if (c_matter->parsed()) {
            man.command = "matter";
            run_matter(o, col, man, rng);
        } else {
            man.command = "all";
            man.parameters.emplace_back("seed", std::to_string(o.seed));
            run_check(o, col, man, rng);
            run_cover(o, col, man, rng);
            run_lt(o, col, man, rng);
            run_fermi(o, col, man);
            Options mo = o;
            mo.sel_stability = mo.sel_hydrogen = mo.sel_baxter = true;
            mo.trials = std::min(o.trials, 200);
            run_matter(mo, col, man, rng);
        }

        write_outputs(o, man, col);
        return col.failed == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace ineq
