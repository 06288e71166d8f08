#include "ineq/covering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "ineq/constants.hpp"

namespace ineq {

namespace {

constexpr int kMaxDepth = 40;

std::string cube_label(const Cube& c) {
    std::string s = "cube at (";
    for (int a = 0; a < c.d; ++a) {
        if (a) s += ", ";
        s += std::to_string(c.corner[a]);
    }
    s += ") with side " + std::to_string(c.side);
    return s;
}

void check_cube(const Cube& c) {
    if (c.d < 1 || c.d > 3)
        throw std::domain_error("partition: cube dimension must be 1, 2 or 3");
    if (!(c.side > 0.0) || !std::isfinite(c.side))
        throw std::domain_error("partition: cube side must be positive and finite");
    for (int a = 0; a < c.d; ++a)
        if (!std::isfinite(c.corner[a]))
            throw std::domain_error("partition: cube corner must be finite");
}

double checked_mass(const MassOracle& oracle, const Cube& c) {
    const double m = oracle(c);
    if (!std::isfinite(m))
        throw std::domain_error("partition: mass oracle returned a non-finite value on " +
                                cube_label(c));
    if (m < 0.0)
        throw std::domain_error("partition: mass oracle returned a negative value on " +
                                cube_label(c));
    return m;
}

void split_cube(const MassOracle& oracle, double lambda, const Cube& cube, double mass,
                int depth, std::vector<PartitionLeaf>& leaves) {
    if (mass <= lambda) {
        leaves.push_back({cube, mass, depth});
        return;
    }
    if (depth >= kMaxDepth)
        throw std::runtime_error(
            "partition: refinement depth cap " + std::to_string(kMaxDepth) +
            " exceeded (the oracle concentrates more than lambda beyond dyadic "
            "resolution) at " + cube_label(cube));

    const double half = 0.5 * cube.side;
    const int children = 1 << cube.d;
    Cube child[8];
    double child_mass[8];
    double sum = 0.0;
    for (int c = 0; c < children; ++c) {
        Cube q{cube.d, cube.corner, half};
        // Bit (d-1-a) of c moves axis a; increasing c then enumerates the
        // children in lexicographic corner order.
        for (int a = 0; a < cube.d; ++a)
            if ((c >> (cube.d - 1 - a)) & 1) q.corner[a] += half;
        child[c] = q;
        child_mass[c] = checked_mass(oracle, q);
        sum += child_mass[c];
    }
    // The children masses are needed anyway, so additivity is checked at
    // every internal node (the contract asks for at least a sample).
    if (std::abs(sum - mass) > 1e-9 * std::max(mass, sum))
        throw std::invalid_argument(
            "partition: mass oracle is not additive across the children of " +
            cube_label(cube) + ": parent " + std::to_string(mass) + " vs children sum " +
            std::to_string(sum));
    for (int c = 0; c < children; ++c)
        split_cube(oracle, lambda, child[c], child_mass[c], depth + 1, leaves);
}

} // namespace

double Cube::volume() const {
    double v = 1.0;
    for (int a = 0; a < d; ++a) v *= side;
    return v;
}

MassPartition partition(const MassOracle& oracle, const Cube& root, double lambda) {
    check_cube(root);
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::domain_error("partition: lambda must be positive and finite");
    if (!oracle) throw std::domain_error("partition: empty mass oracle");

    MassPartition p;
    p.d = root.d;
    p.root = root;
    p.lambda = lambda;
    split_cube(oracle, lambda, root, checked_mass(oracle, root), 0, p.leaves);
    return p;
}

double aggregate_bound(const MassPartition& p, double alpha, double beta, double gamma) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::domain_error("aggregate_bound: alpha and beta must be > 0");
    if (!(gamma >= 0.0)) throw std::domain_error("aggregate_bound: gamma must be >= 0");
    const double C = covering_constants(p.d, alpha, beta);
    const double lam_factor = std::pow(p.lambda, beta - gamma) / C;
    double s = 0.0;
    for (const auto& leaf : p.leaves) {
        // pow(0, 0) = 1 on purpose: an empty leaf still counts when gamma=0.
        s += std::pow(leaf.cube.volume(), -alpha) *
             (std::pow(leaf.mass, beta) - lam_factor * std::pow(leaf.mass, gamma));
    }
    return s;
}

double aggregate_bound_weak(const MassPartition& p, double alpha, double q) {
    if (!(alpha > 0.0)) throw std::domain_error("aggregate_bound_weak: alpha must be > 0");
    if (!(q >= 0.0)) throw std::domain_error("aggregate_bound_weak: q must be >= 0");
    const double b = weak_b(p.d, alpha, q, p.lambda);
    double s = 0.0;
    for (const auto& leaf : p.leaves)
        s += std::pow(leaf.cube.volume(), -alpha) *
             (std::max(leaf.mass - q, 0.0) - b * leaf.mass);
    return s;
}

Cube bounding_cube(const BoxGrid& g) {
    Cube c;
    c.d = g.d;
    c.corner = {0.0, 0.0, 0.0};
    c.side = g.side;
    return c;
}

double cube_mass(const DensityField& rho, const Cube& cube, const Cube& root) {
    const BoxGrid& g = rho.grid;
    if (cube.d != root.d || g.d != root.d)
        throw std::invalid_argument("cube_mass: dimension mismatch");

    // Recover the dyadic depth and integer position of `cube` inside `root`.
    const double kreal = std::log2(root.side / cube.side);
    const long k = std::lround(kreal);
    if (k < 0 || k > kMaxDepth || std::abs(kreal - static_cast<double>(k)) > 1e-6)
        throw std::invalid_argument("cube_mass: cube side is not root.side / 2^k");
    const double scale = std::ldexp(1.0, static_cast<int>(k)); // exact 2^k
    long pos[3] = {0, 0, 0};
    for (int a = 0; a < root.d; ++a) {
        const double rel = (cube.corner[a] - root.corner[a]) / root.side * scale;
        pos[a] = std::lround(rel);
        if (pos[a] < 0 || pos[a] >= static_cast<long>(scale) ||
            std::abs(rel - static_cast<double>(pos[a])) > 1e-6)
            throw std::invalid_argument("cube_mass: cube corner is not on the dyadic grid "
                                        "of the root");
    }

    // Node membership through t = (x - root corner)/root side, computed once
    // and scaled by the exact power of two: floor(t * 2^k) is consistent
    // across depths, so sibling masses add exactly to the parent mass.
    double mass = 0.0;
    double x[3];
    for (std::size_t i = 0; i < rho.values.size(); ++i) {
        g.coords(i, x);
        bool inside = true;
        for (int a = 0; a < root.d; ++a) {
            const double t = (x[a] - root.corner[a]) / root.side;
            double cell = std::floor(t * scale);
            if (cell >= scale) cell = scale - 1.0; // top-wall nodes
            if (cell != static_cast<double>(pos[a])) {
                inside = false;
                break;
            }
        }
        if (inside) mass += g.weight(i) * rho.values[i];
    }
    return mass;
}

std::string partition_to_json(const MassPartition& p) {
    using nlohmann::json;
    auto corner_array = [&](const Cube& c) {
        json a = json::array();
        for (int i = 0; i < c.d; ++i) a.push_back(c.corner[i]);
        return a;
    };
    json j;
    j["d"] = p.d;
    j["root"] = {{"corner", corner_array(p.root)}, {"side", p.root.side}};
    j["lambda"] = p.lambda;
    json leaves = json::array();
    for (const auto& leaf : p.leaves)
        leaves.push_back({{"corner", corner_array(leaf.cube)},
                          {"side", leaf.cube.side},
                          {"mass", leaf.mass},
                          {"depth", leaf.depth}});
    j["leaves"] = std::move(leaves);
    return j.dump();
}

} // namespace ineq
