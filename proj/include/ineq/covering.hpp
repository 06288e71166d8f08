#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "ineq/grid.hpp"

namespace ineq {

// Axis-aligned d-cube (d <= 3): corner is the lexicographically smallest
// vertex, side the common edge length.
struct Cube {
    int d = 1;
    std::array<double, 3> corner{0.0, 0.0, 0.0};
    double side = 1.0;

    double volume() const;
};

struct PartitionLeaf {
    Cube cube;
    double mass = 0.0;
    int depth = 0;
};

// Result of the adaptive dyadic mass partition: leaves tile the root cube
// exactly, every leaf carries mass <= lambda, and each internal split
// produced exactly 2^d children.
struct MassPartition {
    int d = 1;
    Cube root;
    double lambda = 1.0;
    std::vector<PartitionLeaf> leaves;
};

// Finitely additive nonnegative set function evaluated on cubes.
using MassOracle = std::function<double(const Cube&)>;

// Splits every cube whose mass exceeds lambda into its 2^d half-side
// children (recursively, depth-first, children in lexicographic corner
// order) and returns the resulting leaves. A root with mass <= lambda is
// returned as the single leaf. Oracle additivity across the children is
// checked at every split to 1e-9 relative.
// Errors: lambda <= 0, bad cube, negative/non-finite oracle -> domain_error;
// additivity violation -> invalid_argument; recursion past depth 40 ->
// runtime_error (the oracle concentrates mass beyond dyadic resolution).
MassPartition partition(const MassOracle& oracle, const Cube& root, double lambda);

// Sum_Q |Q|^{-alpha} [ m_Q^beta - (Lambda^{beta-gamma}/C_{d,alpha,beta}) m_Q^gamma ]
// over the leaves; guaranteed >= 0 (up to roundoff) whenever the partitioned
// total mass was >= lambda. Note m^0 = 1 also for empty cubes: the gamma = 0
// case counts every leaf, exactly as the guarantee requires.
double aggregate_bound(const MassPartition& p, double alpha, double beta, double gamma);

// Sum_Q |Q|^{-alpha} ( [m_Q - q]_+ - b m_Q ) with b = weak_b(d, alpha, q, lambda);
// guaranteed >= 0 under the same hypothesis (trivially when b <= 0).
double aggregate_bound_weak(const MassPartition& p, double alpha, double q);

// The grid's own box [0, side]^d as a Cube.
Cube bounding_cube(const BoxGrid& g);

// Trapezoid mass of the density restricted to a dyadic descendant `cube` of
// `root`: every grid node is assigned to exactly one cube per depth through
// half-open dyadic intervals (top-wall nodes go to the last cube), so sibling
// masses add up to the parent mass without boundary double counting.
// Throws invalid_argument if `cube` is not a dyadic descendant of `root`.
double cube_mass(const DensityField& rho, const Cube& cube, const Cube& root);

// JSON object {d, root: {corner, side}, lambda, leaves: [{corner, side, mass,
// depth}]}.
std::string partition_to_json(const MassPartition& p);

} // namespace ineq
