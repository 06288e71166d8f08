#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace ineq {

enum class Boundary { Dirichlet, Neumann };

// Uniform tensor grid on the cube [0, side]^d. Dirichlet grids store only
// interior nodes (boundary values are implicitly zero); Neumann grids store
// all n+1 nodes per axis. Trapezoid quadrature weights follow from that.
struct BoxGrid {
    int d = 1;
    int n = 2;          // cells per side
    double side = 1.0;
    Boundary bc = Boundary::Neumann;

    BoxGrid() = default;
    BoxGrid(int d, int n, double side, Boundary bc);

    double h() const { return side / n; }
    int nodes_per_axis() const { return bc == Boundary::Neumann ? n + 1 : n - 1; }
    std::size_t node_count() const;
    double volume() const;

    // Coordinate of node index i (0-based within stored nodes) along any axis.
    double coord(int i) const {
        return (bc == Boundary::Neumann ? i : i + 1) * h();
    }
    // Trapezoid weight of node index i along one axis.
    double axis_weight(int i) const {
        if (bc == Boundary::Neumann && (i == 0 || i == n)) return 0.5 * h();
        return h();
    }
    // Per-axis index of a flattened node index (axis 0 varies fastest).
    int axis_index(std::size_t flat, int axis) const;
    // Product of per-axis trapezoid weights.
    double weight(std::size_t flat) const;
    // Coordinates of a flattened node index.
    void coords(std::size_t flat, double* out) const;

    bool operator==(const BoxGrid& other) const {
        return d == other.d && n == other.n && side == other.side && bc == other.bc;
    }
};

// Complex node values on a BoxGrid.
struct SampledField {
    BoxGrid grid;
    std::vector<std::complex<double>> values;

    SampledField() = default;
    explicit SampledField(const BoxGrid& g);
    SampledField(const BoxGrid& g, std::vector<std::complex<double>> v);

    bool is_real(double tol = 0.0) const;
};

// Nonnegative real node values (a one-body density).
struct DensityField {
    BoxGrid grid;
    std::vector<double> values;

    DensityField() = default;
    explicit DensityField(const BoxGrid& g);
    DensityField(const BoxGrid& g, std::vector<double> v);

    double mass() const; // quadrature integral
};

// Discrete Dirichlet energy: central differences in the interior, one-sided
// differences at Neumann boundaries, implicit zero ghosts at Dirichlet
// boundaries; trapezoid quadrature. Exact for piecewise-linear u.
double kinetic_energy(const SampledField& field);

// Quadrature L^p norm; p may be infinity (max modulus).
double lp_norm(const SampledField& field, double p);
double lp_norm(const DensityField& field, double p);

// Integral of |f|^p computed through the layer-cake representation
// int_0^inf lambda_f(t) d(t^p) with lambda_f the distribution function of
// the quadrature measure; agrees with lp_norm(field, p)^p.
double layer_cake_norm(const SampledField& field, double p);

// Distribution function lambda_f(t) = quadrature weight of {|f| > t}.
double distribution_function(const SampledField& field, double t);

// rho = sum_j |u_j|^2 on the shared grid.
DensityField density_from_orbitals(const std::vector<SampledField>& orbitals);

// Quadrature inner product <a, b> = sum_x w(x) conj(a(x)) b(x).
std::complex<double> inner_product(const SampledField& a, const SampledField& b);

// Quadrature integral of a real node array on the grid.
double integrate(const BoxGrid& grid, const std::vector<double>& values);

// Flat little-endian float64 binary (interleaved re,im when complex) plus a
// JSON sidecar {d, n, side, bc, complex}; path_base gets ".f64" / ".json".
void save_field(const SampledField& field, const std::string& path_base);
SampledField load_field(const std::string& path_base);
void save_density(const DensityField& field, const std::string& path_base);
DensityField load_density(const std::string& path_base);

} // namespace ineq
