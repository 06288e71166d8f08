#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ineq/grid.hpp"
#include "ineq/report.hpp"

namespace ineq {

// Discretized -Laplace + V on a BoxGrid. The discrete operator is the
// generalized eigenproblem of the edge-based Dirichlet energy against the
// trapezoid mass matrix, symmetrized; with V = 0 and Neumann boundary the
// constant vector is an exact null vector.
struct SchrodingerOperator {
    BoxGrid grid;
    std::vector<double> potential; // node values, may be negative

    SchrodingerOperator(const BoxGrid& g, std::vector<double> V);
    SchrodingerOperator(const BoxGrid& g, const std::function<double(const double*)>& V);
};

struct Spectrum {
    std::vector<double> eigenvalues;       // ascending
    std::vector<SampledField> eigenvectors; // optional; quadrature-orthonormal
    double solver_tol = 0.0;
    std::optional<BoxGrid> grid;           // absent for exact cube spectra
    int exact_d = 0;                       // set for exact cube spectra
    double exact_volume = 0.0;
    Boundary exact_bc = Boundary::Neumann;
};

// k smallest eigenvalues. d = 1 uses Sturm bisection on the symmetric
// tridiagonal; up to 3000 unknowns a dense solve; beyond that Lanczos with
// full reorthogonalization from a deterministic fixed-seed start vector
// (residual ||Av - lambda v|| <= solver_tol, else a solver error carrying
// the residual is thrown).
Spectrum lowest_eigenvalues(const SchrodingerOperator& op, int k, bool want_vectors = false);

// Exact spectrum of -Laplace on a cube of the given volume: eigenvalues
// pi^2 |k|^2 / volume^{2/d} over multi-indices k (nonnegative for Neumann,
// positive for Dirichlet), ties broken lexicographically.
Spectrum cube_spectrum_exact(int d, double volume, int count, Boundary bc);

// Exact Neumann counting function N(E) = #{lambda <= E} versus the bound
// 1 + 2^d volume pi^{-d} E^{d/2}; passes iff N(E) <= bound.
InequalityReport counting_bound_report(double E, double volume, int d);

struct NegativeSumResult {
    double sum = 0.0;             // -sum of |negative eigenvalues|, <= 0
    bool converged = false;       // doubled-box check moved the sum by < 1%
    double doubled_box_sum = 0.0; // same computation on the doubled box
    double solver_tol = 0.0;
};

// Sum of all negative eigenvalues of op. The doubled-box run keeps the
// spacing h and centers the original box inside a box of twice the side;
// without an analytic potential the nodal values are extended by zero
// (exact for compactly supported wells).
NegativeSumResult negative_eigenvalue_sum(const SchrodingerOperator& op);
// Analytic-potential variant: `potential` is evaluated in the coordinate
// frame of the original box (arguments may lie outside [0, side]^d).
NegativeSumResult negative_eigenvalue_sum(const SchrodingerOperator& op,
                                          const std::function<double(const double*)>& potential);

// Lowest eigenvalue of the s-wave radial reduction -u'' - (Z/r) u on
// (0, rmax), u(0) = u(rmax) = 0, on the half-cell offset grid
// r_i = (i - 1/2) h; no potential floor is applied.
double radial_hydrogen_ground(double Z, double rmax, int n);

// JSON export {eigenvalues, solver_tol, grid}.
void save_spectrum(const Spectrum& spectrum, const std::string& path);
std::string spectrum_to_json(const Spectrum& spectrum);

} // namespace ineq
