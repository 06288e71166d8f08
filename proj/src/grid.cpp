#include "ineq/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

static_assert(std::endian::native == std::endian::little,
              "field I/O assumes a little-endian host");

namespace ineq {

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void check_shape(const BoxGrid& g, std::size_t n_values) {
    if (n_values != g.node_count())
        throw std::invalid_argument("field value count does not match grid node count");
}

} // namespace

BoxGrid::BoxGrid(int d_, int n_, double side_, Boundary bc_)
    : d(d_), n(n_), side(side_), bc(bc_) {
    if (d < 1 || d > 3) throw std::domain_error("BoxGrid: d must be in {1,2,3}");
    if (n < 2) throw std::domain_error("BoxGrid: n must be >= 2");
    if (!(side > 0.0) || !std::isfinite(side))
        throw std::domain_error("BoxGrid: side must be positive and finite");
}

std::size_t BoxGrid::node_count() const { return ipow(nodes_per_axis(), d); }

double BoxGrid::volume() const { return std::pow(side, d); }

int BoxGrid::axis_index(std::size_t flat, int axis) const {
    std::size_t m = nodes_per_axis();
    for (int a = 0; a < axis; ++a) flat /= m;
    return static_cast<int>(flat % m);
}

double BoxGrid::weight(std::size_t flat) const {
    double w = 1.0;
    std::size_t m = nodes_per_axis();
    for (int a = 0; a < d; ++a) {
        w *= axis_weight(static_cast<int>(flat % m));
        flat /= m;
    }
    return w;
}

void BoxGrid::coords(std::size_t flat, double* out) const {
    std::size_t m = nodes_per_axis();
    for (int a = 0; a < d; ++a) {
        out[a] = coord(static_cast<int>(flat % m));
        flat /= m;
    }
}

SampledField::SampledField(const BoxGrid& g) : grid(g), values(g.node_count()) {}

SampledField::SampledField(const BoxGrid& g, std::vector<std::complex<double>> v)
    : grid(g), values(std::move(v)) {
    check_shape(grid, values.size());
}

bool SampledField::is_real(double tol) const {
    for (const auto& v : values)
        if (std::abs(v.imag()) > tol) return false;
    return true;
}

DensityField::DensityField(const BoxGrid& g) : grid(g), values(g.node_count(), 0.0) {}

DensityField::DensityField(const BoxGrid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    check_shape(grid, values.size());
    for (double x : values)
        if (!(x >= 0.0)) throw std::invalid_argument("DensityField: values must be >= 0");
}

double DensityField::mass() const { return integrate(grid, values); }

double integrate(const BoxGrid& grid, const std::vector<double>& values) {
    check_shape(grid, values.size());
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += grid.weight(i) * values[i];
    return s;
}

double kinetic_energy(const SampledField& field) {
    const BoxGrid& g = field.grid;
    check_shape(g, field.values.size());
    const int m = g.nodes_per_axis();
    const double h = g.h();
    const auto& v = field.values;

    double energy = 0.0;
    std::size_t stride = 1;
    for (int axis = 0; axis < g.d; ++axis) {
        const std::size_t outer = g.node_count() / m;
        for (std::size_t o = 0; o < outer; ++o) {
            // Base flat index of the 1D line along `axis` selected by o.
            const std::size_t low = o % stride;
            const std::size_t high = o / stride;
            const std::size_t base = low + high * stride * m;
            for (int i = 0; i < m; ++i) {
                const std::size_t idx = base + static_cast<std::size_t>(i) * stride;
                std::complex<double> grad;
                if (g.bc == Boundary::Neumann) {
                    if (i == 0)
                        grad = (v[idx + stride] - v[idx]) / h;
                    else if (i == m - 1)
                        grad = (v[idx] - v[idx - stride]) / h;
                    else
                        grad = (v[idx + stride] - v[idx - stride]) / (2.0 * h);
                } else {
                    const std::complex<double> up = (i == m - 1) ? 0.0 : v[idx + stride];
                    const std::complex<double> dn = (i == 0) ? 0.0 : v[idx - stride];
                    grad = (up - dn) / (2.0 * h);
                }
                energy += g.weight(idx) * std::norm(grad);
            }
        }
        stride *= m;
    }
    return energy;
}

double lp_norm(const SampledField& field, double p) {
    const BoxGrid& g = field.grid;
    check_shape(g, field.values.size());
    if (std::isinf(p)) {
        double mx = 0.0;
        for (const auto& v : field.values) mx = std::max(mx, std::abs(v));
        return mx;
    }
    if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must satisfy p >= 1");
    double s = 0.0;
    for (std::size_t i = 0; i < field.values.size(); ++i)
        s += g.weight(i) * std::pow(std::abs(field.values[i]), p);
    return std::pow(s, 1.0 / p);
}

double lp_norm(const DensityField& field, double p) {
    SampledField f(field.grid);
    for (std::size_t i = 0; i < field.values.size(); ++i) f.values[i] = field.values[i];
    return lp_norm(f, p);
}

double distribution_function(const SampledField& field, double t) {
    const BoxGrid& g = field.grid;
    double s = 0.0;
    for (std::size_t i = 0; i < field.values.size(); ++i)
        if (std::abs(field.values[i]) > t) s += g.weight(i);
    return s;
}

double layer_cake_norm(const SampledField& field, double p) {
    const BoxGrid& g = field.grid;
    check_shape(g, field.values.size());
    if (!(p >= 1.0)) throw std::domain_error("layer_cake_norm: p must satisfy p >= 1");

    // Sort the finitely many jump locations t_j = |f(x_j)| of the step
    // function lambda_f and integrate it exactly against d(t^p).
    std::vector<std::pair<double, double>> jumps; // (|value|, weight)
    jumps.reserve(field.values.size());
    for (std::size_t i = 0; i < field.values.size(); ++i)
        jumps.emplace_back(std::abs(field.values[i]), g.weight(i));
    std::sort(jumps.begin(), jumps.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    // suffix[j] = lambda_f(t) for t in [t_{j-1}, t_j).
    double integral = 0.0;
    double suffix = 0.0;
    for (const auto& [t, w] : jumps) { (void)t; suffix += w; }
    double prev_t = 0.0;
    for (const auto& [t, w] : jumps) {
        integral += suffix * (std::pow(t, p) - std::pow(prev_t, p));
        suffix -= w;
        prev_t = t;
    }
    return integral;
}

DensityField density_from_orbitals(const std::vector<SampledField>& orbitals) {
    if (orbitals.empty()) throw std::invalid_argument("density_from_orbitals: empty orbital list");
    const BoxGrid& g = orbitals.front().grid;
    DensityField rho(g);
    for (const auto& orb : orbitals) {
        if (!(orb.grid == g))
            throw std::invalid_argument("density_from_orbitals: orbitals on mismatched grids");
        check_shape(g, orb.values.size());
        for (std::size_t i = 0; i < rho.values.size(); ++i)
            rho.values[i] += std::norm(orb.values[i]);
    }
    return rho;
}

std::complex<double> inner_product(const SampledField& a, const SampledField& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("inner_product: fields on mismatched grids");
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        s += a.grid.weight(i) * std::conj(a.values[i]) * b.values[i];
    return s;
}

namespace {

using nlohmann::json;

void write_sidecar(const BoxGrid& g, bool is_complex, const std::string& path_base) {
    json j;
    j["d"] = g.d;
    j["n"] = g.n;
    j["side"] = g.side;
    j["bc"] = g.bc == Boundary::Neumann ? "neumann" : "dirichlet";
    j["complex"] = is_complex;
    std::ofstream out(path_base + ".json");
    if (!out) throw std::runtime_error("cannot open sidecar for writing: " + path_base + ".json");
    out << j.dump(2) << "\n";
}

std::pair<BoxGrid, bool> read_sidecar(const std::string& path_base) {
    std::ifstream in(path_base + ".json");
    if (!in) throw std::runtime_error("cannot open sidecar for reading: " + path_base + ".json");
    json j;
    in >> j;
    const std::string bc = j.at("bc").get<std::string>();
    if (bc != "neumann" && bc != "dirichlet")
        throw std::runtime_error("sidecar bc must be 'neumann' or 'dirichlet'");
    BoxGrid g(j.at("d").get<int>(), j.at("n").get<int>(), j.at("side").get<double>(),
              bc == "neumann" ? Boundary::Neumann : Boundary::Dirichlet);
    return {g, j.at("complex").get<bool>()};
}

void write_doubles(const std::vector<double>& buf, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open binary for writing: " + path);
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(double)));
}

std::vector<double> read_doubles(const std::string& path, std::size_t expect) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open binary for reading: " + path);
    std::vector<double> buf(expect);
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(expect * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != expect * sizeof(double))
        throw std::runtime_error("binary field file shorter than sidecar implies: " + path);
    return buf;
}

} // namespace

void save_field(const SampledField& field, const std::string& path_base) {
    check_shape(field.grid, field.values.size());
    const bool cplx = !field.is_real(0.0);
    write_sidecar(field.grid, cplx, path_base);
    std::vector<double> buf;
    buf.reserve(field.values.size() * (cplx ? 2 : 1));
    for (const auto& v : field.values) {
        buf.push_back(v.real());
        if (cplx) buf.push_back(v.imag());
    }
    write_doubles(buf, path_base + ".f64");
}

SampledField load_field(const std::string& path_base) {
    auto [grid, cplx] = read_sidecar(path_base);
    const std::size_t count = grid.node_count();
    auto buf = read_doubles(path_base + ".f64", count * (cplx ? 2 : 1));
    SampledField f(grid);
    for (std::size_t i = 0; i < count; ++i)
        f.values[i] = cplx ? std::complex<double>(buf[2 * i], buf[2 * i + 1])
                           : std::complex<double>(buf[i], 0.0);
    return f;
}

void save_density(const DensityField& field, const std::string& path_base) {
    check_shape(field.grid, field.values.size());
    write_sidecar(field.grid, false, path_base);
    write_doubles(field.values, path_base + ".f64");
}

DensityField load_density(const std::string& path_base) {
    auto [grid, cplx] = read_sidecar(path_base);
    if (cplx) throw std::runtime_error("density files must be real-valued");
    auto buf = read_doubles(path_base + ".f64", grid.node_count());
    return DensityField(grid, std::move(buf));
}

} // namespace ineq
