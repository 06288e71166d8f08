#include "ineq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "json.hpp"

#include "ineq/rng.hpp"

namespace ineq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kDenseLimit = 3000;

// Symmetrized per-axis second-difference matrix (tridiagonal). It is the
// similarity transform W^{1/2} (W^{-1} K) W^{-1/2} of the edge-based energy
// matrix K against the trapezoid mass W, so its eigenvalues are those of the
// generalized problem K u = lambda W u.
struct AxisMatrix {
    std::vector<double> diag;
    std::vector<double> off;
};

AxisMatrix axis_matrix(const BoxGrid& g) {
    const int m = g.nodes_per_axis();
    const double ih2 = 1.0 / (g.h() * g.h());
    AxisMatrix ax;
    ax.diag.assign(m, 2.0 * ih2);
    if (m >= 2) {
        ax.off.assign(m - 1, -ih2);
        if (g.bc == Boundary::Neumann) {
            ax.off.front() = -std::numbers::sqrt2 * ih2;
            ax.off.back() = -std::numbers::sqrt2 * ih2;
        }
    }
    return ax;
}

// y = S x with S = kron-sum of axis matrices + diag(V).
void apply_operator(const BoxGrid& g, const AxisMatrix& ax, const std::vector<double>& V,
                    const double* x, double* y) {
    const std::size_t total = g.node_count();
    const int m = g.nodes_per_axis();
    for (std::size_t i = 0; i < total; ++i) y[i] = V[i] * x[i];
    std::size_t stride = 1;
    for (int axis = 0; axis < g.d; ++axis) {
        const std::size_t outer = total / m;
        for (std::size_t o = 0; o < outer; ++o) {
            const std::size_t low = o % stride;
            const std::size_t high = o / stride;
            std::size_t idx = low + high * stride * static_cast<std::size_t>(m);
            for (int i = 0; i < m; ++i, idx += stride) {
                double acc = ax.diag[i] * x[idx];
                if (i > 0) acc += ax.off[i - 1] * x[idx - stride];
                if (i < m - 1) acc += ax.off[i] * x[idx + stride];
                y[idx] += acc;
            }
        }
        stride *= m;
    }
}

double operator_norm_estimate(const BoxGrid& g, const AxisMatrix& ax,
                              const std::vector<double>& V) {
    double vmax = 0.0;
    for (double v : V) vmax = std::max(vmax, std::abs(v));
    double axis_norm = 0.0;
    for (std::size_t i = 0; i < ax.diag.size(); ++i) {
        double r = ax.diag[i];
        if (i > 0) r += std::abs(ax.off[i - 1]);
        if (i + 1 < ax.diag.size()) r += std::abs(ax.off[i]);
        axis_norm = std::max(axis_norm, r);
    }
    return g.d * axis_norm + vmax;
}

// ---------------------------------------------------------------- Sturm ---

// Number of eigenvalues of the symmetric tridiagonal (a, b) strictly below x.
int count_below(const std::vector<double>& a, const std::vector<double>& b, double x) {
    int count = 0;
    double q = a[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (q == 0.0) q = 1e-300;
        q = a[i] - x - b[i - 1] * b[i - 1] / q;
        if (q < 0.0) ++count;
    }
    return count;
}

void gershgorin(const std::vector<double>& a, const std::vector<double>& b, double& lo,
                double& hi) {
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(b[i - 1]);
        if (i < b.size()) r += std::abs(b[i]);
        lo = std::min(lo, a[i] - r);
        hi = std::max(hi, a[i] + r);
    }
}

// k-th (0-based) smallest eigenvalue by bisection on the Sturm count.
double kth_eigenvalue(const std::vector<double>& a, const std::vector<double>& b, int k,
                      double* width_out = nullptr) {
    double lo, hi;
    gershgorin(a, b, lo, hi);
    for (int it = 0; it < 200; ++it) {
        const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
        if (hi - lo <= 1e-13 * scale) break;
        const double mid = 0.5 * (lo + hi);
        if (count_below(a, b, mid) > k) hi = mid; else lo = mid;
    }
    if (width_out) *width_out = hi - lo;
    return 0.5 * (lo + hi);
}

// Solve (T - lambda I) y = rhs by LU with partial pivoting (fill-in du2).
bool tridiag_shifted_solve(const std::vector<double>& a, const std::vector<double>& b,
                           double lambda, std::vector<double>& y) {
    const std::size_t m = a.size();
    std::vector<double> dl(m, 0.0), dm(m), du(m, 0.0), du2(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) dm[i] = a[i] - lambda;
    for (std::size_t i = 0; i + 1 < m; ++i) { dl[i + 1] = b[i]; du[i] = b[i]; }

    std::vector<int> swapped(m, 0);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (std::abs(dl[i + 1]) > std::abs(dm[i])) {
            std::swap(dm[i], dl[i + 1]);
            std::swap(du[i], dm[i + 1]);
            if (i + 2 < m) { du2[i] = du[i + 1]; du[i + 1] = 0.0; }
            std::swap(y[i], y[i + 1]);
            swapped[i] = 1;
        }
        if (dm[i] == 0.0) dm[i] = 1e-300;
        const double f = dl[i + 1] / dm[i];
        dm[i + 1] -= f * du[i];
        if (i + 2 < m) du[i + 1] -= f * du2[i];
        y[i + 1] -= f * y[i];
    }
    if (dm[m - 1] == 0.0) dm[m - 1] = 1e-300;
    // Back substitution.
    y[m - 1] /= dm[m - 1];
    if (m >= 2) y[m - 2] = (y[m - 2] - du[m - 2] * y[m - 1]) / dm[m - 2];
    for (std::size_t ii = m; ii >= 3; --ii) {
        const std::size_t i = ii - 3;
        y[i] = (y[i] - du[i] * y[i + 1] - du2[i] * y[i + 2]) / dm[i];
    }
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}

// Eigenvector of the symmetric tridiagonal (a, b) for eigenvalue lambda via
// two rounds of inverse iteration from a deterministic start.
std::vector<double> tridiag_eigenvector(const std::vector<double>& a,
                                        const std::vector<double>& b, double lambda) {
    const std::size_t m = a.size();
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = 1.0 + 0.3 * std::sin(1.7 * (double)(i + 1));
    for (int round = 0; round < 3; ++round) {
        double norm = 0.0;
        for (double v : y) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : y) v /= norm;
        std::vector<double> rhs = y;
        if (!tridiag_shifted_solve(a, b, lambda, rhs)) break;
        y = rhs;
    }
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : y) v /= norm;
    return y;
}

// -------------------------------------------------------------- Lanczos ---

struct EigResult {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors; // symmetrized coordinates
    double solver_tol = 0.0;
};

// Defined after the Lanczos code; declared here because the certified driver
// needs the exact eigenvalue count below a shift.
int banded_count_below(const BoxGrid& g, const AxisMatrix& ax, const std::vector<double>& V,
                       double shift);

// One Lanczos pass with full reorthogonalization against both the Krylov
// basis and the `deflate` set, i.e. it computes the lowest eigenpairs of the
// operator restricted to the orthogonal complement of `deflate`. Eigenvectors
// are always assembled (the residual contract needs them).
EigResult lanczos_run(const BoxGrid& g, const AxisMatrix& ax, const std::vector<double>& V,
                      int k, const std::vector<std::vector<double>>& deflate,
                      std::uint64_t seed) {
    const std::size_t total = g.node_count();
    const double norm_est = operator_norm_estimate(g, ax, V);
    const double tol = 1e-9 * std::max(1.0, norm_est);
    const std::size_t mmax = std::min<std::size_t>(total - deflate.size(), 500);

    std::vector<std::vector<double>> Q;
    Q.reserve(mmax + 1);
    std::vector<double> alpha, beta;

    auto orthogonalize = [&](std::vector<double>& w) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : deflate) {
                double dot = 0.0;
                for (std::size_t i = 0; i < total; ++i) dot += q[i] * w[i];
                for (std::size_t i = 0; i < total; ++i) w[i] -= dot * q[i];
            }
            for (const auto& q : Q) {
                double dot = 0.0;
                for (std::size_t i = 0; i < total; ++i) dot += q[i] * w[i];
                for (std::size_t i = 0; i < total; ++i) w[i] -= dot * q[i];
            }
        }
    };

    // Deterministic pseudo-random start: a symmetric start vector (such as
    // all-ones) would confine the Krylov space to a symmetry sector of the
    // operator and silently skip eigenpairs.
    {
        std::vector<double> q0(total);
        Rng rng(seed);
        double norm = 0.0;
        for (int attempt = 0; attempt < 8 && norm < 1e-6; ++attempt) {
            for (auto& v : q0) v = rng.uniform(-1.0, 1.0);
            orthogonalize(q0);
            norm = 0.0;
            for (double v : q0) norm += v * v;
            norm = std::sqrt(norm);
        }
        for (auto& v : q0) v /= norm;
        Q.push_back(std::move(q0));
    }
    std::size_t next_canonical = 0;

    auto ritz_converged = [&](std::size_t m) {
        if (m < static_cast<std::size_t>(k) + 2) return false;
        std::vector<double> ta(alpha.begin(), alpha.begin() + m);
        std::vector<double> tb(beta.begin(), beta.begin() + (m - 1));
        const double coupling = std::abs(beta[m - 1]);
        for (int i = 0; i < k; ++i) {
            const double theta = kth_eigenvalue(ta, tb, i);
            const auto y = tridiag_eigenvector(ta, tb, theta);
            if (coupling * std::abs(y[m - 1]) > tol) return false;
        }
        return true;
    };

    std::vector<double> w(total);
    std::size_t m = 0;
    for (std::size_t j = 0; j < mmax; ++j) {
        apply_operator(g, ax, V, Q[j].data(), w.data());
        double aj = 0.0;
        for (std::size_t i = 0; i < total; ++i) aj += Q[j][i] * w[i];
        alpha.push_back(aj);
        orthogonalize(w);
        double bnorm = 0.0;
        for (double v : w) bnorm += v * v;
        bnorm = std::sqrt(bnorm);
        m = j + 1;

        if (bnorm <= 1e-12 * std::max(1.0, norm_est)) {
            // Invariant subspace exhausted: inject the next canonical
            // direction (deterministic restart) with zero coupling.
            beta.push_back(0.0);
            bool found = false;
            while (next_canonical < total) {
                std::vector<double> e(total, 0.0);
                e[next_canonical++] = 1.0;
                orthogonalize(e);
                double en = 0.0;
                for (double v : e) en += v * v;
                en = std::sqrt(en);
                if (en > 1e-3) {
                    for (double& v : e) v /= en;
                    Q.push_back(std::move(e));
                    found = true;
                    break;
                }
            }
            if (!found) break; // whole space spanned
        } else {
            beta.push_back(bnorm);
            std::vector<double> qn(total);
            for (std::size_t i = 0; i < total; ++i) qn[i] = w[i] / bnorm;
            Q.push_back(std::move(qn));
        }

        if ((m % 20 == 0 || m == mmax) && ritz_converged(m)) break;
        if (m >= total) break;
    }

    std::vector<double> ta(alpha.begin(), alpha.begin() + m);
    std::vector<double> tb(beta.begin(), beta.begin() + (m - 1));

    EigResult res;
    res.values.resize(k);
    std::vector<std::vector<double>> ys(k);
    for (int i = 0; i < k; ++i) {
        res.values[i] = kth_eigenvalue(ta, tb, i);
        ys[i] = tridiag_eigenvector(ta, tb, res.values[i]);
    }

    // Assemble Ritz vectors (always needed for the residual contract).
    res.vectors.assign(k, std::vector<double>(total, 0.0));
    for (int i = 0; i < k; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double c = ys[i][j];
            const auto& qj = Q[j];
            for (std::size_t t = 0; t < total; ++t) res.vectors[i][t] += c * qj[t];
        }
    // Defensive Gram-Schmidt for near-degenerate Ritz pairs.
    for (int i = 0; i < k; ++i) {
        for (int p = 0; p < i; ++p) {
            double dot = 0.0;
            for (std::size_t t = 0; t < total; ++t) dot += res.vectors[p][t] * res.vectors[i][t];
            for (std::size_t t = 0; t < total; ++t) res.vectors[i][t] -= dot * res.vectors[p][t];
        }
        double norm = 0.0;
        for (double v : res.vectors[i]) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : res.vectors[i]) v /= norm;
    }

    // Verify the residual contract ||Av - lambda v|| <= solver_tol.
    double max_resid = 0.0;
    for (int i = 0; i < k; ++i) {
        apply_operator(g, ax, V, res.vectors[i].data(), w.data());
        double resid = 0.0;
        for (std::size_t t = 0; t < total; ++t) {
            const double r = w[t] - res.values[i] * res.vectors[i][t];
            resid += r * r;
        }
        max_resid = std::max(max_resid, std::sqrt(resid));
    }
    const double contract = 100.0 * tol;
    if (max_resid > contract)
        throw std::runtime_error("iterative eigensolver did not converge: residual " +
                                 std::to_string(max_resid) + " exceeds " +
                                 std::to_string(contract));
    res.solver_tol = std::max(max_resid, 1e-15);
    return res;
}

// Certified k lowest eigenpairs. A single Lanczos start vector converges to
// at most one eigenvector per degenerate eigenvalue (the Krylov space holds
// exactly one direction from each eigenspace), and a residual check alone
// cannot detect the skipped copies because every returned pair is genuine.
// The driver therefore certifies completeness with the exact inertia count
// below the k-th Ritz value and, when copies are missing, restarts deflated
// against everything found so far and merges.
EigResult lanczos_lowest(const BoxGrid& g, const AxisMatrix& ax, const std::vector<double>& V,
                         int k, bool want_vectors) {
    const double norm_est = operator_norm_estimate(g, ax, V);
    const double tol = 1e-9 * std::max(1.0, norm_est);

    EigResult found = lanczos_run(g, ax, V, k, {}, 0xC0FFEE1234567ULL);
    double worst_tol = found.solver_tol;
    for (int restart = 0;; ++restart) {
        const double cut = found.values[k - 1] + 200.0 * tol;
        int found_below = 0;
        for (double v : found.values)
            if (v < cut) ++found_below;
        const int true_below = banded_count_below(g, ax, V, cut);
        if (true_below <= found_below) break;
        if (restart >= 15)
            throw std::runtime_error(
                "iterative eigensolver: eigenvalue multiplicities unresolved after "
                "repeated deflated restarts");
        const int extra = std::min(true_below - found_below, 50);
        EigResult more = lanczos_run(g, ax, V, extra, found.vectors,
                                     0xC0FFEE1234567ULL + 0x9E3779B9ULL * (restart + 1));
        worst_tol = std::max(worst_tol, more.solver_tol);
        for (int i = 0; i < extra; ++i) {
            found.values.push_back(more.values[i]);
            found.vectors.push_back(std::move(more.vectors[i]));
        }
        std::vector<std::size_t> order(found.values.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return found.values[a] < found.values[b];
        });
        EigResult merged;
        merged.values.reserve(order.size());
        merged.vectors.reserve(order.size());
        for (std::size_t idx : order) {
            merged.values.push_back(found.values[idx]);
            merged.vectors.push_back(std::move(found.vectors[idx]));
        }
        found = std::move(merged);
    }
    found.values.resize(k);
    found.vectors.resize(k);
    found.solver_tol = worst_tol;
    if (!want_vectors) found.vectors.clear();
    return found;
}

EigResult dense_lowest(const BoxGrid& g, const AxisMatrix& ax, const std::vector<double>& V,
                       int k, bool want_vectors) {
    const std::size_t total = g.node_count();
    const int m = g.nodes_per_axis();
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(total, total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        double diag = V[idx];
        std::size_t rest = idx, stride = 1;
        for (int axis = 0; axis < g.d; ++axis) {
            const int i = static_cast<int>(rest % m);
            rest /= m;
            diag += ax.diag[i];
            if (i < m - 1) {
                S(idx, idx + stride) = ax.off[i];
                S(idx + stride, idx) = ax.off[i];
            }
            stride *= m;
        }
        S(idx, idx) = diag;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        S, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("dense eigensolver failed to converge");
    EigResult res;
    res.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + k);
    if (want_vectors) {
        res.vectors.assign(k, std::vector<double>(total));
        for (int i = 0; i < k; ++i)
            for (std::size_t t = 0; t < total; ++t) res.vectors[i][t] = solver.eigenvectors()(t, i);
    }
    res.solver_tol = 1e-12 * std::max(1.0, operator_norm_estimate(g, ax, V));
    return res;
}

EigResult sturm_lowest([[maybe_unused]] const BoxGrid& g, const AxisMatrix& ax,
                       const std::vector<double>& V, int k, bool want_vectors) {
    std::vector<double> a = ax.diag;
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += V[i];
    const std::vector<double>& b = ax.off;
    EigResult res;
    res.values.resize(k);
    double max_width = 0.0;
    for (int i = 0; i < k; ++i) {
        double width = 0.0;
        res.values[i] = kth_eigenvalue(a, b, i, &width);
        max_width = std::max(max_width, width);
    }
    if (want_vectors) {
        res.vectors.resize(k);
        for (int i = 0; i < k; ++i) res.vectors[i] = tridiag_eigenvector(a, b, res.values[i]);
    }
    res.solver_tol = std::max(max_width, 1e-14);
    return res;
}

EigResult lowest_impl(const BoxGrid& g, const std::vector<double>& V, int k, bool want_vectors) {
    const AxisMatrix ax = axis_matrix(g);
    if (g.d == 1) return sturm_lowest(g, ax, V, k, want_vectors);
    if (g.node_count() <= kDenseLimit) return dense_lowest(g, ax, V, k, want_vectors);
    return lanczos_lowest(g, ax, V, k, want_vectors);
}

// Exact count of eigenvalues below `shift` by the inertia of the banded
// LDL^T factorization (Sylvester's law); bandwidth is m^{d-1}.
int banded_count_below(const BoxGrid& g, const AxisMatrix& ax, const std::vector<double>& V,
                       double shift) {
    const std::size_t N = g.node_count();
    const int m = g.nodes_per_axis();
    std::size_t bw = 1;
    for (int a = 0; a < g.d - 1; ++a) bw *= static_cast<std::size_t>(m);
    const std::size_t cols = bw + 1;
    // band[j*cols + k] = A(j+k, j), k = 0..bw (lower band by columns).
    std::vector<double> band(N * cols, 0.0);
    for (std::size_t idx = 0; idx < N; ++idx) {
        double diag = V[idx] - shift;
        std::size_t rest = idx, stride = 1;
        for (int axis = 0; axis < g.d; ++axis) {
            const int i = static_cast<int>(rest % m);
            rest /= m;
            diag += ax.diag[i];
            if (i > 0) band[(idx - stride) * cols + stride] = ax.off[i - 1];
            stride *= m;
        }
        band[idx * cols] = diag;
    }

    int negatives = 0;
    for (std::size_t j = 0; j < N; ++j) {
        double d = band[j * cols];
        if (d == 0.0) d = 1e-300;
        if (d < 0.0) ++negatives;
        const std::size_t jmax = std::min(N - 1, j + bw);
        for (std::size_t i2 = j + 1; i2 <= jmax; ++i2) {
            const double c2 = band[j * cols + (i2 - j)];
            if (c2 == 0.0) continue;
            const double f = c2 / d;
            for (std::size_t i = i2; i <= jmax; ++i)
                band[i2 * cols + (i - i2)] -= band[j * cols + (i - j)] * f;
        }
    }
    return negatives;
}

// Sum of all negative eigenvalues of the operator (helper for the public
// negative_eigenvalue_sum variants).
std::pair<double, double> negative_sum_impl(const BoxGrid& g, const std::vector<double>& V) {
    const AxisMatrix ax = axis_matrix(g);
    if (g.d == 1) {
        std::vector<double> a = ax.diag;
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += V[i];
        const std::vector<double>& b = ax.off;
        const int negatives = count_below(a, b, 0.0);
        double sum = 0.0, max_width = 0.0;
        for (int i = 0; i < negatives; ++i) {
            double width = 0.0;
            const double lam = kth_eigenvalue(a, b, i, &width);
            if (lam < 0.0) sum += lam;
            max_width = std::max(max_width, width);
        }
        return {sum, std::max(max_width, 1e-14)};
    }
    if (g.node_count() <= kDenseLimit) {
        EigResult all = dense_lowest(g, ax, V, static_cast<int>(g.node_count()), false);
        double sum = 0.0;
        for (double lam : all.values) {
            if (lam >= 0.0) break;
            sum += lam;
        }
        return {sum, all.solver_tol};
    }
    // Iterative path: determine the exact number of negative eigenvalues by
    // matrix inertia first, then ask Lanczos for exactly those exterior
    // (well-separated) pairs.
    const int negatives = banded_count_below(g, ax, V, 0.0);
    if (negatives == 0) return {0.0, 1e-14};
    if (negatives > 300)
        throw std::runtime_error("negative_eigenvalue_sum: more than 300 bound states "
                                 "on an iterative-solver grid");
    EigResult res = lanczos_lowest(g, ax, V, negatives, false);
    double sum = 0.0;
    for (double lam : res.values)
        if (lam < 0.0) sum += lam;
    return {sum, res.solver_tol};
}

std::vector<double> doubled_box_potential(
    const BoxGrid& g, const BoxGrid& g2, const std::vector<double>& V,
    const std::function<double(const double*)>& analytic) {
    std::vector<double> V2(g2.node_count(), 0.0);
    const int m2 = g2.nodes_per_axis();
    double x[3];
    for (std::size_t idx = 0; idx < V2.size(); ++idx) {
        // Original-frame coordinates, computed index-first so that nodes
        // shared with the original grid evaluate at bit-identical positions
        // (a discontinuous potential then cannot flip at its interface).
        std::size_t rest = idx;
        for (int a = 0; a < g.d; ++a) {
            const int j = static_cast<int>(rest % m2);
            rest /= m2;
            const double steps =
                (g.bc == Boundary::Dirichlet ? j + 1.0 : static_cast<double>(j)) - 0.5 * g.n;
            x[a] = steps * g.h();
        }
        if (analytic) {
            V2[idx] = analytic(x);
            continue;
        }
        // Zero extension of the nodal values (exact when the original nodes
        // align, i.e. for even n; nearest-node sampling otherwise).
        bool inside = true;
        std::size_t flat = 0, stride = 1;
        for (int a = 0; a < g.d; ++a) {
            const double pos =
                g.bc == Boundary::Neumann ? x[a] / g.h() : x[a] / g.h() - 1.0;
            const long j = std::lround(pos);
            if (j < 0 || j >= g.nodes_per_axis() || std::abs(pos - double(j)) > 0.5 + 1e-9) {
                inside = false;
                break;
            }
            flat += static_cast<std::size_t>(j) * stride;
            stride *= g.nodes_per_axis();
        }
        if (inside) V2[idx] = V[flat];
    }
    return V2;
}

NegativeSumResult negative_sum_with_doubling(
    const SchrodingerOperator& op, const std::function<double(const double*)>& analytic) {
    NegativeSumResult out;
    auto [sum, tol] = negative_sum_impl(op.grid, op.potential);
    out.sum = sum;
    out.solver_tol = tol;

    BoxGrid g2(op.grid.d, 2 * op.grid.n, 2.0 * op.grid.side, op.grid.bc);
    const std::vector<double> V2 = doubled_box_potential(op.grid, g2, op.potential, analytic);
    auto [sum2, tol2] = negative_sum_impl(g2, V2);
    out.doubled_box_sum = sum2;
    out.solver_tol = std::max(out.solver_tol, tol2);
    out.converged = std::abs(sum2 - sum) <= 0.01 * std::max(std::abs(sum), 1e-12);
    return out;
}

} // namespace

SchrodingerOperator::SchrodingerOperator(const BoxGrid& g, std::vector<double> V)
    : grid(g), potential(std::move(V)) {
    if (potential.size() != grid.node_count())
        throw std::invalid_argument("SchrodingerOperator: potential size mismatch");
    for (double v : potential)
        if (!std::isfinite(v))
            throw std::invalid_argument("SchrodingerOperator: potential must be finite");
}

SchrodingerOperator::SchrodingerOperator(const BoxGrid& g,
                                         const std::function<double(const double*)>& V)
    : grid(g), potential(g.node_count()) {
    double x[3];
    for (std::size_t idx = 0; idx < potential.size(); ++idx) {
        grid.coords(idx, x);
        potential[idx] = V(x);
        if (!std::isfinite(potential[idx]))
            throw std::invalid_argument("SchrodingerOperator: potential must be finite");
    }
}

Spectrum lowest_eigenvalues(const SchrodingerOperator& op, int k, bool want_vectors) {
    if (k < 1 || static_cast<std::size_t>(k) > op.grid.node_count())
        throw std::domain_error("lowest_eigenvalues: k must be in [1, node count]");
    EigResult res = lowest_impl(op.grid, op.potential, k, want_vectors);
    Spectrum s;
    s.eigenvalues = res.values;
    s.solver_tol = res.solver_tol;
    s.grid = op.grid;
    if (want_vectors) {
        // Convert from symmetrized coordinates back to node values:
        // u = W^{-1/2} y, which makes the vectors quadrature-orthonormal.
        for (const auto& y : res.vectors) {
            SampledField f(op.grid);
            for (std::size_t i = 0; i < y.size(); ++i)
                f.values[i] = y[i] / std::sqrt(op.grid.weight(i));
            s.eigenvectors.push_back(std::move(f));
        }
    }
    return s;
}

Spectrum cube_spectrum_exact(int d, double volume, int count, Boundary bc) {
    if (d < 1 || d > 3) throw std::domain_error("cube_spectrum_exact: d must be in {1,2,3}");
    if (!(volume > 0.0)) throw std::domain_error("cube_spectrum_exact: volume must be positive");
    if (count < 1) throw std::domain_error("cube_spectrum_exact: count must be >= 1");

    const int kmin = bc == Boundary::Neumann ? 0 : 1;
    long M = std::max<long>(4, std::lround(std::ceil(std::pow(double(count), 1.0 / d))) + 2);

    struct Entry {
        long norm2;
        std::array<long, 3> idx;
    };
    std::vector<Entry> entries;
    for (;;) {
        entries.clear();
        const long hi = kmin + M;
        std::array<long, 3> kved{0, 0, 0};
        for (long k0 = kmin; k0 <= hi; ++k0)
            for (long k1 = d >= 2 ? kmin : 0; k1 <= (d >= 2 ? hi : 0); ++k1)
                for (long k2 = d >= 3 ? kmin : 0; k2 <= (d >= 3 ? hi : 0); ++k2) {
                    kved = {k0, k1, k2};
                    entries.push_back({k0 * k0 + k1 * k1 + k2 * k2, kved});
                }
        if (entries.size() < static_cast<std::size_t>(count)) {
            M *= 2;
            continue;
        }
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
            return a.idx < b.idx;
        });
        // Correct iff the count-th smallest norm is fully enclosed by the box.
        const long B = entries[count - 1].norm2;
        if (B <= M * M) break;
        M = std::lround(std::ceil(std::sqrt(double(B)))) + 1;
    }

    Spectrum s;
    s.eigenvalues.reserve(count);
    const double scale = kPi * kPi / std::pow(volume, 2.0 / d);
    for (int i = 0; i < count; ++i) s.eigenvalues.push_back(scale * double(entries[i].norm2));
    s.solver_tol = 0.0;
    s.exact_d = d;
    s.exact_volume = volume;
    s.exact_bc = bc;
    return s;
}

InequalityReport counting_bound_report(double E, double volume, int d) {
    if (!(E > 0.0)) throw std::domain_error("counting_bound_report: E must be positive");
    if (!(volume > 0.0)) throw std::domain_error("counting_bound_report: volume must be positive");
    if (d < 1 || d > 3) throw std::domain_error("counting_bound_report: d must be in {1,2,3}");

    const double R2 = E * std::pow(volume, 2.0 / d) / (kPi * kPi);
    const double R = std::sqrt(R2);
    if (std::pow(R + 1.0, d) > 5e7)
        throw std::domain_error("counting_bound_report: E too large for exact enumeration");

    // Exact count of k in Z_{>=0}^d with |k|^2 <= R2 (Neumann cube levels).
    long count = 0;
    const long m0 = static_cast<long>(std::floor(R));
    for (long k0 = 0; k0 <= m0; ++k0) {
        if (d == 1) {
            if (double(k0) * k0 <= R2) ++count;
            continue;
        }
        for (long k1 = 0; double(k0) * k0 + double(k1) * k1 <= R2; ++k1) {
            if (d == 2) {
                ++count;
                continue;
            }
            for (long k2 = 0; double(k0) * k0 + double(k1) * k1 + double(k2) * k2 <= R2; ++k2)
                ++count;
        }
    }

    const double prefactor = std::pow(2.0, d) * volume * std::pow(kPi, -double(d));
    const double rhs = 1.0 + prefactor * std::pow(E, 0.5 * d);
    auto r = InequalityReport::make("counting_bound", double(count), rhs, prefactor, 0.0,
                                    Sense::LessEq);
    return r;
}

NegativeSumResult negative_eigenvalue_sum(const SchrodingerOperator& op) {
    return negative_sum_with_doubling(op, nullptr);
}

NegativeSumResult negative_eigenvalue_sum(
    const SchrodingerOperator& op, const std::function<double(const double*)>& potential) {
    return negative_sum_with_doubling(op, potential);
}

double radial_hydrogen_ground(double Z, double rmax, int n) {
    if (!(Z > 0.0)) throw std::domain_error("radial_hydrogen_ground: Z must be positive");
    if (!(rmax > 0.0)) throw std::domain_error("radial_hydrogen_ground: rmax must be positive");
    if (n < 10) throw std::domain_error("radial_hydrogen_ground: n must be >= 10");

    const double h = rmax / n;
    const double ih2 = 1.0 / (h * h);
    // Offset nodes r_i = (i - 1/2) h, i = 1..n, with antisymmetric ghosts at
    // both walls (u(-r) = -u(r) at 0; u reflected odd at rmax), which gives
    // diagonal 3/h^2 in the end rows and keeps u ~ r exact near the origin.
    std::vector<double> a(n), b(n - 1, -ih2);
    for (int i = 1; i <= n; ++i) {
        const double r = (i - 0.5) * h;
        a[i - 1] = (i == 1 || i == n ? 3.0 : 2.0) * ih2 - Z / r;
    }
    return kth_eigenvalue(a, b, 0);
}

std::string spectrum_to_json(const Spectrum& spectrum) {
    nlohmann::json j;
    j["eigenvalues"] = spectrum.eigenvalues;
    j["solver_tol"] = spectrum.solver_tol;
    if (spectrum.grid.has_value()) {
        const BoxGrid& g = *spectrum.grid;
        j["grid"] = {{"d", g.d},
                     {"n", g.n},
                     {"side", g.side},
                     {"bc", g.bc == Boundary::Neumann ? "neumann" : "dirichlet"}};
    } else {
        j["grid"] = {{"d", spectrum.exact_d},
                     {"volume", spectrum.exact_volume},
                     {"bc", spectrum.exact_bc == Boundary::Neumann ? "neumann" : "dirichlet"},
                     {"exact", true}};
    }
    return j.dump(2);
}

void save_spectrum(const Spectrum& spectrum, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open spectrum file for writing: " + path);
    out << spectrum_to_json(spectrum) << "\n";
}

} // namespace ineq
