#include "qent/states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "qent/errors.hpp"
#include "qent/random.hpp"

namespace qent {

// ---------------------------------------------------------------------------
// Types

BipartiteDims::BipartiteDims(std::size_t m, std::size_t n) : m_(m), n_(n) {
    if (m == 0 || n == 0) throw DimensionError("BipartiteDims: subsystem dimensions must be positive");
}

PureState::PureState(BipartiteDims dims, std::vector<Complex> amplitudes, double tol)
    : dims_(dims), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != dims_.total())
        throw DimensionError("PureState: expected " + std::to_string(dims_.total()) + " amplitudes, got " +
                             std::to_string(amplitudes_.size()));
    double norm2 = 0.0;
    for (const auto& a : amplitudes_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw InvariantError("PureState: non-finite amplitude");
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > tol)
        throw InvariantError("PureState: squared norm " + std::to_string(norm2) + " is not 1");
}

PureState PureState::normalized(BipartiteDims dims, std::vector<Complex> amplitudes) {
    double norm2 = 0.0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw InvariantError("PureState: cannot normalize zero vector");
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amplitudes) a *= inv;
    return PureState(dims, std::move(amplitudes));
}

DensityMatrix::DensityMatrix(BipartiteDims dims, ComplexMatrix matrix) : dims_(dims), matrix_(std::move(matrix)) {
    if (matrix_.rows() != dims_.total() || matrix_.cols() != dims_.total())
        throw DimensionError("DensityMatrix: matrix must be " + std::to_string(dims_.total()) + "x" +
                             std::to_string(dims_.total()));
    if (!matrix_.all_finite()) throw InvariantError("DensityMatrix: non-finite entry");
    if (hermiticity_defect(matrix_) > kHermitianTol) throw InvariantError("DensityMatrix: not Hermitian");
    const Complex tr = matrix_.trace();
    if (std::abs(tr - 1.0) > kTraceTol) throw InvariantError("DensityMatrix: trace is not 1");

    EigenSystem es = hermitian_eigensystem(matrix_);
    const double lowest = es.values.back();
    if (lowest < -kPsdTol) throw InvariantError("DensityMatrix: negative eigenvalue " + std::to_string(lowest));
    if (lowest < 0.0) {
        double total = 0.0;
        for (auto& v : es.values) total += (v = std::max(v, 0.0));
        const std::size_t n = matrix_.rows();
        ComplexMatrix rebuilt(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            const double w = es.values[j] / total;
            if (w == 0.0) continue;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    rebuilt(r, c) += w * es.vectors(r, j) * std::conj(es.vectors(c, j));
        }
        matrix_ = std::move(rebuilt);
    }
}

DensityMatrix DensityMatrix::projector(const PureState& psi) {
    const auto amps = psi.amplitudes();
    const std::size_t n = amps.size();
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = amps[r] * std::conj(amps[c]);
    return DensityMatrix(psi.dims(), std::move(m));
}

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum |rho_rc|^2 for Hermitian rho.
    const double f = matrix_.frobenius_norm();
    return f * f;
}

SchmidtForm::SchmidtForm(std::vector<double> k, double tol) : k_(std::move(k)) {
    if (k_.empty()) throw DimensionError("SchmidtForm: need at least one coefficient");
    double norm2 = 0.0;
    for (double x : k_) {
        if (!std::isfinite(x) || x < 0.0) throw InvariantError("SchmidtForm: coefficients must be finite and non-negative");
        norm2 += x * x;
    }
    if (std::abs(norm2 - 1.0) > tol) throw InvariantError("SchmidtForm: sum of squares is not 1");
    std::sort(k_.begin(), k_.end(), std::greater<>());
}

SchmidtForm SchmidtForm::uniform(std::size_t d) {
    if (d == 0) throw DimensionError("SchmidtForm::uniform: d must be positive");
    return SchmidtForm(std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

// ---------------------------------------------------------------------------
// Operations

ComplexMatrix coefficient_matrix(const PureState& psi) {
    const auto& dims = psi.dims();
    const auto amps = psi.amplitudes();
    return ComplexMatrix(dims.m(), dims.n(), std::vector<Complex>(amps.begin(), amps.end()));
}

SchmidtForm schmidt_decompose(const PureState& psi) {
    const Svd svd = singular_value_decomposition(coefficient_matrix(psi));
    // sigma already has length min(m, n) = d. Renormalize away the O(eps)
    // drift so the SchmidtForm invariant holds exactly.
    std::vector<double> k = svd.sigma;
    double norm2 = 0.0;
    for (double x : k) norm2 += x * x;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : k) x *= inv;
    return SchmidtForm(std::move(k), 1e-9);
}

PureState from_schmidt(const SchmidtForm& k, BipartiteDims dims) {
    if (k.d() > dims.d())
        throw DimensionError("from_schmidt: " + std::to_string(k.d()) + " coefficients exceed d = " +
                             std::to_string(dims.d()));
    std::vector<Complex> amps(dims.total());
    for (std::size_t i = 0; i < k.d(); ++i) amps[i * dims.n() + i] = k[i];
    return PureState(dims, std::move(amps));
}

DensityMatrix reduced_density(const PureState& psi, Subsystem which) {
    const ComplexMatrix m = coefficient_matrix(psi);
    if (which == Subsystem::A) return DensityMatrix(BipartiteDims(m.rows(), 1), m * m.adjoint());
    // rho_B = (M^dagger M)^T = M^T conj(M).
    return DensityMatrix(BipartiteDims(m.cols(), 1), m.transpose() * m.conjugate());
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, BipartiteDims dims) {
    const std::size_t m = dims.m();
    const std::size_t n = dims.n();
    if (rho.rows() != m * n || rho.cols() != m * n) throw DimensionError("partial_transpose: shape mismatch");
    ComplexMatrix out(m * n, m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < n; ++l) out(i * n + j, k * n + l) = rho(k * n + j, i * n + l);
    return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho) { return partial_transpose(rho.matrix(), rho.dims()); }

PureState apply_local(const PureState& psi, const ComplexMatrix& u, const ComplexMatrix& v) {
    const auto& dims = psi.dims();
    if (u.rows() != dims.m() || u.cols() != dims.m() || v.rows() != dims.n() || v.cols() != dims.n())
        throw DimensionError("apply_local: operator shapes do not match subsystem dimensions");
    // (U (x) V) psi corresponds to U M V^T on the coefficient matrix.
    const ComplexMatrix out = u * coefficient_matrix(psi) * v.transpose();
    const auto data = out.data();
    return PureState::normalized(dims, std::vector<Complex>(data.begin(), data.end()));
}

// ---------------------------------------------------------------------------
// Sampling

ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw DimensionError("random_unitary: n must be positive");
    Rng rng = make_rng(seed);
    ComplexMatrix g(n, n);
    for (auto& z : g.data()) z = complex_normal(rng);
    // Gram-Schmidt yields Q with positive R diagonal, which is Haar-distributed.
    return orthonormalize_columns(g);
}

SchmidtForm random_schmidt_vector(std::size_t d, std::uint64_t seed) {
    if (d == 0) throw DimensionError("random_schmidt_vector: d must be positive");
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> g(d);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto& x : g) {
            x = std::abs(normal(rng));
            norm2 += x * x;
        }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : g) x *= inv;
    return SchmidtForm(std::move(g), 1e-12);
}

PureState random_pure_state(BipartiteDims dims, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::vector<Complex> amps(dims.total());
    for (auto& a : amps) a = complex_normal(rng);
    return PureState::normalized(dims, std::move(amps));
}

DensityMatrix random_mixed_state(BipartiteDims dims, std::size_t rank, std::uint64_t seed) {
    const std::size_t n = dims.total();
    if (rank < 1 || rank > n)
        throw DimensionError("random_mixed_state: rank must be in [1, " + std::to_string(n) + "]");
    Rng rng = make_rng(seed);
    ComplexMatrix g(n, rank);
    for (auto& z : g.data()) z = complex_normal(rng);
    ComplexMatrix rho = g * g.adjoint();
    const double tr = rho.trace().real();
    rho *= 1.0 / tr;
    // Exact Hermiticity; the product above is Hermitian only to rounding.
    for (std::size_t r = 0; r < n; ++r) {
        rho(r, r) = rho(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) rho(c, r) = std::conj(rho(r, c));
    }
    return DensityMatrix(dims, std::move(rho));
}

}  // namespace qent
