#pragma once

// Bipartite m x n states. Basis order is |i, j> with the A index major, so
// amplitude (i, j) sits at position i * n + j throughout the library.

#include <cstdint>
#include <span>
#include <vector>

#include "qent/linalg.hpp"

namespace qent {

inline constexpr double kNormTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
// Eigenvalues of an input density matrix may dip this far below zero; they
// are clamped and the matrix renormalized.
inline constexpr double kPsdTol = 1e-9;

class BipartiteDims {
public:
    BipartiteDims(std::size_t m, std::size_t n);

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t d() const noexcept { return m_ < n_ ? m_ : n_; }
    std::size_t total() const noexcept { return m_ * n_; }

    friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;

private:
    std::size_t m_;
    std::size_t n_;
};

class PureState {
public:
    // Throws InvariantError unless the amplitudes have unit norm within tol.
    PureState(BipartiteDims dims, std::vector<Complex> amplitudes, double tol = kNormTol);
    // Normalizes first; throws InvariantError for the zero vector.
    static PureState normalized(BipartiteDims dims, std::vector<Complex> amplitudes);

    const BipartiteDims& dims() const noexcept { return dims_; }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    Complex amplitude(std::size_t i, std::size_t j) const { return amplitudes_[i * dims_.n() + j]; }

private:
    BipartiteDims dims_;
    std::vector<Complex> amplitudes_;
};

class DensityMatrix {
public:
    // Validates Hermiticity and unit trace (1e-10) and eigenvalues >= -1e-9.
    // Small negative eigenvalues are clamped to zero and the matrix rebuilt
    // with unit trace.
    DensityMatrix(BipartiteDims dims, ComplexMatrix matrix);

    static DensityMatrix projector(const PureState& psi);

    const BipartiteDims& dims() const noexcept { return dims_; }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    double purity() const;

private:
    BipartiteDims dims_;
    ComplexMatrix matrix_;
};

// Non-negative coefficients in descending order with sum k_i^2 = 1.
class SchmidtForm {
public:
    // Sorts into descending order. Throws InvariantError for negative or
    // non-finite entries or when |sum k^2 - 1| > tol; DimensionError if empty.
    explicit SchmidtForm(std::vector<double> k, double tol = kNormTol);

    std::size_t d() const noexcept { return k_.size(); }
    std::span<const double> k() const noexcept { return k_; }
    double operator[](std::size_t i) const { return k_[i]; }

    // All k_i equal to 1/sqrt(d).
    static SchmidtForm uniform(std::size_t d);

private:
    std::vector<double> k_;
};

enum class Subsystem { A, B };

// m x n matrix of amplitudes, entry (i, j) = <i, j|psi>.
ComplexMatrix coefficient_matrix(const PureState& psi);

// Singular values of the coefficient matrix, length d.
SchmidtForm schmidt_decompose(const PureState& psi);

// sum_i k_i |i, i>. Throws DimensionError when k.d() > min(m, n).
PureState from_schmidt(const SchmidtForm& k, BipartiteDims dims);

// Reduced state on one side; returned dims are (m, 1) for A and (n, 1) for B.
DensityMatrix reduced_density(const PureState& psi, Subsystem which);

// <i,j| rho^{T_A} |k,l> = <k,j| rho |i,l>.
ComplexMatrix partial_transpose(const DensityMatrix& rho);
ComplexMatrix partial_transpose(const ComplexMatrix& rho, BipartiteDims dims);

// (U (x) V) |psi>.
PureState apply_local(const PureState& psi, const ComplexMatrix& u, const ComplexMatrix& v);

// k_i = |g_i| / |g| for standard normal g, sorted descending.
SchmidtForm random_schmidt_vector(std::size_t d, std::uint64_t seed);
// Haar-uniform unit vector in C^{m n}.
PureState random_pure_state(BipartiteDims dims, std::uint64_t seed);
// G G^dagger / Tr(G G^dagger) with G an (mn) x rank complex Ginibre matrix.
DensityMatrix random_mixed_state(BipartiteDims dims, std::size_t rank, std::uint64_t seed);

}  // namespace qent
