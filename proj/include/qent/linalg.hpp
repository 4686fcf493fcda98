#pragma once

// Dense complex linear algebra for the small matrices (dimension up to ~64)
// that bipartite qudit states need. Everything here is a pure function of its
// inputs.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qent {

using Complex = std::complex<double>;

// Default Hermiticity tolerance for eigen-based operations.
inline constexpr double kHermitianTol = 1e-10;

// Row-major dense complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    // Column vector (n x 1).
    static ComplexMatrix column(std::span<const Complex> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
    bool square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> data() const noexcept { return data_; }
    std::span<Complex> data() noexcept { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    Complex trace() const;
    double frobenius_norm() const;
    // Largest absolute entry.
    double max_abs() const;
    bool all_finite() const;

    // Column c as a vector.
    std::vector<Complex> column_vector(std::size_t c) const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(ComplexMatrix lhs, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
// Max-norm of A - A^dagger.
double hermiticity_defect(const ComplexMatrix& a);
// Max-norm of Q^dagger Q - I.
double orthonormality_defect(const ComplexMatrix& q);

struct EigenSystem {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // column j pairs with values[j]
};

// Cyclic Jacobi eigensolver. Throws DimensionError for non-square input,
// SymmetryError when max|H - H^dagger| > tol, ConvergenceError after 100
// sweeps without reaching off(H) < 1e-12 * |H|_F.
EigenSystem hermitian_eigensystem(const ComplexMatrix& h, double tol = kHermitianTol);

// Eigenvalues only, descending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h, double tol = kHermitianTol);

struct Svd {
    ComplexMatrix u;            // rows x k, orthonormal columns
    std::vector<double> sigma;  // k = min(rows, cols), descending
    ComplexMatrix v;            // cols x k, orthonormal columns
};

// Thin SVD, A = U diag(sigma) V^dagger. Built on the Hermitian eigensystem of
// the smaller Gram matrix; singular values are recovered as |A v_j| so small
// ones keep absolute accuracy. Values below 1e-12 (relative) are clamped to 0.
Svd singular_value_decomposition(const ComplexMatrix& a);

// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm(const ComplexMatrix& h, double tol = kHermitianTol);

// Orthonormalizes the columns of `a` in place order (modified Gram-Schmidt,
// two passes). Columns that collapse are replaced by completing the basis with
// canonical vectors, so the result always has orthonormal columns.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& a);

}  // namespace qent
