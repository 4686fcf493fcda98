#include "qent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qent/errors.hpp"

namespace qent {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTarget = 1e-12;
constexpr double kSingularClamp = 1e-12;

void require_finite(const ComplexMatrix& a, const char* where) {
    if (!a.all_finite()) throw ArgumentError(std::string(where) + ": non-finite matrix entry");
}

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

// Sorts eigenpairs by value, descending, permuting the vector columns along.
EigenSystem sorted_descending(std::vector<double> values, const ComplexMatrix& vectors) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    EigenSystem out{std::vector<double>(n), ComplexMatrix(vectors.rows(), n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = values[order[j]];
        for (std::size_t r = 0; r < vectors.rows(); ++r) out.vectors(r, j) = vectors(r, order[j]);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionError("ComplexMatrix: entry count " + std::to_string(data_.size()) +
                             " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionError("ComplexMatrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
    return ComplexMatrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out = *this;
    for (auto& z : out.data_) z = std::conj(z);
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

std::vector<Complex> ComplexMatrix::column_vector(std::size_t c) const {
    std::vector<Complex> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("ComplexMatrix: shape mismatch in +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("ComplexMatrix: shape mismatch in -");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(ComplexMatrix lhs, Complex s) { return lhs *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix rhs) { return rhs *= s; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) throw DimensionError("ComplexMatrix: shape mismatch in *");
    ComplexMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t r = 0; r < lhs.rows(); ++r)
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const Complex a = lhs(r, k);
            if (a == Complex{}) continue;
            for (std::size_t c = 0; c < rhs.cols(); ++c) out(r, c) += a * rhs(k, c);
        }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

double hermiticity_defect(const ComplexMatrix& a) {
    if (!a.square()) throw DimensionError("hermiticity_defect: matrix is not square");
    double m = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = r; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - std::conj(a(c, r))));
    return m;
}

double orthonormality_defect(const ComplexMatrix& q) {
    ComplexMatrix g = q.adjoint() * q;
    g -= ComplexMatrix::identity(g.rows());
    return g.max_abs();
}

// ---------------------------------------------------------------------------
// Eigensystem

EigenSystem hermitian_eigensystem(const ComplexMatrix& h, double tol) {
    if (!h.square() || h.empty()) throw DimensionError("hermitian_eigensystem: matrix must be square and non-empty");
    require_finite(h, "hermitian_eigensystem");
    if (hermiticity_defect(h) > tol) throw SymmetryError("hermitian_eigensystem: matrix is not Hermitian within tolerance");

    const std::size_t n = h.rows();
    // Work on the exactly Hermitian part.
    ComplexMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = h(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) {
            a(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));
            a(c, r) = std::conj(a(r, c));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double target = kOffDiagonalTarget * a.frobenius_norm();

    bool converged = false;
    for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= target) {
            converged = true;
            break;
        }
        if (sweep == kMaxSweeps) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq_abs = std::abs(a(p, q));
                if (apq_abs == 0.0) continue;
                const Complex phase = a(p, q) / apq_abs;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * apq_abs);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // W = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on the (p, q) plane.
                const Complex w_pp = c;
                const Complex w_pq = s;
                const Complex w_qp = -s * std::conj(phase);
                const Complex w_qq = c * std::conj(phase);
                // A <- A W
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * w_pp + akq * w_qp;
                    a(k, q) = akp * w_pq + akq * w_qq;
                }
                // A <- W^dagger A
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(w_pp) * apk + std::conj(w_qp) * aqk;
                    a(q, k) = std::conj(w_pq) * apk + std::conj(w_qq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * w_pp + vkq * w_qp;
                    v(k, q) = vkp * w_pq + vkq * w_qq;
                }
            }
        }
    }
    if (!converged) throw ConvergenceError("hermitian_eigensystem: no convergence within 100 sweeps");

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
    return sorted_descending(std::move(values), v);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h, double tol) {
    return hermitian_eigensystem(h, tol).values;
}

// ---------------------------------------------------------------------------
// SVD

ComplexMatrix orthonormalize_columns(const ComplexMatrix& a) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    if (cols > rows) throw DimensionError("orthonormalize_columns: more columns than rows");
    ComplexMatrix q = a;
    std::size_t next_canonical = 0;

    auto project_out = [&](std::size_t j) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t i = 0; i < j; ++i) {
                Complex dot = 0.0;
                for (std::size_t r = 0; r < rows; ++r) dot += std::conj(q(r, i)) * q(r, j);
                for (std::size_t r = 0; r < rows; ++r) q(r, j) -= dot * q(r, i);
            }
    };
    auto column_norm = [&](std::size_t j) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows; ++r) s += std::norm(q(r, j));
        return std::sqrt(s);
    };

    for (std::size_t j = 0; j < cols; ++j) {
        const double before = column_norm(j);
        project_out(j);
        double nrm = column_norm(j);
        while (!(nrm > 1e-10 * std::max(before, 1.0))) {
            if (next_canonical >= rows) throw ArgumentError("orthonormalize_columns: cannot complete basis");
            for (std::size_t r = 0; r < rows; ++r) q(r, j) = (r == next_canonical) ? 1.0 : 0.0;
            ++next_canonical;
            project_out(j);
            nrm = column_norm(j);
        }
        for (std::size_t r = 0; r < rows; ++r) q(r, j) /= nrm;
    }
    return q;
}

Svd singular_value_decomposition(const ComplexMatrix& a) {
    if (a.empty()) throw DimensionError("singular_value_decomposition: empty matrix");
    require_finite(a, "singular_value_decomposition");

    if (a.rows() < a.cols()) {
        Svd t = singular_value_decomposition(a.adjoint());
        return Svd{std::move(t.v), std::move(t.sigma), std::move(t.u)};
    }

    const std::size_t k = a.cols();
    const ComplexMatrix gram = a.adjoint() * a;
    const EigenSystem es = hermitian_eigensystem(gram, std::max(kHermitianTol, 1e-14 * gram.max_abs()));
    const ComplexMatrix av = a * es.vectors;

    std::vector<double> sigma(k);
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::size_t r = 0; r < a.rows(); ++r) s += std::norm(av(r, j));
        sigma[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    const double scale = std::max(sigma[order[0]], 1.0);
    Svd out{ComplexMatrix(a.rows(), k), std::vector<double>(k), ComplexMatrix(k, k)};
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = order[j];
        double s = sigma[src];
        if (s < kSingularClamp * scale) s = 0.0;
        out.sigma[j] = s;
        for (std::size_t r = 0; r < k; ++r) out.v(r, j) = es.vectors(r, src);
        for (std::size_t r = 0; r < a.rows(); ++r) out.u(r, j) = s > 0.0 ? av(r, src) / s : Complex{};
    }
    out.u = orthonormalize_columns(out.u);
    return out;
}

double trace_norm(const ComplexMatrix& h, double tol) {
    const auto values = hermitian_eigenvalues(h, tol);
    double s = 0.0;
    for (double x : values) s += std::abs(x);
    return s;
}

}  // namespace qent
