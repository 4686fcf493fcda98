#include <doctest.h>

#include <algorithm>

#include "qent/errors.hpp"
#include "qent/linalg.hpp"
#include "qent/states.hpp"
#include "test_util.hpp"

using namespace qent;
using qent::test::max_diff;

TEST_CASE("eigensystem of small fixed matrices") {
    SUBCASE("identity") {
        const auto es = hermitian_eigensystem(ComplexMatrix::identity(2));
        CHECK(es.values[0] == doctest::Approx(1.0));
        CHECK(es.values[1] == doctest::Approx(1.0));
    }
    SUBCASE("diagonal") {
        const auto values = hermitian_eigenvalues(ComplexMatrix{{3.0, 0.0}, {0.0, -1.0}});
        CHECK(values == std::vector<double>{3.0, -1.0});
    }
    SUBCASE("pauli x") {
        const auto values = hermitian_eigenvalues(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}});
        CHECK(values[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(values[1] == doctest::Approx(-1.0).epsilon(1e-14));
    }
    SUBCASE("complex off-diagonal") {
        // sigma_y
        const auto es = hermitian_eigensystem(ComplexMatrix{{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}});
        CHECK(es.values[0] == doctest::Approx(1.0));
        CHECK(es.values[1] == doctest::Approx(-1.0));
    }
}

TEST_CASE("eigensystem errors") {
    CHECK_THROWS_AS(hermitian_eigensystem(ComplexMatrix(2, 3)), DimensionError);
    CHECK_THROWS_AS(hermitian_eigensystem(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), SymmetryError);
    ComplexMatrix bad = ComplexMatrix::identity(2);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(hermitian_eigensystem(bad), ArgumentError);
}

TEST_CASE("random Hermitian: reconstruction, orthonormality, ordering") {
    for (std::size_t n = 1; n <= 16; ++n) {
        for (std::uint64_t s = 0; s < 4; ++s) {
            const ComplexMatrix h = test::random_hermitian(n, 100 * n + s);
            const auto es = hermitian_eigensystem(h);
            CHECK(std::is_sorted(es.values.rbegin(), es.values.rend()));
            ComplexMatrix lambda(n, n);
            for (std::size_t i = 0; i < n; ++i) lambda(i, i) = es.values[i];
            CHECK(max_diff(es.vectors * lambda * es.vectors.adjoint(), h) <= 1e-9);
            CHECK(orthonormality_defect(es.vectors) <= 1e-9);
            // H v = lambda v column by column.
            const ComplexMatrix hv = h * es.vectors;
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t r = 0; r < n; ++r)
                    CHECK(std::abs(hv(r, j) - es.values[j] * es.vectors(r, j)) <= 1e-9);
        }
    }
}

TEST_CASE("spectrum is unitarily invariant") {
    for (std::size_t n = 2; n <= 12; n += 2) {
        const ComplexMatrix h = test::random_hermitian(n, 7 * n);
        const ComplexMatrix p = random_unitary(n, 13 * n);
        CHECK(orthonormality_defect(p) <= 1e-12);
        const auto a = hermitian_eigenvalues(h);
        const auto b = hermitian_eigenvalues(p * h * p.adjoint(), 1e-9);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-9);
    }
}

TEST_CASE("svd fixed cases") {
    SUBCASE("identity") {
        const auto svd = singular_value_decomposition(ComplexMatrix::identity(2));
        CHECK(svd.sigma[0] == doctest::Approx(1.0));
        CHECK(svd.sigma[1] == doctest::Approx(1.0));
    }
    SUBCASE("single entry") {
        const ComplexMatrix a{{0.0, 2.0}, {0.0, 0.0}};
        const auto svd = singular_value_decomposition(a);
        CHECK(svd.sigma[0] == doctest::Approx(2.0));
        CHECK(svd.sigma[1] == 0.0);
        CHECK(orthonormality_defect(svd.u) <= 1e-12);
        CHECK(orthonormality_defect(svd.v) <= 1e-12);
    }
    SUBCASE("diagonal") {
        const auto svd = singular_value_decomposition(ComplexMatrix{{0.8, 0.0}, {0.0, 0.6}});
        CHECK(svd.sigma[0] == doctest::Approx(0.8).epsilon(1e-15));
        CHECK(svd.sigma[1] == doctest::Approx(0.6).epsilon(1e-15));
    }
    SUBCASE("empty") { CHECK_THROWS_AS(singular_value_decomposition(ComplexMatrix(0, 3)), DimensionError); }
}

TEST_CASE("svd reconstruction over random rectangular matrices") {
    for (std::size_t rows = 1; rows <= 16; rows += 3)
        for (std::size_t cols = 1; cols <= 16; cols += 4) {
            const ComplexMatrix a = test::random_matrix(rows, cols, rows * 31 + cols);
            const auto svd = singular_value_decomposition(a);
            const std::size_t k = std::min(rows, cols);
            REQUIRE(svd.sigma.size() == k);
            CHECK(std::is_sorted(svd.sigma.rbegin(), svd.sigma.rend()));
            CHECK(svd.sigma.back() >= 0.0);
            std::vector<double> s(svd.sigma);
            const ComplexMatrix rebuilt = svd.u * ComplexMatrix::diagonal(s) * svd.v.adjoint();
            CHECK(max_diff(rebuilt, a) <= 1e-10);
            CHECK(orthonormality_defect(svd.u) <= 1e-10);
            CHECK(orthonormality_defect(svd.v) <= 1e-10);
        }
}

TEST_CASE("svd keeps absolute accuracy for rank-deficient input") {
    // Outer product of two random vectors: exactly rank one.
    const ComplexMatrix x = test::random_matrix(4, 1, 1);
    const ComplexMatrix y = test::random_matrix(1, 5, 2);
    const auto svd = singular_value_decomposition(x * y);
    for (std::size_t i = 1; i < svd.sigma.size(); ++i) CHECK(svd.sigma[i] <= 1e-14);
}

TEST_CASE("trace norm") {
    CHECK(trace_norm(ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}) == doctest::Approx(2.0));

    SUBCASE("density matrices have unit trace norm") {
        const auto rho = random_mixed_state(BipartiteDims(2, 3), 4, 5);
        CHECK(trace_norm(rho.matrix()) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("partial transpose of the Bell projector") {
        const ComplexMatrix pt = partial_transpose(test::bell_projector(), BipartiteDims(2, 2));
        // Oracle: |00>, |11> and the symmetric state are +1/2 eigenvectors,
        // the singlet is the -1/2 eigenvector.
        const double r2 = 1.0 / std::sqrt(2.0);
        const std::vector<std::pair<std::vector<Complex>, double>> pairs{
            {{1, 0, 0, 0}, 0.5}, {{0, 0, 0, 1}, 0.5}, {{0, r2, r2, 0}, 0.5}, {{0, r2, -r2, 0}, -0.5}};
        for (const auto& [v, lambda] : pairs) {
            const ComplexMatrix out = pt * ComplexMatrix::column(v);
            for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(out(i, 0) - lambda * v[i]) <= 1e-15);
        }
        CHECK(trace_norm(pt) == doctest::Approx(2.0).epsilon(1e-14));
    }

    SUBCASE("bounded below by |trace|, equal for PSD") {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const ComplexMatrix h = test::random_hermitian(5, s);
            CHECK(trace_norm(h) >= std::abs(h.trace().real()) - 1e-12);
            const ComplexMatrix psd = h * h;
            CHECK(trace_norm(psd, 1e-9) == doctest::Approx(psd.trace().real()).epsilon(1e-12));
        }
    }
}
