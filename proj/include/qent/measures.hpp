#pragma once

// Entanglement measures of bipartite qudit states and residual evaluators for
// the identities and inequalities that relate them.
//
// Conventions: C is the purity concurrence sqrt(2 (1 - Tr rho_A^2)), whose
// maximum is sqrt(2 (1 - 1/d)). N is the negativity rescaled to a maximum of
// one, (|rho^{T_A}|_1 - 1) / (d - 1), which for a pure state equals
// 2/(d - 1) * sum_{i<j} k_i k_j.

#include <optional>
#include <variant>
#include <vector>

#include "qent/linalg.hpp"
#include "qent/states.hpp"

namespace qent {

// NPT decision threshold on the lowest partial-transpose eigenvalue.
inline constexpr double kNptThreshold = -1e-9;

// e[j-1] is the degree-j elementary symmetric polynomial of k_1..k_d; for
// d = 4 these are s1..s4.
struct InvariantSet {
    std::size_t d = 0;
    std::vector<double> e;

    double operator()(std::size_t degree) const { return degree == 0 ? 1.0 : e.at(degree - 1); }
};

enum class PeresClass { PPT, NPT };

struct PeresResult {
    PeresClass cls = PeresClass::PPT;
    std::vector<double> negative_eigenvalues;  // ascending
};

struct QuadritResiduals {
    double corrected = 0.0;       // C^2 - 4 s2^2 - 8 (s4 - s1 s3)
    double printed = 0.0;   // C^2 - 4 s2^2 - 2 (s4 - s1 s3)
};

double concurrence_pure(const PureState& psi);
double concurrence_schmidt(const SchmidtForm& k);
// |<psi| sigma_y (x) sigma_y |psi*>|; 2 x 2 only.
double concurrence_spin_flip_2q(const PureState& psi);

// Trace-norm negativity. Throws UndefinedMeasureError when d = 1.
double negativity(const DensityMatrix& rho);
double negativity_schmidt(const SchmidtForm& k);

// Cyclic shift X|i> = |i + 1 mod d>.
ComplexMatrix build_shift_operator(std::size_t d);
// <psi|(X (x) X)^power|psi> for psi = sum k_i |i, i>.
double x_shift_expectation(const SchmidtForm& k, std::size_t power);
// Negativity as the averaged expectation of X^1 .. X^{d-1}.
double negativity_operator(const SchmidtForm& k);

// Stable product-expansion recurrence over prod (1 + k_i t).
InvariantSet symmetric_invariants(const SchmidtForm& k);

// C^2 - (d - 1)/(2d) N^2; non-negative for every Schmidt vector.
double chen_gap(const SchmidtForm& k);
// N^2 - C^2/4 - 2 k1 k2 k3 sqrt(1 + 2N); d = 3 only.
double qutrit_residual(const SchmidtForm& k);
QuadritResiduals quadrit_residuals(const SchmidtForm& k);

PeresResult peres_classify(const DensityMatrix& rho);

struct MeasureReport {
    BipartiteDims dims{1, 1};
    std::optional<SchmidtForm> schmidt;
    std::optional<double> concurrence;
    double negativity_trace_norm = 0.0;
    std::optional<double> negativity_rescaled;
    std::vector<double> x_expectations;
    std::optional<InvariantSet> invariants;
    std::optional<double> chen_gap;
    std::optional<double> qutrit_residual;
    std::optional<double> quadrit_residual_corrected;
    std::optional<double> quadrit_residual_printed;
    PeresResult peres;
};

// Pure inputs fill every field; mixed inputs only the negativity and Peres
// fields.
MeasureReport measure_report(const PureState& psi);
MeasureReport measure_report(const DensityMatrix& rho);

}  // namespace qent
