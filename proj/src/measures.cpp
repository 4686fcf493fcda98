#include "qent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qent/errors.hpp"

namespace qent {

namespace {

// Elementary symmetric polynomials e_1..e_d of the given values.
std::vector<double> elementary_symmetric(std::span<const double> x) {
    // coeff[j] holds e_j of the prefix processed so far; coeff[0] = 1.
    std::vector<double> coeff(x.size() + 1, 0.0);
    coeff[0] = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j >= 1; --j) coeff[j] += x[i] * coeff[j - 1];
    return {coeff.begin() + 1, coeff.end()};
}

// sum_{i<j} k_i^2 k_j^2.
double pair_sum_of_squares(const SchmidtForm& k) {
    std::vector<double> sq(k.d());
    for (std::size_t i = 0; i < k.d(); ++i) sq[i] = k[i] * k[i];
    return k.d() < 2 ? 0.0 : elementary_symmetric(sq)[1];
}

double pair_sum(const SchmidtForm& k) { return k.d() < 2 ? 0.0 : elementary_symmetric(k.k())[1]; }

void require_entangleable(std::size_t d, const char* where) {
    if (d < 2) throw UndefinedMeasureError(std::string(where) + ": undefined for d = 1");
}

}  // namespace

double concurrence_pure(const PureState& psi) {
    const double purity = reduced_density(psi, Subsystem::A).purity();
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

double concurrence_schmidt(const SchmidtForm& k) { return std::sqrt(4.0 * pair_sum_of_squares(k)); }

double concurrence_spin_flip_2q(const PureState& psi) {
    if (psi.dims() != BipartiteDims(2, 2)) throw DimensionError("concurrence_spin_flip_2q: state must be 2x2");
    const ComplexMatrix sy{{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}};
    const ComplexMatrix flip = kron(sy, sy);
    const auto a = psi.amplitudes();
    Complex value = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) value += std::conj(a[r]) * flip(r, c) * std::conj(a[c]);
    return std::abs(value);
}

double negativity(const DensityMatrix& rho) {
    const std::size_t d = rho.dims().d();
    require_entangleable(d, "negativity");
    return (trace_norm(partial_transpose(rho)) - 1.0) / static_cast<double>(d - 1);
}

double negativity_schmidt(const SchmidtForm& k) {
    require_entangleable(k.d(), "negativity_schmidt");
    return 2.0 / static_cast<double>(k.d() - 1) * pair_sum(k);
}

ComplexMatrix build_shift_operator(std::size_t d) {
    if (d < 2) throw DimensionError("build_shift_operator: d must be at least 2");
    ComplexMatrix x(d, d);
    for (std::size_t i = 0; i < d; ++i) x((i + 1) % d, i) = 1.0;
    return x;
}

double x_shift_expectation(const SchmidtForm& k, std::size_t power) {
    const std::size_t d = k.d();
    if (power < 1 || power >= d)
        throw ArgumentError("x_shift_expectation: power must be in [1, " + std::to_string(d - 1) + "]");
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += k[i] * k[(i + power) % d];
    return s;
}

double negativity_operator(const SchmidtForm& k) {
    require_entangleable(k.d(), "negativity_operator");
    // A single shift only pairs cyclic neighbours; summing every power visits
    // each unordered pair twice.
    double s = 0.0;
    for (std::size_t p = 1; p < k.d(); ++p) s += x_shift_expectation(k, p);
    return s / static_cast<double>(k.d() - 1);
}

InvariantSet symmetric_invariants(const SchmidtForm& k) { return {k.d(), elementary_symmetric(k.k())}; }

double chen_gap(const SchmidtForm& k) {
    const double d = static_cast<double>(k.d());
    const double c2 = 4.0 * pair_sum_of_squares(k);
    const double n = negativity_schmidt(k);
    return c2 - (d - 1.0) / (2.0 * d) * n * n;
}

double qutrit_residual(const SchmidtForm& k) {
    if (k.d() != 3) throw DimensionError("qutrit_residual: requires d = 3");
    const double n = negativity_schmidt(k);
    const double c2 = 4.0 * pair_sum_of_squares(k);
    return n * n - c2 / 4.0 - 2.0 * k[0] * k[1] * k[2] * std::sqrt(1.0 + 2.0 * n);
}

QuadritResiduals quadrit_residuals(const SchmidtForm& k) {
    if (k.d() != 4) throw DimensionError("quadrit_residuals: requires d = 4");
    const InvariantSet s = symmetric_invariants(k);
    const double c2 = 4.0 * pair_sum_of_squares(k);
    const double base = c2 - 4.0 * s(2) * s(2);
    const double mixed = s(4) - s(1) * s(3);
    return {base - 8.0 * mixed, base - 2.0 * mixed};
}

PeresResult peres_classify(const DensityMatrix& rho) {
    const auto values = hermitian_eigenvalues(partial_transpose(rho));
    PeresResult out;
    for (auto it = values.rbegin(); it != values.rend(); ++it)
        if (*it < kNptThreshold) out.negative_eigenvalues.push_back(*it);
    out.cls = out.negative_eigenvalues.empty() ? PeresClass::PPT : PeresClass::NPT;
    return out;
}

MeasureReport measure_report(const DensityMatrix& rho) {
    MeasureReport r;
    r.dims = rho.dims();
    r.negativity_trace_norm = negativity(rho);
    r.peres = peres_classify(rho);
    return r;
}

MeasureReport measure_report(const PureState& psi) {
    MeasureReport r = measure_report(DensityMatrix::projector(psi));
    const SchmidtForm k = schmidt_decompose(psi);
    r.schmidt = k;
    r.concurrence = concurrence_pure(psi);
    r.negativity_rescaled = negativity_schmidt(k);
    for (std::size_t p = 1; p < k.d(); ++p) r.x_expectations.push_back(x_shift_expectation(k, p));
    r.invariants = symmetric_invariants(k);
    r.chen_gap = chen_gap(k);
    if (k.d() == 3) r.qutrit_residual = qutrit_residual(k);
    if (k.d() == 4) {
        const auto q = quadrit_residuals(k);
        r.quadrit_residual_corrected = q.corrected;
        r.quadrit_residual_printed = q.printed;
    }
    return r;
}

}  // namespace qent
