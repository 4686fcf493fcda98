#include "qent/roof.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qent/errors.hpp"
#include "qent/measures.hpp"
#include "qent/random.hpp"

namespace qent {

namespace {

using std::numbers::pi;

// p * M(w / |w|) for an unnormalized member vector w, smoothed at scale eps
// so that the gradient exists where members are separable (eps = 0 gives the
// exact value). Both measures are homogeneous of degree two in w.
//
// Concurrence: 2 sqrt(q(w)), q = sum of |2x2 minors|^2 of the coefficient
// matrix, which is e_2 of the spectrum of M M^dagger (Cauchy-Binet) and free
// of cancellation. Negativity: 2/(d-1) e_2(singular values of M); for d = 2
// it coincides with the concurrence expression.
class MemberCost {
public:
    MemberCost(BipartiteDims dims, RoofMeasure measure) : dims_(dims), measure_(measure) {}

    double value(std::span<const Complex> w, double eps = 0.0) const {
        if (uses_minors()) return 2.0 * (std::sqrt(minor_square_sum(w, {}) + eps * eps) - eps);
        return negativity_weight(w, eps, {});
    }

    // Returns the value and writes grad = 2 d(value)/d(conj w), so that
    // d(value) = Re <grad, dw>.
    double value_and_gradient(std::span<const Complex> w, double eps, std::span<Complex> grad) const {
        std::fill(grad.begin(), grad.end(), Complex{});
        if (uses_minors()) {
            const double q = minor_square_sum(w, grad);
            const double root = std::sqrt(q + eps * eps);
            // grad currently holds dq; h = 2 sqrt(q + eps^2) - 2 eps.
            const double scale = root > 0.0 ? 1.0 / root : 0.0;
            for (auto& g : grad) g *= scale;
            return 2.0 * (root - eps);
        }
        return negativity_weight(w, eps, grad);
    }

private:
    bool uses_minors() const { return measure_ == RoofMeasure::Concurrence || dims_.d() == 2; }

    // sum |m|^2 over 2x2 minors m; accumulates 2 d/d(conj w) into grad when
    // grad is non-empty.
    double minor_square_sum(std::span<const Complex> w, std::span<Complex> grad) const {
        const std::size_t m = dims_.m();
        const std::size_t n = dims_.n();
        const bool want = !grad.empty();
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = i + 1; k < m; ++k)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t l = j + 1; l < n; ++l) {
                        const std::size_t ij = i * n + j, kl = k * n + l, il = i * n + l, kj = k * n + j;
                        const Complex minor = w[ij] * w[kl] - w[il] * w[kj];
                        s += std::norm(minor);
                        if (want) {
                            grad[ij] += 2.0 * minor * std::conj(w[kl]);
                            grad[kl] += 2.0 * minor * std::conj(w[ij]);
                            grad[il] -= 2.0 * minor * std::conj(w[kj]);
                            grad[kj] -= 2.0 * minor * std::conj(w[il]);
                        }
                    }
        return s;
    }

    // (T^2 - |M|_F^2) / (d - 1) with T = sum_i (sqrt(lambda_i + eps^2) - eps)
    // over the spectrum of the small Gram matrix.
    double negativity_weight(std::span<const Complex> w, double eps, std::span<Complex> grad) const {
        const std::size_t m = dims_.m();
        const std::size_t n = dims_.n();
        const bool rows_small = m <= n;
        const std::size_t g = rows_small ? m : n;
        auto at = [&](std::size_t a, std::size_t x) -> Complex {
            // Entry of the g x (other) matrix whose Gram we take.
            return rows_small ? w[a * n + x] : std::conj(w[x * n + a]);
        };
        const std::size_t other = rows_small ? n : m;
        ComplexMatrix gram(g, g);
        for (std::size_t a = 0; a < g; ++a)
            for (std::size_t b = a; b < g; ++b) {
                Complex s = 0.0;
                for (std::size_t x = 0; x < other; ++x) s += at(a, x) * std::conj(at(b, x));
                gram(a, b) = s;
                gram(b, a) = std::conj(s);
            }
        for (std::size_t a = 0; a < g; ++a) gram(a, a) = gram(a, a).real();
        const EigenSystem es = hermitian_eigensystem(gram, 1e300);
        double t = 0.0;
        double frob = 0.0;
        std::vector<double> inv_root(g, 0.0);
        for (std::size_t i = 0; i < g; ++i) {
            const double lam = std::max(es.values[i], 0.0);
            const double root = std::sqrt(lam + eps * eps);
            t += root - eps;
            frob += lam;
            inv_root[i] = root > 0.0 ? 1.0 / root : 0.0;
        }
        const double denom = static_cast<double>(dims_.d() - 1);
        if (!grad.empty()) {
            // grad T = (G + eps^2)^{-1/2} A for the g x other matrix A; map
            // back to w through the same indexing (conjugated when transposed).
            ComplexMatrix p(g, g);
            for (std::size_t i = 0; i < g; ++i) {
                if (inv_root[i] == 0.0) continue;
                for (std::size_t a = 0; a < g; ++a)
                    for (std::size_t b = 0; b < g; ++b)
                        p(a, b) += inv_root[i] * es.vectors(a, i) * std::conj(es.vectors(b, i));
            }
            for (std::size_t a = 0; a < g; ++a)
                for (std::size_t x = 0; x < other; ++x) {
                    Complex gt = 0.0;
                    for (std::size_t b = 0; b < g; ++b) gt += p(a, b) * at(b, x);
                    const Complex ga = (2.0 * t * gt - 2.0 * at(a, x)) / denom;
                    if (rows_small)
                        grad[a * n + x] = ga;
                    else
                        grad[x * n + a] = std::conj(ga);
                }
        }
        return (t * t - frob) / denom;
    }

    BipartiteDims dims_;
    RoofMeasure measure_;
};

struct Spectrum {
    std::vector<double> lambda;          // positive eigenvalues, descending
    std::vector<std::vector<Complex>> e; // matching eigenvectors
};

Spectrum positive_spectrum(const DensityMatrix& rho) {
    const EigenSystem es = hermitian_eigensystem(rho.matrix());
    Spectrum s;
    for (std::size_t j = 0; j < es.values.size(); ++j) {
        if (es.values[j] <= kRankTol) continue;
        s.lambda.push_back(es.values[j]);
        s.e.push_back(es.vectors.column_vector(j));
    }
    return s;
}

// Member vectors stored contiguously, one row of length `dim` per member.
struct Members {
    std::size_t count = 0;
    std::size_t dim = 0;
    std::vector<Complex> data;

    std::span<Complex> operator[](std::size_t j) { return {data.data() + j * dim, dim}; }
    std::span<const Complex> operator[](std::size_t j) const { return {data.data() + j * dim, dim}; }
};

Members members_from_isometry(const Spectrum& spec, const ComplexMatrix& u) {
    Members w{u.rows(), spec.e.front().size(), {}};
    w.data.assign(w.count * w.dim, Complex{});
    for (std::size_t j = 0; j < w.count; ++j) {
        auto row = w[j];
        for (std::size_t i = 0; i < spec.lambda.size(); ++i) {
            const Complex coeff = std::conj(u(j, i)) * std::sqrt(spec.lambda[i]);
            if (coeff == Complex{}) continue;
            for (std::size_t x = 0; x < w.dim; ++x) row[x] += coeff * spec.e[i][x];
        }
    }
    return w;
}

Ensemble ensemble_from_members(const Members& w, BipartiteDims dims) {
    Ensemble ens;
    double total = 0.0;
    for (std::size_t j = 0; j < w.count; ++j) {
        double p = 0.0;
        for (const auto& z : w[j]) p += std::norm(z);
        if (!(p > 0.0)) continue;
        const auto row = w[j];
        ens.members.push_back({p, PureState::normalized(dims, std::vector<Complex>(row.begin(), row.end()))});
        total += p;
    }
    // Absorb rounding so the probabilities sum to one.
    for (auto& m : ens.members) m.p /= total;
    return ens;
}

// Re <a, b> for matrices viewed as real vectors.
double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    double s = 0.0;
    const auto x = a.data();
    const auto y = b.data();
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    return s;
}

// Cost of the decomposition W = Y B, where row j of W is member j, Y is an
// L x r isometry and row i of B is sqrt(lambda_i) e_i^T.
class DecompositionCost {
public:
    DecompositionCost(const Spectrum& spec, const MemberCost& cost) : cost_(cost) {
        const std::size_t r = spec.lambda.size();
        const std::size_t dim = spec.e.front().size();
        basis_ = ComplexMatrix(r, dim);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t x = 0; x < dim; ++x) basis_(i, x) = std::sqrt(spec.lambda[i]) * spec.e[i][x];
        basis_adjoint_ = basis_.adjoint();
    }

    double value(const ComplexMatrix& y, double eps) const {
        const ComplexMatrix w = y * basis_;
        double f = 0.0;
        for (std::size_t j = 0; j < w.rows(); ++j) f += cost_.value(row(w, j), eps);
        return f;
    }

    // Euclidean gradient with respect to Y, G = g B^dagger.
    double value_and_gradient(const ComplexMatrix& y, double eps, ComplexMatrix& grad) const {
        const ComplexMatrix w = y * basis_;
        ComplexMatrix g(w.rows(), w.cols());
        double f = 0.0;
        for (std::size_t j = 0; j < w.rows(); ++j)
            f += cost_.value_and_gradient(row(w, j), eps, {g.data().data() + j * w.cols(), w.cols()});
        grad = g * basis_adjoint_;
        return f;
    }

    const ComplexMatrix& basis() const { return basis_; }

private:
    static std::span<const Complex> row(const ComplexMatrix& w, std::size_t j) {
        return w.data().subspan(j * w.cols(), w.cols());
    }

    const MemberCost& cost_;
    ComplexMatrix basis_;
    ComplexMatrix basis_adjoint_;
};

// Projects a Euclidean gradient onto the tangent space of the Stiefel
// manifold at Y: G - Y sym(Y^dagger G).
ComplexMatrix tangent_projection(const ComplexMatrix& y, const ComplexMatrix& g) {
    ComplexMatrix yg = y.adjoint() * g;
    ComplexMatrix sym = yg + yg.adjoint();
    sym *= 0.5;
    return g - y * sym;
}

struct RestartOutcome {
    double value = 0.0;
    ComplexMatrix isometry;
    bool converged = false;
};

// Smoothing levels for the continuation; the last stage is close enough to
// the exact cost that the optimizer's tolerance dominates.
constexpr std::array<double, 5> kSmoothing{1e-2, 1e-3, 1e-4, 1e-6, 1e-9};
constexpr int kNonmonotoneWindow = 6;
constexpr double kArmijo = 1e-4;

// Riemannian gradient descent on the Stiefel manifold with Barzilai-Borwein
// steps, nonmonotone Armijo backtracking and QR retraction.
struct StageResult {
    ComplexMatrix y;
    bool converged = false;
};

StageResult descend(const DecompositionCost& cost, ComplexMatrix y, double eps, const OptimizerConfig& config) {
    ComplexMatrix egrad;
    double f = cost.value_and_gradient(y, eps, egrad);
    ComplexMatrix rgrad = tangent_projection(y, egrad);
    std::array<double, kNonmonotoneWindow> recent;
    recent.fill(f);
    double step = 1.0 / std::max(1.0, std::sqrt(real_inner(rgrad, rgrad)));

    for (int it = 0; it < config.max_iterations; ++it) {
        const double gnorm2 = real_inner(rgrad, rgrad);
        if (gnorm2 == 0.0) return {std::move(y), true};
        const double reference = *std::max_element(recent.begin(), recent.end());

        ComplexMatrix candidate;
        double f_new = 0.0;
        double t = step;
        bool accepted = false;
        for (int back = 0; back < 40; ++back) {
            candidate = orthonormalize_columns(y - rgrad * Complex(t));
            f_new = cost.value(candidate, eps);
            if (f_new <= reference - kArmijo * t * gnorm2) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) return {std::move(y), true};

        ComplexMatrix egrad_new;
        f_new = cost.value_and_gradient(candidate, eps, egrad_new);
        ComplexMatrix rgrad_new = tangent_projection(candidate, egrad_new);

        const ComplexMatrix s = candidate - y;
        const ComplexMatrix dg = rgrad_new - rgrad;
        const double ss = real_inner(s, s);
        const double sy = std::abs(real_inner(s, dg));
        const double move = std::sqrt(ss);
        const double decrease = f - f_new;

        y = std::move(candidate);
        rgrad = std::move(rgrad_new);
        f = f_new;
        recent[static_cast<std::size_t>(it) % recent.size()] = f;

        if (move < config.step_tolerance || (decrease >= 0.0 && decrease < 1e-15 * std::max(1.0, f)))
            return {std::move(y), true};
        step = (sy > 0.0) ? ss / sy : t * 2.0;
        step = std::clamp(step, 1e-12, 1e3);
    }
    return {std::move(y), false};
}

RestartOutcome run_restart(const Spectrum& spec, const ComplexMatrix& start, const MemberCost& member_cost,
                           const OptimizerConfig& config) {
    const DecompositionCost cost(spec, member_cost);
    RestartOutcome out{cost.value(start, 0.0), start, true};
    ComplexMatrix y = start;
    // A stage that runs into the iteration cap hands a poor start to the
    // next one, so every stage has to finish for the restart to count.
    bool converged = true;
    for (double eps : kSmoothing) {
        StageResult stage = descend(cost, std::move(y), eps, config);
        y = std::move(stage.y);
        converged = converged && stage.converged;
        const double exact = cost.value(y, 0.0);
        if (exact < out.value) out = {exact, y, converged};
    }
    out.converged = converged;
    return out;
}

ComplexMatrix starting_isometry(std::size_t members, std::size_t rank, std::uint64_t seed, int restart) {
    ComplexMatrix u(members, rank);
    if (restart == 0) {
        // Eigendecomposition ensemble padded with empty members.
        for (std::size_t i = 0; i < rank; ++i) u(i, i) = 1.0;
        return u;
    }
    const ComplexMatrix full = random_unitary(members, sub_seed(seed, static_cast<std::uint64_t>(restart)));
    for (std::size_t r = 0; r < members; ++r)
        for (std::size_t c = 0; c < rank; ++c) u(r, c) = full(r, c);
    return u;
}

struct RoofProblem {
    Spectrum spec;
    std::size_t members = 0;
};

RoofProblem prepare(const DensityMatrix& rho, const OptimizerConfig& config) {
    if (rho.dims().d() < 2) throw UndefinedMeasureError("convex_roof: undefined for d = 1");
    if (config.restarts < 1) throw ArgumentError("convex_roof: restarts must be at least 1");
    if (config.max_iterations < 1) throw ArgumentError("convex_roof: max_iterations must be at least 1");
    RoofProblem p{positive_spectrum(rho), 0};
    const std::size_t rank = p.spec.lambda.size();
    p.members = config.ensemble_size == 0 ? 2 * rank : config.ensemble_size;
    if (p.members < rank) throw ArgumentError("convex_roof: ensemble_size must be at least rank(rho)");
    return p;
}

RoofResult pure_result(const DensityMatrix& rho, const Spectrum& spec, RoofMeasure measure) {
    RoofResult r;
    PureState psi = PureState::normalized(rho.dims(), spec.e.front());
    r.value = pure_measure(psi, measure);
    r.ensemble.members.push_back({1.0, std::move(psi)});
    r.restarts_used = 0;
    r.converged = true;
    return r;
}

RoofResult finish(const Spectrum& spec, const std::vector<RestartOutcome>& outcomes, BipartiteDims dims,
                  RoofMeasure measure) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i)
        if (outcomes[i].value < outcomes[best].value) best = i;
    RoofResult r;
    r.ensemble = ensemble_from_members(members_from_isometry(spec, outcomes[best].isometry.conjugate()), dims);
    r.value = 0.0;
    for (const auto& m : r.ensemble.members) r.value += m.p * pure_measure(m.psi, measure);
    r.restarts_used = static_cast<int>(outcomes.size());
    r.converged = outcomes[best].converged;
    return r;
}

}  // namespace

double Ensemble::total_probability() const {
    double s = 0.0;
    for (const auto& m : members) s += m.p;
    return s;
}

ComplexMatrix Ensemble::reconstruct() const {
    if (members.empty()) return {};
    const std::size_t n = members.front().psi.amplitudes().size();
    ComplexMatrix out(n, n);
    for (const auto& m : members) {
        const auto a = m.psi.amplitudes();
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) out(r, c) += m.p * a[r] * std::conj(a[c]);
    }
    return out;
}

double pure_measure(const PureState& psi, RoofMeasure measure) {
    if (measure == RoofMeasure::Concurrence) return concurrence_pure(psi);
    return negativity_schmidt(schmidt_decompose(psi));
}

Ensemble ensemble_from_isometry(const DensityMatrix& rho, const ComplexMatrix& isometry) {
    const Spectrum spec = positive_spectrum(rho);
    if (isometry.cols() != spec.lambda.size())
        throw ArgumentError("ensemble_from_isometry: isometry needs " + std::to_string(spec.lambda.size()) +
                            " columns (rank of rho)");
    if (isometry.rows() < isometry.cols()) throw ArgumentError("ensemble_from_isometry: isometry has fewer rows than columns");
    if (!isometry.all_finite() || orthonormality_defect(isometry) > 1e-9)
        throw ArgumentError("ensemble_from_isometry: columns are not orthonormal");
    return ensemble_from_members(members_from_isometry(spec, isometry), rho.dims());
}

RoofResult convex_roof(const DensityMatrix& rho, RoofMeasure measure, const OptimizerConfig& config) {
    const RoofProblem problem = prepare(rho, config);
    const std::size_t rank = problem.spec.lambda.size();
    if (rank == 1) return pure_result(rho, problem.spec, measure);

    const MemberCost cost(rho.dims(), measure);
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < config.restarts; ++i)
        outcomes[static_cast<std::size_t>(i)] =
            run_restart(problem.spec, starting_isometry(problem.members, rank, config.seed, i), cost, config);
    return finish(problem.spec, outcomes, rho.dims(), measure);
}

RoofResult convex_roof_serial(const DensityMatrix& rho, RoofMeasure measure, const OptimizerConfig& config) {
    const RoofProblem problem = prepare(rho, config);
    const std::size_t rank = problem.spec.lambda.size();
    if (rank == 1) return pure_result(rho, problem.spec, measure);

    const MemberCost cost(rho.dims(), measure);
    std::vector<RestartOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(config.restarts));
    for (int i = 0; i < config.restarts; ++i)
        outcomes.push_back(run_restart(problem.spec, starting_isometry(problem.members, rank, config.seed, i), cost, config));
    return finish(problem.spec, outcomes, rho.dims(), measure);
}

double wootters_concurrence_mixed(const DensityMatrix& rho) {
    if (rho.dims() != BipartiteDims(2, 2)) throw DimensionError("wootters_concurrence_mixed: state must be 2x2");
    const ComplexMatrix sy{{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}};
    const ComplexMatrix flip = kron(sy, sy);
    // With rho = sum_i |v_i><v_i| over its positive spectrum, the square roots
    // of the spectrum of rho (sy sy) rho* (sy sy) are the singular values of
    // tau_ij = v_i^T (sy sy) v_j; small ones keep absolute accuracy this way.
    const Spectrum spec = positive_spectrum(rho);
    const std::size_t r = spec.lambda.size();
    ComplexMatrix tau(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            Complex s = 0.0;
            for (std::size_t a = 0; a < 4; ++a)
                for (std::size_t b = 0; b < 4; ++b) s += spec.e[i][a] * flip(a, b) * spec.e[j][b];
            tau(i, j) = std::sqrt(spec.lambda[i] * spec.lambda[j]) * s;
        }
    const auto sigma = singular_value_decomposition(tau).sigma;
    std::array<double, 4> l{};
    std::copy(sigma.begin(), sigma.end(), l.begin());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

}  // namespace qent
