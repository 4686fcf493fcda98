#pragma once

// Convex-roof extensions of concurrence and negativity:
//
//   M(rho) = min sum_i p_i M(psi_i)  over ensembles {p_i, psi_i} of rho.
//
// Every decomposition of rho = sum_i lambda_i |e_i><e_i| into L members is
// given by an L x r isometry U through |w_j> = sum_i conj(U_ji) sqrt(lambda_i)
// |e_i>, p_j = <w_j|w_j>. The optimizer runs gradient descent on the
// manifold of such isometries, so every iterate is an exact decomposition.

#include <cstdint>
#include <vector>

#include "qent/linalg.hpp"
#include "qent/states.hpp"

namespace qent {

enum class RoofMeasure { Concurrence, Negativity };

struct EnsembleMember {
    double p;
    PureState psi;
};

struct Ensemble {
    std::vector<EnsembleMember> members;

    double total_probability() const;
    // sum_j p_j |psi_j><psi_j|
    ComplexMatrix reconstruct() const;
};

struct OptimizerConfig {
    std::size_t ensemble_size = 0;  // 0 selects 2 * rank
    int restarts = 16;
    int max_iterations = 500;       // per smoothing stage, per restart
    double step_tolerance = 1e-8;
    std::uint64_t seed = 0;
};

struct RoofResult {
    double value = 0.0;
    Ensemble ensemble;
    int restarts_used = 0;
    bool converged = false;
};

// Pure-state measure used inside the roof.
double pure_measure(const PureState& psi, RoofMeasure measure);

// Eigenvalues above this count toward the rank of rho.
inline constexpr double kRankTol = 1e-10;

// Throws ArgumentError when the isometry has the wrong column count, fewer
// rows than columns, or columns that are not orthonormal within 1e-9.
Ensemble ensemble_from_isometry(const DensityMatrix& rho, const ComplexMatrix& isometry);

// Restarts run concurrently under OpenMP. The result does not depend on the
// thread count: restart i draws from sub_seed(config.seed, i) and ties are
// broken by restart index.
RoofResult convex_roof(const DensityMatrix& rho, RoofMeasure measure, const OptimizerConfig& config = {});
// Same computation with restarts run one after another. Reference for tests
// and benchmarks.
RoofResult convex_roof_serial(const DensityMatrix& rho, RoofMeasure measure, const OptimizerConfig& config = {});

// Closed-form two-qubit concurrence max(0, l1 - l2 - l3 - l4), l_i the
// decreasing square roots of the spectrum of rho (sy sy) rho* (sy sy).
double wootters_concurrence_mixed(const DensityMatrix& rho);

}  // namespace qent
