#pragma once

// Randomized verification campaigns. Each check maps one sample (a Schmidt
// vector, pure state or density matrix plus its seed) to a residual, and a
// campaign reports the worst residual over deterministic witnesses and N
// seeded samples. Sample i is drawn from sub_seed(master, i), so results do
// not depend on how samples are spread over threads.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qent/states.hpp"

namespace qent {

enum class CheckId {
    QubitEquality,
    TracenormVsSchmidt,
    OperatorVsSchmidt,
    Chen,
    QutritIdentity,
    QuadritCorrected,
    QuadritPaperPrinted,
    LuInvariance,
    MaxValues,
    PeresConsistency,
};

// Identity: residual should vanish, pass iff |r| <= tol, worst = largest |r|.
// Bound: residual is a signed violation, pass iff r <= tol, worst = largest r.
enum class ResidualKind { Identity, Bound };

struct CheckInfo {
    CheckId id;
    std::string_view name;
    ResidualKind kind;
    double tolerance;
    // Checks with a fixed dimension ignore any requested dimension list.
    std::optional<BipartiteDims> fixed_dims;
    std::vector<BipartiteDims> default_dims;
};

const std::vector<CheckInfo>& all_checks();
const CheckInfo& check_info(CheckId id);
std::optional<CheckId> parse_check(std::string_view name);

// Parses "2..8" (square dims), "2x3", "3" and comma-separated lists of those.
// Throws ArgumentError on malformed input.
std::vector<BipartiteDims> parse_dims(std::string_view spec);

struct Sample {
    std::variant<SchmidtForm, PureState, DensityMatrix> state;
    std::uint64_t seed = 0;    // drives any extra randomness the check uses
    bool witness = false;
};

// Deterministic anchors evaluated before the random samples.
std::vector<Sample> witnesses(CheckId id, BipartiteDims dims);
Sample generate_sample(CheckId id, BipartiteDims dims, std::uint64_t master_seed, std::uint64_t index);
double evaluate_residual(CheckId id, const Sample& sample);

enum class Execution { Serial, Parallel };

struct CheckOutcome {
    CheckId id;
    BipartiteDims dims{1, 1};
    std::size_t samples = 0;
    std::size_t witness_count = 0;
    double worst_residual = 0.0;  // signed residual of the worst sample
    double tolerance = 0.0;
    bool pass = false;
    std::optional<Sample> worst_case;
};

struct CampaignConfig {
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    std::optional<double> tolerance;  // overrides the per-check default
};

CheckOutcome run_check(CheckId id, BipartiteDims dims, const CampaignConfig& config,
                       Execution execution = Execution::Parallel);

struct VerifyReport {
    std::string campaign_id;
    std::uint64_t master_seed = 0;
    std::vector<CheckOutcome> checks;

    bool all_pass() const;
};

// Runs each check over its dimensions (requested or default). An empty
// `dims` selects each check's defaults.
VerifyReport run_campaign(const std::vector<CheckId>& checks, const std::vector<BipartiteDims>& dims,
                          const CampaignConfig& config, Execution execution = Execution::Parallel);

}  // namespace qent
