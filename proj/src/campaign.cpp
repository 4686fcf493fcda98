#include "qent/campaign.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qent/errors.hpp"
#include "qent/measures.hpp"
#include "qent/random.hpp"

namespace qent {

namespace {

std::vector<BipartiteDims> square_range(std::size_t lo, std::size_t hi) {
    std::vector<BipartiteDims> out;
    for (std::size_t d = lo; d <= hi; ++d) out.emplace_back(d, d);
    return out;
}

// The entry of largest magnitude, sign kept.
double dominant(std::initializer_list<double> values) {
    double best = 0.0;
    for (double v : values)
        if (std::isnan(v) || std::abs(v) > std::abs(best)) best = v;
    return best;
}

SchmidtForm padded(const SchmidtForm& k, std::size_t d) {
    std::vector<double> v(k.k().begin(), k.k().end());
    v.resize(d, 0.0);
    return SchmidtForm(std::move(v));
}

const SchmidtForm& as_schmidt(const Sample& s) { return std::get<SchmidtForm>(s.state); }
const PureState& as_pure(const Sample& s) { return std::get<PureState>(s.state); }
const DensityMatrix& as_mixed(const Sample& s) { return std::get<DensityMatrix>(s.state); }

double max_values_residual(const Sample& s) {
    const SchmidtForm& k = as_schmidt(s);
    const double d = static_cast<double>(k.d());
    const double c_max = std::sqrt(2.0 * (1.0 - 1.0 / d));
    const double c = concurrence_schmidt(k);
    const double n = negativity_schmidt(k);
    if (s.witness) return std::max(std::abs(c - c_max), std::abs(n - 1.0));
    // Two nonzero coefficients cap the concurrence at one.
    const SchmidtForm two = padded(random_schmidt_vector(2, sub_seed(s.seed, 1)), k.d());
    return std::max({c - c_max, -c, n - 1.0, -n, concurrence_schmidt(two) - 1.0});
}

double lu_residual(const Sample& s) {
    const PureState& psi = as_pure(s);
    const auto& dims = psi.dims();
    const PureState moved = apply_local(psi, random_unitary(dims.m(), sub_seed(s.seed, 1)),
                                        random_unitary(dims.n(), sub_seed(s.seed, 2)));
    const SchmidtForm k0 = schmidt_decompose(psi);
    const SchmidtForm k1 = schmidt_decompose(moved);
    double r = dominant({concurrence_pure(moved) - concurrence_pure(psi),
                         negativity_schmidt(k1) - negativity_schmidt(k0)});
    const auto e0 = symmetric_invariants(k0);
    const auto e1 = symmetric_invariants(k1);
    for (std::size_t j = 0; j < e0.e.size(); ++j) r = dominant({r, e1.e[j] - e0.e[j]});
    return r;
}

double peres_residual(const Sample& s) {
    const DensityMatrix& rho = as_mixed(s);
    const double d = static_cast<double>(rho.dims().d());
    const double n = negativity(rho);
    const PeresResult pr = peres_classify(rho);
    double neg_sum = 0.0;
    for (double x : pr.negative_eigenvalues) neg_sum += x;
    const bool npt = pr.cls == PeresClass::NPT;
    if (npt != (n > 1e-8)) return 1.0;
    return n - 2.0 / (d - 1.0) * std::abs(neg_sum);
}

}  // namespace

const std::vector<CheckInfo>& all_checks() {
    static const std::vector<CheckInfo> checks{
        {CheckId::QubitEquality, "qubit-equality", ResidualKind::Identity, 1e-10, BipartiteDims(2, 2), {BipartiteDims(2, 2)}},
        {CheckId::TracenormVsSchmidt, "tracenorm-vs-schmidt", ResidualKind::Identity, 1e-8, std::nullopt, square_range(2, 6)},
        {CheckId::OperatorVsSchmidt, "operator-vs-schmidt", ResidualKind::Identity, 1e-12, std::nullopt, square_range(2, 10)},
        {CheckId::Chen, "chen", ResidualKind::Bound, 1e-12, std::nullopt, square_range(2, 8)},
        {CheckId::QutritIdentity, "qutrit-identity", ResidualKind::Identity, 1e-10, BipartiteDims(3, 3), {BipartiteDims(3, 3)}},
        {CheckId::QuadritCorrected, "quadrit-corrected", ResidualKind::Identity, 1e-10, BipartiteDims(4, 4), {BipartiteDims(4, 4)}},
        {CheckId::QuadritPaperPrinted, "quadrit-paper-printed", ResidualKind::Identity, 1e-10, BipartiteDims(4, 4), {BipartiteDims(4, 4)}},
        {CheckId::LuInvariance, "lu-invariance", ResidualKind::Identity, 1e-9, std::nullopt, square_range(2, 6)},
        {CheckId::MaxValues, "max-values", ResidualKind::Bound, 1e-12, std::nullopt, square_range(2, 10)},
        {CheckId::PeresConsistency, "peres-consistency", ResidualKind::Identity, 1e-8, std::nullopt,
         {BipartiteDims(2, 2), BipartiteDims(2, 3)}},
    };
    return checks;
}

const CheckInfo& check_info(CheckId id) {
    for (const auto& c : all_checks())
        if (c.id == id) return c;
    throw ArgumentError("check_info: unknown check");
}

std::optional<CheckId> parse_check(std::string_view name) {
    for (const auto& c : all_checks())
        if (c.name == name) return c.id;
    return std::nullopt;
}

std::vector<BipartiteDims> parse_dims(std::string_view spec) {
    auto number = [&](std::string_view text) {
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0 || value > 64)
            throw ArgumentError("invalid dimension '" + std::string(text) + "'");
        return value;
    };
    std::vector<BipartiteDims> out;
    while (!spec.empty()) {
        const auto comma = spec.find(',');
        const std::string_view item = spec.substr(0, comma);
        spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
        if (item.empty()) throw ArgumentError("empty item in dimension list");
        if (const auto dots = item.find(".."); dots != std::string_view::npos) {
            const std::size_t lo = number(item.substr(0, dots));
            const std::size_t hi = number(item.substr(dots + 2));
            if (lo > hi) throw ArgumentError("empty dimension range '" + std::string(item) + "'");
            for (const auto& d : square_range(lo, hi)) out.push_back(d);
        } else if (const auto x = item.find('x'); x != std::string_view::npos) {
            out.emplace_back(number(item.substr(0, x)), number(item.substr(x + 1)));
        } else {
            const std::size_t d = number(item);
            out.emplace_back(d, d);
        }
    }
    if (out.empty()) throw ArgumentError("empty dimension list");
    return out;
}

std::vector<Sample> witnesses(CheckId id, BipartiteDims dims) {
    const std::size_t d = dims.d();
    const double r2 = 1.0 / std::sqrt(2.0);
    auto schmidt = [](std::vector<double> k) { return Sample{SchmidtForm(std::move(k)), 0, true}; };
    std::vector<Sample> out;
    switch (id) {
        case CheckId::QutritIdentity:
            out.push_back(schmidt(std::vector<double>(3, 1.0 / std::sqrt(3.0))));
            out.push_back(schmidt({r2, r2, 0.0}));
            out.push_back(schmidt({1.0, 0.0, 0.0}));
            break;
        case CheckId::QuadritCorrected:
        case CheckId::QuadritPaperPrinted:
            out.push_back(schmidt(std::vector<double>(4, 0.5)));
            out.push_back(schmidt({r2, r2, 0.0, 0.0}));
            break;
        case CheckId::MaxValues:
        case CheckId::Chen:
        case CheckId::OperatorVsSchmidt:
            if (d >= 2) out.push_back(Sample{SchmidtForm::uniform(d), 0, true});
            break;
        case CheckId::QubitEquality:
            out.push_back(Sample{from_schmidt(SchmidtForm({r2, r2}), dims), 0, true});
            out.push_back(Sample{from_schmidt(SchmidtForm({0.8, 0.6}), dims), 0, true});
            break;
        default:
            break;
    }
    return out;
}

Sample generate_sample(CheckId id, BipartiteDims dims, std::uint64_t master_seed, std::uint64_t index) {
    const std::uint64_t seed = sub_seed(master_seed, index);
    switch (id) {
        case CheckId::QubitEquality:
        case CheckId::TracenormVsSchmidt:
        case CheckId::LuInvariance:
            return {random_pure_state(dims, sub_seed(seed, 0)), seed, false};
        case CheckId::PeresConsistency: {
            const std::size_t rank = 1 + static_cast<std::size_t>(seed % dims.total());
            return {random_mixed_state(dims, rank, sub_seed(seed, 0)), seed, false};
        }
        default:
            return {random_schmidt_vector(dims.d(), sub_seed(seed, 0)), seed, false};
    }
}

double evaluate_residual(CheckId id, const Sample& s) {
    switch (id) {
        case CheckId::QubitEquality: {
            const PureState& psi = as_pure(s);
            const SchmidtForm k = schmidt_decompose(psi);
            const double n = negativity_schmidt(k);
            const double c = concurrence_pure(psi);
            const double two_k1k2 = 2.0 * k[0] * k[1];
            return dominant({n - c, n - two_k1k2, c - two_k1k2, concurrence_spin_flip_2q(psi) - c});
        }
        case CheckId::TracenormVsSchmidt: {
            const PureState& psi = as_pure(s);
            return negativity(DensityMatrix::projector(psi)) - negativity_schmidt(schmidt_decompose(psi));
        }
        case CheckId::OperatorVsSchmidt:
            return negativity_operator(as_schmidt(s)) - negativity_schmidt(as_schmidt(s));
        case CheckId::Chen:
            return -chen_gap(as_schmidt(s));
        case CheckId::QutritIdentity:
            return qutrit_residual(as_schmidt(s));
        case CheckId::QuadritCorrected:
            return quadrit_residuals(as_schmidt(s)).corrected;
        case CheckId::QuadritPaperPrinted:
            return quadrit_residuals(as_schmidt(s)).printed;
        case CheckId::LuInvariance:
            return lu_residual(s);
        case CheckId::MaxValues:
            return max_values_residual(s);
        case CheckId::PeresConsistency:
            return peres_residual(s);
    }
    throw ArgumentError("evaluate_residual: unknown check");
}

namespace {

// A failure to evaluate counts as the worst possible residual.
double safe_residual(CheckId id, const Sample& s) {
    try {
        return evaluate_residual(id, s);
    } catch (const std::exception&) {
        return std::numeric_limits<double>::infinity();
    }
}

double safe_sample_residual(CheckId id, BipartiteDims dims, std::uint64_t seed, std::uint64_t index) {
    try {
        return evaluate_residual(id, generate_sample(id, dims, seed, index));
    } catch (const std::exception&) {
        return std::numeric_limits<double>::infinity();
    }
}

double badness(ResidualKind kind, double r) {
    if (std::isnan(r)) return std::numeric_limits<double>::infinity();
    return kind == ResidualKind::Identity ? std::abs(r) : r;
}

}  // namespace

CheckOutcome run_check(CheckId id, BipartiteDims dims, const CampaignConfig& config, Execution execution) {
    const CheckInfo& info = check_info(id);
    if (info.fixed_dims) dims = *info.fixed_dims;

    const std::vector<Sample> anchors = witnesses(id, dims);
    const std::size_t w = anchors.size();
    const std::size_t n = config.samples;
    std::vector<double> residuals(w + n);
    for (std::size_t i = 0; i < w; ++i) residuals[i] = safe_residual(id, anchors[i]);

    if (execution == Execution::Parallel) {
        const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < count; ++i)
            residuals[w + static_cast<std::size_t>(i)] =
                safe_sample_residual(id, dims, config.seed, static_cast<std::uint64_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) residuals[w + i] = safe_sample_residual(id, dims, config.seed, i);
    }

    // Serial reduction; ties resolve to the lowest index.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < residuals.size(); ++i)
        if (badness(info.kind, residuals[i]) > badness(info.kind, residuals[worst])) worst = i;

    CheckOutcome out{id, dims, n, w, 0.0, config.tolerance.value_or(info.tolerance), false, std::nullopt};
    if (residuals.empty()) {
        out.pass = true;
        return out;
    }
    out.worst_residual = residuals[worst];
    out.pass = badness(info.kind, out.worst_residual) <= out.tolerance;
    try {
        out.worst_case = worst < w ? anchors[worst] : generate_sample(id, dims, config.seed, worst - w);
    } catch (const std::exception&) {
        out.worst_case = std::nullopt;
    }
    return out;
}

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.pass; });
}

VerifyReport run_campaign(const std::vector<CheckId>& checks, const std::vector<BipartiteDims>& dims,
                          const CampaignConfig& config, Execution execution) {
    // FNV-1a over the canonical campaign description.
    std::string canon = "samples=" + std::to_string(config.samples) + ";seed=" + std::to_string(config.seed);
    if (config.tolerance) {
        char buf[64];
        std::snprintf(buf, sizeof buf, ";tol=%.17g", *config.tolerance);
        canon += buf;
    }
    for (CheckId id : checks) canon += ";" + std::string(check_info(id).name);
    for (const auto& d : dims) canon += ";" + std::to_string(d.m()) + "x" + std::to_string(d.n());
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : canon) h = (h ^ c) * 0x100000001B3ULL;
    char id_buf[32];
    std::snprintf(id_buf, sizeof id_buf, "verify-%016llx", static_cast<unsigned long long>(h));

    VerifyReport report{id_buf, config.seed, {}};
    for (CheckId id : checks) {
        const CheckInfo& info = check_info(id);
        const std::vector<BipartiteDims> targets =
            info.fixed_dims ? std::vector<BipartiteDims>{*info.fixed_dims} : (dims.empty() ? info.default_dims : dims);
        for (const auto& d : targets) report.checks.push_back(run_check(id, d, config, execution));
    }
    return report;
}

}  // namespace qent
