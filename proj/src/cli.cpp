#include "qent/cli.hpp"

#include <omp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qent/campaign.hpp"
#include "qent/errors.hpp"
#include "qent/random.hpp"
#include "qent/roof.hpp"
#include "qent/state_io.hpp"

namespace qent::cli {

namespace {

// Writes to `out` for "-", otherwise to the named file. Returns false when
// the file cannot be written.
bool emit(const std::string& target, const std::string& text, std::ostream& out, std::ostream& err) {
    if (target == "-") {
        out << text;
        return true;
    }
    std::ofstream f(target, std::ios::binary);
    if (!f) {
        err << "error: cannot write " << target << '\n';
        return false;
    }
    f << text;
    return static_cast<bool>(f);
}

std::vector<CheckId> parse_check_list(const std::string& text) {
    std::vector<CheckId> ids;
    if (text == "all") {
        for (const auto& c : all_checks()) ids.push_back(c.id);
        return ids;
    }
    std::stringstream ss(text);
    std::string name;
    while (std::getline(ss, name, ',')) {
        const auto id = parse_check(name);
        if (!id) throw ArgumentError("unknown check '" + name + "'");
        ids.push_back(*id);
    }
    if (ids.empty()) throw ArgumentError("no checks given");
    return ids;
}

}  // namespace

void set_thread_count(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

int cmd_measure(const MeasureOptions& opts, std::ostream& out, std::ostream& err) {
    if (opts.format != "json" && opts.format != "csv") {
        err << "error: --format must be json or csv\n";
        return kExitInput;
    }
    try {
        const StateInput state = read_state_file(opts.input);
        const MeasureReport report =
            std::visit([](const auto& s) { return measure_report(s); }, state);
        const std::string text = opts.format == "json" ? report_to_json(report).dump(2) + "\n" : report_to_csv(report);
        return emit(opts.output, text, out, err) ? kExitOk : kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
    std::vector<CheckId> checks;
    std::vector<BipartiteDims> dims;
    try {
        if (opts.samples < 1) throw ArgumentError("--samples must be at least 1");
        if (opts.format != "json" && opts.format != "csv") throw ArgumentError("--format must be json or csv");
        if (opts.tolerance && !(*opts.tolerance >= 0.0)) throw ArgumentError("--tol must be non-negative");
        checks = parse_check_list(opts.checks);
        if (opts.dims) {
            dims = parse_dims(*opts.dims);
            for (const auto& d : dims)
                if (d.d() < 2) throw ArgumentError("--dims entries need min(m, n) >= 2");
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    const CampaignConfig config{opts.samples, opts.seed, opts.tolerance};
    const VerifyReport report = run_campaign(checks, dims, config);
    const std::string text = opts.format == "json" ? verify_to_json(report).dump(2) + "\n" : verify_to_csv(report);
    if (!emit(opts.output, text, out, err)) return kExitInput;
    for (const auto& c : report.checks)
        if (!c.pass)
            err << "FAIL " << check_info(c.id).name << " (" << c.dims.m() << "x" << c.dims.n()
                << "): residual " << format_real(c.worst_residual) << " exceeds " << format_real(c.tolerance) << '\n';
    return report.all_pass() ? kExitOk : kExitFailed;
}

int cmd_roof(const RoofOptions& opts, std::ostream& out, std::ostream& err) {
    RoofMeasure measure;
    if (opts.measure == "concurrence") {
        measure = RoofMeasure::Concurrence;
    } else if (opts.measure == "negativity") {
        measure = RoofMeasure::Negativity;
    } else {
        err << "error: --measure must be concurrence or negativity\n";
        return kExitInput;
    }
    try {
        const StateInput state = read_state_file(opts.input);
        const DensityMatrix rho = std::holds_alternative<PureState>(state)
                                      ? DensityMatrix::projector(std::get<PureState>(state))
                                      : std::get<DensityMatrix>(state);
        OptimizerConfig config;
        config.restarts = opts.restarts;
        config.seed = opts.seed;
        config.ensemble_size = opts.ensemble_size;
        config.max_iterations = opts.max_iterations;
        const RoofResult result = convex_roof(rho, measure, config);
        std::optional<double> oracle;
        if (rho.dims() == BipartiteDims(2, 2)) oracle = wootters_concurrence_mixed(rho);
        if (!emit(opts.output, roof_to_json(result, measure, oracle).dump(2) + "\n", out, err)) return kExitInput;
        return result.converged ? kExitOk : kExitFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

int cmd_sample(const SampleOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.kind != "pure" && opts.kind != "mixed" && opts.kind != "schmidt")
            throw ArgumentError("--kind must be pure, mixed or schmidt");
        const auto dims_list = parse_dims(opts.dims);
        if (dims_list.size() != 1) throw ArgumentError("--dims must name a single dimension");
        const BipartiteDims dims = dims_list.front();
        const std::size_t rank = opts.rank == 0 ? dims.total() : opts.rank;
        if (opts.kind == "mixed" && rank > dims.total()) throw ArgumentError("--rank exceeds m*n");

        std::filesystem::create_directories(opts.output_dir);
        for (std::size_t i = 0; i < opts.count; ++i) {
            const std::uint64_t seed = sub_seed(opts.seed, i);
            nlohmann::json j;
            if (opts.kind == "pure")
                j = state_to_json(random_pure_state(dims, seed));
            else if (opts.kind == "mixed")
                j = state_to_json(random_mixed_state(dims, rank, seed));
            else
                j = schmidt_to_json(random_schmidt_vector(dims.d(), seed));
            char name[64];
            std::snprintf(name, sizeof name, "%s_%04zu.json", opts.kind.c_str(), i);
            const auto path = std::filesystem::path(opts.output_dir) / name;
            if (!emit(path.string(), j.dump(2) + "\n", out, err)) return kExitInput;
            out << path.string() << '\n';
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

}  // namespace qent::cli
