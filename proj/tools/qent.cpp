// qent: entanglement measures, verification campaigns and convex roofs for
// bipartite qudit states.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "qent/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Negativity, concurrence and invariants of bipartite qudit states"};
    app.require_subcommand(1);

    int threads = 0;
    if (const char* env = std::getenv("QENT_THREADS")) threads = std::atoi(env);
    app.add_option("--threads", threads, "Worker threads (default: QENT_THREADS or OpenMP default)");

    qent::cli::MeasureOptions measure;
    auto* measure_cmd = app.add_subcommand("measure", "Report every measure of one state file");
    measure_cmd->add_option("--input", measure.input, "StateFile (JSON)")->required();
    measure_cmd->add_option("--output", measure.output, "Output file, - for stdout");
    measure_cmd->add_option("--format", measure.format, "json or csv");

    qent::cli::VerifyOptions verify;
    std::string verify_dims;
    double verify_tol = -1.0;
    auto* verify_cmd = app.add_subcommand("verify", "Run randomized identity and inequality checks");
    verify_cmd->add_option("--checks", verify.checks, "Comma-separated check names or 'all'")->required();
    auto* dims_opt = verify_cmd->add_option("--dims", verify_dims, "e.g. 2..8, 2x3, 3 or a comma list");
    verify_cmd->add_option("--samples", verify.samples, "Random samples per dimension");
    verify_cmd->add_option("--seed", verify.seed, "Master seed");
    auto* tol_opt = verify_cmd->add_option("--tol", verify_tol, "Override every check's tolerance");
    verify_cmd->add_option("--output", verify.output, "Report file, - for stdout");
    verify_cmd->add_option("--format", verify.format, "json or csv");

    qent::cli::RoofOptions roof;
    auto* roof_cmd = app.add_subcommand("roof", "Convex-roof concurrence or negativity of a state file");
    roof_cmd->add_option("--input", roof.input, "StateFile (JSON)")->required();
    roof_cmd->add_option("--measure", roof.measure, "concurrence or negativity");
    roof_cmd->add_option("--restarts", roof.restarts, "Independent optimizer restarts");
    roof_cmd->add_option("--seed", roof.seed, "Seed for restart starting points");
    roof_cmd->add_option("--ensemble-size", roof.ensemble_size, "Ensemble members (default 2*rank)");
    roof_cmd->add_option("--max-iterations", roof.max_iterations, "Iteration cap per stage and restart");
    roof_cmd->add_option("--output", roof.output, "Output file, - for stdout");

    qent::cli::SampleOptions sample;
    auto* sample_cmd = app.add_subcommand("sample", "Write seeded random states");
    sample_cmd->add_option("--kind", sample.kind, "pure, mixed or schmidt");
    sample_cmd->add_option("--dims", sample.dims, "e.g. 3 or 2x3");
    sample_cmd->add_option("--rank", sample.rank, "Rank of mixed samples (default full)");
    sample_cmd->add_option("--count", sample.count, "Number of files");
    sample_cmd->add_option("--seed", sample.seed, "Master seed");
    sample_cmd->add_option("--output", sample.output_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qent::cli::kExitInput;
    }

    qent::cli::set_thread_count(threads);

    if (*measure_cmd) return qent::cli::cmd_measure(measure, std::cout, std::cerr);
    if (*verify_cmd) {
        if (*dims_opt) verify.dims = verify_dims;
        if (*tol_opt) verify.tolerance = verify_tol;
        return qent::cli::cmd_verify(verify, std::cout, std::cerr);
    }
    if (*roof_cmd) return qent::cli::cmd_roof(roof, std::cout, std::cerr);
    return qent::cli::cmd_sample(sample, std::cout, std::cerr);
}
