#include <doctest.h>
#include <omp.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qent/cli.hpp"
#include "qent/state_io.hpp"

using namespace qent;
using namespace qent::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string fixture(const char* name) { return std::string(QENT_FIXTURES) + "/" + name; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

template <class Options, class Fn>
Run run(Fn fn, const Options& opts) {
    std::ostringstream out, err;
    const int code = fn(opts, out, err);
    return {code, out.str(), err.str()};
}

Run measure(const std::string& path, const std::string& format = "json") {
    MeasureOptions o;
    o.input = path;
    o.format = format;
    return run(cmd_measure, o);
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("qent_test_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("measure") {
    const Run bell = measure(fixture("bell.json"));
    REQUIRE(bell.code == kExitOk);
    const json j = json::parse(bell.out);
    CHECK(j["concurrence"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(j["negativity"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));

    const json mm = json::parse(measure(fixture("maximally_mixed.json")).out);
    CHECK(std::abs(mm["negativity"].get<double>()) <= 1e-12);
    CHECK(mm["ppt_class"] == "PPT");

    const json q = json::parse(measure(fixture("qutrit_uniform.json")).out);
    CHECK(q["concurrence"].get<double>() == doctest::Approx(2.0 / std::sqrt(3.0)));

    const Run csv = measure(fixture("werner_0.5.json"), "csv");
    CHECK(csv.code == kExitOk);
    CHECK(csv.out.find("negativity,0.25") != std::string::npos);

    for (const char* bad : {"malformed.json", "not_normalized.json", "not_hermitian.json", "negative_eigenvalue.json",
                            "wrong_length.json", "unknown_kind.json", "bad_complex.json", "missing.json"}) {
        CAPTURE(bad);
        const Run r = measure(fixture(bad));
        CHECK(r.code == kExitInput);
        CHECK(r.out.empty());
        CHECK(r.err.rfind("error: ", 0) == 0);
    }
    CHECK(measure(fixture("bell.json"), "xml").code == kExitInput);
}

TEST_CASE("verify") {
    VerifyOptions o;
    o.checks = "qubit-equality,chen";
    o.samples = 200;
    const Run ok = run(cmd_verify, o);
    CHECK(ok.code == kExitOk);
    CHECK(json::parse(ok.out)["pass"] == true);

    o.checks = "quadrit-paper-printed";
    const Run failed = run(cmd_verify, o);
    CHECK(failed.code == kExitFailed);
    CHECK(failed.err.find("FAIL quadrit-paper-printed") != std::string::npos);
    const json fj = json::parse(failed.out);
    CHECK(fj["checks"][0]["max_residual"].get<double>() == doctest::Approx(-45.0 / 8.0).epsilon(1e-14));
    CHECK(fj["checks"][0]["worst_case"]["k"][0].get<double>() == 0.5);

    o.checks = "chen";
    o.format = "csv";
    o.dims = "2,3";
    const Run csv = run(cmd_verify, o);
    CHECK(csv.code == kExitOk);
    CHECK(csv.out.rfind("check,d,samples,max_residual,tolerance,pass\nchen,2,200,", 0) == 0);

    VerifyOptions bad;
    bad.checks = "no-such-check";
    CHECK(run(cmd_verify, bad).code == kExitInput);
    bad.checks = "chen";
    bad.samples = 0;
    CHECK(run(cmd_verify, bad).code == kExitInput);
    bad.samples = 10;
    bad.dims = "1";
    CHECK(run(cmd_verify, bad).code == kExitInput);
    bad.dims = "2..";
    CHECK(run(cmd_verify, bad).code == kExitInput);
    bad.dims.reset();
    bad.tolerance = -1.0;
    CHECK(run(cmd_verify, bad).code == kExitInput);
}

TEST_CASE("verify output does not depend on the thread count") {
    VerifyOptions o;
    o.checks = "all";
    o.samples = 300;
    o.seed = 2024;
    const int saved = omp_get_max_threads();
    set_thread_count(1);
    const Run one = run(cmd_verify, o);
    set_thread_count(4);
    const Run four = run(cmd_verify, o);
    set_thread_count(saved);
    CHECK(one.code == four.code);
    CHECK(one.out == four.out);
}

TEST_CASE("roof") {
    RoofOptions o;
    o.input = fixture("werner_0.5.json");
    const Run r = run(cmd_roof, o);
    REQUIRE(r.code == kExitOk);
    const json j = json::parse(r.out);
    CHECK(j["value"].get<double>() == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(j["oracle_gap"].get<double>() <= 1e-3);

    o.input = fixture("bell.json");
    const json pure = json::parse(run(cmd_roof, o).out);
    CHECK(pure["value"].get<double>() == doctest::Approx(1.0));
    CHECK(pure["restarts_used"] == 0);

    o.input = fixture("product.json");
    o.measure = "negativity";
    const json product = json::parse(run(cmd_roof, o).out);
    CHECK_FALSE(product.contains("oracle"));
    CHECK(product["value"].get<double>() == 0.0);

    o.measure = "entropy";
    CHECK(run(cmd_roof, o).code == kExitInput);
    o.measure = "concurrence";
    o.input = fixture("malformed.json");
    CHECK(run(cmd_roof, o).code == kExitInput);
    o.input = fixture("werner_0.5.json");
    o.restarts = 0;
    CHECK(run(cmd_roof, o).code == kExitInput);

    SUBCASE("more restarts never raise the value") {
        o.restarts = 2;
        o.input = fixture("random_rank4.json");
        const double two = json::parse(run(cmd_roof, o).out)["value"].get<double>();
        o.restarts = 32;
        const double many = json::parse(run(cmd_roof, o).out)["value"].get<double>();
        CHECK(many <= two);
    }
    SUBCASE("iteration cap reports non-convergence with exit 1") {
        o.restarts = 1;
        o.max_iterations = 1;
        o.input = fixture("random_rank4.json");
        const Run capped = run(cmd_roof, o);
        CHECK(capped.code == kExitFailed);
        CHECK(json::parse(capped.out)["converged"] == false);
    }
}

TEST_CASE("sample files are deterministic and load back") {
    SampleOptions o;
    o.kind = "schmidt";
    o.dims = "3";
    o.count = 2;
    o.seed = 7;
    const fs::path a = scratch("a");
    const fs::path b = scratch("b");
    o.output_dir = a.string();
    const Run first = run(cmd_sample, o);
    REQUIRE(first.code == kExitOk);
    CHECK(first.out == (a / "schmidt_0000.json").string() + "\n" + (a / "schmidt_0001.json").string() + "\n");
    o.output_dir = b.string();
    REQUIRE(run(cmd_sample, o).code == kExitOk);
    for (const char* name : {"schmidt_0000.json", "schmidt_0001.json"}) {
        CHECK(slurp(a / name) == slurp(b / name));
        CHECK_FALSE(slurp(a / name).empty());
    }
    CHECK(slurp(a / "schmidt_0000.json") != slurp(a / "schmidt_0001.json"));

    SUBCASE("mixed rank one is pure") {
        SampleOptions m;
        m.kind = "mixed";
        m.dims = "2x3";
        m.rank = 1;
        m.output_dir = scratch("rank1").string();
        REQUIRE(run(cmd_sample, m).code == kExitOk);
        const auto rho = std::get<DensityMatrix>(read_state_file(m.output_dir + "/mixed_0000.json"));
        CHECK(std::abs(rho.purity() - 1.0) <= 1e-10);
    }
    SUBCASE("pure 2x3 has six unit-norm amplitudes") {
        SampleOptions p;
        p.kind = "pure";
        p.dims = "2x3";
        p.output_dir = scratch("pure").string();
        REQUIRE(run(cmd_sample, p).code == kExitOk);
        const json j = json::parse(slurp(fs::path(p.output_dir) / "pure_0000.json"));
        REQUIRE(j["data"].size() == 6);
        double n2 = 0.0;
        for (const auto& z : j["data"]) n2 += z[0].get<double>() * z[0].get<double>() + z[1].get<double>() * z[1].get<double>();
        CHECK(std::abs(n2 - 1.0) <= 1e-12);
    }
    SUBCASE("every kind and dimension up to 6x6 survives measure") {
        for (const char* kind : {"pure", "mixed", "schmidt"})
            for (const char* dims : {"2", "2x3", "3x5", "4", "6", "6x2"}) {
                SampleOptions s;
                s.kind = kind;
                s.dims = dims;
                s.count = 2;
                s.seed = 99;
                s.output_dir = scratch(std::string("rt_") + kind + dims).string();
                const Run made = run(cmd_sample, s);
                REQUIRE(made.code == kExitOk);
                std::istringstream paths(made.out);
                std::string path;
                while (std::getline(paths, path)) {
                    CAPTURE(path);
                    CHECK(measure(path).code == kExitOk);
                }
            }
    }
    SUBCASE("input errors") {
        SampleOptions bad;
        bad.kind = "bell";
        CHECK(run(cmd_sample, bad).code == kExitInput);
        bad.kind = "mixed";
        bad.dims = "2";
        bad.rank = 5;
        CHECK(run(cmd_sample, bad).code == kExitInput);
        bad.rank = 0;
        bad.dims = "0";
        CHECK(run(cmd_sample, bad).code == kExitInput);
        bad.dims = "2,3";
        CHECK(run(cmd_sample, bad).code == kExitInput);
    }
}
