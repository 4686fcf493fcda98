#include <doctest.h>

#include "qent/errors.hpp"
#include "qent/random.hpp"
#include "qent/state_io.hpp"
#include "test_util.hpp"

using namespace qent;
using nlohmann::json;

TEST_CASE("state round trips are exact") {
    const PureState psi = random_pure_state(BipartiteDims(2, 3), 4);
    const auto back = std::get<PureState>(state_from_json(json::parse(state_to_json(psi).dump())));
    CHECK(back.dims() == psi.dims());
    CHECK(std::equal(back.amplitudes().begin(), back.amplitudes().end(), psi.amplitudes().begin()));

    const auto rho = random_mixed_state(BipartiteDims(3, 2), 3, 8);
    const auto rho_back = std::get<DensityMatrix>(state_from_json(json::parse(state_to_json(rho).dump())));
    CHECK(test::max_diff(rho_back.matrix(), rho.matrix()) <= 1e-15);

    const SchmidtForm k = random_schmidt_vector(4, 2);
    const SchmidtForm k_back = schmidt_from_json(json::parse(schmidt_to_json(k).dump()));
    CHECK(std::equal(k.k().begin(), k.k().end(), k_back.k().begin()));
}

TEST_CASE("schmidt files load as d x d states") {
    const json j{{"kind", "schmidt"}, {"d", 2}, {"k", {0.6, 0.8}}};
    const auto psi = std::get<PureState>(state_from_json(j));
    CHECK(psi.dims() == BipartiteDims(2, 2));
    CHECK(psi.amplitude(0, 0) == Complex(0.8));
    CHECK(psi.amplitude(1, 1) == Complex(0.6));
}

TEST_CASE("structural errors are FormatError, invariant errors are not") {
    const json c0 = json::array({0.0, 0.0});
    const json c1 = json::array({1.0, 0.0});
    CHECK_THROWS_AS(state_from_json(json::array()), FormatError);
    CHECK_THROWS_AS(state_from_json(json{{"dims", {2, 2}}}), FormatError);
    CHECK_THROWS_AS(state_from_json(json{{"kind", 3}}), FormatError);
    CHECK_THROWS_AS(state_from_json(json{{"kind", "pure"}, {"dims", {2, 2}}, {"data", {c1, c0, c0}}}), FormatError);
    CHECK_THROWS_AS(state_from_json(json{{"kind", "pure"}, {"dims", {0, 2}}, {"data", json::array()}}), FormatError);
    CHECK_THROWS_AS(state_from_json(json{{"kind", "pure"}, {"dims", {2.5, 2}}, {"data", json::array()}}), FormatError);
    CHECK_THROWS_AS(state_from_json(json{{"kind", "pure"}, {"dims", {1, 1}}, {"data", {"x"}}}), FormatError);
    CHECK_THROWS_AS(state_from_json(json{{"kind", "mixed"}, {"dims", {1, 2}}, {"data", {{c1, c0}, {c0}}}}), FormatError);
    CHECK_THROWS_AS(state_from_json(json{{"kind", "schmidt"}, {"d", 2}, {"k", {1.0}}}), FormatError);
    CHECK_THROWS_AS(state_from_json(json{{"kind", "other"}, {"dims", {1, 1}}, {"data", {c1}}}), FormatError);
    CHECK_THROWS_AS(state_from_json(json{{"kind", "pure"}, {"dims", {1, 2}}, {"data", {c1, c1}}}), InvariantError);
    CHECK_THROWS_AS(read_state_file("/nonexistent/state.json"), FormatError);
}

TEST_CASE("measure report JSON fields") {
    const double r2 = 1.0 / std::sqrt(2.0);
    const json j = report_to_json(measure_report(PureState(BipartiteDims(2, 2), {r2, 0.0, 0.0, r2})));
    for (const char* key : {"kind", "dims", "d", "schmidt", "concurrence", "negativity", "negativity_trace_norm",
                            "negativity_rescaled", "x_expectations", "invariants", "chen_gap", "qutrit_residual",
                            "quadrit_residual_corrected", "quadrit_residual_printed", "ppt_class", "negative_eigenvalues"})
        CHECK(j.contains(key));
    CHECK(j["concurrence"].get<double>() == doctest::Approx(1.0));
    CHECK(j["negativity"].get<double>() == doctest::Approx(1.0));
    CHECK(j["ppt_class"] == "NPT");
    CHECK(j["qutrit_residual"].is_null());

    const json m = report_to_json(measure_report(DensityMatrix(BipartiteDims(2, 2), ComplexMatrix::identity(4) * Complex(0.25))));
    CHECK(m["kind"] == "mixed");
    CHECK(m["concurrence"].is_null());
    CHECK(std::abs(m["negativity"].get<double>()) <= 1e-12);
    CHECK(m["ppt_class"] == "PPT");

    const std::string csv = report_to_csv(measure_report(PureState(BipartiteDims(2, 2), {r2, 0.0, 0.0, r2})));
    CHECK(csv.rfind("field,value\n", 0) == 0);
    CHECK(csv.find("\nppt_class,NPT\n") != std::string::npos);
}

TEST_CASE("verify report serializations") {
    CampaignConfig cfg;
    cfg.samples = 5;
    cfg.seed = 3;
    const auto report = run_campaign({CheckId::QubitEquality, CheckId::PeresConsistency}, {}, cfg);
    const json j = verify_to_json(report);
    CHECK(j["campaign_id"] == report.campaign_id);
    CHECK(j["master_seed"] == 3);
    CHECK(j["pass"] == true);
    REQUIRE(j["checks"].size() == 3);
    CHECK(j["checks"][0]["check"] == "qubit-equality");
    CHECK(j["checks"][0]["witnesses"] == 2);
    CHECK(j["checks"][2]["dims"] == json::array({2, 3}));
    CHECK(j["checks"][2]["worst_case"]["kind"] == "mixed");

    const std::string csv = verify_to_csv(report);
    CHECK(csv.rfind("check,d,samples,max_residual,tolerance,pass\n", 0) == 0);
    CHECK(csv.find("\nperes-consistency,2x3,5,") != std::string::npos);
    CHECK(csv.find("\nqubit-equality,2,5,") != std::string::npos);
}

TEST_CASE("roof report") {
    RoofResult r;
    r.value = 0.25;
    r.converged = true;
    r.restarts_used = 3;
    r.ensemble.members.push_back({1.0, PureState(BipartiteDims(1, 2), {1.0, 0.0})});
    const json j = roof_to_json(r, RoofMeasure::Negativity, 0.2);
    CHECK(j["measure"] == "negativity");
    CHECK(j["oracle_gap"].get<double>() == doctest::Approx(0.05));
    CHECK(j["ensemble"].size() == 1);
    CHECK_FALSE(roof_to_json(r, RoofMeasure::Concurrence, std::nullopt).contains("oracle"));
}

TEST_CASE("format_real round-trips") {
    for (double x : {0.1, 1.0 / 3.0, -45.0 / 8.0, 1e-300, 6.02214076e23}) CHECK(std::stod(format_real(x)) == x);
}
