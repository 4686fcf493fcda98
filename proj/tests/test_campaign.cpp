#include <doctest.h>

#include <cmath>

#include "qent/campaign.hpp"
#include "qent/errors.hpp"
#include "qent/state_io.hpp"

using namespace qent;

TEST_CASE("check registry") {
    CHECK(all_checks().size() == 10);
    for (const auto& c : all_checks()) {
        CHECK(parse_check(c.name) == c.id);
        CHECK(check_info(c.id).name == c.name);
        CHECK_FALSE(c.default_dims.empty());
    }
    CHECK_FALSE(parse_check("Chen"));
    CHECK_FALSE(parse_check(""));
}

TEST_CASE("dimension specs") {
    CHECK(parse_dims("3") == std::vector<BipartiteDims>{BipartiteDims(3, 3)});
    CHECK(parse_dims("2x3") == std::vector<BipartiteDims>{BipartiteDims(2, 3)});
    const auto range = parse_dims("2..4");
    REQUIRE(range.size() == 3);
    CHECK(range[2] == BipartiteDims(4, 4));
    CHECK(parse_dims("2x2,2x3,5").size() == 3);
    for (const char* bad : {"", "0", "x3", "2x", "4..2", "2..", "a", "2,,3", "65", "2x3x4", "-1"})
        CHECK_THROWS_AS(parse_dims(bad), ArgumentError);
}

TEST_CASE("witness anchors") {
    CHECK(std::abs(evaluate_residual(CheckId::QuadritPaperPrinted, witnesses(CheckId::QuadritPaperPrinted, BipartiteDims(4, 4))[0]) +
                   45.0 / 8.0) <= 1e-12);
    for (const auto& w : witnesses(CheckId::QutritIdentity, BipartiteDims(3, 3)))
        CHECK(std::abs(evaluate_residual(CheckId::QutritIdentity, w)) <= 1e-12);
    for (const auto& w : witnesses(CheckId::MaxValues, BipartiteDims(5, 5)))
        CHECK(std::abs(evaluate_residual(CheckId::MaxValues, w)) <= 1e-12);
    CHECK(witnesses(CheckId::QubitEquality, BipartiteDims(2, 2)).size() == 2);
    CHECK(witnesses(CheckId::PeresConsistency, BipartiteDims(2, 2)).empty());
}

TEST_CASE("samples are deterministic functions of (seed, index)") {
    const auto a = generate_sample(CheckId::Chen, BipartiteDims(5, 5), 9, 3);
    const auto b = generate_sample(CheckId::Chen, BipartiteDims(5, 5), 9, 3);
    CHECK(sample_to_json(a) == sample_to_json(b));
    CHECK(sample_to_json(a) != sample_to_json(generate_sample(CheckId::Chen, BipartiteDims(5, 5), 9, 4)));
}

TEST_CASE("every check passes on its defaults except the printed quadrit form") {
    CampaignConfig cfg;
    cfg.samples = 200;
    cfg.seed = 5;
    for (const auto& c : all_checks()) {
        for (const auto& d : c.default_dims) {
            const CheckOutcome out = run_check(c.id, d, cfg);
            CAPTURE(c.name);
            CHECK(out.samples == 200);
            if (c.id == CheckId::QuadritPaperPrinted) {
                CHECK_FALSE(out.pass);
                CHECK(std::abs(out.worst_residual) >= 45.0 / 8.0 - 1e-12);
            } else {
                CHECK(out.pass);
            }
        }
    }
}

TEST_CASE("serial and parallel execution agree exactly") {
    CampaignConfig cfg;
    cfg.samples = 300;
    cfg.seed = 77;
    const std::vector<CheckId> ids{CheckId::TracenormVsSchmidt, CheckId::Chen, CheckId::PeresConsistency, CheckId::LuInvariance};
    const auto serial = run_campaign(ids, {}, cfg, Execution::Serial);
    const auto parallel = run_campaign(ids, {}, cfg, Execution::Parallel);
    CHECK(verify_to_json(serial) == verify_to_json(parallel));
}

TEST_CASE("worst cases reproduce their residuals") {
    CampaignConfig cfg;
    cfg.samples = 200;
    cfg.seed = 1;
    const auto report = run_campaign({CheckId::QubitEquality, CheckId::TracenormVsSchmidt, CheckId::QutritIdentity,
                                      CheckId::LuInvariance, CheckId::MaxValues, CheckId::PeresConsistency},
                                     {}, cfg);
    for (const auto& c : report.checks) {
        REQUIRE(c.worst_case);
        // Through the JSON form, as a reader of the report would.
        const Sample back = sample_from_json(nlohmann::json::parse(sample_to_json(*c.worst_case).dump()));
        CHECK(std::abs(evaluate_residual(c.id, back) - c.worst_residual) <= 1e-12);
    }
}

TEST_CASE("fixed-dimension checks ignore requested dims") {
    CampaignConfig cfg;
    cfg.samples = 10;
    const auto report = run_campaign({CheckId::QutritIdentity, CheckId::Chen}, parse_dims("5,6"), cfg);
    REQUIRE(report.checks.size() == 3);
    CHECK(report.checks[0].dims == BipartiteDims(3, 3));
    CHECK(report.checks[1].dims == BipartiteDims(5, 5));
    CHECK(report.checks[2].dims == BipartiteDims(6, 6));
}

TEST_CASE("tolerance override and campaign id") {
    CampaignConfig cfg;
    cfg.samples = 20;
    cfg.tolerance = 10.0;
    const auto loose = run_campaign({CheckId::QuadritPaperPrinted}, {}, cfg);
    CHECK(loose.all_pass());
    CHECK(loose.campaign_id.rfind("verify-", 0) == 0);
    CHECK(loose.campaign_id.size() == 7 + 16);
    cfg.tolerance.reset();
    CHECK(run_campaign({CheckId::QuadritPaperPrinted}, {}, cfg).campaign_id != loose.campaign_id);
}

TEST_CASE("zero samples still evaluates witnesses") {
    CampaignConfig cfg;
    cfg.samples = 0;
    const auto out = run_check(CheckId::QuadritPaperPrinted, BipartiteDims(4, 4), cfg);
    CHECK(out.witness_count == 2);
    CHECK_FALSE(out.pass);
}
