// Copyright 2026 The twocopy Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "test_support.hpp"
#include "twocopy/random.hpp"
#include "twocopy/scenario.hpp"

using namespace twocopy;
using nlohmann::json;
using twocopy::testing::max_abs_diff;

namespace {

/// Every violation message of a rejected config, or an empty list if it parsed.
std::vector<std::string> violations_of(const std::string &text) {
    try {
        (void)parse_config(text);
    } catch (const ConfigError &e) {
        return e.violations();
    }
    return {};
}

bool mentions(const std::vector<std::string> &msgs, const std::string &needle) {
    return std::any_of(msgs.begin(), msgs.end(),
                       [&](const auto &m) { return m.find(needle) != std::string::npos; });
}

json state_to_json(const Matrix &m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        out.push_back(row);
    }
    return out;
}

} // namespace

TEST(Catalog, NamesRoundTrip) {
    EXPECT_EQ(scenario_catalog().size(), 7U);
    for (const auto &info : scenario_catalog()) {
        EXPECT_EQ(scenario_from_name(info.name), info.kind);
        EXPECT_EQ(to_string(info.kind), info.name);
    }
    EXPECT_FALSE(scenario_from_name("werner").has_value());
}

TEST(ParseConfig, MinimalPhaseAveraged) {
    const auto c = parse_config(R"({"scenario": "phase-averaged", "phase_points": "exact", "seed": 1})");
    EXPECT_EQ(c.kind, ScenarioKind::phase_averaged);
    EXPECT_FALSE(c.phase_points.has_value());
    EXPECT_EQ(c.seed, 1U);
    ASSERT_TRUE(c.decomposition.has_value());
    EXPECT_EQ(c.decomposition->size(), 3U);
}

TEST(ParseConfig, PhasePointsForms) {
    EXPECT_EQ(parse_config(R"({"scenario": "phase-averaged", "phase_points": "discretized"})").phase_points,
              kDefaultPhasePoints);
    EXPECT_EQ(parse_config(R"({"scenario": "phase-averaged", "phase_points": 5})").phase_points, 5);
    EXPECT_TRUE(mentions(violations_of(R"({"scenario": "phase-averaged", "phase_points": 2})"),
                         "$.phase_points"));
}

TEST(ParseConfig, UnnormalizedWeightsRejected) {
    const auto v = violations_of(R"({
        "scenario": "pure-de-finetti",
        "members": [{"weight": 0.7, "ket": "phi+"}, {"weight": 0.7, "ket": "01"}]})");
    ASSERT_EQ(v.size(), 1U);
    EXPECT_TRUE(mentions(v, "normalized"));
    EXPECT_TRUE(mentions(violations_of(R"({
        "scenario": "de-finetti",
        "members": [{"weight": 0.7, "density": "maximally-mixed"},
                    {"weight": 0.7, "density": "maximally-mixed"}]})"),
                         "normalized"));
}

TEST(ParseConfig, ReportsEveryViolation) {
    const auto v = violations_of(R"({
        "scenario": "pure-copies",
        "ket": [1, 0, 0],
        "seed": -4,
        "shots": 0,
        "colour": "blue",
        "expect": {"not_a_field": 1}})");
    EXPECT_TRUE(mentions(v, "$.ket"));
    EXPECT_TRUE(mentions(v, "$.seed"));
    EXPECT_TRUE(mentions(v, "$.shots"));
    EXPECT_TRUE(mentions(v, "$.colour"));
    EXPECT_TRUE(mentions(v, "$.expect.not_a_field"));
    EXPECT_EQ(v.size(), 5U);
}

TEST(ParseConfig, UnknownScenarioAndMalformedInput) {
    EXPECT_TRUE(mentions(violations_of(R"({"scenario": "werner"})"), "unknown scenario"));
    EXPECT_TRUE(mentions(violations_of(R"({"seed": 1})"), "missing scenario"));
    EXPECT_TRUE(mentions(violations_of("{not json"), "malformed JSON"));
    EXPECT_TRUE(mentions(violations_of("[1, 2]"), "JSON object"));
}

TEST(ParseConfig, MalformedAmplitudes) {
    EXPECT_TRUE(mentions(violations_of(R"({"scenario": "pure-copies", "ket": [1, "x", 0, 0]})"),
                         "malformed complex"));
    EXPECT_TRUE(mentions(violations_of(R"({"scenario": "pure-copies", "ket": [1, 1, 0, 0]})"),
                         "norm"));
    EXPECT_TRUE(mentions(violations_of(R"({"scenario": "pure-copies", "ket": "chi"})"),
                         "unknown ket"));
    EXPECT_TRUE(mentions(violations_of(R"({"scenario": "pure-copies"})"), "required"));
}

TEST(ParseConfig, ComplexAmplitudesAndSmallNormSlack) {
    const auto c = parse_config(
        R"({"scenario": "pure-copies", "ket": [0, [0.7071068, 0], [0, -0.7071068], 0]})");
    EXPECT_NEAR(c.ket.norm(), 1.0, 1e-15);
    EXPECT_NEAR(c.ket(2).imag(), -1.0 / std::sqrt(2.0), 1e-12);
}

TEST(ParseConfig, KeysForOtherScenariosRejected) {
    const auto v = violations_of(R"({"scenario": "eve-sym", "ket": "phi+", "phase_points": 4})");
    EXPECT_TRUE(mentions(v, "$.ket"));
    EXPECT_TRUE(mentions(v, "$.phase_points"));
    EXPECT_TRUE(mentions(violations_of(R"({"scenario": "eve-sym", "decomposition": "logical"})"),
                         "logical"));
}

TEST(ParseConfig, CustomStateIsValidated) {
    CounterRng rng(31);
    const auto rho = random_density(two_copy_layout(), rng);
    json doc{{"scenario", "custom"}, {"state", state_to_json(rho.matrix())}};
    const auto c = parse_config(doc);
    EXPECT_LT(max_abs_diff(c.state, rho.matrix()), 1e-15);
    EXPECT_TRUE(validate_density(build_state(c).density().matrix()).passed);

    Matrix bad = rho.matrix();
    bad(0, 0) += 0.5;
    doc["state"] = state_to_json(bad);
    EXPECT_THROW((void)parse_config(doc), ConfigError);
}

TEST(ParseConfig, ExpectationForms) {
    const auto c = parse_config(R"({
        "scenario": "eve-antisym", "tolerance": 1e-6,
        "expect": {"p_a_alice": 1, "estimator_valid": false,
                   "naive_concurrence": {"value": 2, "tolerance": 1e-12}}})");
    ASSERT_EQ(c.expectations.size(), 3U);
    for (const auto &e : c.expectations) {
        if (e.field == "naive_concurrence") {
            EXPECT_EQ(e.tolerance, 1e-12);
        } else {
            EXPECT_EQ(e.tolerance, 1e-6);
        }
        if (e.field == "estimator_valid") {
            EXPECT_EQ(e.value, 0.0);
        }
    }
}

TEST(ConfigJson, RoundTrips) {
    for (const char *text : {
             R"({"scenario": "phase-averaged", "phase_points": 8, "shots": 50, "title": "t"})",
             R"({"scenario": "pure-copies", "ket": "psi-", "expect": {"p_a_bob": 0.25}})",
             R"({"scenario": "de-finetti", "members": [{"weight": 1, "density": "maximally-mixed"}]})",
             R"({"scenario": "pure-de-finetti", "members": [{"weight": 0.5, "ket": "00"}, {"weight": 0.5, "ket": [0, 0, 0, [0, 1]]}]})",
             R"({"scenario": "eve-sym"})",
         }) {
        const auto c = parse_config(std::string(text));
        EXPECT_EQ(parse_config(config_to_json(c)), c) << text;
    }
}

TEST(Run, CompletelyMixedReport) {
    const auto r = run(parse_config(
        R"({"scenario": "de-finetti", "members": [{"weight": 1, "density": "maximally-mixed"}]})"));
    EXPECT_NEAR(r.verdict.naive_concurrence, 1.0, 1e-12);
    EXPECT_NEAR(r.verdict.truth_single_copy_concurrence, 0.0, 1e-10);
    EXPECT_FALSE(r.shot_record.has_value());
}

TEST(Run, EveAntisymmetricFlagged) {
    const auto r = run(parse_config(R"({"scenario": "eve-antisym"})"));
    EXPECT_FALSE(r.verdict.estimator_valid);
    EXPECT_NEAR(r.verdict.naive_concurrence, 2.0, 1e-12);
}

TEST(Run, BellCopiesNaiveEqualsTruth) {
    const auto r = run(parse_config(R"({"scenario": "pure-copies", "ket": "phi+"})"));
    EXPECT_NEAR(r.verdict.naive_concurrence, 1.0, 1e-12);
    EXPECT_NEAR(r.verdict.truth_single_copy_concurrence, 1.0, 1e-10);
}

TEST(Run, ClaimsPassAndFail) {
    const auto r = run(parse_config(R"({
        "scenario": "phase-averaged",
        "expect": {"truth_decomposition_bound": 0.5, "naive_concurrence": 0.9}})"));
    ASSERT_EQ(r.claims.size(), 2U);
    EXPECT_FALSE(r.all_claims_passed());
    for (const auto &c : r.claims) {
        EXPECT_EQ(c.passed, c.field == "truth_decomposition_bound");
    }
}

TEST(Run, MissingFieldFailsClaim) {
    const auto r = run(parse_config(
        R"({"scenario": "eve-sym", "expect": {"truth_decomposition_bound": 0}})"));
    ASSERT_EQ(r.claims.size(), 1U);
    EXPECT_FALSE(r.claims[0].actual.has_value());
    EXPECT_FALSE(r.claims[0].passed);
}

TEST(Run, DeterministicWithShots) {
    const auto c = parse_config(R"({"scenario": "de-finetti", "seed": 9, "shots": 20000,
        "members": [{"weight": 1, "density": "maximally-mixed"}]})");
    const auto a = run(c);
    const auto b = run(c);
    EXPECT_EQ(a, b);
    ASSERT_TRUE(a.shot_record.has_value());
    EXPECT_EQ(a.shot_record->seed, 9U);
    EXPECT_EQ(emit_report(a, ReportFormat::json), emit_report(b, ReportFormat::json));
}

TEST(Run, WrongDecompositionNamesScenario) {
    json doc{{"scenario", "eve-sym"},
             {"decomposition", json::array({{{"weight", 1.0},
                                             {"ket", json::array({1, 0, 0, 0, 0, 0, 0, 0, 0, 0,
                                                                  0, 0, 0, 0, 0, 0})}}})}};
    try {
        (void)run(parse_config(doc));
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_NE(std::string(e.what()).find("eve-sym"), std::string::npos);
    }
}

TEST(Report, JsonRoundTripIsLossless) {
    CounterRng rng(32);
    const auto rho = random_density(two_copy_layout(), rng);
    std::vector<ScenarioConfig> configs{
        parse_config(R"({"scenario": "phase-averaged", "shots": 1000, "expect": {"p_aa": 0.25}})"),
        parse_config(json{{"scenario", "custom"}, {"state", state_to_json(rho.matrix())}, {"seed", 5},
                          {"shots", 77}}),
        parse_config(R"({"scenario": "eve-antisym", "expect": {"estimator_valid": true}})"),
    };
    for (const auto &c : configs) {
        const auto r = run(c);
        const auto text = emit_report(r, ReportFormat::json);
        EXPECT_EQ(report_from_json(json::parse(text)), r);
    }
}

TEST(Report, PhaseAveragedTableRows) {
    const auto table = emit_report(run(parse_config(R"({"scenario": "phase-averaged"})")),
                                   ReportFormat::table);
    EXPECT_NE(table.find("p_a_alice                      0.250000"), std::string::npos) << table;
    EXPECT_NE(table.find("naive_concurrence              1.00000"), std::string::npos);
    EXPECT_NE(table.find("truth_single_copy_concurrence  0.00000"), std::string::npos);
    EXPECT_NE(table.find("truth_decomposition_bound      0.500000"), std::string::npos);
}

TEST(Report, TableRoundsToSixDigitsJsonKeepsFull) {
    const auto c = parse_config(R"({"scenario": "pure-copies", "ket": [0.6, 0, 0, 0.8]})");
    const auto r = run(c);
    // p_a = C^2 / 4 = 0.2304 exactly up to rounding; 2/3-type values show the cut.
    const auto j = json::parse(emit_report(r, ReportFormat::json));
    EXPECT_EQ(j["verdict"]["p_a_alice"].get<double>(), r.verdict.p_a_alice);
    const auto third = run(parse_config(R"({"scenario": "pure-de-finetti", "members": [
        {"weight": 0.3333333333333333, "ket": "phi+"}, {"weight": 0.6666666666666667, "ket": "00"}]})"));
    const auto table = emit_report(third, ReportFormat::table);
    EXPECT_NE(table.find("0.0833333\n"), std::string::npos) << table;
}

TEST(Report, ShotsIncludeCountsAndSeed) {
    const auto r = run(parse_config(R"({"scenario": "eve-sym", "shots": 123, "seed": 77})"));
    const auto table = emit_report(r, ReportFormat::table);
    EXPECT_NE(table.find("count_ss"), std::string::npos);
    EXPECT_NE(table.find("123"), std::string::npos);
    const auto j = json::parse(emit_report(r, ReportFormat::json));
    EXPECT_EQ(j["shots"]["seed"].get<std::uint64_t>(), 77U);
    EXPECT_EQ(j["shots"]["counts"]["ss"].get<std::uint64_t>(), 123U);
}
