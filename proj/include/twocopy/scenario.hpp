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

/**
 * @file
 * Scenario configs, evaluation runs, and reports.
 *
 * A scenario config is one JSON document:
 *
 *     {
 *       "scenario": "phase-averaged",   // see scenario_catalog()
 *       "title": "optional free text",
 *       "seed": 1,
 *       "shots": 100000,                // optional
 *       "phase_points": "exact",        // phase-averaged: "exact", "discretized" or N >= 3
 *       "ket": "psi+",                  // pure-copies
 *       "members": [ ... ],             // de-finetti / pure-de-finetti
 *       "state": [[...], ...],          // custom: 16x16 on (A1,B1,A2,B2)
 *       "decomposition": [ ... ],       // optional, or "logical" for phase-averaged
 *       "tolerance": 1e-9,              // default for expectations
 *       "expect": {"p_a_alice": 0.25, "naive_concurrence": {"value": 1, "tolerance": 1e-12}}
 *     }
 *
 * Complex numbers are a JSON number or a [re, im] pair. Two-qubit kets may
 * also be named: "phi+", "phi-", "psi+", "psi-" or a basis bitstring such as
 * "01". Members are {"weight": w, "ket": ...} or {"weight": w, "density": M},
 * where M is a 4x4 complex matrix or "maximally-mixed".
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "twocopy/protocol.hpp"

namespace twocopy {

enum class ScenarioKind {
    pure_copies,
    de_finetti,
    pure_de_finetti,
    phase_averaged,
    eve_antisym,
    eve_sym,
    custom
};

struct ScenarioInfo {
    ScenarioKind kind;
    const char *name;
    const char *description;
};

const std::vector<ScenarioInfo> &scenario_catalog();
std::string to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_from_name(const std::string &name);

/// Configuration errors, one message per violation.
class ConfigError : public Error {
  public:
    explicit ConfigError(std::vector<std::string> violations);
    [[nodiscard]] const std::vector<std::string> &violations() const noexcept {
        return violations_;
    }

  private:
    std::vector<std::string> violations_;
};

struct WeightedAmplitudes {
    double weight = 0.0;
    Vector amplitudes;
};

struct WeightedMatrix {
    double weight = 0.0;
    Matrix density;
};

struct Expectation {
    std::string field;
    double value = 0.0;
    double tolerance = 0.0;
};

/// Names accepted in "expect".
const std::vector<std::string> &expectation_fields();

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::custom;
    std::string title;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> shots;
    /// Phase-averaged only; empty means the exact closed form.
    std::optional<int> phase_points;
    /// pure-copies.
    Vector ket;
    /// de-finetti.
    std::vector<WeightedMatrix> mixed_members;
    /// pure-de-finetti.
    std::vector<WeightedAmplitudes> pure_members;
    /// custom.
    Matrix state;
    /// Optional decomposition of the two-copy state across (A1,A2)|(B1,B2).
    std::optional<std::vector<WeightedAmplitudes>> decomposition;
    double tolerance = 1e-9;
    std::vector<Expectation> expectations;
};

/// Canonical JSON form; parse_config(config_to_json(c)) reproduces c.
nlohmann::json config_to_json(const ScenarioConfig &config);
bool operator==(const ScenarioConfig &a, const ScenarioConfig &b);

ScenarioConfig parse_config(const nlohmann::json &document);
/// Parses JSON text; syntax errors are reported as ConfigError.
ScenarioConfig parse_config(const std::string &text);
inline ScenarioConfig parse_config(const char *text) { return parse_config(std::string(text)); }

/// The two-copy state a config describes.
TwoCopyState build_state(const ScenarioConfig &config);

struct ClaimResult {
    std::string field;
    double expected = 0.0;
    double tolerance = 0.0;
    std::optional<double> actual;
    bool passed = false;

    friend bool operator==(const ClaimResult &, const ClaimResult &) = default;
};

struct ScenarioReport {
    ScenarioConfig config;
    EstimateVerdict verdict;
    std::optional<ShotRecord> shot_record;
    std::vector<ClaimResult> claims;

    [[nodiscard]] bool all_claims_passed() const;
    friend bool operator==(const ScenarioReport &, const ScenarioReport &) = default;
};

/// Value of a named verdict field, empty when the verdict does not carry it.
std::optional<double> verdict_field(const EstimateVerdict &v, const std::string &field);

ScenarioReport run(const ScenarioConfig &config);

enum class ReportFormat { json, table };

nlohmann::json report_to_json(const ScenarioReport &report);
ScenarioReport report_from_json(const nlohmann::json &document);

/// JSON keeps full double precision; the table rounds to 6 significant digits.
std::string emit_report(const ScenarioReport &report, ReportFormat format);

} // namespace twocopy
