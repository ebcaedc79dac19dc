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

#include "twocopy/scenario.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace twocopy {

using nlohmann::json;

namespace {

constexpr double kAmplitudeNormSlack = 1e-6;

const std::vector<ScenarioInfo> kCatalog{
    {ScenarioKind::pure_copies, "pure-copies",
     "two identical pure copies |psi> (x) |psi>; requires \"ket\""},
    {ScenarioKind::de_finetti, "de-finetti",
     "sum_i p_i rho_i (x) rho_i over mixed members; requires \"members\""},
    {ScenarioKind::pure_de_finetti, "pure-de-finetti",
     "sum_i p_i |psi_i><psi_i| (x) |psi_i><psi_i|; requires \"members\" with kets"},
    {ScenarioKind::phase_averaged, "phase-averaged",
     "two copies of (|01> + e^{i phi}|10>)/sqrt 2 averaged over phi; optional \"phase_points\""},
    {ScenarioKind::eve_antisym, "eve-antisym", "adversarial singlets on both pairs (A1,A2), (B1,B2)"},
    {ScenarioKind::eve_sym, "eve-sym", "adversarial symmetric states on both pairs"},
    {ScenarioKind::custom, "custom", "explicit 16x16 density matrix on (A1,B1,A2,B2); requires \"state\""},
};

const std::vector<std::string> kFields{
    "p_a_alice",       "p_a_bob", "naive_concurrence", "estimator_valid",
    "disagreement_prob", "truth_single_copy_concurrence", "truth_decomposition_bound",
    "p_aa",            "p_as",    "p_sa",              "p_ss",
};

const std::vector<std::string> kKnownKeys{
    "scenario", "title", "seed", "shots", "phase_points", "ket", "members",
    "state", "decomposition", "tolerance", "expect",
};

/// Collects violations while walking a config document.
class Parser {
  public:
    std::vector<std::string> errors;

    void fail(const std::string &path, const std::string &message) {
        errors.push_back(path + ": " + message);
    }

    std::optional<Complex<double>> complex_number(const json &j, const std::string &path) {
        if (j.is_number()) {
            return Complex<double>(j.get<double>(), 0.0);
        }
        if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
            return Complex<double>(j[0].get<double>(), j[1].get<double>());
        }
        fail(path, "malformed complex number (expected a number or [re, im])");
        return std::nullopt;
    }

    std::optional<Vector> amplitudes(const json &j, Eigen::Index dim, const std::string &path) {
        if (j.is_string()) {
            if (dim != 4) {
                fail(path, "named kets are only available for two qubits");
                return std::nullopt;
            }
            return named_ket(j.get<std::string>(), path);
        }
        if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) {
            fail(path, "malformed amplitudes: expected an array of " + std::to_string(dim) +
                           " complex numbers");
            return std::nullopt;
        }
        Vector v(dim);
        bool ok = true;
        for (Eigen::Index i = 0; i < dim; ++i) {
            auto c = complex_number(j[static_cast<std::size_t>(i)],
                                    path + "[" + std::to_string(i) + "]");
            if (!c) {
                ok = false;
                continue;
            }
            v(i) = *c;
        }
        if (!ok) {
            return std::nullopt;
        }
        if (!v.allFinite()) {
            fail(path, "malformed amplitudes: non-finite value");
            return std::nullopt;
        }
        const double norm = v.norm();
        if (std::abs(norm - 1.0) > kAmplitudeNormSlack) {
            std::ostringstream os;
            os.precision(12);
            os << "malformed amplitudes: norm " << norm << " (must be 1)";
            fail(path, os.str());
            return std::nullopt;
        }
        if (std::abs(norm - 1.0) > Tolerance<double>::structural) {
            v /= norm;
        }
        return v;
    }

    std::optional<Vector> named_ket(const std::string &name, const std::string &path) {
        static const std::vector<std::pair<std::string, BellState>> bells{
            {"phi+", BellState::phi_plus},
            {"phi-", BellState::phi_minus},
            {"psi+", BellState::psi_plus},
            {"psi-", BellState::psi_minus},
        };
        for (const auto &[n, b] : bells) {
            if (n == name) {
                return bell_ket(b).amplitudes();
            }
        }
        if (name.size() == 2 && (name[0] == '0' || name[0] == '1') &&
            (name[1] == '0' || name[1] == '1')) {
            const std::size_t idx = static_cast<std::size_t>((name[0] - '0') * 2 + (name[1] - '0'));
            return Ket::basis(QubitLayout{"A", "B"}, idx).amplitudes();
        }
        fail(path, "unknown ket name '" + name + "'");
        return std::nullopt;
    }

    std::optional<Matrix> matrix(const json &j, Eigen::Index dim, const std::string &path) {
        if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) {
            fail(path, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                           " matrix");
            return std::nullopt;
        }
        Matrix m(dim, dim);
        bool ok = true;
        for (Eigen::Index r = 0; r < dim; ++r) {
            const auto &row = j[static_cast<std::size_t>(r)];
            const std::string row_path = path + "[" + std::to_string(r) + "]";
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
                fail(row_path, "expected a row of " + std::to_string(dim) + " entries");
                ok = false;
                continue;
            }
            for (Eigen::Index c = 0; c < dim; ++c) {
                auto z = complex_number(row[static_cast<std::size_t>(c)],
                                        row_path + "[" + std::to_string(c) + "]");
                if (!z) {
                    ok = false;
                    continue;
                }
                m(r, c) = *z;
            }
        }
        if (!ok) {
            return std::nullopt;
        }
        return m;
    }

    std::optional<Matrix> density(const json &j, Eigen::Index dim, const std::string &path) {
        if (j.is_string()) {
            if (j.get<std::string>() == "maximally-mixed") {
                return Matrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
            }
            fail(path, "unknown density name '" + j.get<std::string>() + "'");
            return std::nullopt;
        }
        auto m = matrix(j, dim, path);
        if (!m) {
            return std::nullopt;
        }
        const auto report = validate_density<double>(*m);
        if (!report.passed) {
            fail(path, "not a valid density matrix (" + report.describe() + ")");
            return std::nullopt;
        }
        return m;
    }

    std::optional<double> weight(const json &member, const std::string &path) {
        if (!member.contains("weight") || !member["weight"].is_number()) {
            fail(path, "member needs a numeric \"weight\"");
            return std::nullopt;
        }
        const double w = member["weight"].get<double>();
        if (!std::isfinite(w) || w < 0.0) {
            fail(path + ".weight", "weight must be finite and nonnegative");
            return std::nullopt;
        }
        return w;
    }

    void check_weight_sum(const std::vector<double> &weights, const std::string &path) {
        double total = 0.0;
        for (const double w : weights) {
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-10) {
            std::ostringstream os;
            os.precision(12);
            os << "weights sum to " << total << "; they must be normalized to 1";
            fail(path, os.str());
        }
    }

    std::optional<std::vector<WeightedAmplitudes>> pure_members(const json &j, Eigen::Index dim,
                                                                const std::string &path) {
        if (!j.is_array() || j.empty()) {
            fail(path, "expected a nonempty array of members");
            return std::nullopt;
        }
        std::vector<WeightedAmplitudes> out;
        std::vector<double> weights;
        bool ok = true;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string p = path + "[" + std::to_string(i) + "]";
            const auto &m = j[i];
            if (!m.is_object()) {
                fail(p, "member must be an object");
                ok = false;
                continue;
            }
            auto w = weight(m, p);
            std::optional<Vector> v;
            if (!m.contains("ket")) {
                fail(p, "member needs a \"ket\"");
            } else {
                v = amplitudes(m["ket"], dim, p + ".ket");
            }
            if (!w || !v) {
                ok = false;
                continue;
            }
            weights.push_back(*w);
            out.push_back({*w, *v});
        }
        if (!ok) {
            return std::nullopt;
        }
        check_weight_sum(weights, path);
        return out;
    }

    std::optional<std::vector<WeightedMatrix>> mixed_members(const json &j, const std::string &path) {
        if (!j.is_array() || j.empty()) {
            fail(path, "expected a nonempty array of members");
            return std::nullopt;
        }
        std::vector<WeightedMatrix> out;
        std::vector<double> weights;
        bool ok = true;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string p = path + "[" + std::to_string(i) + "]";
            const auto &m = j[i];
            if (!m.is_object()) {
                fail(p, "member must be an object");
                ok = false;
                continue;
            }
            auto w = weight(m, p);
            std::optional<Matrix> rho;
            if (m.contains("density") == m.contains("ket")) {
                fail(p, "member needs exactly one of \"density\" or \"ket\"");
            } else if (m.contains("density")) {
                rho = density(m["density"], 4, p + ".density");
            } else if (auto v = amplitudes(m["ket"], 4, p + ".ket")) {
                rho = Matrix(*v * v->adjoint());
            }
            if (!w || !rho) {
                ok = false;
                continue;
            }
            weights.push_back(*w);
            out.push_back({*w, *rho});
        }
        if (!ok) {
            return std::nullopt;
        }
        check_weight_sum(weights, path);
        return out;
    }
};

/// Nonnegative integer, whether JSON stored it signed or unsigned.
bool is_count(const json &j) {
    return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

json complex_to_json(const Complex<double> &z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const Vector &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_to_json(v(i)));
    }
    return out;
}

json matrix_to_json(const Matrix &m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

json pure_members_to_json(const std::vector<WeightedAmplitudes> &members) {
    json out = json::array();
    for (const auto &m : members) {
        out.push_back({{"weight", m.weight}, {"ket", vector_to_json(m.amplitudes)}});
    }
    return out;
}

std::vector<WeightedKet> to_kets(const std::vector<WeightedAmplitudes> &members,
                                 const QubitLayout &layout) {
    std::vector<WeightedKet> out;
    for (const auto &m : members) {
        out.push_back({m.weight, Ket(layout, m.amplitudes)});
    }
    return out;
}

std::vector<WeightedAmplitudes> logical_decomposition() {
    std::vector<WeightedAmplitudes> out;
    for (const auto &m : phase_state_decomposition()) {
        out.push_back({m.weight, m.state.amplitudes()});
    }
    return out;
}

std::string format_value(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << std::showpoint << v;
    return os.str();
}

std::string format_optional(const std::optional<double> &v) {
    return v ? format_value(*v) : std::string("n/a");
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : Error([&] {
          std::string msg = "invalid scenario config:";
          for (const auto &v : violations) {
              msg += "\n  - " + v;
          }
          return msg;
      }()),
      violations_(std::move(violations)) {}

const std::vector<ScenarioInfo> &scenario_catalog() { return kCatalog; }

std::string to_string(ScenarioKind kind) {
    for (const auto &info : kCatalog) {
        if (info.kind == kind) {
            return info.name;
        }
    }
    return "custom";
}

std::optional<ScenarioKind> scenario_from_name(const std::string &name) {
    for (const auto &info : kCatalog) {
        if (name == info.name) {
            return info.kind;
        }
    }
    return std::nullopt;
}

const std::vector<std::string> &expectation_fields() { return kFields; }

json config_to_json(const ScenarioConfig &c) {
    json j;
    j["scenario"] = to_string(c.kind);
    if (!c.title.empty()) {
        j["title"] = c.title;
    }
    j["seed"] = c.seed;
    if (c.shots) {
        j["shots"] = *c.shots;
    }
    j["tolerance"] = c.tolerance;
    switch (c.kind) {
    case ScenarioKind::pure_copies:
        j["ket"] = vector_to_json(c.ket);
        break;
    case ScenarioKind::de_finetti: {
        json members = json::array();
        for (const auto &m : c.mixed_members) {
            members.push_back({{"weight", m.weight}, {"density", matrix_to_json(m.density)}});
        }
        j["members"] = std::move(members);
        break;
    }
    case ScenarioKind::pure_de_finetti:
        j["members"] = pure_members_to_json(c.pure_members);
        break;
    case ScenarioKind::phase_averaged:
        if (c.phase_points) {
            j["phase_points"] = *c.phase_points;
        } else {
            j["phase_points"] = "exact";
        }
        break;
    case ScenarioKind::custom:
        j["state"] = matrix_to_json(c.state);
        break;
    case ScenarioKind::eve_antisym:
    case ScenarioKind::eve_sym:
        break;
    }
    if (c.decomposition) {
        j["decomposition"] = pure_members_to_json(*c.decomposition);
    }
    if (!c.expectations.empty()) {
        json expect = json::object();
        for (const auto &e : c.expectations) {
            expect[e.field] = {{"value", e.value}, {"tolerance", e.tolerance}};
        }
        j["expect"] = std::move(expect);
    }
    return j;
}

bool operator==(const ScenarioConfig &a, const ScenarioConfig &b) {
    return config_to_json(a) == config_to_json(b);
}

ScenarioConfig parse_config(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
    return parse_config(doc);
}

ScenarioConfig parse_config(const json &doc) {
    Parser p;
    ScenarioConfig c;
    if (!doc.is_object()) {
        throw ConfigError({"$: config must be a JSON object"});
    }
    for (const auto &[key, value] : doc.items()) {
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
            p.fail("$." + key, "unknown key");
        }
    }

    bool have_kind = false;
    if (!doc.contains("scenario") || !doc["scenario"].is_string()) {
        p.fail("$.scenario", "missing scenario name");
    } else if (auto kind = scenario_from_name(doc["scenario"].get<std::string>())) {
        c.kind = *kind;
        have_kind = true;
    } else {
        p.fail("$.scenario", "unknown scenario name '" + doc["scenario"].get<std::string>() + "'");
    }

    if (doc.contains("title")) {
        if (doc["title"].is_string()) {
            c.title = doc["title"].get<std::string>();
        } else {
            p.fail("$.title", "must be a string");
        }
    }
    if (doc.contains("seed")) {
        if (is_count(doc["seed"])) {
            c.seed = doc["seed"].get<std::uint64_t>();
        } else {
            p.fail("$.seed", "must be a nonnegative integer");
        }
    }
    if (doc.contains("shots")) {
        if (is_count(doc["shots"]) && doc["shots"].get<std::uint64_t>() > 0) {
            c.shots = doc["shots"].get<std::uint64_t>();
        } else {
            p.fail("$.shots", "must be a positive integer");
        }
    }
    if (doc.contains("tolerance")) {
        if (doc["tolerance"].is_number() && doc["tolerance"].get<double>() >= 0.0) {
            c.tolerance = doc["tolerance"].get<double>();
        } else {
            p.fail("$.tolerance", "must be a nonnegative number");
        }
    }

    auto need = [&](const char *key) {
        if (!doc.contains(key)) {
            p.fail(std::string("$.") + key, "required by scenario '" + to_string(c.kind) + "'");
            return false;
        }
        return true;
    };
    auto forbid = [&](const char *key) {
        if (doc.contains(key)) {
            p.fail(std::string("$.") + key, "not used by scenario '" + to_string(c.kind) + "'");
        }
    };

    if (have_kind) {
        const bool phase = c.kind == ScenarioKind::phase_averaged;
        if (c.kind != ScenarioKind::pure_copies) {
            forbid("ket");
        }
        if (c.kind != ScenarioKind::de_finetti && c.kind != ScenarioKind::pure_de_finetti) {
            forbid("members");
        }
        if (c.kind != ScenarioKind::custom) {
            forbid("state");
        }
        if (!phase) {
            forbid("phase_points");
        }
        switch (c.kind) {
        case ScenarioKind::pure_copies:
            if (need("ket")) {
                if (auto v = p.amplitudes(doc["ket"], 4, "$.ket")) {
                    c.ket = *v;
                }
            }
            break;
        case ScenarioKind::de_finetti:
            if (need("members")) {
                if (auto m = p.mixed_members(doc["members"], "$.members")) {
                    c.mixed_members = std::move(*m);
                }
            }
            break;
        case ScenarioKind::pure_de_finetti:
            if (need("members")) {
                if (auto m = p.pure_members(doc["members"], 4, "$.members")) {
                    c.pure_members = std::move(*m);
                }
            }
            break;
        case ScenarioKind::phase_averaged:
            if (doc.contains("phase_points")) {
                const auto &pp = doc["phase_points"];
                if (pp.is_string() && pp.get<std::string>() == "exact") {
                    c.phase_points.reset();
                } else if (pp.is_string() && pp.get<std::string>() == "discretized") {
                    c.phase_points = kDefaultPhasePoints;
                } else if (pp.is_number_integer() && pp.get<long long>() >= 3 &&
                           pp.get<long long>() <= 1'000'000) {
                    c.phase_points = static_cast<int>(pp.get<long long>());
                } else {
                    p.fail("$.phase_points",
                           "must be \"exact\", \"discretized\" or an integer >= 3");
                }
            }
            break;
        case ScenarioKind::custom:
            if (need("state")) {
                if (auto m = p.density(doc["state"], 16, "$.state")) {
                    c.state = *m;
                }
            }
            break;
        case ScenarioKind::eve_antisym:
        case ScenarioKind::eve_sym:
            break;
        }

        if (doc.contains("decomposition")) {
            const auto &d = doc["decomposition"];
            if (d.is_string()) {
                if (d.get<std::string>() == "logical" && phase) {
                    c.decomposition = logical_decomposition();
                } else {
                    p.fail("$.decomposition",
                           "named decomposition \"logical\" is only available for phase-averaged");
                }
            } else if (auto m = p.pure_members(d, 16, "$.decomposition")) {
                c.decomposition = std::move(*m);
            }
        } else if (phase) {
            c.decomposition = logical_decomposition();
        }
    }

    if (doc.contains("expect")) {
        const auto &e = doc["expect"];
        if (!e.is_object()) {
            p.fail("$.expect", "must be an object");
        } else {
            for (const auto &[field, spec] : e.items()) {
                const std::string path = "$.expect." + field;
                if (std::find(kFields.begin(), kFields.end(), field) == kFields.end()) {
                    p.fail(path, "unknown field");
                    continue;
                }
                Expectation x{field, 0.0, c.tolerance};
                const json *value = &spec;
                if (spec.is_object()) {
                    if (!spec.contains("value")) {
                        p.fail(path, "needs \"value\"");
                        continue;
                    }
                    value = &spec["value"];
                    if (spec.contains("tolerance")) {
                        if (spec["tolerance"].is_number() && spec["tolerance"].get<double>() >= 0.0) {
                            x.tolerance = spec["tolerance"].get<double>();
                        } else {
                            p.fail(path + ".tolerance", "must be a nonnegative number");
                            continue;
                        }
                    }
                }
                if (value->is_boolean()) {
                    x.value = value->get<bool>() ? 1.0 : 0.0;
                } else if (value->is_number()) {
                    x.value = value->get<double>();
                } else {
                    p.fail(path, "expected a number or boolean");
                    continue;
                }
                c.expectations.push_back(std::move(x));
            }
        }
    }

    if (!p.errors.empty()) {
        throw ConfigError(std::move(p.errors));
    }
    return c;
}

TwoCopyState build_state(const ScenarioConfig &c) {
    const QubitLayout pair{"A", "B"};
    switch (c.kind) {
    case ScenarioKind::pure_copies:
        return identical_pure_copies(Ket(pair, c.ket));
    case ScenarioKind::de_finetti: {
        std::vector<WeightedDensity> members;
        for (const auto &m : c.mixed_members) {
            members.push_back({m.weight, DensityOperator(pair, m.density)});
        }
        return de_finetti_state(DeFinettiEnsemble(std::move(members)));
    }
    case ScenarioKind::pure_de_finetti:
        return pure_de_finetti_state(PureEnsemble(to_kets(c.pure_members, pair)));
    case ScenarioKind::phase_averaged:
        return c.phase_points ? phase_averaged_state(*c.phase_points) : phase_averaged_state();
    case ScenarioKind::eve_antisym:
        return eve_state(Symmetry::antisymmetric);
    case ScenarioKind::eve_sym:
        return eve_state(Symmetry::symmetric);
    case ScenarioKind::custom:
        return {DensityOperator(two_copy_layout(), c.state), Provenance::custom};
    }
    throw Error("unhandled scenario kind");
}

std::optional<double> verdict_field(const EstimateVerdict &v, const std::string &field) {
    if (field == "p_a_alice") return v.p_a_alice;
    if (field == "p_a_bob") return v.p_a_bob;
    if (field == "naive_concurrence") return v.naive_concurrence;
    if (field == "estimator_valid") return v.estimator_valid ? 1.0 : 0.0;
    if (field == "disagreement_prob") return v.disagreement_prob;
    if (field == "truth_single_copy_concurrence") return v.truth_single_copy_concurrence;
    if (field == "truth_decomposition_bound") return v.truth_decomposition_bound;
    if (field == "p_aa") return v.joint.p_aa;
    if (field == "p_as") return v.joint.p_as;
    if (field == "p_sa") return v.joint.p_sa;
    if (field == "p_ss") return v.joint.p_ss;
    throw Error("unknown verdict field '" + field + "'");
}

bool ScenarioReport::all_claims_passed() const {
    return std::all_of(claims.begin(), claims.end(), [](const auto &c) { return c.passed; });
}

ScenarioReport run(const ScenarioConfig &config) {
    try {
        ScenarioReport report;
        report.config = config;
        const TwoCopyState state = build_state(config);
        ScenarioOptions options;
        if (config.decomposition) {
            options.decomposition = to_kets(*config.decomposition, two_copy_layout());
        }
        report.verdict = evaluate_scenario(state, options);
        if (config.shots) {
            report.shot_record = sample_outcomes(report.verdict.joint, *config.shots, config.seed);
        }
        for (const auto &e : config.expectations) {
            ClaimResult claim{e.field, e.value, e.tolerance, verdict_field(report.verdict, e.field),
                              false};
            claim.passed = claim.actual && std::abs(*claim.actual - e.value) <= e.tolerance;
            report.claims.push_back(std::move(claim));
        }
        return report;
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw Error("scenario '" + to_string(config.kind) + "': " + e.what());
    }
}

json report_to_json(const ScenarioReport &r) {
    const auto &v = r.verdict;
    json verdict{
        {"p_a_alice", v.p_a_alice},
        {"p_a_bob", v.p_a_bob},
        {"naive_concurrence", v.naive_concurrence},
        {"estimator_valid", v.estimator_valid},
        {"disagreement_prob", v.disagreement_prob},
        {"truth_single_copy_concurrence", v.truth_single_copy_concurrence},
        {"truth_decomposition_bound",
         v.truth_decomposition_bound ? json(*v.truth_decomposition_bound) : json(nullptr)},
        {"joint_distribution",
         {{"aa", v.joint.p_aa}, {"as", v.joint.p_as}, {"sa", v.joint.p_sa}, {"ss", v.joint.p_ss}}},
    };
    json j{{"config", config_to_json(r.config)}, {"verdict", std::move(verdict)}};
    if (r.shot_record) {
        json counts = json::object();
        for (std::size_t i = 0; i < 4; ++i) {
            counts[kOutcomeNames[i]] = r.shot_record->counts[i];
        }
        j["shots"] = {{"shots", r.shot_record->shots},
                      {"seed", r.shot_record->seed},
                      {"counts", std::move(counts)}};
    }
    json claims = json::array();
    for (const auto &c : r.claims) {
        claims.push_back({{"field", c.field},
                          {"expected", c.expected},
                          {"tolerance", c.tolerance},
                          {"actual", c.actual ? json(*c.actual) : json(nullptr)},
                          {"passed", c.passed}});
    }
    j["claims"] = std::move(claims);
    j["all_claims_passed"] = r.all_claims_passed();
    return j;
}

ScenarioReport report_from_json(const json &j) {
    try {
        ScenarioReport r;
        r.config = parse_config(j.at("config"));
        const auto &v = j.at("verdict");
        r.verdict.p_a_alice = v.at("p_a_alice").get<double>();
        r.verdict.p_a_bob = v.at("p_a_bob").get<double>();
        r.verdict.naive_concurrence = v.at("naive_concurrence").get<double>();
        r.verdict.estimator_valid = v.at("estimator_valid").get<bool>();
        r.verdict.disagreement_prob = v.at("disagreement_prob").get<double>();
        r.verdict.truth_single_copy_concurrence =
            v.at("truth_single_copy_concurrence").get<double>();
        if (!v.at("truth_decomposition_bound").is_null()) {
            r.verdict.truth_decomposition_bound = v.at("truth_decomposition_bound").get<double>();
        }
        const auto &d = v.at("joint_distribution");
        r.verdict.joint = {d.at("aa").get<double>(), d.at("as").get<double>(),
                           d.at("sa").get<double>(), d.at("ss").get<double>()};
        if (j.contains("shots")) {
            const auto &s = j.at("shots");
            ShotRecord rec;
            rec.shots = s.at("shots").get<std::uint64_t>();
            rec.seed = s.at("seed").get<std::uint64_t>();
            for (std::size_t i = 0; i < 4; ++i) {
                rec.counts[i] = s.at("counts").at(kOutcomeNames[i]).get<std::uint64_t>();
            }
            r.shot_record = rec;
        }
        for (const auto &c : j.at("claims")) {
            ClaimResult claim;
            claim.field = c.at("field").get<std::string>();
            claim.expected = c.at("expected").get<double>();
            claim.tolerance = c.at("tolerance").get<double>();
            if (!c.at("actual").is_null()) {
                claim.actual = c.at("actual").get<double>();
            }
            claim.passed = c.at("passed").get<bool>();
            r.claims.push_back(std::move(claim));
        }
        return r;
    } catch (const json::exception &e) {
        throw Error(std::string("malformed report: ") + e.what());
    }
}

std::string emit_report(const ScenarioReport &r, ReportFormat format) {
    if (format == ReportFormat::json) {
        return report_to_json(r).dump(2) + "\n";
    }
    const auto &v = r.verdict;
    std::vector<std::pair<std::string, std::string>> rows{
        {"scenario", to_string(r.config.kind)},
    };
    if (!r.config.title.empty()) {
        rows.emplace_back("title", r.config.title);
    }
    rows.insert(rows.end(), {
        {"p_a_alice", format_value(v.p_a_alice)},
        {"p_a_bob", format_value(v.p_a_bob)},
        {"naive_concurrence", format_value(v.naive_concurrence)},
        {"estimator_valid", v.estimator_valid ? "yes" : "no"},
        {"disagreement_prob", format_value(v.disagreement_prob)},
        {"truth_single_copy_concurrence", format_value(v.truth_single_copy_concurrence)},
        {"truth_decomposition_bound", format_optional(v.truth_decomposition_bound)},
        {"p_aa", format_value(v.joint.p_aa)},
        {"p_as", format_value(v.joint.p_as)},
        {"p_sa", format_value(v.joint.p_sa)},
        {"p_ss", format_value(v.joint.p_ss)},
    });
    if (r.shot_record) {
        rows.emplace_back("shots", std::to_string(r.shot_record->shots));
        rows.emplace_back("seed", std::to_string(r.shot_record->seed));
        for (std::size_t i = 0; i < 4; ++i) {
            rows.emplace_back(std::string("count_") + kOutcomeNames[i],
                              std::to_string(r.shot_record->counts[i]));
        }
    }
    std::size_t width = 0;
    for (const auto &row : rows) {
        width = std::max(width, row.first.size());
    }
    std::ostringstream os;
    for (const auto &[key, value] : rows) {
        os << std::left << std::setw(static_cast<int>(width) + 2) << key << value << '\n';
    }
    if (!r.claims.empty()) {
        os << "\nclaims\n";
        for (const auto &c : r.claims) {
            os << "  " << (c.passed ? "PASS " : "FAIL ") << std::left
               << std::setw(static_cast<int>(width) + 2) << c.field << "expected "
               << format_value(c.expected) << " +/- " << std::setprecision(3) << c.tolerance
               << ", got " << format_optional(c.actual) << '\n';
        }
    }
    return os.str();
}

} // namespace twocopy
