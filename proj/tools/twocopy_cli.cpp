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

// Scenario runner. Exit codes: 0 all expectations met, 1 an expectation
// failed, 2 configuration or usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "twocopy/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitExpectation = 1;
constexpr int kExitConfig = 2;

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw twocopy::ConfigError({path + ": cannot open file"});
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Evaluate two-copy entanglement-estimation scenarios"};

    std::vector<std::string> files;
    std::optional<std::uint64_t> shots;
    std::optional<std::uint64_t> seed;
    std::string format = "table";
    std::string phase_points;
    std::string output;
    bool list = false;

    app.add_option("scenario", files, "Scenario config file(s) (JSON)");
    app.add_option("--shots", shots, "Sample this many joint outcomes")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Seed for outcome sampling");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--phase-points", phase_points,
                   "Phase-averaged discretization: 'exact', 'discretized' or N >= 3");
    app.add_option("-o,--output", output, "Write the report to this file instead of stdout");
    app.add_flag("--list-scenarios", list, "List scenario names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (list) {
        for (const auto &info : twocopy::scenario_catalog()) {
            std::cout << info.name << "\t" << info.description << "\n";
        }
        return kExitOk;
    }
    if (files.empty()) {
        std::cerr << "error: no scenario file given (see --help)\n";
        return kExitConfig;
    }

    const auto fmt = format == "json" ? twocopy::ReportFormat::json : twocopy::ReportFormat::table;
    std::vector<twocopy::ScenarioReport> reports;
    for (const auto &path : files) {
        try {
            auto doc = nlohmann::json::parse(read_file(path), nullptr, false);
            if (doc.is_discarded()) {
                throw twocopy::ConfigError({path + ": malformed JSON"});
            }
            if (doc.is_object()) {
                if (shots) {
                    doc["shots"] = *shots;
                }
                if (seed) {
                    doc["seed"] = *seed;
                }
                if (!phase_points.empty()) {
                    if (phase_points == "exact" || phase_points == "discretized") {
                        doc["phase_points"] = phase_points;
                    } else {
                        try {
                            doc["phase_points"] = std::stoll(phase_points);
                        } catch (const std::exception &) {
                            doc["phase_points"] = phase_points;
                        }
                    }
                }
            }
            reports.push_back(twocopy::run(twocopy::parse_config(doc)));
        } catch (const twocopy::ConfigError &e) {
            std::cerr << path << ": " << e.what() << "\n";
            return kExitConfig;
        } catch (const std::exception &e) {
            std::cerr << path << ": " << e.what() << "\n";
            return kExitConfig;
        }
    }

    std::ostringstream out;
    if (fmt == twocopy::ReportFormat::json && reports.size() > 1) {
        nlohmann::json all = nlohmann::json::array();
        for (const auto &r : reports) {
            all.push_back(twocopy::report_to_json(r));
        }
        out << all.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i > 0) {
                out << "\n";
            }
            if (fmt == twocopy::ReportFormat::table && reports.size() > 1) {
                out << "== " << files[i] << "\n";
            }
            out << twocopy::emit_report(reports[i], fmt);
        }
    }
    if (output.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(output);
        if (!f) {
            std::cerr << "error: cannot write " << output << "\n";
            return kExitConfig;
        }
        f << out.str();
    }

    for (const auto &r : reports) {
        if (!r.all_claims_passed()) {
            return kExitExpectation;
        }
    }
    return kExitOk;
}
