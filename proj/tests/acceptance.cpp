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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "twocopy/measures.hpp"
#include "twocopy/protocol.hpp"
#include "twocopy/random.hpp"
#include "twocopy/states.hpp"

using namespace twocopy;

namespace {

const QubitLayout kAB{"A", "B"};

struct Outcome {
    bool passed;
    std::string detail;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

Ket random_product_ket(CounterRng &rng) {
    return tensor_product(random_ket(QubitLayout{"A"}, rng), random_ket(QubitLayout{"B"}, rng));
}

TwoCopyState completely_mixed_copies() {
    return de_finetti_state(DeFinettiEnsemble({{1.0, DensityOperator::maximally_mixed(kAB)}}));
}

PureEnsemble random_pure_ensemble(CounterRng &rng) {
    const auto n = 1 + static_cast<std::size_t>(rng.next_u64() % 5);
    std::vector<double> w(n);
    double total = 0.0;
    for (auto &x : w) {
        x = rng.uniform() + 1e-3;
        total += x;
    }
    std::vector<WeightedKet> members;
    for (const double x : w) {
        members.push_back({x / total, random_ket(kAB, rng)});
    }
    return PureEnsemble(std::move(members));
}

Outcome product_state_null() {
    CounterRng rng(101);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const auto s = identical_pure_copies(random_product_ket(rng));
        worst = std::max({worst, std::abs(antisym_probability(s, Side::alice)),
                          std::abs(antisym_probability(s, Side::bob))});
    }
    return {worst <= 1e-10, "max P_a = " + fmt(worst) + " over 100 product kets"};
}

Outcome concurrence_relation() {
    CounterRng rng(102);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const Ket psi = random_ket(kAB, rng);
        const double p = antisym_probability(identical_pure_copies(psi), Side::alice);
        worst = std::max(worst, std::abs(2.0 * std::sqrt(p) - pure_concurrence(psi).value()));
    }
    return {worst < 1e-8, "max |2 sqrt(P_a) - C| = " + fmt(worst) + " over 500 kets"};
}

Outcome completely_mixed_false_positive() {
    const auto s = completely_mixed_copies();
    const auto v = evaluate_scenario(s);
    const bool ok = std::abs(v.p_a_alice - 0.25) <= 1e-12 && std::abs(v.p_a_bob - 0.25) <= 1e-12 &&
                    std::abs(v.naive_concurrence - 1.0) <= 1e-12 &&
                    std::abs(v.truth_single_copy_concurrence) <= 1e-10;
    return {ok, "P_a = (" + fmt(v.p_a_alice) + ", " + fmt(v.p_a_bob) + "), naive " +
                    fmt(v.naive_concurrence) + ", Wootters " +
                    fmt(v.truth_single_copy_concurrence)};
}

Outcome phase_averaged_counterexample() {
    ScenarioOptions opts;
    opts.decomposition = phase_state_decomposition();
    const auto v = evaluate_scenario(phase_averaged_state(), opts);
    const double bound = v.truth_decomposition_bound.value_or(-1.0);
    const bool ok = std::abs(v.p_a_alice - 0.25) <= 1e-12 && std::abs(v.p_a_bob - 0.25) <= 1e-12 &&
                    std::abs(v.naive_concurrence - 1.0) <= 1e-12 &&
                    std::abs(v.truth_single_copy_concurrence) <= 1e-10 &&
                    std::abs(bound - 0.5) <= 1e-10 && std::abs(v.disagreement_prob) <= 1e-12;
    return {ok, "naive " + fmt(v.naive_concurrence) + ", single-copy C " +
                    fmt(v.truth_single_copy_concurrence) + ", bound " + fmt(bound) +
                    " ebit, disagreement " + fmt(v.disagreement_prob)};
}

Outcome discretization_exactness() {
    const Matrix exact = phase_averaged_state().density().matrix();
    double worst = 0.0;
    for (int n : {3, 4, 8, 64}) {
        worst = std::max(worst,
                         (phase_averaged_state(n).density().matrix() - exact).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-13, "max entry difference " + fmt(worst) + " for N in {3, 4, 8, 64}"};
}

Outcome two_sided_check() {
    CounterRng rng(106);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const auto s = identical_pure_copies(random_ket(kAB, rng));
        worst = std::max(worst, std::abs(disagreement_probability(joint_outcome_distribution(s))));
    }
    const double mixed = disagreement_probability(joint_outcome_distribution(completely_mixed_copies()));
    return {worst <= 1e-12 && std::abs(mixed - 0.375) <= 1e-12,
            "pure copies max " + fmt(worst) + ", I/16 " + fmt(mixed)};
}

Outcome eve_attack() {
    const auto anti = joint_outcome_distribution(eve_state(Symmetry::antisymmetric));
    const auto sym = joint_outcome_distribution(eve_state(Symmetry::symmetric));
    const auto naive_anti = naive_concurrence_estimate(anti.alice_antisym());
    const auto naive_sym = naive_concurrence_estimate(sym.alice_antisym());
    auto near = [](const OutcomeDistribution &d, std::array<double, 4> want) {
        for (std::size_t i = 0; i < 4; ++i) {
            if (std::abs(d.cells()[i] - want[i]) > 1e-12) {
                return false;
            }
        }
        return true;
    };
    const bool ok = near(anti, {1, 0, 0, 0}) && near(sym, {0, 0, 0, 1}) &&
                    std::abs(naive_anti.concurrence - 2.0) <= 1e-12 && !naive_anti.valid &&
                    std::abs(naive_sym.concurrence) <= 1e-12 &&
                    std::abs(disagreement_probability(anti)) <= 1e-12 &&
                    std::abs(disagreement_probability(sym)) <= 1e-12;
    return {ok, "antisymmetric naive " + fmt(naive_anti.concurrence) +
                    (naive_anti.valid ? " (valid)" : " (flagged invalid)") + ", symmetric naive " +
                    fmt(naive_sym.concurrence)};
}

Outcome oracle_agreement() {
    CounterRng rng(108);
    double above = 0.0;
    double below = 0.0;
    for (int t = 0; t < 50; ++t) {
        const auto rho = random_density(kAB, rng, 2 + t % 3);
        const double oracle = decomposition_infimum_oracle(rho, {.restarts = 200, .seed = 8}).value;
        const double gap = oracle - wootters_concurrence(rho).value();
        above = std::max(above, gap);
        below = std::min(below, gap);
    }
    return {above < 1e-3 && below >= -1e-6,
            "oracle - Wootters in [" + fmt(below) + ", " + fmt(above) + "] over 50 states"};
}

Outcome overestimation() {
    CounterRng rng(109);
    double worst = 1.0;
    for (int t = 0; t < 100; ++t) {
        const auto e = random_pure_ensemble(rng);
        const auto s = pure_de_finetti_state(e);
        const double naive = naive_concurrence_estimate(antisym_probability(s, Side::alice)).concurrence;
        worst = std::min(worst, naive - wootters_concurrence(e.mixture()).value());
    }
    return {worst >= -1e-8, "min naive - Wootters = " + fmt(worst) + " over 100 ensembles"};
}

Outcome finite_statistics() {
    constexpr std::uint64_t shots = 100000;
    CounterRng rng(110);
    std::vector<TwoCopyState> states{completely_mixed_copies(), phase_averaged_state(),
                                     TwoCopyState(random_density(two_copy_layout(), rng),
                                                  Provenance::custom)};
    double worst_sigmas = 0.0;
    bool reproducible = true;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto d = joint_outcome_distribution(states[i]);
        const auto r = sample_outcomes(d, shots, 1000 + i);
        reproducible = reproducible && sample_outcomes(d, shots, 1000 + i) == r;
        for (std::size_t c = 0; c < 4; ++c) {
            const double p = d.cells()[c];
            const double freq = static_cast<double>(r.counts[c]) / shots;
            const double sigma = std::sqrt(p * (1.0 - p) / shots);
            const double dev = std::abs(freq - p);
            if (sigma == 0.0) {
                worst_sigmas = dev == 0.0 ? worst_sigmas : 1e300;
            } else {
                worst_sigmas = std::max(worst_sigmas, dev / sigma);
            }
        }
    }
    return {worst_sigmas <= 5.0 && reproducible,
            "max deviation " + fmt(worst_sigmas) + " sigma at 1e5 shots, " +
                (reproducible ? "counts reproduced" : "counts NOT reproduced")};
}

} // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"product-state null", product_state_null},
        {"pure-copy concurrence relation", concurrence_relation},
        {"completely-mixed false positive", completely_mixed_false_positive},
        {"phase-averaged counterexample", phase_averaged_counterexample},
        {"discretization exactness", discretization_exactness},
        {"two-sided check discriminates mixedness", two_sided_check},
        {"eavesdropper attack", eve_attack},
        {"oracle agrees with closed form", oracle_agreement},
        {"naive estimate overestimates", overestimation},
        {"finite statistics", finite_statistics},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2zu  %-40s %s (%.2fs)\n", o.passed ? "PASS" : "FAIL", i + 1,
                    criteria[i].first, o.detail.c_str(), secs);
        failures += o.passed ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
