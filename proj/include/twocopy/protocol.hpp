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
 * The two-copy measurement protocol: one-sided antisymmetric projection,
 * the naive concurrence estimate C = 2 sqrt(P_a), the two-sided joint
 * outcome distribution, finite-shot sampling, and end-to-end evaluation
 * against ground-truth entanglement measures.
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twocopy/states.hpp"

namespace twocopy {

enum class Side { alice, bob };

/// Probability that `side` projects its pair onto the antisymmetric subspace.
double antisym_probability(const TwoCopyState &state, Side side);

/// Embedded projector of `kind` on the pair belonging to `side`, over (A1, B1, A2, B2).
const Operator &side_projector(Side side, Symmetry kind);

/// Above this the estimate cannot come from identical pure qubit copies.
inline constexpr double kNaiveValidityThreshold = 0.25 + 1e-9;

struct NaiveEstimate {
    double concurrence;
    bool valid;
};

/// 2 sqrt(p_a), never clamped; `valid` iff p_a <= 1/4 + 1e-9.
NaiveEstimate naive_concurrence_estimate(double p_a);

/// Joint (Alice, Bob) outcome probabilities, a = antisymmetric, s = symmetric.
struct OutcomeDistribution {
    double p_aa = 0.0;
    double p_as = 0.0;
    double p_sa = 0.0;
    double p_ss = 0.0;

    /// Throws unless each cell is in [0, 1] and the cells sum to 1, within 1e-10.
    void validate() const;
    [[nodiscard]] std::array<double, 4> cells() const { return {p_aa, p_as, p_sa, p_ss}; }
    [[nodiscard]] double alice_antisym() const { return p_aa + p_as; }
    [[nodiscard]] double bob_antisym() const { return p_aa + p_sa; }

    friend bool operator==(const OutcomeDistribution &, const OutcomeDistribution &) = default;
};

/// Cell names in the order of OutcomeDistribution::cells().
inline constexpr std::array<const char *, 4> kOutcomeNames{"aa", "as", "sa", "ss"};

OutcomeDistribution joint_outcome_distribution(const TwoCopyState &state);

/// p_as + p_sa.
double disagreement_probability(const OutcomeDistribution &d);

struct ShotRecord {
    std::uint64_t shots = 0;
    std::array<std::uint64_t, 4> counts{};
    std::uint64_t seed = 0;

    friend bool operator==(const ShotRecord &, const ShotRecord &) = default;
};

/// I.i.d. draws from `d` with a CounterRng seeded by `seed`.
ShotRecord sample_outcomes(const OutcomeDistribution &d, std::uint64_t shots, std::uint64_t seed);
ShotRecord sample_outcomes(const TwoCopyState &state, std::uint64_t shots, std::uint64_t seed);

struct ScenarioOptions {
    /// Decomposition of the two-copy state used for the entanglement upper bound.
    std::optional<std::vector<WeightedKet>> decomposition;
    /// A side of the cut for that bound.
    std::vector<std::string> decomposition_a_side = alice_labels();
};

struct EstimateVerdict {
    double p_a_alice = 0.0;
    double p_a_bob = 0.0;
    double naive_concurrence = 0.0;
    bool estimator_valid = false;
    double disagreement_prob = 0.0;
    double truth_single_copy_concurrence = 0.0;
    std::optional<double> truth_decomposition_bound;
    OutcomeDistribution joint;

    friend bool operator==(const EstimateVerdict &, const EstimateVerdict &) = default;
};

EstimateVerdict evaluate_scenario(const TwoCopyState &state, const ScenarioOptions &options = {});

} // namespace twocopy
