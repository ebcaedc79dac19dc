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

#include "twocopy/protocol.hpp"

#include <cmath>
#include <sstream>

#include "twocopy/random.hpp"

namespace twocopy {

namespace {

struct SideProjectors {
    Operator alice_antisym;
    Operator alice_sym;
    Operator bob_antisym;
    Operator bob_sym;
};

const SideProjectors &projectors() {
    static const SideProjectors p{
        embed_pair_projector(pair_projector(Symmetry::antisymmetric, "A1", "A2"), two_copy_layout()),
        embed_pair_projector(pair_projector(Symmetry::symmetric, "A1", "A2"), two_copy_layout()),
        embed_pair_projector(pair_projector(Symmetry::antisymmetric, "B1", "B2"), two_copy_layout()),
        embed_pair_projector(pair_projector(Symmetry::symmetric, "B1", "B2"), two_copy_layout()),
    };
    return p;
}

double joint_cell(const Operator &alice, const Operator &bob, const DensityOperator &rho) {
    const Operator product(two_copy_layout(), alice.matrix() * bob.matrix());
    return expectation_value(product, rho);
}

} // namespace

const Operator &side_projector(Side side, Symmetry kind) {
    const auto &p = projectors();
    if (side == Side::alice) {
        return kind == Symmetry::antisymmetric ? p.alice_antisym : p.alice_sym;
    }
    return kind == Symmetry::antisymmetric ? p.bob_antisym : p.bob_sym;
}

double antisym_probability(const TwoCopyState &state, Side side) {
    return expectation_value(side_projector(side, Symmetry::antisymmetric), state.density());
}

NaiveEstimate naive_concurrence_estimate(double p_a) {
    constexpr double tol = 1e-10;
    if (!(p_a >= -tol) || p_a > 1.0 + tol) {
        std::ostringstream os;
        os << "naive_concurrence_estimate: probability " << p_a << " outside [0, 1]";
        throw Error(os.str());
    }
    return {2.0 * std::sqrt(std::max(0.0, p_a)), p_a <= kNaiveValidityThreshold};
}

void OutcomeDistribution::validate() const {
    constexpr double tol = 1e-10;
    double total = 0.0;
    for (const double p : cells()) {
        if (!(p >= -tol) || p > 1.0 + tol) {
            throw Error("outcome distribution has a cell outside [0, 1]");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > tol) {
        throw Error("outcome distribution does not sum to 1");
    }
}

OutcomeDistribution joint_outcome_distribution(const TwoCopyState &state) {
    const auto &rho = state.density();
    const auto &p = projectors();
    OutcomeDistribution d{
        joint_cell(p.alice_antisym, p.bob_antisym, rho),
        joint_cell(p.alice_antisym, p.bob_sym, rho),
        joint_cell(p.alice_sym, p.bob_antisym, rho),
        joint_cell(p.alice_sym, p.bob_sym, rho),
    };
    d.validate();
    return d;
}

double disagreement_probability(const OutcomeDistribution &d) { return d.p_as + d.p_sa; }

ShotRecord sample_outcomes(const OutcomeDistribution &d, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw Error("sample_outcomes: shots must be at least 1");
    }
    d.validate();
    std::array<double, 4> cdf{};
    double running = 0.0;
    const auto cells = d.cells();
    for (std::size_t i = 0; i < 4; ++i) {
        running += std::max(0.0, cells[i]);
        cdf[i] = running;
    }
    for (auto &c : cdf) {
        c /= running;
    }

    ShotRecord record;
    record.shots = shots;
    record.seed = seed;
    CounterRng rng(seed);
    for (std::uint64_t n = 0; n < shots; ++n) {
        const double u = rng.uniform();
        std::size_t cell = 3;
        for (std::size_t i = 0; i < 3; ++i) {
            if (u < cdf[i]) {
                cell = i;
                break;
            }
        }
        ++record.counts[cell];
    }
    return record;
}

ShotRecord sample_outcomes(const TwoCopyState &state, std::uint64_t shots, std::uint64_t seed) {
    return sample_outcomes(joint_outcome_distribution(state), shots, seed);
}

EstimateVerdict evaluate_scenario(const TwoCopyState &state, const ScenarioOptions &options) {
    EstimateVerdict v;
    v.joint = joint_outcome_distribution(state);
    v.p_a_alice = antisym_probability(state, Side::alice);
    v.p_a_bob = antisym_probability(state, Side::bob);
    const auto naive = naive_concurrence_estimate(v.p_a_alice);
    v.naive_concurrence = naive.concurrence;
    v.estimator_valid = naive.valid;
    v.disagreement_prob = disagreement_probability(v.joint);
    v.truth_single_copy_concurrence = wootters_concurrence(copy_marginal(state, 1)).value();
    if (options.decomposition) {
        const auto &members = *options.decomposition;
        // The decomposition has to reproduce the state it claims to decompose.
        Matrix sum = Matrix::Zero(16, 16);
        for (const auto &m : members) {
            if (m.state.layout() != two_copy_layout()) {
                throw Error("decomposition members must live on " + two_copy_layout().str());
            }
            sum += m.weight * m.state.amplitudes() * m.state.amplitudes().adjoint();
        }
        const double residual = (sum - state.density().matrix()).cwiseAbs().maxCoeff();
        if (residual > 1e-9) {
            std::ostringstream os;
            os << "decomposition does not reproduce the state (max residual " << residual << ")";
            throw Error(os.str());
        }
        v.truth_decomposition_bound = ensemble_upper_bound_entanglement(
            members, std::span<const std::string>(options.decomposition_a_side));
    }
    return v;
}

} // namespace twocopy
