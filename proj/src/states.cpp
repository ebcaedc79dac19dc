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

#include "twocopy/states.hpp"

#include <cmath>
#include <numbers>

namespace twocopy {

std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::pure_copies:
        return "pure-copies";
    case Provenance::de_finetti:
        return "de-finetti";
    case Provenance::pure_de_finetti:
        return "pure-de-finetti";
    case Provenance::phase_averaged:
        return "phase-averaged";
    case Provenance::adversarial:
        return "adversarial";
    case Provenance::custom:
        return "custom";
    }
    return "custom";
}

const QubitLayout &two_copy_layout() {
    static const QubitLayout layout{"A1", "B1", "A2", "B2"};
    return layout;
}

const std::vector<std::string> &side_major_order() {
    static const std::vector<std::string> order{"A1", "A2", "B1", "B2"};
    return order;
}

const std::vector<std::string> &copy_labels(int copy) {
    static const std::vector<std::string> first{"A1", "B1"};
    static const std::vector<std::string> second{"A2", "B2"};
    if (copy != 1 && copy != 2) {
        throw Error("copy index must be 1 or 2");
    }
    return copy == 1 ? first : second;
}

const std::vector<std::string> &alice_labels() {
    static const std::vector<std::string> labels{"A1", "A2"};
    return labels;
}

const std::vector<std::string> &bob_labels() {
    static const std::vector<std::string> labels{"B1", "B2"};
    return labels;
}

TwoCopyState::TwoCopyState(DensityOperator state, Provenance provenance)
    : state_(std::move(state)), provenance_(provenance) {
    if (state_.layout() != two_copy_layout()) {
        throw Error("two-copy state must live on " + two_copy_layout().str() + ", got " +
                    state_.layout().str());
    }
}

DeFinettiEnsemble::DeFinettiEnsemble(std::vector<WeightedDensity> members)
    : members_(std::move(members)) {
    std::vector<double> weights;
    for (const auto &m : members_) {
        weights.push_back(m.weight);
    }
    check_weights(weights, "De Finetti ensemble");
    for (const auto &m : members_) {
        if (m.state.layout().size() != 2) {
            throw Error("De Finetti ensemble: each member must be a two-qubit state");
        }
    }
}

DensityOperator DeFinettiEnsemble::mixture() const {
    Matrix rho = Matrix::Zero(4, 4);
    for (const auto &m : members_) {
        rho += m.weight * m.state.matrix();
    }
    return {members_.front().state.layout(), std::move(rho)};
}

Ket bell_ket(BellState which, const QubitLayout &layout) {
    if (layout.size() != 2) {
        throw Error("bell_ket: layout must have two qubits");
    }
    const double h = std::numbers::sqrt2 / 2.0;
    Vector v = Vector::Zero(4);
    switch (which) {
    case BellState::phi_plus:
        v(0) = h;
        v(3) = h;
        break;
    case BellState::phi_minus:
        v(0) = h;
        v(3) = -h;
        break;
    case BellState::psi_plus:
        v(1) = h;
        v(2) = h;
        break;
    case BellState::psi_minus:
        v(1) = h;
        v(2) = -h;
        break;
    }
    return Ket::normalized(layout, v);
}

namespace {

Matrix two_copy_matrix(const Matrix &per_copy) {
    return kron<double>(per_copy, per_copy);
}

} // namespace

TwoCopyState identical_pure_copies(const Ket &psi) {
    if (psi.layout().size() != 2) {
        throw Error("identical_pure_copies: expected a two-qubit ket, got layout " +
                    psi.layout().str());
    }
    const Matrix proj = psi.amplitudes() * psi.amplitudes().adjoint();
    return {DensityOperator(two_copy_layout(), two_copy_matrix(proj)), Provenance::pure_copies};
}

TwoCopyState de_finetti_state(const DeFinettiEnsemble &e) {
    Matrix rho = Matrix::Zero(16, 16);
    for (const auto &m : e.members()) {
        rho += m.weight * two_copy_matrix(m.state.matrix());
    }
    return {DensityOperator(two_copy_layout(), std::move(rho)), Provenance::de_finetti};
}

TwoCopyState pure_de_finetti_state(const PureEnsemble &e) {
    Matrix rho = Matrix::Zero(16, 16);
    for (const auto &m : e.members()) {
        const Matrix proj = m.state.amplitudes() * m.state.amplitudes().adjoint();
        rho += m.weight * two_copy_matrix(proj);
    }
    return {DensityOperator(two_copy_layout(), std::move(rho)), Provenance::pure_de_finetti};
}

PureEnsemble phase_ensemble(int points) {
    if (points < 3) {
        throw Error("phase discretization needs at least 3 points, got " + std::to_string(points));
    }
    const double h = std::numbers::sqrt2 / 2.0;
    std::vector<WeightedKet> members;
    members.reserve(static_cast<std::size_t>(points));
    for (int j = 0; j < points; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / points;
        Vector v = Vector::Zero(4);
        v(1) = h;
        v(2) = std::polar(h, phi);
        members.push_back({1.0 / points, Ket::normalized(QubitLayout{"A", "B"}, v)});
    }
    return PureEnsemble(std::move(members));
}

Ket logical_bell_state() {
    Vector v = Vector::Zero(16);
    const double h = std::numbers::sqrt2 / 2.0;
    v(0b0110) = h;
    v(0b1001) = h;
    return Ket::normalized(two_copy_layout(), v);
}

std::vector<WeightedKet> phase_state_decomposition() {
    return {
        {0.25, Ket::basis(two_copy_layout(), 0b0101)},
        {0.25, Ket::basis(two_copy_layout(), 0b1010)},
        {0.5, logical_bell_state()},
    };
}

TwoCopyState phase_averaged_state() {
    Matrix rho = Matrix::Zero(16, 16);
    for (const auto &m : phase_state_decomposition()) {
        rho += m.weight * m.state.amplitudes() * m.state.amplitudes().adjoint();
    }
    return {DensityOperator(two_copy_layout(), std::move(rho)), Provenance::phase_averaged};
}

TwoCopyState phase_averaged_state(int points) {
    const auto state = pure_de_finetti_state(phase_ensemble(points));
    return {state.density(), Provenance::phase_averaged};
}

TwoCopyState eve_state(Symmetry kind) {
    const BellState per_side =
        kind == Symmetry::antisymmetric ? BellState::psi_minus : BellState::psi_plus;
    const Ket alice = bell_ket(per_side, QubitLayout{"A1", "A2"});
    const Ket bob = bell_ket(per_side, QubitLayout{"B1", "B2"});
    const Ket side_major = tensor_product(alice, bob);
    const Ket copy_major = permute_subsystems(side_major, two_copy_layout().labels());
    return {copy_major.projector(), Provenance::adversarial};
}

DensityOperator copy_marginal(const TwoCopyState &state, int copy) {
    return partial_trace(state.density(), std::span<const std::string>(copy_labels(copy)));
}

DensityOperator exchange_copies(const DensityOperator &rho) {
    if (rho.layout() != two_copy_layout()) {
        throw Error("exchange_copies: expected layout " + two_copy_layout().str());
    }
    const auto swapped = permute_subsystems(rho, {"A2", "B2", "A1", "B1"});
    return {two_copy_layout(), swapped.matrix()};
}

} // namespace twocopy
