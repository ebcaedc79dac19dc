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
 * Two-copy state families: identical pure copies, De Finetti mixtures,
 * the phase-averaged state with its logical encoding, and adversarial
 * (eavesdropper) preparations.
 *
 * Every two-copy state is stored copy-major on (A1, B1, A2, B2). Side-major
 * views (A1, A2, B1, B2) are obtained with permute_subsystems.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twocopy/measures.hpp"
#include "twocopy/projectors.hpp"

namespace twocopy {

enum class Provenance { pure_copies, de_finetti, pure_de_finetti, phase_averaged, adversarial, custom };

std::string to_string(Provenance p);

/// (A1, B1, A2, B2).
const QubitLayout &two_copy_layout();
/// (A1, A2, B1, B2).
const std::vector<std::string> &side_major_order();
/// Labels of each copy: (A1, B1) and (A2, B2).
const std::vector<std::string> &copy_labels(int copy);
/// Labels of each side: (A1, A2) for Alice, (B1, B2) for Bob.
const std::vector<std::string> &alice_labels();
const std::vector<std::string> &bob_labels();

class TwoCopyState {
  public:
    TwoCopyState(DensityOperator state, Provenance provenance);

    [[nodiscard]] const DensityOperator &density() const noexcept { return state_; }
    [[nodiscard]] Provenance provenance() const noexcept { return provenance_; }

  private:
    DensityOperator state_;
    Provenance provenance_;
};

struct WeightedDensity {
    double weight;
    DensityOperator state;
};

/// Weighted per-copy two-qubit states; first label is Alice's qubit.
class DeFinettiEnsemble {
  public:
    explicit DeFinettiEnsemble(std::vector<WeightedDensity> members);
    [[nodiscard]] const std::vector<WeightedDensity> &members() const noexcept { return members_; }
    [[nodiscard]] DensityOperator mixture() const;

  private:
    std::vector<WeightedDensity> members_;
};

enum class BellState { phi_plus, phi_minus, psi_plus, psi_minus };

/// Bell state on a two-qubit layout, e.g. psi_minus = (|01> - |10>)/sqrt 2.
Ket bell_ket(BellState which, const QubitLayout &layout = QubitLayout{"A", "B"});

/// |psi><psi| (x) |psi><psi| on (A1, B1, A2, B2).
TwoCopyState identical_pure_copies(const Ket &psi);

/// sum_i p_i rho_i (x) rho_i.
TwoCopyState de_finetti_state(const DeFinettiEnsemble &e);

/// sum_i p_i |psi_i><psi_i| (x) |psi_i><psi_i|.
TwoCopyState pure_de_finetti_state(const PureEnsemble &e);

inline constexpr int kDefaultPhasePoints = 64;

/// Uniform phase grid of members (|01> + e^{i phi_j} |10>)/sqrt 2, phi_j = 2 pi j / N.
PureEnsemble phase_ensemble(int points);

/// Phase average of two copies of (|01> + e^{i phi}|10>)/sqrt 2, closed form:
/// 1/4 |0101><0101| + 1/4 |1010><1010| + 1/2 |Psi_L><Psi_L|.
TwoCopyState phase_averaged_state();

/// Uniform Riemann sum over `points` phases. Exact for points >= 3 because
/// the integrand only has Fourier components |k| <= 2.
TwoCopyState phase_averaged_state(int points);

/// (|0_L>|1_L> + |1_L>|0_L>)/sqrt 2 in copy-major order, i.e.
/// (|0110> + |1001>)/sqrt 2 on (A1, B1, A2, B2).
///
/// Logical encoding |0_L> = |0>|1>, |1_L> = |1>|0>. Alice's logical qubit is
/// carried by (A1, A2) and Bob's by (B1, B2).
Ket logical_bell_state();

/// The decomposition of the phase-averaged state into two unentangled
/// correlated products (weight 1/4 each) and the logical Bell state (1/2).
std::vector<WeightedKet> phase_state_decomposition();

/// Antisymmetric kind: singlets on (A1, A2) and on (B1, B2).
/// Symmetric kind: |Psi+> triplets on (A1, A2) and on (B1, B2).
TwoCopyState eve_state(Symmetry kind);

/// Reduced state of copy 1 or 2 on its own (A, B) labels.
DensityOperator copy_marginal(const TwoCopyState &state, int copy);

/// rho with copies 1 and 2 exchanged: SWAP_{A1 A2} SWAP_{B1 B2} rho SWAP SWAP.
DensityOperator exchange_copies(const DensityOperator &rho);

} // namespace twocopy
