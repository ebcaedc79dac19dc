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
 * Ground-truth entanglement quantities for two-qubit systems: pure-state
 * concurrence, the Wootters closed form for mixed states, entanglement of
 * formation, ensemble averages, and a numerical convex-roof search.
 */
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "twocopy/linalg.hpp"

namespace twocopy {

/// Concurrence in [0, 1] (upper edge tolerant by 1e-10).
class ConcurrenceValue {
  public:
    explicit ConcurrenceValue(double value);
    [[nodiscard]] double value() const noexcept { return value_; }
    explicit operator double() const noexcept { return value_; }

  private:
    double value_;
};

struct WeightedKet {
    double weight;
    Ket state;
};

/// Weighted pure states on a common two-qubit layout; weights sum to one.
class PureEnsemble {
  public:
    explicit PureEnsemble(std::vector<WeightedKet> members);

    [[nodiscard]] const std::vector<WeightedKet> &members() const noexcept { return members_; }
    [[nodiscard]] const QubitLayout &layout() const noexcept {
        return members_.front().state.layout();
    }
    /// Single-copy density matrix sum_i p_i |psi_i><psi_i|.
    [[nodiscard]] DensityOperator mixture() const;

  private:
    std::vector<WeightedKet> members_;
};

/// Throws unless weights are nonnegative and sum to 1 within 1e-10.
void check_weights(std::span<const double> weights, const std::string &context);

/// 2 |a00 a11 - a01 a10| = 2 sqrt(det rho_A) for a two-qubit ket.
ConcurrenceValue pure_concurrence(const Ket &psi);

/// sigma_y (x) sigma_y, the signed antidiagonal flip in the computational basis.
Matrix spin_flip_matrix();

/// rho~ = (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).
Operator spin_flip(const DensityOperator &rho);

/// Wootters values lambda_1 >= ... >= lambda_4: square roots of the spectrum of rho rho~.
RVector<double> wootters_lambdas(const DensityOperator &rho);

/// max(0, lambda_1 - lambda_2 - lambda_3 - lambda_4).
ConcurrenceValue wootters_concurrence(const DensityOperator &rho);

/// Binary entropy in bits; h(0) = h(1) = 0.
double binary_entropy(double x);

/// Entanglement of formation in ebits: h((1 + sqrt(1 - C^2)) / 2).
double eof_from_concurrence(double c);
inline double eof_from_concurrence(ConcurrenceValue c) { return eof_from_concurrence(c.value()); }

/// Von Neumann entropy (bits) of the reduced state of `psi` on `a_side`.
double entanglement_entropy(const Ket &psi, std::span<const std::string> a_side);

/// sum_i p_i C(psi_i).
double ensemble_average_concurrence(const PureEnsemble &e);

/// (sum_i p_i C_i)^2 / 4: the antisymmetric probability implied by treating
/// the mean member concurrence as the concurrence of the copies.
double predicted_p_a_from_mean_concurrence(const PureEnsemble &e);

/// sum_i p_i C_i^2 / 4: the antisymmetric probability of the two-copy mixture
/// sum_i p_i |psi_i><psi_i|^(x)2, by linearity of the trace.
double predicted_p_a_from_member_concurrences(const PureEnsemble &e);

/// sum_i p_i S(Tr_B |psi_i><psi_i|) for a decomposition across the cut
/// a_side | rest. An upper bound on the entanglement of formation of the mixture.
double ensemble_upper_bound_entanglement(std::span<const WeightedKet> members,
                                         std::span<const std::string> a_side);

struct OracleOptions {
    std::size_t restarts = 200;
    Eigen::Index ensemble_size = 4;
    std::uint64_t seed = 1;
};

struct OracleResult {
    /// Smallest average concurrence found.
    double value = 0.0;
    /// Unnormalized decomposition vectors w_k as columns; sum_k w_k w_k^dagger = rho.
    Matrix decomposition;
};

/// Approximate convex-roof infimum of the average concurrence over pure-state
/// decompositions with `ensemble_size` members.
///
/// Decompositions are written as W = V U^T with rho = V V^dagger from the
/// eigendecomposition and U a K x rank isometry. The average concurrence is
/// sum_k |(U tau U^T)_kk| with tau = V^T (sigma_y (x) sigma_y) V. Each restart
/// starts from a Haar-random isometry and runs coordinate descent over Givens
/// mixings of row pairs. Restart r draws from stream_seed(seed, r), so the
/// result does not depend on evaluation order.
OracleResult decomposition_infimum_oracle(const DensityOperator &rho,
                                          const OracleOptions &options = {});

} // namespace twocopy
