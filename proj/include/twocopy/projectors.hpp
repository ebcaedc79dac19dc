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
 * Swap operator and symmetric / antisymmetric projectors on a qubit pair.
 *
 * Two identical pure states always lie in the symmetric subspace of the pair,
 * so the antisymmetric projector has zero expectation on them.
 */
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "twocopy/linalg.hpp"

namespace twocopy {

enum class Symmetry { symmetric, antisymmetric };

inline std::string to_string(Symmetry kind) {
    return kind == Symmetry::symmetric ? "symmetric" : "antisymmetric";
}

/// 4x4 permutation matrix exchanging the two tensor factors.
template <typename Real = double> CMatrix<Real> swap_matrix() {
    CMatrix<Real> s = CMatrix<Real>::Zero(4, 4);
    s(0, 0) = Real(1);
    s(1, 2) = Real(1);
    s(2, 1) = Real(1);
    s(3, 3) = Real(1);
    return s;
}

template <typename Real = double>
BasicOperator<Real> swap_operator(const std::string &first = "q0",
                                  const std::string &second = "q1") {
    return {QubitLayout{first, second}, swap_matrix<Real>()};
}

/// Projector onto one symmetry sector of a labeled qubit pair.
template <typename Real> class BasicPairProjector {
  public:
    BasicPairProjector(Symmetry kind, std::string first, std::string second)
        : kind_(kind), pair_(std::move(first), std::move(second)),
          op_(QubitLayout{pair_.first, pair_.second}, build(kind)) {}

    [[nodiscard]] Symmetry kind() const noexcept { return kind_; }
    [[nodiscard]] const std::pair<std::string, std::string> &pair() const noexcept {
        return pair_;
    }
    [[nodiscard]] const BasicOperator<Real> &op() const noexcept { return op_; }
    [[nodiscard]] const CMatrix<Real> &matrix() const noexcept { return op_.matrix(); }

  private:
    static CMatrix<Real> build(Symmetry kind) {
        const CMatrix<Real> id = CMatrix<Real>::Identity(4, 4);
        const CMatrix<Real> s = swap_matrix<Real>();
        return kind == Symmetry::symmetric ? CMatrix<Real>((id + s) / Real(2))
                                           : CMatrix<Real>((id - s) / Real(2));
    }

    Symmetry kind_;
    std::pair<std::string, std::string> pair_;
    BasicOperator<Real> op_;
};

template <typename Real = double>
BasicPairProjector<Real> pair_projector(Symmetry kind, const std::string &first,
                                        const std::string &second) {
    return BasicPairProjector<Real>(kind, first, second);
}

/// Lift a pair projector to `layout`: the projector on its pair, identity elsewhere.
///
/// The pair is brought to the front by a subsystem permutation, tensored with
/// the identity on the remaining labels, and permuted back.
template <typename Real>
BasicOperator<Real> embed_pair_projector(const BasicPairProjector<Real> &p,
                                         const QubitLayout &layout) {
    const auto &[first, second] = p.pair();
    if (!layout.contains(first) || !layout.contains(second)) {
        throw Error("embed_pair_projector: pair (" + first + "," + second +
                    ") not contained in layout " + layout.str());
    }
    std::vector<std::string> rest;
    for (const auto &label : layout.labels()) {
        if (label != first && label != second) {
            rest.push_back(label);
        }
    }
    BasicOperator<Real> lifted = p.op();
    if (!rest.empty()) {
        lifted = tensor_product(p.op(), BasicOperator<Real>::identity(QubitLayout(rest)));
    }
    return permute_subsystems(lifted, layout.labels());
}

using PairProjector = BasicPairProjector<double>;

} // namespace twocopy
