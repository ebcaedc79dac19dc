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
 * Dense complex linear algebra over labeled multi-qubit systems.
 *
 * Index convention: the first label of a QubitLayout is the most significant
 * bit of the amplitude index. For the layout (A, B) the basis index is
 * 2*a + b, so |0>_A |1>_B sits at index 1 ("01") and |1>_A |0>_B at index 2.
 *
 * All types are immutable values; every operation is a pure function.
 */
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "twocopy/error.hpp"

namespace twocopy {

template <typename Real> using Complex = std::complex<Real>;
template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Tolerances shared by every structural check.
template <typename Real> struct Tolerance {
    static constexpr Real structural = Real(1e-10);
    static constexpr Real eigenvalue_floor = Real(-1e-9);
};

inline constexpr std::size_t kMaxQubits = 8;

/// Ordered, unique qubit labels. Dimension is 2^size().
class QubitLayout {
  public:
    QubitLayout() = default;
    QubitLayout(std::initializer_list<std::string> labels)
        : QubitLayout(std::vector<std::string>(labels)) {}
    explicit QubitLayout(std::vector<std::string> labels) : labels_(std::move(labels)) {
        if (labels_.size() > kMaxQubits) {
            throw Error("layout has " + std::to_string(labels_.size()) +
                        " qubits; at most " + std::to_string(kMaxQubits) + " supported");
        }
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i].empty()) {
                throw Error("empty qubit label");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (labels_[i] == labels_[j]) {
                    throw Error("duplicate qubit label '" + labels_[i] + "'");
                }
            }
        }
    }

    [[nodiscard]] const std::vector<std::string> &labels() const noexcept { return labels_; }
    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
    [[nodiscard]] Eigen::Index dimension() const noexcept {
        return Eigen::Index(1) << labels_.size();
    }
    [[nodiscard]] bool contains(const std::string &label) const {
        return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
    }
    /// Position of `label`; throws for an unknown label.
    [[nodiscard]] std::size_t index_of(const std::string &label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw Error("unknown qubit label '" + label + "' in layout " + str());
        }
        return static_cast<std::size_t>(it - labels_.begin());
    }
    [[nodiscard]] std::string str() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            os << (i ? "," : "") << labels_[i];
        }
        os << ')';
        return os.str();
    }

    friend bool operator==(const QubitLayout &, const QubitLayout &) = default;

  private:
    std::vector<std::string> labels_;
};

/// Concatenation; labels must be disjoint.
inline QubitLayout concat(const QubitLayout &a, const QubitLayout &b) {
    std::vector<std::string> labels = a.labels();
    for (const auto &l : b.labels()) {
        if (a.contains(l)) {
            throw Error("label collision on '" + l + "' when composing " + a.str() +
                        " with " + b.str());
        }
        labels.push_back(l);
    }
    return QubitLayout(std::move(labels));
}

template <typename Real>
[[nodiscard]] Real hermiticity_defect(const CMatrix<Real> &m) {
    if (m.size() == 0) {
        return Real(0);
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Real> class BasicDensityOperator;

/// Unit-norm state vector on a QubitLayout.
template <typename Real> class BasicKet {
  public:
    BasicKet(QubitLayout layout, CVector<Real> amplitudes)
        : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() != layout_.dimension()) {
            throw Error("ket of length " + std::to_string(amplitudes_.size()) +
                        " does not match layout " + layout_.str());
        }
        if (!amplitudes_.allFinite()) {
            throw Error("ket has non-finite amplitudes");
        }
        const Real norm = amplitudes_.norm();
        if (std::abs(norm - Real(1)) > Tolerance<Real>::structural) {
            std::ostringstream os;
            os << "ket is not normalized (norm " << norm << ")";
            throw Error(os.str());
        }
    }

    /// Rescales a nonzero vector to unit norm before construction.
    static BasicKet normalized(QubitLayout layout, const CVector<Real> &v) {
        const Real norm = v.norm();
        if (!(norm > Real(0)) || !v.allFinite()) {
            throw Error("cannot normalize a zero or non-finite vector");
        }
        return BasicKet(std::move(layout), v / norm);
    }

    /// Computational basis state |index>, first label most significant.
    static BasicKet basis(QubitLayout layout, std::size_t index) {
        CVector<Real> v = CVector<Real>::Zero(layout.dimension());
        if (static_cast<Eigen::Index>(index) >= v.size()) {
            throw Error("basis index out of range");
        }
        v(static_cast<Eigen::Index>(index)) = Real(1);
        return BasicKet(std::move(layout), std::move(v));
    }

    [[nodiscard]] const QubitLayout &layout() const noexcept { return layout_; }
    [[nodiscard]] const CVector<Real> &amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] BasicDensityOperator<Real> projector() const;

  private:
    QubitLayout layout_;
    CVector<Real> amplitudes_;
};

/// Square matrix acting on a QubitLayout; no further structure assumed.
template <typename Real> class BasicOperator {
  public:
    BasicOperator(QubitLayout layout, CMatrix<Real> matrix)
        : layout_(std::move(layout)), matrix_(std::move(matrix)) {
        if (matrix_.rows() != layout_.dimension() || matrix_.cols() != layout_.dimension()) {
            throw Error("operator of shape " + std::to_string(matrix_.rows()) + "x" +
                        std::to_string(matrix_.cols()) + " does not match layout " +
                        layout_.str());
        }
        if (!matrix_.allFinite()) {
            throw Error("operator has non-finite entries");
        }
    }

    static BasicOperator identity(QubitLayout layout) {
        const auto d = layout.dimension();
        return BasicOperator(std::move(layout), CMatrix<Real>::Identity(d, d));
    }

    [[nodiscard]] const QubitLayout &layout() const noexcept { return layout_; }
    [[nodiscard]] const CMatrix<Real> &matrix() const noexcept { return matrix_; }
    [[nodiscard]] bool is_hermitian(Real tol = Tolerance<Real>::structural) const {
        return hermiticity_defect<Real>(matrix_) <= tol;
    }

  private:
    QubitLayout layout_;
    CMatrix<Real> matrix_;
};

/// Outcome of validate_density. `passed` iff every defect is within tolerance.
template <typename Real> struct BasicDensityReport {
    Real hermiticity_defect = 0;
    Real min_eigenvalue = 0;
    Real trace_defect = 0;
    bool passed = false;

    [[nodiscard]] std::string describe() const {
        std::ostringstream os;
        os << "hermiticity defect " << hermiticity_defect << ", minimum eigenvalue "
           << min_eigenvalue << ", trace defect " << trace_defect;
        return os.str();
    }
};

/// Descending real spectrum of a Hermitian matrix.
template <typename Real> RVector<Real> hermitian_eigenvalues(const CMatrix<Real> &m) {
    if (m.rows() != m.cols()) {
        throw Error("eigenvalues requested for a non-square matrix");
    }
    if (hermiticity_defect<Real>(m) > Tolerance<Real>::structural) {
        throw Error("hermitian_eigenvalues: input is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error("Hermitian eigensolver failed to converge");
    }
    return solver.eigenvalues().reverse();
}

template <typename Real> RVector<Real> hermitian_eigenvalues(const BasicOperator<Real> &m) {
    return hermitian_eigenvalues<Real>(m.matrix());
}

template <typename Real>
BasicDensityReport<Real> validate_density(const CMatrix<Real> &m) {
    BasicDensityReport<Real> report;
    if (m.rows() != m.cols() || m.size() == 0 || !m.allFinite()) {
        report.hermiticity_defect = std::numeric_limits<Real>::infinity();
        report.min_eigenvalue = -std::numeric_limits<Real>::infinity();
        report.trace_defect = std::numeric_limits<Real>::infinity();
        return report;
    }
    report.hermiticity_defect = hermiticity_defect<Real>(m);
    // Eigenvalues of the Hermitian part; the defect above reports the rest.
    const CMatrix<Real> herm = (m + m.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(herm, Eigen::EigenvaluesOnly);
    report.min_eigenvalue = solver.eigenvalues().minCoeff();
    report.trace_defect = std::abs(m.trace() - Complex<Real>(1));
    report.passed = report.hermiticity_defect <= Tolerance<Real>::structural &&
                    report.min_eigenvalue >= Tolerance<Real>::eigenvalue_floor &&
                    report.trace_defect <= Tolerance<Real>::structural;
    return report;
}

template <typename Real>
BasicDensityReport<Real> validate_density(const BasicOperator<Real> &m) {
    return validate_density<Real>(m.matrix());
}

/// Hermitian, positive semidefinite, unit-trace operator. Validated on construction.
template <typename Real> class BasicDensityOperator {
  public:
    BasicDensityOperator(QubitLayout layout, CMatrix<Real> matrix)
        : layout_(std::move(layout)), matrix_(std::move(matrix)) {
        if (matrix_.rows() != layout_.dimension() || matrix_.cols() != layout_.dimension()) {
            throw Error("density matrix shape does not match layout " + layout_.str());
        }
        const auto report = validate_density<Real>(matrix_);
        if (!report.passed) {
            throw Error("invalid density operator: " + report.describe());
        }
    }

    static BasicDensityOperator maximally_mixed(QubitLayout layout) {
        const auto d = layout.dimension();
        return BasicDensityOperator(std::move(layout),
                                    CMatrix<Real>::Identity(d, d) / Real(d));
    }

    [[nodiscard]] const QubitLayout &layout() const noexcept { return layout_; }
    [[nodiscard]] const CMatrix<Real> &matrix() const noexcept { return matrix_; }
    [[nodiscard]] BasicOperator<Real> as_operator() const { return {layout_, matrix_}; }
    [[nodiscard]] Real purity() const { return (matrix_ * matrix_).trace().real(); }

  private:
    QubitLayout layout_;
    CMatrix<Real> matrix_;
};

template <typename Real>
BasicDensityOperator<Real> BasicKet<Real>::projector() const {
    return {layout_, amplitudes_ * amplitudes_.adjoint()};
}

template <typename Real>
BasicDensityReport<Real> validate_density(const BasicDensityOperator<Real> &rho) {
    return validate_density<Real>(rho.matrix());
}

/// Kronecker product with the usual block layout: a's index is more significant.
template <typename Real>
CMatrix<Real> kron(const CMatrix<Real> &a, const CMatrix<Real> &b) {
    CMatrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

template <typename Real>
BasicKet<Real> tensor_product(const BasicKet<Real> &a, const BasicKet<Real> &b) {
    auto layout = concat(a.layout(), b.layout());
    CVector<Real> v = kron<Real>(a.amplitudes(), b.amplitudes());
    return BasicKet<Real>(std::move(layout), std::move(v));
}

template <typename Real>
BasicOperator<Real> tensor_product(const BasicOperator<Real> &a, const BasicOperator<Real> &b) {
    auto layout = concat(a.layout(), b.layout());
    return {std::move(layout), kron<Real>(a.matrix(), b.matrix())};
}

template <typename Real>
BasicDensityOperator<Real> tensor_product(const BasicDensityOperator<Real> &a,
                                          const BasicDensityOperator<Real> &b) {
    auto layout = concat(a.layout(), b.layout());
    return {std::move(layout), kron<Real>(a.matrix(), b.matrix())};
}

namespace detail {

/// For a target label order, map each new basis index to the old one.
inline std::vector<Eigen::Index> permutation_index_map(const QubitLayout &from,
                                                       const std::vector<std::string> &order) {
    const std::size_t n = from.size();
    if (order.size() != n) {
        throw Error("new order has " + std::to_string(order.size()) +
                    " labels; layout " + from.str() + " has " + std::to_string(n));
    }
    // source_pos[k] = position in `from` of the label placed at position k.
    std::vector<std::size_t> source_pos(n);
    std::vector<bool> seen(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        if (!from.contains(order[k])) {
            throw Error("new order is not a permutation of " + from.str() + ": unknown label '" +
                        order[k] + "'");
        }
        const auto p = from.index_of(order[k]);
        if (seen[p]) {
            throw Error("new order is not a permutation of " + from.str() +
                        ": repeated label '" + order[k] + "'");
        }
        seen[p] = true;
        source_pos[k] = p;
    }
    const Eigen::Index dim = from.dimension();
    std::vector<Eigen::Index> map(static_cast<std::size_t>(dim));
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        Eigen::Index old_idx = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const auto bit = (idx >> (n - 1 - k)) & 1;
            old_idx |= bit << (n - 1 - source_pos[k]);
        }
        map[static_cast<std::size_t>(idx)] = old_idx;
    }
    return map;
}

template <typename Real>
CMatrix<Real> permute_matrix(const CMatrix<Real> &m, const std::vector<Eigen::Index> &map) {
    const auto dim = m.rows();
    CMatrix<Real> out(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            out(i, j) = m(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

} // namespace detail

template <typename Real>
BasicKet<Real> permute_subsystems(const BasicKet<Real> &x, const std::vector<std::string> &order) {
    const auto map = detail::permutation_index_map(x.layout(), order);
    CVector<Real> v(x.amplitudes().size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = x.amplitudes()(map[static_cast<std::size_t>(i)]);
    }
    return BasicKet<Real>(QubitLayout(order), std::move(v));
}

template <typename Real>
BasicOperator<Real> permute_subsystems(const BasicOperator<Real> &x,
                                       const std::vector<std::string> &order) {
    const auto map = detail::permutation_index_map(x.layout(), order);
    return {QubitLayout(order), detail::permute_matrix<Real>(x.matrix(), map)};
}

template <typename Real>
BasicDensityOperator<Real> permute_subsystems(const BasicDensityOperator<Real> &x,
                                              const std::vector<std::string> &order) {
    const auto map = detail::permutation_index_map(x.layout(), order);
    return {QubitLayout(order), detail::permute_matrix<Real>(x.matrix(), map)};
}

/// Reduced state on `keep`; kept labels retain their original relative order.
template <typename Real>
BasicDensityOperator<Real> partial_trace(const BasicDensityOperator<Real> &rho,
                                         std::span<const std::string> keep) {
    const auto &layout = rho.layout();
    if (keep.empty()) {
        throw Error("partial_trace: keep set is empty");
    }
    std::vector<bool> kept(layout.size(), false);
    for (const auto &label : keep) {
        const auto p = layout.index_of(label);
        if (kept[p]) {
            throw Error("partial_trace: label '" + label + "' listed twice");
        }
        kept[p] = true;
    }
    std::vector<std::string> kept_labels;
    std::vector<std::string> order;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        if (kept[i]) {
            kept_labels.push_back(layout.labels()[i]);
        }
    }
    order = kept_labels;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        if (!kept[i]) {
            order.push_back(layout.labels()[i]);
        }
    }
    const auto map = detail::permutation_index_map(layout, order);
    const CMatrix<Real> m = detail::permute_matrix<Real>(rho.matrix(), map);

    const Eigen::Index dk = Eigen::Index(1) << kept_labels.size();
    const Eigen::Index dt = layout.dimension() / dk;
    CMatrix<Real> out = CMatrix<Real>::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; ++i) {
        for (Eigen::Index j = 0; j < dk; ++j) {
            Complex<Real> acc(0);
            for (Eigen::Index k = 0; k < dt; ++k) {
                acc += m(i * dt + k, j * dt + k);
            }
            out(i, j) = acc;
        }
    }
    return {QubitLayout(std::move(kept_labels)), std::move(out)};
}

template <typename Real>
BasicDensityOperator<Real> partial_trace(const BasicDensityOperator<Real> &rho,
                                         std::initializer_list<std::string> keep) {
    const std::vector<std::string> v(keep);
    return partial_trace<Real>(rho, std::span<const std::string>(v));
}

/// Tr(obs * rho) for a Hermitian observable.
template <typename Real>
Real expectation_value(const BasicOperator<Real> &obs, const BasicDensityOperator<Real> &rho) {
    if (obs.layout() != rho.layout()) {
        throw Error("expectation_value: observable layout " + obs.layout().str() +
                    " differs from state layout " + rho.layout().str());
    }
    if (!obs.is_hermitian()) {
        throw Error("expectation_value: observable is not Hermitian");
    }
    // Tr(O rho) = sum_ij O_ij rho_ji
    const Complex<Real> value = obs.matrix().cwiseProduct(rho.matrix().transpose()).sum();
    const Real scale = std::max(Real(1), obs.matrix().cwiseAbs().maxCoeff());
    if (std::abs(value.imag()) > Tolerance<Real>::structural * scale) {
        std::ostringstream os;
        os << "expectation_value: imaginary residue " << value.imag() << " exceeds tolerance";
        throw Error(os.str());
    }
    return value.real();
}

using Ket = BasicKet<double>;
using Operator = BasicOperator<double>;
using DensityOperator = BasicDensityOperator<double>;
using DensityReport = BasicDensityReport<double>;
using Matrix = CMatrix<double>;
using Vector = CVector<double>;

} // namespace twocopy
