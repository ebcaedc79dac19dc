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

#include "twocopy/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "twocopy/random.hpp"

namespace twocopy {

namespace {

constexpr double kWeightTol = 1e-10;

void require_two_qubits(const QubitLayout &layout, const char *what) {
    if (layout.size() != 2) {
        throw Error(std::string(what) + ": expected a two-qubit system, got layout " +
                    layout.str());
    }
}

double concurrence_of(const Vector &w) {
    // |w^T (sy x sy) w| = 2 |w00 w11 - w01 w10| for an unnormalized two-qubit vector.
    return 2.0 * std::abs(w(0) * w(3) - w(1) * w(2));
}

} // namespace

ConcurrenceValue::ConcurrenceValue(double value) : value_(value) {
    if (!(value >= 0.0) || value > 1.0 + 1e-10) {
        std::ostringstream os;
        os << "concurrence " << value << " outside [0, 1]";
        throw Error(os.str());
    }
}

void check_weights(std::span<const double> weights, const std::string &context) {
    if (weights.empty()) {
        throw Error(context + ": ensemble is empty");
    }
    double total = 0.0;
    for (const double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw Error(context + ": weights must be finite and nonnegative");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > kWeightTol) {
        std::ostringstream os;
        os.precision(17);
        os << context << ": weights sum to " << total << ", expected 1";
        throw Error(os.str());
    }
}

PureEnsemble::PureEnsemble(std::vector<WeightedKet> members) : members_(std::move(members)) {
    std::vector<double> weights;
    for (const auto &m : members_) {
        weights.push_back(m.weight);
    }
    check_weights(weights, "pure ensemble");
    require_two_qubits(members_.front().state.layout(), "pure ensemble");
    for (const auto &m : members_) {
        if (m.state.layout() != members_.front().state.layout()) {
            throw Error("pure ensemble: members live on different layouts");
        }
    }
}

DensityOperator PureEnsemble::mixture() const {
    Matrix rho = Matrix::Zero(4, 4);
    for (const auto &m : members_) {
        rho += m.weight * m.state.amplitudes() * m.state.amplitudes().adjoint();
    }
    return {layout(), std::move(rho)};
}

ConcurrenceValue pure_concurrence(const Ket &psi) {
    require_two_qubits(psi.layout(), "pure_concurrence");
    return ConcurrenceValue(std::min(1.0, concurrence_of(psi.amplitudes())));
}

Matrix spin_flip_matrix() {
    Matrix s = Matrix::Zero(4, 4);
    s(0, 3) = -1.0;
    s(1, 2) = 1.0;
    s(2, 1) = 1.0;
    s(3, 0) = -1.0;
    return s;
}

Operator spin_flip(const DensityOperator &rho) {
    require_two_qubits(rho.layout(), "spin_flip");
    const Matrix s = spin_flip_matrix();
    return {rho.layout(), s * rho.matrix().conjugate() * s};
}

RVector<double> wootters_lambdas(const DensityOperator &rho) {
    require_two_qubits(rho.layout(), "wootters_concurrence");
    // rho = V V^dagger. The nonzero spectrum of rho rho~ equals that of
    // tau^dagger tau with the complex-symmetric tau = V^T S V, so the lambdas
    // are the singular values of tau.
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.matrix());
    Matrix v = eig.eigenvectors();
    for (Eigen::Index j = 0; j < 4; ++j) {
        v.col(j) *= std::sqrt(std::max(0.0, eig.eigenvalues()(j)));
    }
    const Matrix tau = v.transpose() * spin_flip_matrix() * v;
    Eigen::JacobiSVD<Matrix> svd(tau);
    RVector<double> lambdas = svd.singularValues();
    std::sort(lambdas.data(), lambdas.data() + lambdas.size(), std::greater<>());
    return lambdas;
}

ConcurrenceValue wootters_concurrence(const DensityOperator &rho) {
    const auto l = wootters_lambdas(rho);
    const double c = l(0) - l(1) - l(2) - l(3);
    return ConcurrenceValue(std::clamp(c, 0.0, 1.0));
}

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) {
        return 0.0;
    }
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double eof_from_concurrence(double c) {
    if (!(c >= 0.0) || c > 1.0 + 1e-10) {
        std::ostringstream os;
        os << "eof_from_concurrence: concurrence " << c << " outside [0, 1]";
        throw Error(os.str());
    }
    c = std::min(c, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double entanglement_entropy(const Ket &psi, std::span<const std::string> a_side) {
    const auto reduced = partial_trace(psi.projector(), a_side);
    const auto spectrum = hermitian_eigenvalues(reduced.matrix());
    double s = 0.0;
    for (const double p : spectrum) {
        if (p > 1e-15) {
            s -= p * std::log2(p);
        }
    }
    return s;
}

double ensemble_average_concurrence(const PureEnsemble &e) {
    double total = 0.0;
    for (const auto &m : e.members()) {
        total += m.weight * pure_concurrence(m.state).value();
    }
    return total;
}

double predicted_p_a_from_mean_concurrence(const PureEnsemble &e) {
    const double c = ensemble_average_concurrence(e);
    return c * c / 4.0;
}

double predicted_p_a_from_member_concurrences(const PureEnsemble &e) {
    double total = 0.0;
    for (const auto &m : e.members()) {
        const double c = pure_concurrence(m.state).value();
        total += m.weight * c * c / 4.0;
    }
    return total;
}

double ensemble_upper_bound_entanglement(std::span<const WeightedKet> members,
                                         std::span<const std::string> a_side) {
    if (members.empty()) {
        throw Error("ensemble_upper_bound_entanglement: no members");
    }
    std::vector<double> weights;
    for (const auto &m : members) {
        weights.push_back(m.weight);
    }
    check_weights(weights, "ensemble_upper_bound_entanglement");
    const auto &layout = members.front().state.layout();
    for (const auto &m : members) {
        if (m.state.layout() != layout) {
            throw Error("ensemble_upper_bound_entanglement: inconsistent bipartitions, member "
                        "layout " + m.state.layout().str() + " differs from " + layout.str());
        }
    }
    if (a_side.empty() || a_side.size() >= layout.size()) {
        throw Error("ensemble_upper_bound_entanglement: A side must be a nonempty proper subset "
                    "of " + layout.str());
    }
    double total = 0.0;
    for (const auto &m : members) {
        if (m.weight > 0.0) {
            total += m.weight * entanglement_entropy(m.state, a_side);
        }
    }
    return total;
}

namespace {

/// Coordinate descent state for one restart.
class RowMixingSearch {
  public:
    RowMixingSearch(const Matrix &tau, Matrix isometry)
        : tau_(tau), u_(std::move(isometry)) {
        refresh();
    }

    [[nodiscard]] double objective() const {
        double f = 0.0;
        for (Eigen::Index k = 0; k < u_.rows(); ++k) {
            f += std::abs(diag_(k));
        }
        return f;
    }
    [[nodiscard]] const Matrix &isometry() const noexcept { return u_; }

    void run(double stop_improvement, int max_sweeps) {
        const Eigen::Index k_rows = u_.rows();
        double current = objective();
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            for (Eigen::Index k = 0; k < k_rows; ++k) {
                for (Eigen::Index l = k + 1; l < k_rows; ++l) {
                    optimize_pair(k, l);
                }
            }
            const double next = objective();
            const bool converged = current - next < stop_improvement;
            current = next;
            if (converged || current < 1e-14) {
                break;
            }
        }
    }

  private:
    struct PairTerms {
        Complex<double> a, b, m;

        [[nodiscard]] double value(double theta, double phi) const {
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            const Complex<double> e = std::polar(1.0, phi);
            const Complex<double> ec = std::conj(e);
            const auto kk = c * c * a - 2.0 * c * s * ec * m + s * s * ec * ec * b;
            const auto ll = s * s * e * e * a + 2.0 * c * s * e * m + c * c * b;
            return std::abs(kk) + std::abs(ll);
        }
    };

    void refresh() {
        const Matrix t = u_ * tau_;
        diag_.resize(u_.rows());
        for (Eigen::Index k = 0; k < u_.rows(); ++k) {
            diag_(k) = t.row(k).cwiseProduct(u_.row(k)).sum();
        }
    }

    void optimize_pair(Eigen::Index k, Eigen::Index l) {
        const Eigen::RowVectorXcd rk = u_.row(k);
        const Eigen::RowVectorXcd rl = u_.row(l);
        const Eigen::RowVectorXcd rk_tau = rk * tau_;
        PairTerms terms{diag_(k), diag_(l), (rk_tau.cwiseProduct(rl)).sum()};

        const double base = terms.value(0.0, 0.0);
        double best = base;
        double best_theta = 0.0;
        double best_phi = 0.0;

        constexpr int kThetaSteps = 6;
        constexpr int kPhiSteps = 8;
        for (int i = 1; i <= kThetaSteps; ++i) {
            const double theta = 0.5 * std::numbers::pi * i / kThetaSteps;
            for (int j = 0; j < kPhiSteps; ++j) {
                const double phi = 2.0 * std::numbers::pi * j / kPhiSteps;
                const double f = terms.value(theta, phi);
                if (f < best) {
                    best = f;
                    best_theta = theta;
                    best_phi = phi;
                }
            }
        }

        // Compass search around the best grid point.
        double step_theta = 0.25 * std::numbers::pi / kThetaSteps;
        double step_phi = std::numbers::pi / kPhiSteps;
        for (int iter = 0; iter < 400 && step_theta > 1e-9; ++iter) {
            bool moved = false;
            const std::array<std::pair<double, double>, 4> moves{
                {{step_theta, 0.0}, {-step_theta, 0.0}, {0.0, step_phi}, {0.0, -step_phi}}};
            for (const auto &[dt, dp] : moves) {
                const double f = terms.value(best_theta + dt, best_phi + dp);
                if (f < best - 1e-15) {
                    best = f;
                    best_theta += dt;
                    best_phi += dp;
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                step_theta *= 0.5;
                step_phi *= 0.5;
            }
        }

        if (best < base - 1e-15) {
            const double c = std::cos(best_theta);
            const double s = std::sin(best_theta);
            const Complex<double> e = std::polar(1.0, best_phi);
            u_.row(k) = c * rk - s * std::conj(e) * rl;
            u_.row(l) = s * e * rk + c * rl;
            refresh();
        }
    }

    const Matrix &tau_;
    Matrix u_;
    Vector diag_;
};


/// Quasi-Newton polish over U -> exp(iH) U with H Hermitian. Tangent
/// vectors are stored as real coordinates in an orthonormal Hermitian basis.
class UnitaryBfgs {
  public:
    explicit UnitaryBfgs(const Matrix &tau) : tau_(tau) {}

    void run(Matrix &u, int max_iters) const {
        const Eigen::Index n = u.rows() * u.rows();
        Eigen::VectorXd g;
        double f = evaluate(u, &g);
        Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
        int stalls = 0;
        for (int iter = 0; iter < max_iters && g.norm() > 1e-12; ++iter) {
            Eigen::VectorXd p = -hinv * g;
            double slope = g.dot(p);
            if (slope >= 0.0) {
                hinv.setIdentity();
                p = -g;
                slope = -g.squaredNorm();
            }
            double t = 1.0;
            Matrix trial;
            double f_trial = f;
            bool accepted = false;
            for (int ls = 0; ls < 40; ++ls) {
                trial = retract(u, t * p);
                f_trial = evaluate(trial, nullptr);
                if (f_trial <= f + 1e-4 * t * slope) {
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if (!accepted) {
                break;
            }
            Eigen::VectorXd g_new;
            f_trial = evaluate(trial, &g_new);
            const Eigen::VectorXd s = t * p;
            const Eigen::VectorXd y = g_new - g;
            const double sy = s.dot(y);
            if (sy > 1e-18) {
                if (iter == 0) {
                    hinv *= sy / y.squaredNorm();
                }
                const double rho = 1.0 / sy;
                const Eigen::VectorXd hy = hinv * y;
                hinv += (rho * rho * y.dot(hy) + rho) * (s * s.transpose()) -
                        rho * (hy * s.transpose() + s * hy.transpose());
            }
            stalls = f - f_trial < 1e-15 ? stalls + 1 : 0;
            u = std::move(trial);
            f = f_trial;
            g = std::move(g_new);
            if (stalls >= 3) {
                break;
            }
        }
    }

  private:
    double evaluate(const Matrix &u, Eigen::VectorXd *grad) const {
        const Matrix m = u * tau_ * u.transpose();
        const Eigen::Index k_rows = m.rows();
        double f = 0.0;
        Vector phase(k_rows);
        for (Eigen::Index k = 0; k < k_rows; ++k) {
            const double r = std::abs(m(k, k));
            f += r;
            phase(k) = r > 1e-300 ? m(k, k) / r : Complex<double>(0.0, 0.0);
        }
        if (grad != nullptr) {
            // Directional derivative along H is Re sum_kj 2i conj(s_k) M_jk H_kj.
            const Complex<double> two_i(0.0, 2.0);
            Matrix g(k_rows, k_rows);
            for (Eigen::Index k = 0; k < k_rows; ++k) {
                for (Eigen::Index j = 0; j < k_rows; ++j) {
                    const Complex<double> a_kj = two_i * std::conj(phase(k)) * m(j, k);
                    const Complex<double> a_jk = two_i * std::conj(phase(j)) * m(k, j);
                    g(k, j) = 0.5 * (std::conj(a_kj) + a_jk);
                }
            }
            *grad = to_coords(g);
        }
        return f;
    }

    static Eigen::VectorXd to_coords(const Matrix &h) {
        const Eigen::Index k_rows = h.rows();
        Eigen::VectorXd x(k_rows * k_rows);
        Eigen::Index at = 0;
        for (Eigen::Index k = 0; k < k_rows; ++k) {
            x(at++) = h(k, k).real();
            for (Eigen::Index j = k + 1; j < k_rows; ++j) {
                x(at++) = std::numbers::sqrt2 * h(k, j).real();
                x(at++) = std::numbers::sqrt2 * h(k, j).imag();
            }
        }
        return x;
    }

    static Matrix retract(const Matrix &u, const Eigen::VectorXd &x) {
        const Eigen::Index k_rows = u.rows();
        Matrix h(k_rows, k_rows);
        Eigen::Index at = 0;
        for (Eigen::Index k = 0; k < k_rows; ++k) {
            h(k, k) = x(at++);
            for (Eigen::Index j = k + 1; j < k_rows; ++j) {
                const Complex<double> v(x(at), x(at + 1));
                at += 2;
                h(k, j) = v / std::numbers::sqrt2;
                h(j, k) = std::conj(h(k, j));
            }
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        Vector phases(k_rows);
        for (Eigen::Index k = 0; k < k_rows; ++k) {
            phases(k) = std::polar(1.0, es.eigenvalues()(k));
        }
        const Matrix &w = es.eigenvectors();
        return w * phases.asDiagonal() * (w.adjoint() * u);
    }

    const Matrix &tau_;
};

} // namespace

OracleResult decomposition_infimum_oracle(const DensityOperator &rho,
                                          const OracleOptions &options) {
    require_two_qubits(rho.layout(), "decomposition_infimum_oracle");
    if (options.restarts == 0) {
        throw Error("decomposition_infimum_oracle: at least one restart required");
    }

    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.matrix());
    std::vector<Eigen::Index> support;
    for (Eigen::Index j = 3; j >= 0; --j) {
        if (eig.eigenvalues()(j) > 1e-12) {
            support.push_back(j);
        }
    }
    const auto rank = static_cast<Eigen::Index>(support.size());
    if (options.ensemble_size < rank) {
        throw Error("decomposition_infimum_oracle: ensemble size " +
                    std::to_string(options.ensemble_size) + " below rank " +
                    std::to_string(rank));
    }
    Matrix v(4, rank);
    for (Eigen::Index j = 0; j < rank; ++j) {
        const auto src = support[static_cast<std::size_t>(j)];
        v.col(j) = eig.eigenvectors().col(src) * std::sqrt(eig.eigenvalues()(src));
    }
    const Matrix tau = v.transpose() * spin_flip_matrix() * v;

    // Coarse descent from every restart, then full refinement of the most
    // promising few. Ties resolve toward the lower restart index.
    constexpr int kCoarseSweeps = 3;
    constexpr std::size_t kRefined = 4;
    std::vector<std::pair<double, Matrix>> coarse;
    coarse.reserve(options.restarts);
    for (std::size_t restart = 0; restart < options.restarts; ++restart) {
        CounterRng rng(stream_seed(options.seed, restart));
        const Matrix full = random_unitary(options.ensemble_size, rng);
        RowMixingSearch search(tau, full.leftCols(rank));
        search.run(1e-9, kCoarseSweeps);
        coarse.emplace_back(search.objective(), search.isometry());
    }
    std::vector<std::size_t> order(coarse.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return coarse[a].first < coarse[b].first;
    });

    OracleResult result;
    result.value = std::numeric_limits<double>::infinity();
    Matrix best_u;
    const UnitaryBfgs polish(tau);
    for (std::size_t n = 0; n < std::min(kRefined, order.size()); ++n) {
        Matrix u = coarse[order[n]].second;
        polish.run(u, 500);
        RowMixingSearch search(tau, std::move(u));
        search.run(1e-9, 1000);
        const double f = search.objective();
        if (f < result.value) {
            result.value = f;
            best_u = search.isometry();
        }
    }
    result.decomposition = v * best_u.transpose();
    return result;
}

} // namespace twocopy
