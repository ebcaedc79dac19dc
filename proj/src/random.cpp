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

#include "twocopy/random.hpp"

#include <cmath>
#include <numbers>

namespace twocopy {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) ^ mix64(index + kGoldenGamma));
}

std::uint64_t CounterRng::next_u64() noexcept {
    ++counter_;
    return mix64(seed_ + counter_ * kGoldenGamma);
}

double CounterRng::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // 1 - u lies in (0, 1], so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
}

Matrix random_ginibre(Eigen::Index rows, Eigen::Index cols, CounterRng &rng) {
    Matrix g(rows, cols);
    const double scale = std::sqrt(0.5);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = {scale * re, scale * im};
        }
    }
    return g;
}

Matrix random_unitary(Eigen::Index dim, CounterRng &rng) {
    const Matrix g = random_ginibre(dim, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix column phases so the distribution is Haar.
    for (Eigen::Index j = 0; j < dim; ++j) {
        const auto d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(j) *= d / mag;
        }
    }
    return q;
}

Ket random_ket(const QubitLayout &layout, CounterRng &rng) {
    const Matrix g = random_ginibre(layout.dimension(), 1, rng);
    return Ket::normalized(layout, g.col(0));
}

DensityOperator random_density(const QubitLayout &layout, CounterRng &rng, Eigen::Index rank) {
    const auto dim = layout.dimension();
    if (rank < 0) {
        rank = dim;
    }
    if (rank < 1 || rank > dim) {
        throw Error("random_density: rank out of range");
    }
    const Matrix g = random_ginibre(dim, rank, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    // Exact Hermitian symmetrization removes roundoff asymmetry.
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    return {layout, std::move(rho)};
}

} // namespace twocopy
