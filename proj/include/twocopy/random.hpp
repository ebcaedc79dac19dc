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
 * Seeded, counter-based random numbers and random quantum states.
 *
 * CounterRng is SplitMix64 used in counter mode: draw i returns
 * mix64(seed + (i + 1) * 0x9E3779B97F4A7C15), where mix64 is the SplitMix64
 * finalizer. A stream is fully described by (seed, counter), so results are
 * bit-reproducible and independent streams are obtained by deriving seeds
 * with `stream_seed`. Normal deviates use Box-Muller so that no part of the
 * stream depends on implementation-defined standard-library distributions.
 */
#pragma once

#include <cstdint>

#include "twocopy/linalg.hpp"

namespace twocopy {

class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    /// Next 64-bit output.
    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Standard normal deviate.
    double normal() noexcept;

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t mix64(std::uint64_t z) noexcept;

/// Seed of the `index`-th independent substream of `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Complex Ginibre matrix: i.i.d. entries with independent N(0, 1/2) parts.
Matrix random_ginibre(Eigen::Index rows, Eigen::Index cols, CounterRng &rng);

/// Haar-random unitary via QR of a Ginibre matrix with phase correction.
Matrix random_unitary(Eigen::Index dim, CounterRng &rng);

/// Haar-random pure state on `layout`.
Ket random_ket(const QubitLayout &layout, CounterRng &rng);

/// Random mixed state G G^dagger / Tr, G a dim x rank Ginibre matrix.
/// rank == dim gives the Hilbert-Schmidt ensemble.
DensityOperator random_density(const QubitLayout &layout, CounterRng &rng,
                               Eigen::Index rank = -1);

} // namespace twocopy
