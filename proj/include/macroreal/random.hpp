// Copyright 2026 The macroreal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

#include "macroreal/numerics.hpp"
#include "macroreal/states.hpp"

namespace macroreal::rng {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for sub-stream `index` of `master`. Streams for different indices are
/// independent of one another and of how many streams are drawn.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// 64-bit Mersenne twister with platform-independent float conversions.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box-Muller.
    double normal();
    int below(int n) { return static_cast<int>(uniform() * n); }

   private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0;
};

/// Haar-random unit vector.
CVector haar_ket(int dim, Rng &rng);
/// Hermitian matrix with independent Gaussian entries (GUE).
CMatrix random_hermitian(int dim, Rng &rng);
/// Uniformly drawn angles for a case-parameterized pure state.
states::PureStateParams random_pure_params(int case_id, Rng &rng);
/// Three-level state by rejection sampling inside the Gell-Mann bounds.
states::DensityMatrix random_gellmann_state(Rng &rng);

}  // namespace macroreal::rng
