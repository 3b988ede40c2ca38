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

#include "macroreal/random.hpp"

#include <cmath>
#include <numbers>

#include "macroreal/error.hpp"
#include "macroreal/tables.hpp"

namespace macroreal::rng {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 0;
    while (u1 <= 0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2 * std::log(u1));
    spare_ = r * std::sin(2 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2 * std::numbers::pi * u2);
}

CVector haar_ket(int dim, Rng &rng) {
    numerics::require_dim(dim);
    CVector v(dim);
    for (int i = 0; i < dim; ++i) {
        double re = rng.normal();
        double im = rng.normal();
        v(i) = Complex(re, im);
    }
    return v / v.norm();
}

CMatrix random_hermitian(int dim, Rng &rng) {
    numerics::require_dim(dim);
    CMatrix m(dim, dim);
    for (int c = 0; c < dim; ++c) {
        for (int r = 0; r < dim; ++r) {
            double re = rng.normal();
            double im = rng.normal();
            m(r, c) = Complex(re, im);
        }
    }
    return (m + m.adjoint()) * 0.5;
}

states::PureStateParams random_pure_params(int case_id, Rng &rng) {
    tables::case_info(case_id);
    const double two_pi = 2 * std::numbers::pi;
    states::PureStateParams p;
    p.case_id = case_id;
    p.theta = rng.uniform(0, two_pi);
    p.alpha = rng.uniform(0, two_pi);
    p.beta = rng.uniform(0, two_pi);
    for (double &x : p.phi) x = rng.uniform(0, two_pi);
    return p;
}

states::DensityMatrix random_gellmann_state(Rng &rng) {
    const double r = 1 / std::sqrt(3.0);
    while (true) {
        states::GellMannVector g;
        double norm2 = 0;
        for (double &x : g.a) {
            x = rng.uniform(-r, r);
            norm2 += x * x;
        }
        if (norm2 > 1.0 / 3) continue;
        if (states::gellmann_matrix(g).determinant().real() < 0) continue;
        try {
            return states::gellmann_state(g);
        } catch (const Error &) {
            // det >= 0 with a negative pair of eigenvalues; draw again.
        }
    }
}

}  // namespace macroreal::rng
