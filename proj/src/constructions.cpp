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

#include <cmath>
#include <numbers>

#include "macroreal/constructions.hpp"
#include "macroreal/correlators.hpp"
#include "macroreal/error.hpp"

namespace macroreal::constructions {

Construction construct_n5(double alpha) {
    Construction c;
    c.levels = 5;
    c.alpha = alpha;
    c.angles = search::solve_alpha(alpha, search::AlphaForm::N5);
    const double th = c.angles.theta, ph = c.angles.phi;
    const Complex diag = std::polar(std::cos(th), ph);
    const Complex off = std::polar(0.5 * std::sin(th), -ph);
    for (int i = 0; i < 5; ++i) {
        CVector v = CVector::Constant(5, off);
        v(i) = diag;
        c.v.push_back(v);
    }
    c.psi = CVector::Constant(5, Complex(1 / std::sqrt(5.0), 0));
    c.dataset = correlators::overlap_correlators(c.psi, c.v);

    std::vector<double> times{0, 1, 2, 3, 4};
    c.model.emplace(observables::cyclic_hamiltonian_5(), observables::dichotomic_single(c.v[0]),
                    states::pure_density(c.psi), times);
    return c;
}

Construction construct_n4(double alpha) {
    Construction c;
    c.levels = 4;
    c.alpha = alpha;
    c.angles = search::solve_alpha(alpha, search::AlphaForm::N4);
    const double th = c.angles.theta, ph = c.angles.phi;
    const Complex diag = std::polar(std::cos(th), ph);
    const Complex off = std::polar(std::sin(th) / std::sqrt(3.0), -ph);
    std::vector<CVector> w;
    CVector sum = CVector::Zero(4);
    for (int i = 0; i < 4; ++i) {
        CVector v = CVector::Constant(4, off);
        v(i) = diag;
        w.push_back(v);
        sum += v;
    }
    if (1 + 3 * alpha <= 0) {
        throw Error(ErrorCode::Unattainable, "the four vectors sum to zero at this overlap");
    }
    c.psi = sum / (2 * std::sqrt(1 + 3 * alpha));
    c.v.push_back(c.psi);
    c.v.insert(c.v.end(), w.begin(), w.end());
    c.dataset = correlators::overlap_correlators(c.psi, c.v);
    return c;
}

}  // namespace macroreal::constructions
