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
#include "macroreal/error.hpp"
#include "macroreal/states.hpp"

namespace macroreal::presets {
namespace {

using conditions::Family;
constexpr double kPi = std::numbers::pi;

search::ScanSpec spin_half(std::array<double, 3> v, std::vector<double> times, std::vector<Family> families,
                           std::vector<Family> reference, std::vector<Family> target, int resolution, std::string id) {
    observables::SpinModel model(observables::spin_x_hamiltonian(2), observables::dichotomic_explicit(states::pauli::z()),
                                 states::bloch_state({v}), times);
    int free_index = static_cast<int>(times.size()) - 1;
    return {model, {{free_index, 0, 2 * kPi, resolution}}, families, {reference, target}, conditions::kDefaultEpsilon,
            1e-6, 1, std::move(id)};
}

}  // namespace

std::vector<std::string> figure_ids() { return {"2a", "2b", "2c", "3", "4"}; }

std::string figure_description(std::string_view id) {
    if (id == "2a") return "spin-1/2, v=(1,1,0)/sqrt2, wt1=0, wt2=pi, scan wt3; LG2/LG3 vs HO3";
    if (id == "2b") return "spin-1/2, v=(1,0,1)/sqrt2, wt1..3=0,pi/2,pi, scan wt4; LG2/LG3 vs HO4";
    if (id == "2c") return "spin-1/2, v=(1,0,0), wt1..3=0,pi/2,pi, scan wt4; HO3 vs HO4";
    if (id == "3") return "spin-3/2, case 7, theta=alpha=9pi/5, beta=0, phi=3pi/5,6pi/5,9pi/5, wt1..4=0,pi/5,2pi/5,3pi/5, scan wt5; LG3 vs PI";
    if (id == "4") return "spin-1 trichotomic, a=(0,0,1,2,1,0,0,-1)/(3sqrt3), H=Jx/2, wt1=0, wt2=3pi/4, scan wt3; LG2/LG3 vs trichotomic LG3";
    throw Error(ErrorCode::BadInput, "unknown figure '" + std::string(id) + "' (expected 2a, 2b, 2c, 3 or 4)");
}

search::ScanSpec figure(std::string_view id, int resolution) {
    const double r2 = 1 / std::sqrt(2.0);
    if (id == "2a") {
        return spin_half({r2, r2, 0}, {0, kPi, 0}, {Family::LG2, Family::LG3, Family::HO3}, {Family::LG2, Family::LG3},
                         {Family::HO3}, resolution, "2a");
    }
    if (id == "2b") {
        return spin_half({r2, 0, r2}, {0, kPi / 2, kPi, 0}, {Family::LG2, Family::LG3, Family::HO4},
                         {Family::LG2, Family::LG3}, {Family::HO4}, resolution, "2b");
    }
    if (id == "2c") {
        return spin_half({1, 0, 0}, {0, kPi / 2, kPi, 0}, {Family::HO3, Family::HO4}, {Family::HO3}, {Family::HO4},
                         resolution, "2c");
    }
    if (id == "3") {
        states::PureStateParams p;
        p.case_id = 7;
        p.theta = 9 * kPi / 5;
        p.alpha = 9 * kPi / 5;
        p.beta = 0;
        p.phi = {3 * kPi / 5, 6 * kPi / 5, 9 * kPi / 5};
        states::DensityMatrix rho = states::pure_density(states::pure_state_ket(p)).with_provenance(
            {"pure_case", 7, {p.theta, p.alpha, p.beta, p.phi[0], p.phi[1], p.phi[2]}});
        observables::SpinModel model(observables::spin_x_hamiltonian(4), observables::case_observable(7), rho,
                                     {0, kPi / 5, 2 * kPi / 5, 3 * kPi / 5, 0});
        return {model, {{4, 0, 2 * kPi, resolution}}, {Family::LG3, Family::PI}, {{Family::LG3}, {Family::PI}},
                conditions::kDefaultEpsilon, 1e-6, 1, "3"};
    }
    if (id == "4") {
        const double s = 1 / (3 * std::sqrt(3.0));
        states::GellMannVector a{{0, 0, 1 * s, 2 * s, 1 * s, 0, 0, -1 * s}};
        observables::SpinModel model(0.5 * observables::spin_x_hamiltonian(3), observables::trichotomic_spin1(),
                                     states::gellmann_state(a), {0, 3 * kPi / 4, 0});
        return {model,
                {{2, 0, 2 * kPi, resolution}},
                {Family::LG2, Family::LG3, Family::TRI_LG2, Family::TRI_LG3},
                {{Family::LG2, Family::LG3}, {Family::TRI_LG3}},
                conditions::kDefaultEpsilon,
                1e-6,
                1,
                "4"};
    }
    figure_description(id);
    throw Error(ErrorCode::BadInput, "unknown figure");
}

}  // namespace macroreal::presets
