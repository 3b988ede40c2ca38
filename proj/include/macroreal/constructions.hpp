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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "macroreal/dataset.hpp"
#include "macroreal/observables.hpp"
#include "macroreal/search.hpp"

namespace macroreal::constructions {

/// Pure state and equal-overlap vectors whose projector observable gives
/// equal pairwise correlators at five times.
struct Construction {
    int levels = 0;
    double alpha = 0;
    search::AlphaSolution angles;
    CVector psi;
    std::vector<CVector> v;
    MRDataset dataset{1};
    /// Cyclic-Hamiltonian realization (five levels only).
    std::optional<observables::SpinModel> model;
};

/// Five levels: |v_i> = e^{i phi} cos(theta)|e_i> + (1/2) e^{-i phi} sin(theta) sum_{j != i} |e_j>,
/// psi the uniform superposition.
Construction construct_n5(double alpha = 3.0 / 8);
/// Four levels: |v_2..v_5> built like the five-level vectors, |v_1> = psi their
/// normalized sum.
Construction construct_n4(double alpha = 1.0 / 6);

}  // namespace macroreal::constructions

namespace macroreal::presets {

std::vector<std::string> figure_ids();
/// Scan spec for one of the figure parameter sets: 2a, 2b, 2c, 3, 4.
search::ScanSpec figure(std::string_view id, int resolution = 1000);
std::string figure_description(std::string_view id);

}  // namespace macroreal::presets
