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

// Spin-x eigenbases, measurement cases and closed-form inner products for
// spin-1/2, spin-1 and spin-3/2 with H = J_x (times in units of 1/omega).

#include "macroreal/numerics.hpp"

namespace macroreal::tables {

/// Eigenvectors of J_x as columns. Order: dim 2 (E+, E-), dim 3 (E+, E0, E-),
/// dim 4 (E+3, E+1, E-1, E-3).
CMatrix eigenbasis(int dim);
/// Eigenvalues in the same column order as eigenbasis().
RVector eigenvalues(int dim);

/// Measurement case 1..15. Projector kets are computational basis indices
/// (0-based); b < 0 for single-projector cases.
struct CaseInfo {
    int dim;
    int a;
    int b;
};
CaseInfo case_info(int case_id);
int case_dim(int case_id);

/// |v_i> at time t for single-projector cases 1..9, written out term by term.
CVector case_v(int case_id, double t);

/// <v_j|v_i> for single-projector cases 1..9, dt = t_j - t_i.
double case_overlap(int case_id, double dt);

/// <v_i^(n)|v_j^(m)> for 6 <= n < m <= 9 (dim 4), dt = t_j - t_i.
Complex mixed_overlap(int n, int m, double dt);

}  // namespace macroreal::tables
