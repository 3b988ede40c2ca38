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

#include <array>
#include <string>
#include <vector>

#include "macroreal/numerics.hpp"

namespace macroreal::states {

/// How a density matrix was produced; carried into serialized output.
struct Provenance {
    std::string type = "explicit";  // explicit | bloch | gellmann | pure_case | ket
    int case_id = 0;
    std::vector<double> params;
};

/// Hermitian, unit-trace, positive semidefinite state. Only constructible
/// through validate_density or the state factories below.
class DensityMatrix {
   public:
    int dim() const { return static_cast<int>(matrix_.rows()); }
    const CMatrix &matrix() const { return matrix_; }
    const Provenance &provenance() const { return provenance_; }
    DensityMatrix with_provenance(Provenance p) const;
    double purity() const;

   private:
    friend DensityMatrix validate_density(const CMatrix &m, double tol);
    explicit DensityMatrix(CMatrix m) : matrix_(std::move(m)) {}

    CMatrix matrix_;
    Provenance provenance_;
};

/// Checks hermiticity, trace and eigenvalue floor, reporting every violation.
/// The Error code is that of the first violated invariant.
DensityMatrix validate_density(const CMatrix &m, double tol = numerics::kTol);

struct BlochVector {
    std::array<double, 3> v{};
};

struct GellMannVector {
    std::array<double, 8> a{};
};

/// Angles for the case-parameterized pure states. dim 2 uses theta and phi[0];
/// dim 3 adds alpha and phi[1]; dim 4 adds beta and phi[2].
struct PureStateParams {
    int case_id = 1;
    double theta = 0;
    double alpha = 0;
    double beta = 0;
    std::array<double, 3> phi{};
};

/// rho = (I + v.sigma)/2
DensityMatrix bloch_state(const BlochVector &v);

/// Three-level state from the eight real parameters a_1..a_8.
DensityMatrix gellmann_state(const GellMannVector &a);
/// The same matrix without validation, for bound checks and tests.
CMatrix gellmann_matrix(const GellMannVector &a);

/// Coefficients <E_n|psi> on the spin-x eigenbasis columns of tables::eigenbasis(dim).
CVector pure_state(const PureStateParams &params, int dim);
/// The same state in the computational basis.
CVector pure_state_ket(const PureStateParams &params);

DensityMatrix pure_density(const CVector &ket);

double wrap_angle(double x);

namespace pauli {
CMatrix x();
CMatrix y();
CMatrix z();
}  // namespace pauli

}  // namespace macroreal::states
