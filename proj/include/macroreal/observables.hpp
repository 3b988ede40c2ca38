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

#include <span>
#include <variant>
#include <vector>

#include "macroreal/numerics.hpp"
#include "macroreal/states.hpp"

namespace macroreal::observables {

enum class Construction { SingleProjector, TwoProjector, Explicit };

/// Hermitian operator with Q^2 = 1.
class DichotomicObservable {
   public:
    const CMatrix &matrix() const { return matrix_; }
    Construction construction() const { return construction_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }
    /// Projector kets for the -1 eigenspace (empty for explicit matrices).
    const std::vector<CVector> &kets() const { return kets_; }

   private:
    friend DichotomicObservable dichotomic_single(const CVector &a);
    friend DichotomicObservable dichotomic_double(const CVector &a, const CVector &b);
    friend DichotomicObservable dichotomic_explicit(const CMatrix &m);
    DichotomicObservable(CMatrix m, Construction c, std::vector<CVector> kets)
        : matrix_(std::move(m)), construction_(c), kets_(std::move(kets)) {}

    CMatrix matrix_;
    Construction construction_;
    std::vector<CVector> kets_;
};

/// Q = 1 - 2|A><A|
DichotomicObservable dichotomic_single(const CVector &a);
/// Q = 1 - 2|A><A| - 2|B><B|
DichotomicObservable dichotomic_double(const CVector &a, const CVector &b);
DichotomicObservable dichotomic_explicit(const CMatrix &m);
/// Observable for measurement case 1..15 (single or two projector).
DichotomicObservable case_observable(int case_id);

/// Three dichotomic operators with q + r + s = -1.
struct TrichotomicTriple {
    CMatrix q;
    CMatrix r;
    CMatrix s;

    int dim() const { return static_cast<int>(q.rows()); }
    const CMatrix &get(char var) const;
};

TrichotomicTriple make_triple(const CMatrix &q, const CMatrix &r, const CMatrix &s);
TrichotomicTriple trichotomic_spin1();

/// J_x for spin (dim-1)/2, in the J_z basis ordered m = j, j-1, ..., -j.
CMatrix spin_x_hamiltonian(int dim);
/// Five-level generator whose unit-time evolution cycles the basis: exp(-iH)|e_{k+1}> = |e_k>.
CMatrix cyclic_hamiltonian_5();

/// e^{iht} obs e^{-iht}
CMatrix heisenberg(const CMatrix &obs, const CMatrix &h, double t);
CMatrix heisenberg(const CMatrix &obs, const numerics::EigenSystem &h, double t);

/// |v_i> = sum_n exp(-i E_n t_i) |E_n><E_n|A>
std::vector<CVector> v_vectors(const CMatrix &h, const CVector &a, std::span<const double> times);

using Observable = std::variant<DichotomicObservable, TrichotomicTriple>;

/// Hamiltonian (units of omega), observable, initial state and dimensionless times.
class SpinModel {
   public:
    SpinModel(CMatrix hamiltonian, Observable observable, states::DensityMatrix initial, std::vector<double> times);

    int dim() const { return initial_.dim(); }
    const CMatrix &hamiltonian() const { return hamiltonian_; }
    const Observable &observable() const { return observable_; }
    const states::DensityMatrix &initial() const { return initial_; }
    const std::vector<double> &times() const { return times_; }
    bool trichotomic() const { return std::holds_alternative<TrichotomicTriple>(observable_); }
    const numerics::EigenSystem &eigensystem() const { return eig_; }

    SpinModel with_times(std::vector<double> times) const;
    /// Heisenberg operator of variable var ('Q', 'R', 'S') at times()[index].
    CMatrix operator_at(int index, char var = 'Q') const;
    CMatrix operator_at_time(double t, char var = 'Q') const;

   private:
    CMatrix hamiltonian_;
    Observable observable_;
    states::DensityMatrix initial_;
    std::vector<double> times_;
    numerics::EigenSystem eig_;
};

}  // namespace macroreal::observables
