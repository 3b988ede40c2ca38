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
#include <vector>

#include "macroreal/dataset.hpp"
#include "macroreal/numerics.hpp"
#include "macroreal/observables.hpp"
#include "macroreal/states.hpp"

namespace macroreal::correlators {

using states::DensityMatrix;

double corr1(const DensityMatrix &rho, const CMatrix &qi);
/// (1/2)<{Qi, Qj}>
double corr2(const DensityMatrix &rho, const CMatrix &qi, const CMatrix &qj);
/// (1/4)<{Qi, {Qj, Qk}}>
double corr3(const DensityMatrix &rho, const CMatrix &qi, const CMatrix &qj, const CMatrix &qk);
/// (1/8)<{Qi, {Qj, {Qk, Ql}}}>
double corr4(const DensityMatrix &rho, const CMatrix &qi, const CMatrix &qj, const CMatrix &qk, const CMatrix &ql);
/// Nested anticommutator over time-ordered operators, scaled by 2^{1-k}.
double nested(const DensityMatrix &rho, std::span<const CMatrix> ops);

/// Complete orthogonal projectors for one measurement, with the value
/// attached to each outcome.
struct ProjectorSet {
    std::vector<CMatrix> projectors;
    std::vector<double> values;

    int size() const { return static_cast<int>(projectors.size()); }
    /// Throws BadProjectors.
    void validate() const;
    /// Outcomes +1 and -1 with P = (1 +- q)/2, in that order.
    static ProjectorSet from_dichotomic(const CMatrix &q);
};

/// Outcome probabilities of a measurement sequence, flattened with the first
/// time as the most significant digit.
class JointProbabilityTable {
   public:
    JointProbabilityTable(std::vector<int> outcomes_per_time, std::vector<double> probs);

    int n() const { return static_cast<int>(radix_.size()); }
    const std::vector<int> &outcomes_per_time() const { return radix_; }
    const std::vector<double> &probabilities() const { return probs_; }
    double prob(std::span<const int> outcome) const;
    double total() const;
    /// Table for the first k times.
    JointProbabilityTable marginal_prefix(int k) const;
    /// Expectation of the product of outcome values at the selected times.
    double moment(std::span<const std::vector<double>> values, std::span<const int> which) const;

   private:
    std::vector<int> radix_;
    std::vector<double> probs_;
};

/// p(a_1..a_n) = tr[P_n ... P_1 rho P_1 ... P_n]
JointProbabilityTable seq_probs(const DensityMatrix &rho, std::span<const ProjectorSet> sets);

/// <Q_1 ... Q_k> read off the sequential-measurement table of the given
/// dichotomic operators (time ordered).
double sequential_correlator(const DensityMatrix &rho, std::span<const CMatrix> ops);

/// Averages and correlators of the requested orders for every subset of the
/// model's times. Operators inside each correlator are ordered by time value.
MRDataset dataset_from_model(const observables::SpinModel &model, std::span<const int> orders);
MRDataset dataset_from_model(const observables::SpinModel &model);

/// Dichotomic dataset from Heisenberg operators already listed in time order.
MRDataset dataset_from_operators(const DensityMatrix &rho, std::span<const CMatrix> ops, std::span<const int> orders);

/// First and second order entries from inner products with the -1 eigenvectors
/// |v_i> (and |u_i> for two-projector observables).
MRDataset overlap_correlators(const CVector &psi, std::span<const CVector> v, std::span<const CVector> u = {});

/// Closed forms for the spin-1 models with H = J_x / 2 (times in units of 1/omega).
namespace spin1 {
double dichotomic_c(const DensityMatrix &rho, double ti, double tj);
double dichotomic_d(const DensityMatrix &rho, const CMatrix &q, double ti, double tj, double tk);
double dichotomic_e(const DensityMatrix &rho, double ti, double tj, double tk, double tl);
double tri_avg(const DensityMatrix &rho, const observables::TrichotomicTriple &x, char var, double t);
double tri_pair(const DensityMatrix &rho, const observables::TrichotomicTriple &x, char vi, char vj, double ti, double tj);
}  // namespace spin1

}  // namespace macroreal::correlators
