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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "macroreal/conditions.hpp"
#include "macroreal/correlators.hpp"
#include "macroreal/dataset.hpp"
#include "macroreal/observables.hpp"
#include "macroreal/random.hpp"

namespace macroreal::shots {

/// One measurement sequence: the variable measured at each listed time.
/// Its result estimates the entry EntryKey(times, vars).
struct Experiment {
    std::vector<int> times;
    std::string vars;

    EntryKey key() const { return EntryKey(times, vars); }
};

struct ShotPlan {
    observables::SpinModel model;
    std::vector<Experiment> experiments;
    long shots = 1;
    std::uint64_t seed = 0;
    int workers = 1;

    /// Throws InvalidSpec.
    void validate() const;
};

/// One experiment per entry of the requested orders, as in an exact dataset.
ShotPlan default_plan(const observables::SpinModel &model, std::span<const int> orders, long shots, std::uint64_t seed);

struct Estimate {
    double value = 0;
    double std_error = 0;
    long shots = 0;
};

struct EstimatedDataset {
    MRDataset values{1};
    std::map<EntryKey, Estimate> estimates;

    double std_error(const EntryKey &key) const;
    /// Standard error of a linear form in independently estimated entries.
    double std_error(const LinearForm &form) const;
};

/// Draws one outcome string (projector indices) by the Born rule with collapse.
std::vector<int> sample_sequence(const states::DensityMatrix &rho, std::span<const correlators::ProjectorSet> sets,
                                 rng::Rng &rng);

/// Same distribution as sample_sequence with the conditional outcome
/// probabilities of every prefix computed once up front.
class SequenceSampler {
   public:
    SequenceSampler(const states::DensityMatrix &rho, std::span<const correlators::ProjectorSet> sets);

    void sample(rng::Rng &rng, std::span<int> outcome) const;
    /// Product of the outcome values of one shot.
    double sample_product(rng::Rng &rng) const;
    int n() const { return static_cast<int>(radix_.size()); }

   private:
    std::vector<int> radix_;
    std::vector<std::vector<double>> values_;
    // Per level, cumulative conditional probabilities laid out by prefix index.
    std::vector<std::vector<double>> cumulative_;
};

EstimatedDataset estimate_dataset(const ShotPlan &plan);

enum class Verdict { Violated, Satisfied, Inconclusive };
std::string_view to_string(Verdict v);

struct ErrorReport {
    conditions::ConditionReport report;
    double std_error = 0;
    /// min_value / std_error (negative for violations).
    double z = 0;
    Verdict verdict = Verdict::Inconclusive;
    /// Another instance lies within two combined standard errors of the minimum.
    bool near_degenerate = false;
};

/// Minimum with its standard error propagated through the minimizing
/// instance's linear form; verdict at `significance` standard errors.
ErrorReport evaluate_with_errors(const EstimatedDataset &est, conditions::Family family,
                                 double eps = conditions::kDefaultEpsilon, double significance = 5);

}  // namespace macroreal::shots
