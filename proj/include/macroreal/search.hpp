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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "macroreal/conditions.hpp"
#include "macroreal/dataset.hpp"
#include "macroreal/observables.hpp"

namespace macroreal::search {

using conditions::ConditionReport;
using conditions::Family;
using conditions::Regime;

/// One scanned coordinate: the measurement time at `time_index`, sampled on
/// `resolution` equal steps from lo to hi (resolution + 1 points, ends included).
struct FreeParameter {
    int time_index = 0;
    double lo = 0;
    double hi = 0;
    int resolution = 1000;

    std::string name() const { return "t" + std::to_string(time_index + 1); }
    double at(int k) const { return lo + (hi - lo) * k / resolution; }
};

struct ScanSpec {
    observables::SpinModel model;
    std::vector<FreeParameter> free{};
    std::vector<Family> families{};
    conditions::RegimeRoles roles{};
    double epsilon = conditions::kDefaultEpsilon;
    double refine_tol = 1e-6;
    int workers = 1;
    std::string preset{};

    /// Throws InvalidSpec.
    void validate() const;
    /// Correlator orders the families need.
    std::vector<int> orders() const;
};

struct ScanPoint {
    std::vector<double> params;
    std::vector<double> minima;  // parallel to ScanSpec::families
    Regime regime = Regime::AllSat;
};

/// Maximal run of grid points sharing a regime, with bisection-refined ends.
struct RegimeInterval {
    Regime regime;
    double lo;
    double hi;
    int first;
    int last;
};

/// Maximal run where one family is satisfied (or violated).
struct FamilyWindow {
    Family family;
    bool satisfied;
    double lo;
    double hi;
    int first;
    int last;
};

struct ScanResult {
    std::vector<std::string> param_names;
    std::vector<Family> families{};
    std::vector<ScanPoint> points;
    std::vector<RegimeInterval> intervals;
    std::vector<FamilyWindow> windows;

    bool has_regime(Regime r) const;
    /// Satisfied window of `family` containing x, if any.
    std::optional<FamilyWindow> window_containing(Family family, double x, bool satisfied = true) const;
};

/// Condition reports for the spec's families with the free times set to params.
std::vector<ConditionReport> evaluate_point(const ScanSpec &spec, std::span<const double> params);
Regime classify_point(const ScanSpec &spec, std::span<const double> params);

ScanResult scan(const ScanSpec &spec);

/// Instance found by random_search: pure state and the -1 eigenvector of
/// the dichotomic observable at each measurement time.
struct SearchInstance {
    int dim = 0;
    Family target = Family::LG2;
    double value = 0;
    bool feasible = true;
    CVector psi;
    std::vector<CVector> axes;
    std::vector<ConditionReport> reports;
    std::uint64_t chain_seed = 0;
};

struct SearchOptions {
    /// Families required to stay >= -epsilon.
    std::vector<Family> reference;
    int top_k = 5;
    int chains_per_dim = 8;
    double epsilon = conditions::kDefaultEpsilon;
    int workers = 1;
};

int times_for(Family target);
MRDataset instance_dataset(const SearchInstance &inst, std::span<const int> orders);

/// Stochastic hill climbing with restarts over (psi, axes). `iterations` is
/// the total number of objective evaluations, split over dims and chains.
std::vector<SearchInstance> random_search(Family target, std::span<const int> dims, long iterations, std::uint64_t seed,
                                          const SearchOptions &options = {});

/// Random quantum instances checked against the family's Lueders bound.
struct LudersSweep {
    Family family;
    int dim;
    long trials = 0;
    double bound = 0;
    double min_value = 0;
    long below_bound = 0;
};
LudersSweep luders_sweep(Family family, int dim, long trials, std::uint64_t seed, int workers = 1);

enum class AlphaForm { N5, N4 };

struct AlphaSolution {
    double theta = 0;
    double phi = 0;
    double achieved = 0;
};

/// <v_i|v_j> of the symmetric five- or four-vector construction.
double alpha_value(AlphaForm form, double theta, double phi);
/// Throws Unattainable when target lies outside the form's range.
AlphaSolution solve_alpha(double target, AlphaForm form);

}  // namespace macroreal::search
