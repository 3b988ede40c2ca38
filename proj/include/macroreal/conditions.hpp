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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "macroreal/dataset.hpp"

namespace macroreal::conditions {

enum class Family { LG2, LG3, LG4_cycle, LG5_cycle, HO3, HO4, NFULL, PI, TRI_LG2, TRI_LG3 };

inline constexpr Family kAllFamilies[] = {Family::LG2,   Family::LG3, Family::LG4_cycle, Family::LG5_cycle,
                                          Family::HO3,   Family::HO4, Family::NFULL,     Family::PI,
                                          Family::TRI_LG2, Family::TRI_LG3};

inline constexpr double kDefaultEpsilon = 1e-9;

std::string_view to_string(Family f);
Family parse_family(std::string_view s);

/// Which times an inequality instance uses and how: per-time signs for vertex
/// families, per-edge signs for cycles, per-time variables for trichotomic ones.
struct Assignment {
    std::vector<int> times;
    std::vector<int> signs;
    std::string vars;

    bool operator==(const Assignment &) const = default;
    std::string describe() const;
};

/// One inequality instance: its left-hand side as a linear form in dataset entries.
struct Candidate {
    Assignment assignment;
    LinearForm form;
};

struct ConditionReport {
    Family family = Family::LG2;
    int n = 0;
    double min_value = 0;
    Assignment argmin;
    std::vector<double> all_values;
    bool satisfied = true;
    double epsilon = kDefaultEpsilon;
};

/// Every distinct inequality instance of the family that the dataset supports.
/// Throws MissingData, WrongSubset or WrongKind when none can be formed.
std::vector<Candidate> candidates(const MRDataset &ds, Family family);
/// Cycle inequalities (m - 2) + sum_k sigma_k C_{c_k c_{k+1}} >= 0 over edge
/// signs with prod sigma = (-1)^{m+1}.
std::vector<Candidate> cycle_candidates(const MRDataset &ds, std::span<const int> cycle);

ConditionReport evaluate(const MRDataset &ds, Family family, double eps = kDefaultEpsilon, bool keep_all = false);
ConditionReport report_from(const MRDataset &ds, Family family, const std::vector<Candidate> &cands, double eps,
                            bool keep_all);

ConditionReport lg2_min(const MRDataset &ds, double eps = kDefaultEpsilon);
ConditionReport lg3_min(const MRDataset &ds, double eps = kDefaultEpsilon);
ConditionReport lgn_cycle_min(const MRDataset &ds, std::span<const int> cycle, double eps = kDefaultEpsilon);
ConditionReport higher_order_min(const MRDataset &ds, int order, double eps = kDefaultEpsilon);
ConditionReport nfull_min(const MRDataset &ds, double eps = kDefaultEpsilon);
ConditionReport pentagon_min(const MRDataset &ds, double eps = kDefaultEpsilon);
ConditionReport tri_lg2_min(const MRDataset &ds, double eps = kDefaultEpsilon);
ConditionReport tri_lg3_min(const MRDataset &ds, double eps = kDefaultEpsilon);

/// Value of one inequality instance. Throws BadInput if the assignment does
/// not name an instance of the family.
double evaluate_assignment(const MRDataset &ds, Family family, const Assignment &a);

/// Families that can be evaluated on the dataset.
std::vector<Family> applicable_families(const MRDataset &ds);

/// Most negative value quantum mechanics allows with projective measurements.
/// Throws UnknownFamily for families without a known bound.
double luders_bound(Family family, int n);
std::optional<double> try_luders_bound(Family family, int n);

struct LudersResult {
    bool within = true;
    double bound = 0;
    double margin = 0;  // min_value - bound
};
LudersResult luders_check(const ConditionReport &report);

enum class Regime { AllSat, StdSatExtViol, StdViol };
std::string_view to_string(Regime r);

struct RegimeRoles {
    std::vector<Family> reference;
    std::vector<Family> target;
    /// LG2, LG3 and cycle LGIs as reference, everything else as target.
    static RegimeRoles standard();
};

struct RegimeLabel {
    std::vector<std::pair<Family, bool>> satisfied;
    Regime regime = Regime::AllSat;
};

RegimeLabel classify_regime(std::span<const ConditionReport> reports, double eps = kDefaultEpsilon,
                            const RegimeRoles &roles = RegimeRoles::standard());

}  // namespace macroreal::conditions
