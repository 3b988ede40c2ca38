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
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace macroreal {

enum class VariableKind { Dichotomic, Trichotomic };
enum class CorrelatorSubset { Full, Cycle };

std::string_view to_string(VariableKind k);
std::string_view to_string(CorrelatorSubset s);
VariableKind parse_variable_kind(std::string_view s);
CorrelatorSubset parse_subset(std::string_view s);

/// Identifies one averaged product <X_{t1} Y_{t2} ...>: 0-based time indices in
/// ascending order, each paired with a variable letter Q, R or S.
class EntryKey {
   public:
    static constexpr int kMaxOrder = 4;

    EntryKey() = default;
    /// Times may be given in any order; variables follow their times. Empty
    /// vars means Q at every time.
    EntryKey(std::span<const int> times, std::string_view vars = {});
    EntryKey(std::initializer_list<int> times, std::string_view vars = {});

    int order() const { return order_; }
    int time(int k) const { return times_[k]; }
    char var(int k) const { return vars_[k]; }
    std::vector<int> times() const;
    std::string vars() const;
    bool all_q() const;

    /// Same key with position k removed.
    EntryKey without(int k) const;
    /// Same key with the variable at position k replaced.
    EntryKey with_var(int k, char v) const;

    /// "1;2" for all-Q keys, "Q1;R2" otherwise (1-based).
    std::string label(bool with_vars) const;

    auto operator<=>(const EntryKey &) const = default;

   private:
    std::array<std::int8_t, kMaxOrder> times_{};
    std::array<char, kMaxOrder> vars_{};
    std::uint8_t order_ = 0;
};

/// constant + sum coeff * entry
struct LinearForm {
    double constant = 0;
    std::vector<std::pair<EntryKey, double>> terms;

    void add(const EntryKey &key, double coeff);
    void add(const LinearForm &other, double scale);
};

/// Single-time averages and multi-time correlators of one measured quantity.
/// Trichotomic datasets store Q and R entries; anything involving S is derived
/// from Q + R + S = -1 on demand.
class MRDataset {
   public:
    MRDataset(int n, VariableKind kind = VariableKind::Dichotomic, CorrelatorSubset subset = CorrelatorSubset::Full);

    int n() const { return n_; }
    VariableKind kind() const { return kind_; }
    CorrelatorSubset subset() const { return subset_; }
    bool trichotomic() const { return kind_ == VariableKind::Trichotomic; }

    void set(const EntryKey &key, double value);
    const std::map<EntryKey, double> &entries() const { return entries_; }

    /// Rewrites a key in terms of stored entries. Throws MissingData.
    LinearForm expand(const EntryKey &key) const;
    bool has(const EntryKey &key) const;
    double value(const EntryKey &key) const;
    double evaluate(const LinearForm &form) const;
    bool has_order(int order) const;

    double avg(int i, char var = 'Q') const;
    double c2(int i, int j) const;
    double c3(int i, int j, int k) const;
    double c4(int i, int j, int k, int l) const;

    /// Range and subset checks; throws InvalidState, WrongSubset or WrongKind.
    void validate(double tol = 1e-9) const;

   private:
    int n_;
    VariableKind kind_;
    CorrelatorSubset subset_;
    std::map<EntryKey, double> entries_;
};

}  // namespace macroreal
