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

#include "macroreal/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "macroreal/error.hpp"

namespace macroreal {

std::string_view to_string(VariableKind k) { return k == VariableKind::Dichotomic ? "dichotomic" : "trichotomic"; }

std::string_view to_string(CorrelatorSubset s) { return s == CorrelatorSubset::Full ? "full" : "cycle"; }

VariableKind parse_variable_kind(std::string_view s) {
    if (s == "dichotomic") return VariableKind::Dichotomic;
    if (s == "trichotomic") return VariableKind::Trichotomic;
    throw Error(ErrorCode::BadInput, "unknown variable kind '" + std::string(s) + "'");
}

CorrelatorSubset parse_subset(std::string_view s) {
    if (s == "full") return CorrelatorSubset::Full;
    if (s == "cycle") return CorrelatorSubset::Cycle;
    throw Error(ErrorCode::BadInput, "unknown correlator subset '" + std::string(s) + "'");
}

EntryKey::EntryKey(std::initializer_list<int> times, std::string_view vars)
    : EntryKey(std::span<const int>(times.begin(), times.size()), vars) {}

EntryKey::EntryKey(std::span<const int> times, std::string_view vars) {
    if (times.empty() || times.size() > kMaxOrder) {
        throw Error(ErrorCode::BadInput, "entry order must be 1.." + std::to_string(kMaxOrder));
    }
    if (!vars.empty() && vars.size() != times.size()) {
        throw Error(ErrorCode::BadInput, "variable string length differs from time count");
    }
    std::vector<int> idx(times.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return times[a] < times[b]; });
    order_ = static_cast<std::uint8_t>(times.size());
    for (int k = 0; k < order_; ++k) {
        int t = times[idx[k]];
        if (t < 0 || t > 127) {
            throw Error(ErrorCode::BadInput, "time index " + std::to_string(t) + " out of range");
        }
        if (k > 0 && t == times_[k - 1]) {
            throw Error(ErrorCode::BadInput, "repeated time index " + std::to_string(t + 1));
        }
        times_[k] = static_cast<std::int8_t>(t);
        char v = vars.empty() ? 'Q' : vars[idx[k]];
        if (v != 'Q' && v != 'R' && v != 'S') {
            throw Error(ErrorCode::BadInput, std::string("unknown variable '") + v + "'");
        }
        vars_[k] = v;
    }
}

std::vector<int> EntryKey::times() const { return {times_.begin(), times_.begin() + order_}; }

std::string EntryKey::vars() const { return {vars_.begin(), vars_.begin() + order_}; }

bool EntryKey::all_q() const {
    return std::all_of(vars_.begin(), vars_.begin() + order_, [](char c) { return c == 'Q'; });
}

EntryKey EntryKey::without(int k) const {
    EntryKey out;
    for (int i = 0, j = 0; i < order_; ++i) {
        if (i == k) continue;
        out.times_[j] = times_[i];
        out.vars_[j] = vars_[i];
        ++j;
    }
    out.order_ = static_cast<std::uint8_t>(order_ - 1);
    return out;
}

EntryKey EntryKey::with_var(int k, char v) const {
    EntryKey out = *this;
    out.vars_[k] = v;
    return out;
}

std::string EntryKey::label(bool with_vars) const {
    std::string s;
    for (int k = 0; k < order_; ++k) {
        if (k) s += ';';
        if (with_vars) s += vars_[k];
        s += std::to_string(times_[k] + 1);
    }
    return s;
}

void LinearForm::add(const EntryKey &key, double coeff) {
    for (auto &[k, c] : terms) {
        if (k == key) {
            c += coeff;
            return;
        }
    }
    terms.emplace_back(key, coeff);
}

void LinearForm::add(const LinearForm &other, double scale) {
    constant += scale * other.constant;
    for (const auto &[k, c] : other.terms) {
        add(k, scale * c);
    }
}

MRDataset::MRDataset(int n, VariableKind kind, CorrelatorSubset subset) : n_(n), kind_(kind), subset_(subset) {
    if (n < 1 || n > 127) {
        throw Error(ErrorCode::BadInput, "number of times must be positive");
    }
}

void MRDataset::set(const EntryKey &key, double value) {
    if (key.time(key.order() - 1) >= n_) {
        throw Error(ErrorCode::BadInput, "entry " + key.label(true) + " refers past time " + std::to_string(n_));
    }
    for (int k = 0; k < key.order(); ++k) {
        char v = key.var(k);
        if (v == 'S') {
            throw Error(ErrorCode::BadInput, "S entries are derived, not stored");
        }
        if (v == 'R' && !trichotomic()) {
            throw Error(ErrorCode::WrongKind, "R entry in a dichotomic dataset");
        }
    }
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::BadInput, "non-finite value for " + key.label(true));
    }
    entries_[key] = value;
}

LinearForm MRDataset::expand(const EntryKey &key) const {
    LinearForm out;
    for (int k = 0; k < key.order(); ++k) {
        if (key.var(k) != 'S') continue;
        if (!trichotomic()) {
            throw Error(ErrorCode::WrongKind, "S variable in a dichotomic dataset");
        }
        // S = -1 - Q - R at position k.
        if (key.order() == 1) {
            out.constant -= 1;
        } else {
            out.add(expand(key.without(k)), -1);
        }
        out.add(expand(key.with_var(k, 'Q')), -1);
        out.add(expand(key.with_var(k, 'R')), -1);
        return out;
    }
    if (!entries_.contains(key)) {
        throw Error(ErrorCode::MissingData, "no entry for <" + key.label(true) + ">");
    }
    out.add(key, 1);
    return out;
}

bool MRDataset::has(const EntryKey &key) const {
    try {
        expand(key);
        return true;
    } catch (const Error &) {
        return false;
    }
}

double MRDataset::evaluate(const LinearForm &form) const {
    double v = form.constant;
    for (const auto &[k, c] : form.terms) {
        auto it = entries_.find(k);
        if (it == entries_.end()) {
            throw Error(ErrorCode::MissingData, "no entry for <" + k.label(true) + ">");
        }
        v += c * it->second;
    }
    return v;
}

double MRDataset::value(const EntryKey &key) const {
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
    return evaluate(expand(key));
}

bool MRDataset::has_order(int order) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto &e) { return e.first.order() == order; });
}

double MRDataset::avg(int i, char var) const { return value(EntryKey({i}, std::string(1, var))); }
double MRDataset::c2(int i, int j) const { return value(EntryKey{i, j}); }
double MRDataset::c3(int i, int j, int k) const { return value(EntryKey{i, j, k}); }
double MRDataset::c4(int i, int j, int k, int l) const { return value(EntryKey{i, j, k, l}); }

void MRDataset::validate(double tol) const {
    for (const auto &[key, v] : entries_) {
        if (std::abs(v) > 1 + tol) {
            throw Error(ErrorCode::InvalidState, "entry <" + key.label(true) + "> = " + std::to_string(v) + " outside [-1, 1]");
        }
        if (!trichotomic() && !key.all_q()) {
            throw Error(ErrorCode::WrongKind, "non-Q entry in a dichotomic dataset");
        }
        if (subset_ == CorrelatorSubset::Cycle && key.order() >= 2) {
            bool adjacent = key.order() == 2 && (key.time(1) == key.time(0) + 1 || (key.time(0) == 0 && key.time(1) == n_ - 1));
            if (!adjacent) {
                throw Error(ErrorCode::WrongSubset, "entry <" + key.label(true) + "> is not a cycle neighbour pair");
            }
        }
    }
}

}  // namespace macroreal
