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

#include "macroreal/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "macroreal/error.hpp"

namespace macroreal::conditions {

std::string_view to_string(Family f) {
    switch (f) {
        case Family::LG2: return "LG2";
        case Family::LG3: return "LG3";
        case Family::LG4_cycle: return "LG4_cycle";
        case Family::LG5_cycle: return "LG5_cycle";
        case Family::HO3: return "HO3";
        case Family::HO4: return "HO4";
        case Family::NFULL: return "NFULL";
        case Family::PI: return "PI";
        case Family::TRI_LG2: return "TRI_LG2";
        case Family::TRI_LG3: return "TRI_LG3";
    }
    return "?";
}

Family parse_family(std::string_view s) {
    for (Family f : kAllFamilies) {
        if (to_string(f) == s) return f;
    }
    throw Error(ErrorCode::UnknownFamily, "unknown family '" + std::string(s) + "'");
}

std::string Assignment::describe() const {
    std::string out = "t=";
    for (size_t k = 0; k < times.size(); ++k) {
        out += (k ? "," : "") + std::to_string(times[k] + 1);
    }
    if (!signs.empty()) {
        out += " s=";
        for (int s : signs) out += s > 0 ? '+' : '-';
    }
    if (!vars.empty()) out += " x=" + vars;
    return out;
}

namespace {

bool stored(const MRDataset &ds, const EntryKey &k) { return ds.entries().contains(k); }

void for_each_subset(int n, int k, const std::function<void(const std::vector<int> &)> &fn) {
    if (k > n || k < 1) return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<int> signs_from_bits(unsigned bits, int k) {
    std::vector<int> s(k);
    for (int i = 0; i < k; ++i) s[i] = (bits >> i) & 1 ? -1 : 1;
    return s;
}

void require_any(const std::vector<Candidate> &c, Family f, const MRDataset &ds) {
    if (c.empty()) {
        throw Error(ErrorCode::MissingData,
                    std::string(to_string(f)) + " needs entries absent from the " + std::to_string(ds.n()) + "-time dataset");
    }
}


std::vector<Candidate> lg2_candidates(const MRDataset &ds) {
    std::vector<Candidate> out;
    for (int i = 0; i < ds.n(); ++i) {
        for (int j = i + 1; j < ds.n(); ++j) {
            EntryKey qi{i}, qj{j}, cij{i, j};
            if (!stored(ds, qi) || !stored(ds, qj) || !stored(ds, cij)) continue;
            for (unsigned b = 0; b < 4; ++b) {
                auto s = signs_from_bits(b, 2);
                Candidate c{{{i, j}, s, {}}, {}};
                c.form.constant = 1;
                c.form.add(qi, s[0]);
                c.form.add(qj, s[1]);
                c.form.add(cij, s[0] * s[1]);
                out.push_back(std::move(c));
            }
        }
    }
    require_any(out, Family::LG2, ds);
    return out;
}

std::vector<Candidate> lg3_candidates(const MRDataset &ds) {
    std::vector<Candidate> out;
    for_each_subset(ds.n(), 3, [&](const std::vector<int> &t) {
        EntryKey c12{t[0], t[1]}, c23{t[1], t[2]}, c13{t[0], t[2]};
        if (!stored(ds, c12) || !stored(ds, c23) || !stored(ds, c13)) return;
        // s -> -s leaves the value unchanged; fix s1 = +1.
        for (unsigned b = 0; b < 4; ++b) {
            auto s = signs_from_bits(b << 1, 3);
            Candidate c{{t, s, {}}, {}};
            c.form.constant = 1;
            c.form.add(c12, s[0] * s[1]);
            c.form.add(c23, s[1] * s[2]);
            c.form.add(c13, s[0] * s[2]);
            out.push_back(std::move(c));
        }
    });
    require_any(out, Family::LG3, ds);
    return out;
}

std::vector<Candidate> higher_order_candidates(const MRDataset &ds, int order, Family f) {
    std::vector<Candidate> out;
    for_each_subset(ds.n(), order, [&](const std::vector<int> &t) {
        // All sub-products of the subset must be present.
        std::vector<EntryKey> keys;
        for (unsigned mask = 1; mask < (1u << order); ++mask) {
            std::vector<int> sub;
            for (int i = 0; i < order; ++i) {
                if (mask >> i & 1) sub.push_back(t[i]);
            }
            EntryKey k(sub);
            if (!stored(ds, k)) return;
            keys.push_back(k);
        }
        for (unsigned b = 0; b < (1u << order); ++b) {
            auto s = signs_from_bits(b, order);
            Candidate c{{t, s, {}}, {}};
            c.form.constant = 1;
            for (unsigned mask = 1; mask < (1u << order); ++mask) {
                int prod = 1;
                for (int i = 0; i < order; ++i) {
                    if (mask >> i & 1) prod *= s[i];
                }
                c.form.add(keys[mask - 1], prod);
            }
            out.push_back(std::move(c));
        }
    });
    require_any(out, f, ds);
    return out;
}

void require_full_pairs(const MRDataset &ds, Family f) {
    if (ds.subset() != CorrelatorSubset::Full) {
        throw Error(ErrorCode::WrongSubset, std::string(to_string(f)) + " needs the full set of pairwise correlators");
    }
    for (int i = 0; i < ds.n(); ++i) {
        for (int j = i + 1; j < ds.n(); ++j) {
            if (!stored(ds, EntryKey{i, j})) {
                throw Error(ErrorCode::MissingData, std::string(to_string(f)) + " needs C" + std::to_string(i + 1) +
                                                        std::to_string(j + 1));
            }
        }
    }
}

std::vector<Candidate> pair_sum_candidates(const MRDataset &ds, double constant, double scale) {
    const int n = ds.n();
    std::vector<Candidate> out;
    for (unsigned b = 0; b < (1u << (n - 1)); ++b) {
        auto s = signs_from_bits(b << 1, n);
        std::vector<int> t(n);
        std::iota(t.begin(), t.end(), 0);
        Candidate c{{t, s, {}}, {}};
        c.form.constant = constant;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                c.form.add(EntryKey{i, j}, scale * s[i] * s[j]);
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Candidate> nfull_candidates(const MRDataset &ds) {
    if (ds.n() < 2) {
        throw Error(ErrorCode::MissingData, "NFULL needs at least two times");
    }
    require_full_pairs(ds, Family::NFULL);
    const int n = ds.n();
    return pair_sum_candidates(ds, n - (n % 2 == 1 ? 1.0 : 0.0), 2.0);
}

std::vector<Candidate> pentagon_candidates(const MRDataset &ds) {
    if (ds.n() != 5) {
        throw Error(ErrorCode::WrongSubset, "pentagon inequalities need exactly five times, got " + std::to_string(ds.n()));
    }
    require_full_pairs(ds, Family::PI);
    return pair_sum_candidates(ds, 2.0, 1.0);
}

void require_trichotomic(const MRDataset &ds, Family f) {
    if (!ds.trichotomic()) {
        throw Error(ErrorCode::WrongKind, std::string(to_string(f)) + " needs a trichotomic dataset");
    }
}

constexpr char kVars[] = {'Q', 'R', 'S'};

std::vector<Candidate> tri_lg2_candidates(const MRDataset &ds) {
    require_trichotomic(ds, Family::TRI_LG2);
    std::vector<Candidate> out;
    for (int i = 0; i < ds.n(); ++i) {
        for (int j = i + 1; j < ds.n(); ++j) {
            if (!stored(ds, EntryKey({i, j}, "QQ"))) continue;
            for (char x : kVars) {
                for (char y : kVars) {
                    Candidate c{{{i, j}, {}, std::string{x, y}}, {}};
                    c.form.constant = 1;
                    c.form.add(ds.expand(EntryKey({i}, std::string(1, x))), 1);
                    c.form.add(ds.expand(EntryKey({j}, std::string(1, y))), 1);
                    c.form.add(ds.expand(EntryKey({i, j}, std::string{x, y})), 1);
                    out.push_back(std::move(c));
                }
            }
        }
    }
    require_any(out, Family::TRI_LG2, ds);
    return out;
}

std::vector<Candidate> tri_lg3_candidates(const MRDataset &ds) {
    require_trichotomic(ds, Family::TRI_LG3);
    std::vector<Candidate> out;
    for_each_subset(ds.n(), 3, [&](const std::vector<int> &t) {
        if (!stored(ds, EntryKey({t[0], t[1]}, "QQ")) || !stored(ds, EntryKey({t[1], t[2]}, "QQ")) ||
            !stored(ds, EntryKey({t[0], t[2]}, "QQ"))) {
            return;
        }
        for (char x : kVars) {
            for (char y : kVars) {
                for (char z : kVars) {
                    Candidate c{{t, {}, std::string{x, y, z}}, {}};
                    c.form.constant = 1;
                    c.form.add(ds.expand(EntryKey({t[0], t[1]}, std::string{x, y})), 1);
                    c.form.add(ds.expand(EntryKey({t[1], t[2]}, std::string{y, z})), 1);
                    c.form.add(ds.expand(EntryKey({t[0], t[2]}, std::string{x, z})), 1);
                    out.push_back(std::move(c));
                }
            }
        }
    });
    require_any(out, Family::TRI_LG3, ds);
    return out;
}

std::vector<Candidate> all_cycles_candidates(const MRDataset &ds, int m, Family f) {
    std::vector<Candidate> out;
    for_each_subset(ds.n(), m, [&](const std::vector<int> &t) {
        for (int k = 0; k < m; ++k) {
            if (!stored(ds, EntryKey{t[k], t[(k + 1) % m]})) return;
        }
        auto c = cycle_candidates(ds, t);
        out.insert(out.end(), c.begin(), c.end());
    });
    require_any(out, f, ds);
    return out;
}

}  // namespace

std::vector<Candidate> cycle_candidates(const MRDataset &ds, std::span<const int> cycle) {
    const int m = static_cast<int>(cycle.size());
    if (m < 3) {
        throw Error(ErrorCode::BadInput, "a cycle needs at least three times");
    }
    std::vector<EntryKey> edges;
    for (int k = 0; k < m; ++k) {
        int a = cycle[k], b = cycle[(k + 1) % m];
        if (a < 0 || a >= ds.n() || b < 0 || b >= ds.n()) {
            throw Error(ErrorCode::BadInput, "cycle time index out of range");
        }
        EntryKey e{a, b};
        if (!stored(ds, e)) {
            throw Error(ErrorCode::MissingData, "cycle needs C" + std::to_string(e.time(0) + 1) + std::to_string(e.time(1) + 1));
        }
        edges.push_back(e);
    }
    const int parity = (m + 1) % 2 == 0 ? 1 : -1;
    std::vector<Candidate> out;
    for (unsigned b = 0; b < (1u << m); ++b) {
        auto s = signs_from_bits(b, m);
        int prod = 1;
        for (int x : s) prod *= x;
        if (prod != parity) continue;
        Candidate c{{std::vector<int>(cycle.begin(), cycle.end()), s, {}}, {}};
        c.form.constant = m - 2;
        for (int k = 0; k < m; ++k) c.form.add(edges[k], s[k]);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Candidate> candidates(const MRDataset &ds, Family family) {
    switch (family) {
        case Family::LG2: return lg2_candidates(ds);
        case Family::LG3: return lg3_candidates(ds);
        case Family::LG4_cycle: return all_cycles_candidates(ds, 4, family);
        case Family::LG5_cycle: return all_cycles_candidates(ds, 5, family);
        case Family::HO3: return higher_order_candidates(ds, 3, family);
        case Family::HO4: return higher_order_candidates(ds, 4, family);
        case Family::NFULL: return nfull_candidates(ds);
        case Family::PI: return pentagon_candidates(ds);
        case Family::TRI_LG2: return tri_lg2_candidates(ds);
        case Family::TRI_LG3: return tri_lg3_candidates(ds);
    }
    throw Error(ErrorCode::UnknownFamily, "unhandled family");
}

ConditionReport report_from(const MRDataset &ds, Family family, const std::vector<Candidate> &cands, double eps,
                            bool keep_all) {
    ConditionReport r;
    r.family = family;
    r.n = ds.n();
    r.epsilon = eps;
    r.min_value = std::numeric_limits<double>::infinity();
    for (const auto &c : cands) {
        double v = ds.evaluate(c.form);
        if (keep_all) r.all_values.push_back(v);
        if (v < r.min_value) {
            r.min_value = v;
            r.argmin = c.assignment;
        }
    }
    r.satisfied = r.min_value >= -eps;
    return r;
}

ConditionReport evaluate(const MRDataset &ds, Family family, double eps, bool keep_all) {
    return report_from(ds, family, candidates(ds, family), eps, keep_all);
}

ConditionReport lg2_min(const MRDataset &ds, double eps) { return evaluate(ds, Family::LG2, eps); }
ConditionReport lg3_min(const MRDataset &ds, double eps) { return evaluate(ds, Family::LG3, eps); }

ConditionReport lgn_cycle_min(const MRDataset &ds, std::span<const int> cycle, double eps) {
    const auto m = cycle.size();
    Family f = m == 3 ? Family::LG3 : m == 4 ? Family::LG4_cycle : m == 5 ? Family::LG5_cycle : Family::LG5_cycle;
    if (m > 5) {
        throw Error(ErrorCode::UnknownFamily, "cycles longer than five times have no family tag");
    }
    return report_from(ds, f, cycle_candidates(ds, cycle), eps, false);
}

ConditionReport higher_order_min(const MRDataset &ds, int order, double eps) {
    if (order != 3 && order != 4) {
        throw Error(ErrorCode::UnknownFamily, "higher-order inequalities exist for orders 3 and 4");
    }
    return evaluate(ds, order == 3 ? Family::HO3 : Family::HO4, eps);
}

ConditionReport nfull_min(const MRDataset &ds, double eps) { return evaluate(ds, Family::NFULL, eps); }
ConditionReport pentagon_min(const MRDataset &ds, double eps) { return evaluate(ds, Family::PI, eps); }
ConditionReport tri_lg2_min(const MRDataset &ds, double eps) { return evaluate(ds, Family::TRI_LG2, eps); }
ConditionReport tri_lg3_min(const MRDataset &ds, double eps) { return evaluate(ds, Family::TRI_LG3, eps); }

double evaluate_assignment(const MRDataset &ds, Family family, const Assignment &given) {
    Assignment a = given;
    // These families list only s1 = +1; the flipped vector has the same value.
    const bool flip_invariant = family == Family::LG3 || family == Family::NFULL || family == Family::PI;
    if (flip_invariant && !a.signs.empty() && a.signs.front() < 0) {
        for (int &s : a.signs) s = -s;
    }
    std::vector<Candidate> cands;
    if ((family == Family::LG4_cycle || family == Family::LG5_cycle) && !a.times.empty()) {
        cands = cycle_candidates(ds, a.times);
    } else {
        cands = candidates(ds, family);
    }
    for (const auto &c : cands) {
        if (c.assignment == a) return ds.evaluate(c.form);
    }
    throw Error(ErrorCode::BadInput, "assignment " + a.describe() + " is not an instance of " + std::string(to_string(family)));
}

std::vector<Family> applicable_families(const MRDataset &ds) {
    std::vector<Family> out;
    for (Family f : kAllFamilies) {
        try {
            candidates(ds, f);
            out.push_back(f);
        } catch (const Error &) {
        }
    }
    return out;
}

std::optional<double> try_luders_bound(Family family, int n) {
    switch (family) {
        case Family::LG2:
        case Family::LG3:
        case Family::PI: return -0.5;
        case Family::HO3: return -1.0;
        case Family::HO4: return -2.0;
        case Family::NFULL:
            // n = 3 is twice LG3, n = 5 twice the pentagon value.
            if (n == 3 || n == 5) return -1.0;
            return std::nullopt;
        default: return std::nullopt;
    }
}

double luders_bound(Family family, int n) {
    auto b = try_luders_bound(family, n);
    if (!b) {
        throw Error(ErrorCode::UnknownFamily,
                    "no Lueders bound for " + std::string(to_string(family)) + " with n = " + std::to_string(n));
    }
    return *b;
}

LudersResult luders_check(const ConditionReport &report) {
    double bound = luders_bound(report.family, report.n);
    return {report.min_value >= bound - report.epsilon, bound, report.min_value - bound};
}

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::AllSat: return "ALL_SAT";
        case Regime::StdSatExtViol: return "STD_SAT_EXT_VIOL";
        case Regime::StdViol: return "STD_VIOL";
    }
    return "?";
}

RegimeRoles RegimeRoles::standard() {
    return {{Family::LG2, Family::LG3, Family::LG4_cycle, Family::LG5_cycle},
            {Family::HO3, Family::HO4, Family::NFULL, Family::PI, Family::TRI_LG2, Family::TRI_LG3}};
}

RegimeLabel classify_regime(std::span<const ConditionReport> reports, double eps, const RegimeRoles &roles) {
    RegimeLabel label;
    bool std_viol = false, ext_viol = false;
    auto in = [](const std::vector<Family> &v, Family f) { return std::find(v.begin(), v.end(), f) != v.end(); };
    for (const auto &r : reports) {
        bool sat = r.min_value >= -eps;
        label.satisfied.emplace_back(r.family, sat);
        if (!sat && in(roles.reference, r.family)) std_viol = true;
        if (!sat && in(roles.target, r.family)) ext_viol = true;
    }
    label.regime = std_viol ? Regime::StdViol : ext_viol ? Regime::StdSatExtViol : Regime::AllSat;
    return label;
}

}  // namespace macroreal::conditions
