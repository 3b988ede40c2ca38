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

#include "macroreal/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "macroreal/error.hpp"

namespace macroreal::correlators {

using numerics::anticomm;
using numerics::expval;

double corr1(const DensityMatrix &rho, const CMatrix &qi) { return expval(rho.matrix(), qi); }

double corr2(const DensityMatrix &rho, const CMatrix &qi, const CMatrix &qj) {
    return 0.5 * expval(rho.matrix(), anticomm(qi, qj));
}

double corr3(const DensityMatrix &rho, const CMatrix &qi, const CMatrix &qj, const CMatrix &qk) {
    return 0.25 * expval(rho.matrix(), anticomm(qi, anticomm(qj, qk)));
}

double corr4(const DensityMatrix &rho, const CMatrix &qi, const CMatrix &qj, const CMatrix &qk, const CMatrix &ql) {
    return 0.125 * expval(rho.matrix(), anticomm(qi, anticomm(qj, anticomm(qk, ql))));
}

double nested(const DensityMatrix &rho, std::span<const CMatrix> ops) {
    if (ops.empty()) {
        throw Error(ErrorCode::BadInput, "empty operator list");
    }
    CMatrix m = ops.back();
    double scale = 1;
    for (int i = static_cast<int>(ops.size()) - 2; i >= 0; --i) {
        m = anticomm(ops[i], m);
        scale *= 0.5;
    }
    return scale * expval(rho.matrix(), m);
}

void ProjectorSet::validate() const {
    if (projectors.empty() || projectors.size() != values.size()) {
        throw Error(ErrorCode::BadProjectors, "projector and value counts differ");
    }
    const auto dim = projectors[0].rows();
    CMatrix sum = CMatrix::Zero(dim, dim);
    for (size_t a = 0; a < projectors.size(); ++a) {
        const CMatrix &p = projectors[a];
        if (p.rows() != dim || p.cols() != dim) {
            throw Error(ErrorCode::BadProjectors, "projector dimensions differ");
        }
        if (!numerics::is_hermitian(p)) {
            throw Error(ErrorCode::BadProjectors, "projector " + std::to_string(a) + " not Hermitian");
        }
        if (numerics::max_abs(p * p - p) > numerics::kTol) {
            throw Error(ErrorCode::BadProjectors, "projector " + std::to_string(a) + " not idempotent");
        }
        for (size_t b = 0; b < a; ++b) {
            if (numerics::max_abs(p * projectors[b]) > numerics::kTol) {
                throw Error(ErrorCode::BadProjectors, "projectors " + std::to_string(b) + " and " + std::to_string(a) + " overlap");
            }
        }
        sum += p;
    }
    if (numerics::max_abs(sum - CMatrix::Identity(dim, dim)) > numerics::kTol) {
        throw Error(ErrorCode::BadProjectors, "projectors do not sum to identity");
    }
}

ProjectorSet ProjectorSet::from_dichotomic(const CMatrix &q) {
    CMatrix id = CMatrix::Identity(q.rows(), q.cols());
    return {{(id + q) * 0.5, (id - q) * 0.5}, {1.0, -1.0}};
}

JointProbabilityTable::JointProbabilityTable(std::vector<int> outcomes_per_time, std::vector<double> probs)
    : radix_(std::move(outcomes_per_time)), probs_(std::move(probs)) {
    size_t expected = 1;
    for (int r : radix_) expected *= static_cast<size_t>(r);
    if (expected != probs_.size()) {
        throw Error(ErrorCode::InvariantBreach, "probability table size mismatch");
    }
}

double JointProbabilityTable::prob(std::span<const int> outcome) const {
    if (outcome.size() != radix_.size()) {
        throw Error(ErrorCode::BadInput, "outcome length differs from table");
    }
    size_t idx = 0;
    for (size_t k = 0; k < radix_.size(); ++k) {
        idx = idx * radix_[k] + outcome[k];
    }
    return probs_[idx];
}

double JointProbabilityTable::total() const { return std::accumulate(probs_.begin(), probs_.end(), 0.0); }

JointProbabilityTable JointProbabilityTable::marginal_prefix(int k) const {
    if (k < 0 || k > n()) {
        throw Error(ErrorCode::BadInput, "prefix length out of range");
    }
    size_t block = 1;
    for (int i = k; i < n(); ++i) block *= radix_[i];
    std::vector<double> out(probs_.size() / block, 0.0);
    for (size_t i = 0; i < probs_.size(); ++i) {
        out[i / block] += probs_[i];
    }
    return {std::vector<int>(radix_.begin(), radix_.begin() + k), std::move(out)};
}

double JointProbabilityTable::moment(std::span<const std::vector<double>> values, std::span<const int> which) const {
    if (values.size() != radix_.size()) {
        throw Error(ErrorCode::BadInput, "value table length differs from table");
    }
    std::vector<int> digits(radix_.size(), 0);
    double m = 0;
    for (size_t i = 0; i < probs_.size(); ++i) {
        double prod = 1;
        for (int t : which) prod *= values[t][digits[t]];
        m += prod * probs_[i];
        for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
            if (++digits[k] < radix_[k]) break;
            digits[k] = 0;
        }
    }
    return m;
}

namespace {

void seq_recurse(const CMatrix &state, std::span<const ProjectorSet> sets, size_t level, size_t index,
                 std::vector<double> &out, const std::vector<size_t> &stride) {
    const ProjectorSet &set = sets[level];
    for (int a = 0; a < set.size(); ++a) {
        const CMatrix &p = set.projectors[a];
        size_t idx = index + a * stride[level];
        if (level + 1 == sets.size()) {
            out[idx] = numerics::trace_product(p, state).real();
        } else {
            CMatrix next = p * state * p;
            seq_recurse(next, sets, level + 1, idx, out, stride);
        }
    }
}

}  // namespace

JointProbabilityTable seq_probs(const DensityMatrix &rho, std::span<const ProjectorSet> sets) {
    if (sets.empty()) {
        throw Error(ErrorCode::BadProjectors, "no measurements");
    }
    std::vector<int> radix;
    for (const auto &s : sets) {
        s.validate();
        if (s.projectors[0].rows() != rho.dim()) {
            throw Error(ErrorCode::DimMismatch, "projector dimension differs from state");
        }
        radix.push_back(s.size());
    }
    std::vector<size_t> stride(radix.size(), 1);
    for (int k = static_cast<int>(radix.size()) - 2; k >= 0; --k) {
        stride[k] = stride[k + 1] * radix[k + 1];
    }
    std::vector<double> probs(stride[0] * radix[0], 0.0);
    seq_recurse(rho.matrix(), sets, 0, 0, probs, stride);
    return {std::move(radix), std::move(probs)};
}

double sequential_correlator(const DensityMatrix &rho, std::span<const CMatrix> ops) {
    std::vector<ProjectorSet> sets;
    std::vector<std::vector<double>> values;
    std::vector<int> which;
    for (size_t i = 0; i < ops.size(); ++i) {
        sets.push_back(ProjectorSet::from_dichotomic(ops[i]));
        values.push_back(sets.back().values);
        which.push_back(static_cast<int>(i));
    }
    return seq_probs(rho, sets).moment(values, which);
}

namespace {

void for_each_subset(int n, int k, const std::function<void(const std::vector<int> &)> &fn) {
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

}  // namespace

MRDataset dataset_from_model(const observables::SpinModel &model, std::span<const int> orders) {
    const int n = static_cast<int>(model.times().size());
    const auto &rho = model.initial();
    if (model.trichotomic()) {
        for (int k : orders) {
            if (k != 1 && k != 2) {
                throw Error(ErrorCode::WrongKind, "trichotomic datasets carry orders 1 and 2 only");
            }
        }
        MRDataset ds(n, VariableKind::Trichotomic);
        std::vector<CMatrix> qs, rs;
        for (int i = 0; i < n; ++i) {
            qs.push_back(model.operator_at(i, 'Q'));
            rs.push_back(model.operator_at(i, 'R'));
        }
        auto op = [&](char v, int i) -> const CMatrix & { return v == 'Q' ? qs[i] : rs[i]; };
        for (int k : orders) {
            if (k == 1) {
                for (int i = 0; i < n; ++i) {
                    ds.set(EntryKey({i}, "Q"), corr1(rho, qs[i]));
                    ds.set(EntryKey({i}, "R"), corr1(rho, rs[i]));
                }
            } else {
                for (int i = 0; i < n; ++i) {
                    for (int j = i + 1; j < n; ++j) {
                        for (char a : {'Q', 'R'}) {
                            for (char b : {'Q', 'R'}) {
                                ds.set(EntryKey({i, j}, std::string{a, b}), corr2(rho, op(a, i), op(b, j)));
                            }
                        }
                    }
                }
            }
        }
        return ds;
    }

    MRDataset ds(n, VariableKind::Dichotomic);
    std::vector<CMatrix> qs;
    for (int i = 0; i < n; ++i) qs.push_back(model.operator_at(i));
    const auto &times = model.times();
    for (int k : orders) {
        if (k < 1 || k > 4) {
            throw Error(ErrorCode::BadInput, "correlator order " + std::to_string(k) + " outside 1..4");
        }
        if (k > n) continue;
        for_each_subset(n, k, [&](const std::vector<int> &subset) {
            std::vector<int> by_time = subset;
            std::stable_sort(by_time.begin(), by_time.end(), [&](int a, int b) { return times[a] < times[b]; });
            std::vector<CMatrix> ops;
            for (int i : by_time) ops.push_back(qs[i]);
            ds.set(EntryKey(subset), nested(rho, ops));
        });
    }
    return ds;
}

MRDataset dataset_from_operators(const DensityMatrix &rho, std::span<const CMatrix> ops, std::span<const int> orders) {
    const int n = static_cast<int>(ops.size());
    MRDataset ds(n, VariableKind::Dichotomic);
    std::vector<CMatrix> chosen;
    for (int k : orders) {
        if (k < 1 || k > 4) {
            throw Error(ErrorCode::BadInput, "correlator order " + std::to_string(k) + " outside 1..4");
        }
        if (k > n) continue;
        for_each_subset(n, k, [&](const std::vector<int> &subset) {
            chosen.clear();
            for (int i : subset) chosen.push_back(ops[i]);
            ds.set(EntryKey(subset), nested(rho, chosen));
        });
    }
    return ds;
}

MRDataset dataset_from_model(const observables::SpinModel &model) {
    static const int kDefault[] = {1, 2};
    return dataset_from_model(model, kDefault);
}

MRDataset overlap_correlators(const CVector &psi, std::span<const CVector> v, std::span<const CVector> u) {
    auto require_unit = [](const CVector &x, const char *what) {
        if (std::abs(x.norm() - 1) > 1e-10) {
            throw Error(ErrorCode::NotNormalized, std::string(what) + " has norm " + std::to_string(x.norm()));
        }
    };
    require_unit(psi, "psi");
    const bool two = !u.empty();
    if (two && u.size() != v.size()) {
        throw Error(ErrorCode::BadInput, "u list length differs from v list");
    }
    for (const auto &x : v) require_unit(x, "v_i");
    for (const auto &x : u) require_unit(x, "u_i");
    const int n = static_cast<int>(v.size());
    MRDataset ds(n);
    // <psi|Q_i|psi> = 1 - 2 |<psi|v_i>|^2 (- 2 |<psi|u_i>|^2)
    for (int i = 0; i < n; ++i) {
        double q = 1 - 2 * std::norm(psi.dot(v[i]));
        if (two) q -= 2 * std::norm(psi.dot(u[i]));
        ds.set(EntryKey{i}, q);
    }
    // Q_i Q_j expanded in the projectors; C_ij is the real part of <psi|Q_i Q_j|psi>.
    auto term = [&](const CVector &a, const CVector &b) {
        // Re <psi|a><a|b><b|psi>
        return (psi.dot(a) * a.dot(b) * b.dot(psi)).real();
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double c = 1 - 2 * std::norm(psi.dot(v[i])) - 2 * std::norm(psi.dot(v[j])) + 4 * term(v[i], v[j]);
            if (two) {
                c += -2 * std::norm(psi.dot(u[i])) - 2 * std::norm(psi.dot(u[j])) + 4 * term(v[i], u[j]) +
                     4 * term(u[i], v[j]) + 4 * term(u[i], u[j]);
            }
            ds.set(EntryKey{i, j}, c);
        }
    }
    return ds;
}

namespace spin1 {
namespace {

CMatrix jx() { return observables::spin_x_hamiltonian(3); }

Complex ev(const DensityMatrix &rho, const CMatrix &a) { return numerics::trace_product(rho.matrix(), a); }

}  // namespace

double dichotomic_c(const DensityMatrix &rho, double ti, double tj) {
    CMatrix x = jx();
    return 1 + (std::cos(ti - tj) - 1) * ev(rho, x * x).real();
}

double dichotomic_d(const DensityMatrix &rho, const CMatrix &q, double ti, double tj, double tk) {
    CMatrix x = jx();
    const Complex i(0, 1);
    Complex v = ev(rho, q) + i * std::sin(ti) * std::cos(tj - tk) * ev(rho, x * q) +
                (std::cos(ti) * std::cos(tj - tk) - 1) * ev(rho, x * x * q);
    return v.real();
}

double dichotomic_e(const DensityMatrix &rho, double ti, double tj, double tk, double tl) {
    CMatrix x = jx();
    return 1 + (std::cos(ti - tj) * std::cos(tk - tl) - 1) * ev(rho, x * x).real();
}

double tri_avg(const DensityMatrix &rho, const observables::TrichotomicTriple &t, char var, double time) {
    CMatrix x = jx();
    const Complex i(0, 1);
    Complex sx_q = ev(rho, x * t.q), sx2_q = ev(rho, x * x * t.q);
    switch (var) {
        case 'Q': return (ev(rho, t.q) + i * std::sin(time) * sx_q + (std::cos(time) - 1) * sx2_q).real();
        case 'R': return (ev(rho, t.r) - i * std::sin(time) * sx_q - (std::cos(time) - 1) * sx2_q).real();
        case 'S': return ev(rho, t.s).real();
        default: throw Error(ErrorCode::BadInput, "unknown variable");
    }
}

double tri_pair(const DensityMatrix &rho, const observables::TrichotomicTriple &t, char vi, char vj, double ti, double tj) {
    CMatrix x = jx();
    double sx2 = ev(rho, x * x).real();
    double s = ev(rho, t.s).real();
    auto is_qr = [](char c) { return c == 'Q' || c == 'R'; };
    if (!is_qr(vi) || !is_qr(vj)) {
        throw Error(ErrorCode::BadInput, "closed form covers Q and R only");
    }
    if (vi == vj) {
        return 1 + (std::cos(ti - tj) - 1) * sx2;
    }
    return s - (std::cos(ti - tj) - 1) * sx2;
}

}  // namespace spin1

}  // namespace macroreal::correlators
