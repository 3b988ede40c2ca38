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

#include "macroreal/shots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "macroreal/error.hpp"
#include "macroreal/parallel.hpp"

namespace macroreal::shots {

using correlators::ProjectorSet;

namespace {

constexpr long kBatch = 1L << 20;

void for_each_subset(int n, int k, const std::function<void(const std::vector<int> &)> &fn) {
    if (k > n) return;
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

int draw(const double *cumulative, int count, double u) {
    for (int a = 0; a + 1 < count; ++a) {
        if (u < cumulative[a]) return a;
    }
    return count - 1;
}

}  // namespace

void ShotPlan::validate() const {
    if (shots < 1) {
        throw Error(ErrorCode::InvalidSpec, "shots must be at least 1");
    }
    if (experiments.empty()) {
        throw Error(ErrorCode::InvalidSpec, "plan has no experiments");
    }
    const int n = static_cast<int>(model.times().size());
    for (const auto &e : experiments) {
        EntryKey k = e.key();
        if (k.time(k.order() - 1) >= n) {
            throw Error(ErrorCode::InvalidSpec, "experiment <" + k.label(true) + "> refers past time " + std::to_string(n));
        }
        for (char v : e.vars) {
            if (v == 'S') throw Error(ErrorCode::InvalidSpec, "S is estimated through Q and R");
            if (v == 'R' && !model.trichotomic()) {
                throw Error(ErrorCode::InvalidSpec, "R measured on a dichotomic model");
            }
        }
    }
}

ShotPlan default_plan(const observables::SpinModel &model, std::span<const int> orders, long shots, std::uint64_t seed) {
    const int n = static_cast<int>(model.times().size());
    ShotPlan plan{model, {}, shots, seed, 1};
    for (int k : orders) {
        if (model.trichotomic() && k > 2) {
            throw Error(ErrorCode::WrongKind, "trichotomic plans cover orders 1 and 2");
        }
        for_each_subset(n, k, [&](const std::vector<int> &t) {
            if (!model.trichotomic()) {
                plan.experiments.push_back({t, std::string(k, 'Q')});
                return;
            }
            if (k == 1) {
                plan.experiments.push_back({t, "Q"});
                plan.experiments.push_back({t, "R"});
            } else {
                for (const char *v : {"QQ", "QR", "RQ", "RR"}) plan.experiments.push_back({t, v});
            }
        });
    }
    plan.validate();
    return plan;
}

double EstimatedDataset::std_error(const EntryKey &key) const {
    auto it = estimates.find(key);
    if (it == estimates.end()) {
        return std_error(values.expand(key));
    }
    return it->second.std_error;
}

double EstimatedDataset::std_error(const LinearForm &form) const {
    double var = 0;
    for (const auto &[k, c] : form.terms) {
        auto it = estimates.find(k);
        if (it == estimates.end()) {
            throw Error(ErrorCode::MissingData, "no estimate for <" + k.label(true) + ">");
        }
        var += c * c * it->second.std_error * it->second.std_error;
    }
    return std::sqrt(var);
}

std::vector<int> sample_sequence(const states::DensityMatrix &rho, std::span<const ProjectorSet> sets, rng::Rng &rng) {
    CMatrix state = rho.matrix();
    std::vector<int> out;
    out.reserve(sets.size());
    for (const auto &set : sets) {
        set.validate();
        std::vector<double> p(set.size());
        double total = 0;
        for (int a = 0; a < set.size(); ++a) {
            p[a] = std::max(0.0, numerics::trace_product(set.projectors[a], state).real());
            total += p[a];
        }
        double u = rng.uniform() * total;
        int pick = set.size() - 1;
        double acc = 0;
        for (int a = 0; a < set.size(); ++a) {
            acc += p[a];
            if (u < acc) {
                pick = a;
                break;
            }
        }
        const CMatrix &proj = set.projectors[pick];
        state = proj * state * proj / p[pick];
        out.push_back(pick);
    }
    return out;
}

SequenceSampler::SequenceSampler(const states::DensityMatrix &rho, std::span<const ProjectorSet> sets) {
    if (sets.empty()) {
        throw Error(ErrorCode::BadProjectors, "no measurements");
    }
    for (const auto &s : sets) {
        s.validate();
        if (s.projectors[0].rows() != rho.dim()) {
            throw Error(ErrorCode::DimMismatch, "projector dimension differs from state");
        }
        radix_.push_back(s.size());
        values_.push_back(s.values);
    }
    // Breadth-first over prefixes, carrying the unnormalized post-measurement state.
    std::vector<CMatrix> level_states{rho.matrix()};
    for (size_t k = 0; k < sets.size(); ++k) {
        const int r = radix_[k];
        std::vector<double> cum(level_states.size() * r);
        std::vector<CMatrix> next;
        for (size_t node = 0; node < level_states.size(); ++node) {
            const CMatrix &st = level_states[node];
            double total = std::max(0.0, st.trace().real());
            double acc = 0;
            for (int a = 0; a < r; ++a) {
                const CMatrix &p = sets[k].projectors[a];
                double w = std::max(0.0, numerics::trace_product(p, st).real());
                acc += total > 0 ? w / total : 1.0 / r;
                cum[node * r + a] = acc;
                if (k + 1 < sets.size()) next.push_back(p * st * p);
            }
        }
        cumulative_.push_back(std::move(cum));
        level_states = std::move(next);
    }
}

void SequenceSampler::sample(rng::Rng &rng, std::span<int> outcome) const {
    size_t node = 0;
    for (size_t k = 0; k < radix_.size(); ++k) {
        const int r = radix_[k];
        int a = draw(&cumulative_[k][node * r], r, rng.uniform());
        outcome[k] = a;
        node = node * r + a;
    }
}

double SequenceSampler::sample_product(rng::Rng &rng) const {
    size_t node = 0;
    double prod = 1;
    for (size_t k = 0; k < radix_.size(); ++k) {
        const int r = radix_[k];
        int a = draw(&cumulative_[k][node * r], r, rng.uniform());
        prod *= values_[k][a];
        node = node * r + a;
    }
    return prod;
}

EstimatedDataset estimate_dataset(const ShotPlan &plan) {
    plan.validate();
    const auto &model = plan.model;
    const int n = static_cast<int>(model.times().size());
    EstimatedDataset out{MRDataset(n, model.trichotomic() ? VariableKind::Trichotomic : VariableKind::Dichotomic), {}};

    // Measurement order follows the time values; the estimated product does not
    // depend on it, but the collapse sequence does.
    std::vector<SequenceSampler> samplers;
    for (const auto &e : plan.experiments) {
        EntryKey key = e.key();
        std::vector<int> order(key.order());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return model.times()[key.time(a)] < model.times()[key.time(b)]; });
        std::vector<ProjectorSet> sets;
        for (int k : order) {
            sets.push_back(ProjectorSet::from_dichotomic(model.operator_at(key.time(k), key.var(k))));
        }
        samplers.emplace_back(model.initial(), sets);
    }

    const long batches = (plan.shots + kBatch - 1) / kBatch;
    struct Job {
        size_t experiment;
        long batch;
    };
    std::vector<Job> jobs;
    for (size_t e = 0; e < plan.experiments.size(); ++e) {
        for (long b = 0; b < batches; ++b) jobs.push_back({e, b});
    }
    std::vector<long> positive(jobs.size(), 0);
    parallel_for(jobs.size(), resolve_workers(plan.workers), [&](size_t j) {
        const Job &job = jobs[j];
        std::uint64_t stream = rng::derive_seed(plan.seed, job.experiment);
        rng::Rng rng(rng::derive_seed(stream, static_cast<std::uint64_t>(job.batch)));
        long count = std::min(kBatch, plan.shots - job.batch * kBatch);
        long pos = 0;
        const SequenceSampler &s = samplers[job.experiment];
        for (long i = 0; i < count; ++i) {
            if (s.sample_product(rng) > 0) ++pos;
        }
        positive[j] = pos;
    });

    std::vector<long> totals(plan.experiments.size(), 0);
    for (size_t j = 0; j < jobs.size(); ++j) totals[jobs[j].experiment] += positive[j];
    for (size_t e = 0; e < plan.experiments.size(); ++e) {
        const double shots = static_cast<double>(plan.shots);
        double mean = (2.0 * totals[e] - shots) / shots;
        // Sample variance of +-1 outcomes; all-equal samples fall back to the
        // largest possible variance so that errors stay positive.
        double var = plan.shots > 1 ? shots / (shots - 1) * (1 - mean * mean) : 0;
        if (var <= 0) var = 1;
        EntryKey key = plan.experiments[e].key();
        out.values.set(key, mean);
        out.estimates[key] = {mean, std::sqrt(var / shots), plan.shots};
    }
    return out;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Violated: return "violated";
        case Verdict::Satisfied: return "satisfied";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

ErrorReport evaluate_with_errors(const EstimatedDataset &est, conditions::Family family, double eps, double significance) {
    auto cands = conditions::candidates(est.values, family);
    ErrorReport out;
    out.report = conditions::report_from(est.values, family, cands, eps, false);
    size_t best = 0;
    std::vector<double> vals(cands.size());
    for (size_t i = 0; i < cands.size(); ++i) {
        vals[i] = est.values.evaluate(cands[i].form);
        if (cands[i].assignment == out.report.argmin) best = i;
    }
    out.std_error = est.std_error(cands[best].form);
    out.z = out.std_error > 0 ? out.report.min_value / out.std_error : std::copysign(INFINITY, out.report.min_value);
    if (out.report.min_value < -significance * out.std_error) {
        out.verdict = Verdict::Violated;
    } else if (out.report.min_value > significance * out.std_error) {
        out.verdict = Verdict::Satisfied;
    } else {
        out.verdict = Verdict::Inconclusive;
    }
    for (size_t i = 0; i < cands.size(); ++i) {
        if (i == best) continue;
        LinearForm diff = cands[i].form;
        diff.add(cands[best].form, -1);
        double gap_err = est.std_error(diff);
        if (vals[i] - vals[best] < 2 * gap_err) {
            out.near_degenerate = true;
            break;
        }
    }
    return out;
}

}  // namespace macroreal::shots
