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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "macroreal/conditions.hpp"
#include "macroreal/constructions.hpp"
#include "macroreal/correlators.hpp"
#include "macroreal/error.hpp"
#include "macroreal/shots.hpp"
#include "test_util.hpp"

using namespace macroreal;
using conditions::Family;
using correlators::ProjectorSet;

namespace {

constexpr double kPi = std::numbers::pi;

observables::SpinModel fig2a(double t3) {
    const double r = 1 / std::sqrt(2.0);
    return observables::SpinModel(observables::spin_x_hamiltonian(2), observables::dichotomic_explicit(states::pauli::z()),
                                  states::bloch_state({{r, r, 0}}), {0, kPi, t3});
}

TEST(Sampling, AlignedStateGivesConstantOutcome) {
    auto up = states::bloch_state({{0, 0, 1}});
    std::vector<ProjectorSet> sets(3, ProjectorSet::from_dichotomic(states::pauli::z()));
    rng::Rng rng(1);
    shots::SequenceSampler sampler(up, sets);
    std::vector<int> out(3);
    for (int k = 0; k < 1000; ++k) {
        EXPECT_EQ(shots::sample_sequence(up, sets, rng), (std::vector<int>{0, 0, 0}));
        sampler.sample(rng, out);
        EXPECT_EQ(out, (std::vector<int>{0, 0, 0}));
        EXPECT_EQ(sampler.sample_product(rng), 1);
    }
}

TEST(Sampling, TwoTimeCorrelatorWithinFiveSigma) {
    const double dt = 0.7;
    CMatrix h = observables::spin_x_hamiltonian(2);
    auto rho = states::bloch_state({{0.3, -0.2, 0.5}});
    std::vector<ProjectorSet> sets{ProjectorSet::from_dichotomic(states::pauli::z()),
                                   ProjectorSet::from_dichotomic(observables::heisenberg(states::pauli::z(), h, dt))};
    shots::SequenceSampler sampler(rho, sets);
    rng::Rng rng(2);
    const long n = 1000000;
    double sum = 0;
    for (long k = 0; k < n; ++k) sum += sampler.sample_product(rng);
    double mean = sum / n;
    double se = std::sqrt((1 - mean * mean) / n);
    EXPECT_LT(std::abs(mean - std::cos(dt)), 5 * se);
}

TEST(Sampling, FrequenciesMatchExactTable) {
    rng::Rng rng(3);
    for (int dim : {2, 3}) {
        auto rho = macroreal::testing::random_state(dim, rng);
        std::vector<ProjectorSet> sets;
        for (int k = 0; k < 3; ++k) sets.push_back(ProjectorSet::from_dichotomic(macroreal::testing::random_dichotomic(dim, rng)));
        auto table = correlators::seq_probs(rho, sets);
        shots::SequenceSampler sampler(rho, sets);
        const long n = 1000000;
        std::vector<long> counts(8, 0);
        std::vector<int> out(3);
        for (long k = 0; k < n; ++k) {
            sampler.sample(rng, out);
            ++counts[out[0] * 4 + out[1] * 2 + out[2]];
        }
        double tvd = 0;
        for (int i = 0; i < 8; ++i) tvd += std::abs(double(counts[i]) / n - table.probabilities()[i]);
        tvd /= 2;
        EXPECT_LT(tvd, 5 * std::sqrt(8.0 / n));

        // The collapse-per-shot sampler draws from the same distribution.
        std::vector<long> naive(8, 0);
        const long m = 100000;
        for (long k = 0; k < m; ++k) {
            auto o = shots::sample_sequence(rho, sets, rng);
            ++naive[o[0] * 4 + o[1] * 2 + o[2]];
        }
        double tvd2 = 0;
        for (int i = 0; i < 8; ++i) tvd2 += std::abs(double(naive[i]) / m - table.probabilities()[i]);
        EXPECT_LT(tvd2 / 2, 5 * std::sqrt(8.0 / m));

        // First-time marginal equals the Born rule.
        double born = numerics::expval(rho.matrix(), sets[0].projectors[0]);
        double first = double(counts[0] + counts[1] + counts[2] + counts[3]) / n;
        EXPECT_LT(std::abs(first - born), 5 * std::sqrt(born * (1 - born) / n) + 1e-12);
    }
}

TEST(Sampling, RejectsBadProjectors) {
    auto rho = states::bloch_state({{0, 0, 1}});
    std::vector<ProjectorSet> sets{{{CMatrix::Identity(2, 2) * 0.5}, {1.0}}};
    rng::Rng rng(4);
    EXPECT_THROW(shots::sample_sequence(rho, sets, rng), Error);
    EXPECT_THROW(shots::SequenceSampler(rho, sets), Error);
}

TEST(Estimate, SameSeedIdentical) {
    auto plan = shots::default_plan(fig2a(1.0), std::vector<int>{1, 2, 3}, 20000, 99);
    auto a = shots::estimate_dataset(plan);
    auto b = shots::estimate_dataset(plan);
    EXPECT_EQ(plan.experiments.size(), 7u);
    for (const auto &[k, e] : a.estimates) {
        EXPECT_EQ(e.value, b.estimates.at(k).value);
        EXPECT_EQ(e.std_error, b.estimates.at(k).std_error);
        EXPECT_GT(e.std_error, 0);
        EXPECT_EQ(e.shots, 20000);
    }
    plan.seed = 100;
    auto c = shots::estimate_dataset(plan);
    EXPECT_NE(a.estimates.begin()->second.value, c.estimates.begin()->second.value);
}

TEST(Estimate, WorkerCountDoesNotChangeResults) {
    auto plan = shots::default_plan(fig2a(2.0), std::vector<int>{2}, 2500000, 5);
    auto a = shots::estimate_dataset(plan);
    plan.workers = 3;
    auto b = shots::estimate_dataset(plan);
    for (const auto &[k, e] : a.estimates) EXPECT_EQ(e.value, b.estimates.at(k).value);
}

TEST(Estimate, SingleShotGivesSigns) {
    auto plan = shots::default_plan(fig2a(0.4), std::vector<int>{1, 2, 3}, 1, 8);
    auto est = shots::estimate_dataset(plan);
    for (const auto &[k, e] : est.estimates) {
        EXPECT_TRUE(e.value == 1 || e.value == -1);
        EXPECT_GT(e.std_error, 0);
    }
}

TEST(Estimate, InvalidPlans) {
    auto plan = shots::default_plan(fig2a(0.4), std::vector<int>{2}, 100, 1);
    plan.shots = 0;
    EXPECT_THROW(shots::estimate_dataset(plan), Error);
    plan.shots = 100;
    plan.experiments.push_back({{0, 9}, "QQ"});
    EXPECT_THROW(shots::estimate_dataset(plan), Error);
}

TEST(Estimate, TenMillionShotsNearExact) {
    auto model = fig2a(3 * kPi / 2);
    auto exact = correlators::dataset_from_model(model, std::vector<int>{1, 2, 3});
    auto est = shots::estimate_dataset(shots::default_plan(model, std::vector<int>{1, 2, 3}, 10000000, 2026));
    for (const auto &[k, e] : est.estimates) {
        EXPECT_LE(std::abs(e.value - exact.value(k)), 5 * e.std_error) << k.label(false);
    }
}

TEST(Estimate, CoverageOverRepeatedTrials) {
    rng::Rng rng(6);
    int covered = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        auto rho = macroreal::testing::random_state(3, rng);
        observables::SpinModel model(rng::random_hermitian(3, rng),
                                     observables::dichotomic_explicit(macroreal::testing::random_dichotomic(3, rng)), rho,
                                     {0, rng.uniform(0, 3), rng.uniform(3, 6)});
        shots::ShotPlan plan{model, {{{0, 1, 2}, "QQQ"}}, 2000, rng.next()};
        auto est = shots::estimate_dataset(plan);
        double exact = correlators::dataset_from_model(model, std::vector<int>{3}).c3(0, 1, 2);
        const auto &e = est.estimates.begin()->second;
        if (std::abs(e.value - exact) <= 5 * e.std_error) ++covered;
    }
    EXPECT_GE(covered, 990);
}

TEST(Errors, ExactDatasetMatchesConditions) {
    auto c = constructions::construct_n5();
    shots::EstimatedDataset est;
    est.values = c.dataset;
    for (const auto &[k, v] : c.dataset.entries()) est.estimates[k] = {v, 0, 0};
    for (Family f : {Family::LG2, Family::LG3, Family::PI}) {
        auto r = shots::evaluate_with_errors(est, f);
        auto ref = conditions::evaluate(c.dataset, f);
        EXPECT_EQ(r.report.min_value, ref.min_value);
        EXPECT_EQ(r.report.argmin, ref.argmin);
        EXPECT_EQ(r.std_error, 0);
    }
}

TEST(Errors, PentagonViolationIsSignificant) {
    auto c = constructions::construct_n5();
    auto est = shots::estimate_dataset(shots::default_plan(*c.model, std::vector<int>{1, 2}, 100000, 7));
    auto r = shots::evaluate_with_errors(est, Family::PI);
    EXPECT_EQ(r.verdict, shots::Verdict::Violated);
    EXPECT_GT(r.std_error, 0.003);
    EXPECT_LT(r.std_error, 0.03);
    EXPECT_LT(std::abs(r.report.min_value + 0.5), 5 * r.std_error);
    EXPECT_LT(r.z, -5);
    // All-equal signs are the unique minimizer; the runner-up sits at 1.5.
    EXPECT_FALSE(r.near_degenerate);

    auto lg3 = shots::evaluate_with_errors(est, Family::LG3);
    EXPECT_EQ(lg3.verdict, shots::Verdict::Satisfied);
}

TEST(Errors, FewShotsAreInconclusive) {
    auto c = constructions::construct_n5();
    auto est = shots::estimate_dataset(shots::default_plan(*c.model, std::vector<int>{1, 2}, 10, 7));
    EXPECT_EQ(shots::evaluate_with_errors(est, Family::PI).verdict, shots::Verdict::Inconclusive);
}

TEST(Errors, StdErrorOfLinearForm) {
    shots::EstimatedDataset est;
    est.values = MRDataset(2);
    est.values.set(EntryKey{0}, 0.1);
    est.values.set(EntryKey{0, 1}, 0.2);
    est.estimates[EntryKey{0}] = {0.1, 0.03, 10};
    est.estimates[EntryKey{0, 1}] = {0.2, 0.04, 10};
    LinearForm f;
    f.constant = 1;
    f.add(EntryKey{0}, 1);
    f.add(EntryKey{0, 1}, -1);
    EXPECT_NEAR(est.std_error(f), 0.05, 1e-15);
    EXPECT_THROW(est.std_error(EntryKey{1}), Error);
}

}  // namespace
