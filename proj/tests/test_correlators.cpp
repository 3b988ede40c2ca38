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

#include <functional>
#include <numbers>

#include "macroreal/correlators.hpp"
#include "macroreal/error.hpp"
#include "macroreal/observables.hpp"
#include "test_util.hpp"

using namespace macroreal;
using correlators::ProjectorSet;
using macroreal::testing::random_dichotomic;
using macroreal::testing::random_state;

namespace {

constexpr double kPi = std::numbers::pi;

/// sum_s prod(s) tr[P_sn .. P_s1 rho P_s1 .. P_sn], written as a plain
/// recursion over outcome strings.
double chain_moment(const CMatrix &rho, const std::vector<CMatrix> &ops) {
    std::function<double(const CMatrix &, size_t)> rec = [&](const CMatrix &state, size_t k) -> double {
        if (k == ops.size()) return state.trace().real();
        const int dim = static_cast<int>(state.rows());
        double total = 0;
        for (int s : {1, -1}) {
            CMatrix p = (numerics::identity(dim) + s * ops[k]) / 2.0;
            total += s * rec(p * state * p, k + 1);
        }
        return total;
    };
    return rec(rho, 0);
}

observables::SpinModel fig2a(double t3) {
    const double r = 1 / std::sqrt(2.0);
    return observables::SpinModel(observables::spin_x_hamiltonian(2), observables::dichotomic_explicit(states::pauli::z()),
                                  states::bloch_state({{r, r, 0}}), {0, kPi, t3});
}

CMatrix spin1_q() {
    CMatrix q = CMatrix::Zero(3, 3);
    q(0, 0) = -1;
    q(1, 1) = 1;
    q(2, 2) = -1;
    return q;
}

states::DensityMatrix random_gellmann(rng::Rng &rng) { return rng::random_gellmann_state(rng); }

TEST(Corr1, FigureTwoAverages) {
    for (double t3 : {0.3, 1.7, 4.0}) {
        auto m = fig2a(t3);
        EXPECT_NEAR(correlators::corr1(m.initial(), m.operator_at(0)), 0, 1e-14);
        EXPECT_NEAR(correlators::corr1(m.initial(), m.operator_at(1)), 0, 1e-14);
        EXPECT_NEAR(correlators::corr1(m.initial(), m.operator_at(2)), std::sin(t3) / std::sqrt(2.0), 1e-14);
    }
    rng::Rng rng(1);
    auto mixed = states::validate_density(numerics::identity(4) / 4.0);
    CMatrix q = random_dichotomic(4, rng);
    EXPECT_NEAR(correlators::corr1(mixed, q), q.trace().real() / 4, 1e-14);
}

TEST(Corr2, SpinHalfIsCosine) {
    rng::Rng rng(2);
    CMatrix h = observables::spin_x_hamiltonian(2);
    for (int trial = 0; trial < 50; ++trial) {
        auto rho = random_state(2, rng);
        double ti = rng.uniform(0, 7), tj = rng.uniform(0, 7);
        CMatrix qi = observables::heisenberg(states::pauli::z(), h, ti);
        CMatrix qj = observables::heisenberg(states::pauli::z(), h, tj);
        EXPECT_NEAR(correlators::corr2(rho, qi, qj), std::cos(tj - ti), 1e-12);
        EXPECT_NEAR(correlators::corr2(rho, qi, qj), correlators::corr2(rho, qj, qi), 1e-14);
        EXPECT_NEAR(correlators::corr2(rho, qi, qi), 1, 1e-12);
    }
}

TEST(Corr3, FigureTwoVanishesAndSymmetry) {
    auto m = fig2a(1.1);
    EXPECT_NEAR(correlators::corr3(m.initial(), m.operator_at(0), m.operator_at(1), m.operator_at(2)), 0, 1e-14);
    rng::Rng rng(3);
    auto rho = random_state(3, rng);
    CMatrix a = random_dichotomic(3, rng), b = random_dichotomic(3, rng), c = random_dichotomic(3, rng);
    EXPECT_NEAR(correlators::corr3(rho, a, b, c), correlators::corr3(rho, a, c, b), 1e-14);
    EXPECT_NEAR(correlators::corr4(rho, a, a, a, a), 1, 1e-12);
}

TEST(SeqProbs, SingleTimeAndNormalization) {
    auto up = states::bloch_state({{0, 0, 1}});
    std::vector<ProjectorSet> sets{ProjectorSet::from_dichotomic(states::pauli::z())};
    auto t = correlators::seq_probs(up, sets);
    EXPECT_NEAR(t.prob(std::vector<int>{0}), 1, 1e-15);
    EXPECT_NEAR(t.prob(std::vector<int>{1}), 0, 1e-15);

    rng::Rng rng(4);
    for (int dim = 2; dim <= 5; ++dim) {
        auto rho = random_state(dim, rng);
        std::vector<ProjectorSet> chain;
        for (int k = 0; k < 4; ++k) chain.push_back(ProjectorSet::from_dichotomic(random_dichotomic(dim, rng)));
        auto table = correlators::seq_probs(rho, chain);
        EXPECT_NEAR(table.total(), 1, 1e-12);
        for (double p : table.probabilities()) EXPECT_GE(p, -1e-12);
        for (int k = 1; k < 4; ++k) {
            auto prefix = correlators::seq_probs(rho, std::span(chain).first(k));
            auto marg = table.marginal_prefix(k);
            for (size_t i = 0; i < prefix.probabilities().size(); ++i) {
                EXPECT_NEAR(marg.probabilities()[i], prefix.probabilities()[i], 1e-12);
            }
        }
    }
}

TEST(SeqProbs, RejectsIncompleteProjectors) {
    ProjectorSet bad{{CMatrix::Identity(2, 2) / 2.0}, {1.0}};
    EXPECT_THROW(bad.validate(), Error);
}

TEST(OracleEquivalence, NestedAnticommutatorsMatchMeasurementChain) {
    rng::Rng rng(5);
    for (int dim = 2; dim <= 5; ++dim) {
        for (int trial = 0; trial < 200; ++trial) {
            auto rho = random_state(dim, rng);
            std::vector<CMatrix> ops;
            for (int k = 0; k < 4; ++k) ops.push_back(random_dichotomic(dim, rng));
            for (int order = 1; order <= 4; ++order) {
                std::vector<CMatrix> sub(ops.begin(), ops.begin() + order);
                double nested = correlators::nested(rho, sub);
                EXPECT_NEAR(nested, chain_moment(rho.matrix(), sub), 1e-10);
                EXPECT_NEAR(nested, correlators::sequential_correlator(rho, sub), 1e-10);
                EXPECT_LE(std::abs(nested), 1 + 1e-10);
            }
            EXPECT_NEAR(correlators::corr2(rho, ops[0], ops[1]), correlators::nested(rho, std::span(ops).first(2)), 1e-14);
            EXPECT_NEAR(correlators::corr4(rho, ops[0], ops[1], ops[2], ops[3]), correlators::nested(rho, ops), 1e-14);
        }
    }
}

TEST(Factorization, HoldsForSpinHalf) {
    rng::Rng rng(6);
    for (int trial = 0; trial < 1000; ++trial) {
        auto rho = random_state(2, rng);
        CMatrix q[4];
        for (auto &x : q) x = random_dichotomic(2, rng);
        double d = correlators::corr3(rho, q[0], q[1], q[2]);
        EXPECT_NEAR(d, correlators::corr1(rho, q[0]) * correlators::corr2(rho, q[1], q[2]), 1e-10);
        double e = correlators::corr4(rho, q[0], q[1], q[2], q[3]);
        EXPECT_NEAR(e, correlators::corr2(rho, q[0], q[1]) * correlators::corr2(rho, q[2], q[3]), 1e-10);
    }
}

TEST(Factorization, FailsForSpinOne) {
    rng::Rng rng(7);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto rho = random_state(3, rng);
        CMatrix q[3];
        for (auto &x : q) x = random_dichotomic(3, rng);
        double d = correlators::corr3(rho, q[0], q[1], q[2]);
        worst = std::max(worst, std::abs(d - correlators::corr1(rho, q[0]) * correlators::corr2(rho, q[1], q[2])));
    }
    EXPECT_GT(worst, 0.01);
}

TEST(SpinOneClosedForms, DichotomicMatchGenericComputation) {
    rng::Rng rng(8);
    CMatrix h = 0.5 * observables::spin_x_hamiltonian(3);
    CMatrix q = spin1_q();
    for (int trial = 0; trial < 200; ++trial) {
        auto rho = random_gellmann(rng);
        double t[4];
        for (double &x : t) x = rng.uniform(0, 2 * kPi);
        CMatrix qt[4];
        for (int k = 0; k < 4; ++k) qt[k] = observables::heisenberg(q, h, t[k]);
        EXPECT_NEAR(correlators::spin1::dichotomic_c(rho, t[0], t[1]), correlators::corr2(rho, qt[0], qt[1]), 1e-10);
        EXPECT_NEAR(correlators::spin1::dichotomic_d(rho, q, t[0], t[1], t[2]),
                    correlators::corr3(rho, qt[0], qt[1], qt[2]), 1e-10);
        EXPECT_NEAR(correlators::spin1::dichotomic_e(rho, t[0], t[1], t[2], t[3]),
                    correlators::corr4(rho, qt[0], qt[1], qt[2], qt[3]), 1e-10);
    }
}

TEST(SpinOneClosedForms, FourthOrderCoefficientIsNotTheQWeightedOne) {
    // The alternative coefficient <J_x^2 Q> disagrees with the generic value.
    rng::Rng rng(9);
    CMatrix h = 0.5 * observables::spin_x_hamiltonian(3);
    CMatrix q = spin1_q(), x = observables::spin_x_hamiltonian(3);
    double worst = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto rho = random_gellmann(rng);
        double t[4];
        for (double &v : t) v = rng.uniform(0, 2 * kPi);
        CMatrix qt[4];
        for (int k = 0; k < 4; ++k) qt[k] = observables::heisenberg(q, h, t[k]);
        double alt = 1 + (std::cos(t[0] - t[1]) * std::cos(t[2] - t[3]) - 1) * numerics::expval(rho.matrix(), x * x * q);
        worst = std::max(worst, std::abs(alt - correlators::corr4(rho, qt[0], qt[1], qt[2], qt[3])));
    }
    EXPECT_GT(worst, 0.01);
}

TEST(SpinOneClosedForms, TrichotomicMatchGenericComputation) {
    rng::Rng rng(10);
    CMatrix h = 0.5 * observables::spin_x_hamiltonian(3);
    auto x = observables::trichotomic_spin1();
    for (int trial = 0; trial < 200; ++trial) {
        auto rho = random_gellmann(rng);
        double ti = rng.uniform(0, 2 * kPi), tj = rng.uniform(0, 2 * kPi);
        for (char v : {'Q', 'R', 'S'}) {
            EXPECT_NEAR(correlators::spin1::tri_avg(rho, x, v, ti),
                        correlators::corr1(rho, observables::heisenberg(x.get(v), h, ti)), 1e-10);
        }
        for (char a : {'Q', 'R'}) {
            for (char b : {'Q', 'R'}) {
                double generic = correlators::corr2(rho, observables::heisenberg(x.get(a), h, ti),
                                                    observables::heisenberg(x.get(b), h, tj));
                EXPECT_NEAR(correlators::spin1::tri_pair(rho, x, a, b, ti, tj), generic, 1e-10);
            }
        }
    }
}

TEST(DatasetFromModel, FigureTwoEntries) {
    double t3 = 2.2;
    auto ds = correlators::dataset_from_model(fig2a(t3), std::vector<int>{1, 2, 3});
    EXPECT_NEAR(ds.c2(0, 1), -1, 1e-12);
    EXPECT_NEAR(ds.c2(0, 2), std::cos(t3), 1e-12);
    EXPECT_NEAR(ds.c2(1, 2), -std::cos(t3), 1e-12);
    EXPECT_NEAR(ds.c3(0, 1, 2), 0, 1e-12);
    EXPECT_NO_THROW(ds.validate());
}

TEST(DatasetFromModel, OrdersOperatorsByTimeValue) {
    rng::Rng rng(11);
    auto rho = random_state(3, rng);
    CMatrix h = rng::random_hermitian(3, rng);
    auto obs = observables::dichotomic_explicit(random_dichotomic(3, rng));
    observables::SpinModel shuffled(h, obs, rho, {2.0, 0.5, 1.0});
    observables::SpinModel sorted(h, obs, rho, {0.5, 1.0, 2.0});
    auto a = correlators::dataset_from_model(shuffled, std::vector<int>{3});
    auto b = correlators::dataset_from_model(sorted, std::vector<int>{3});
    EXPECT_NEAR(a.c3(0, 1, 2), b.c3(0, 1, 2), 1e-14);
    EXPECT_NEAR(a.c3(0, 1, 2), chain_moment(rho.matrix(), {sorted.operator_at(0), sorted.operator_at(1), sorted.operator_at(2)}),
                1e-10);
}

TEST(DatasetFromModel, TrichotomicSymmetry) {
    rng::Rng rng(12);
    auto x = observables::trichotomic_spin1();
    for (int trial = 0; trial < 20; ++trial) {
        observables::SpinModel m(0.5 * observables::spin_x_hamiltonian(3), x, random_gellmann(rng),
                                 {0, rng.uniform(0, 6), rng.uniform(0, 6)});
        auto ds = correlators::dataset_from_model(m, std::vector<int>{1, 2});
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                EXPECT_NEAR(ds.value(EntryKey({i, j}, "QQ")), ds.value(EntryKey({i, j}, "RR")), 1e-12);
                double ss = correlators::corr2(m.initial(), m.operator_at(i, 'S'), m.operator_at(j, 'S'));
                EXPECT_NEAR(ds.value(EntryKey({i, j}, "SS")), ss, 1e-12);
            }
        }
        EXPECT_THROW(correlators::dataset_from_model(m, std::vector<int>{3}), Error);
    }
}

TEST(OverlapCorrelators, MatchOperatorDataset) {
    rng::Rng rng(13);
    for (int dim = 2; dim <= 5; ++dim) {
        CVector psi = rng::haar_ket(dim, rng);
        std::vector<CVector> v;
        std::vector<CMatrix> ops;
        for (int i = 0; i < 4; ++i) {
            v.push_back(rng::haar_ket(dim, rng));
            ops.push_back(numerics::identity(dim) - 2.0 * numerics::outer(v.back(), v.back()));
        }
        auto a = correlators::overlap_correlators(psi, v);
        auto b = correlators::dataset_from_operators(states::pure_density(psi), ops, std::vector<int>{1, 2});
        for (const auto &[k, val] : b.entries()) EXPECT_NEAR(a.value(k), val, 1e-10) << k.label(false);
    }
    // Two-projector observables.
    for (int trial = 0; trial < 10; ++trial) {
        CVector psi = rng::haar_ket(4, rng);
        std::vector<CVector> v, u;
        std::vector<CMatrix> ops;
        for (int i = 0; i < 3; ++i) {
            CMatrix basis = numerics::herm_eig(rng::random_hermitian(4, rng)).vectors;
            v.push_back(basis.col(0));
            u.push_back(basis.col(1));
            ops.push_back(observables::dichotomic_double(v.back(), u.back()).matrix());
        }
        auto a = correlators::overlap_correlators(psi, v, u);
        auto b = correlators::dataset_from_operators(states::pure_density(psi), ops, std::vector<int>{1, 2});
        for (const auto &[k, val] : b.entries()) EXPECT_NEAR(a.value(k), val, 1e-10);
    }
}

TEST(OverlapCorrelators, StateOnFirstVectorGivesMinusOne) {
    rng::Rng rng(14);
    std::vector<CVector> v{rng::haar_ket(3, rng), rng::haar_ket(3, rng)};
    EXPECT_NEAR(correlators::overlap_correlators(v[0], v).avg(0), -1, 1e-12);
    CVector unnorm = 2.0 * v[0];
    EXPECT_THROW(correlators::overlap_correlators(unnorm, v), Error);
}

}  // namespace
