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

#include <numbers>

#include "macroreal/error.hpp"
#include "macroreal/numerics.hpp"
#include "macroreal/observables.hpp"
#include "macroreal/states.hpp"
#include "test_util.hpp"

using namespace macroreal;
using macroreal::testing::max_diff;

namespace {

constexpr double kPi = std::numbers::pi;

TEST(HermEig, IdentityHasUnitEigenvalues) {
    auto e = numerics::herm_eig(numerics::identity(3));
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(e.values(k), 1.0, 1e-14);
}

TEST(HermEig, DiagonalGivesSortedValuesAndBasisVectors) {
    CMatrix d = CMatrix::Zero(3, 3);
    d(0, 0) = 1;
    d(2, 2) = -1;
    auto e = numerics::herm_eig(d);
    EXPECT_NEAR(e.values(0), -1, 1e-14);
    EXPECT_NEAR(e.values(1), 0, 1e-14);
    EXPECT_NEAR(e.values(2), 1, 1e-14);
    EXPECT_LT(max_diff(e.vectors.col(0), numerics::basis_ket(3, 2)), 1e-14);
    EXPECT_LT(max_diff(e.vectors.col(2), numerics::basis_ket(3, 0)), 1e-14);
}

TEST(HermEig, SpinOneMatrixMatchesTabulatedEigenvectors) {
    CMatrix h = observables::spin_x_hamiltonian(3);
    auto e = numerics::herm_eig(h);
    EXPECT_NEAR(e.values(0), -1, 1e-12);
    EXPECT_NEAR(e.values(1), 0, 1e-12);
    EXPECT_NEAR(e.values(2), 1, 1e-12);
    const double r2 = std::sqrt(2.0);
    CVector plus(3), zero(3), minus(3);
    plus << 0.5, r2 / 2, 0.5;
    zero << 1 / r2, 0, -1 / r2;
    minus << 0.5, -r2 / 2, 0.5;
    EXPECT_LT(max_diff(e.vectors.col(2), plus), 1e-12);
    EXPECT_LT(max_diff(e.vectors.col(1), zero), 1e-12);
    EXPECT_LT(max_diff(e.vectors.col(0), minus), 1e-12);
}

TEST(HermEig, ReconstructsRandomHermitian) {
    rng::Rng rng(11);
    for (int dim = 1; dim <= kMaxDim; ++dim) {
        for (int trial = 0; trial < 50; ++trial) {
            CMatrix a = rng::random_hermitian(dim, rng);
            auto e = numerics::herm_eig(a);
            CMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
            EXPECT_LT(max_diff(back, a), 1e-10);
            EXPECT_LT(max_diff(e.vectors.adjoint() * e.vectors, numerics::identity(dim)), 1e-12);
            for (int k = 1; k < dim; ++k) EXPECT_LE(e.values(k - 1), e.values(k));
            for (int k = 0; k < dim; ++k) {
                // First significant component is real and positive.
                int j = 0;
                while (std::abs(e.vectors(j, k)) <= 1e-10) ++j;
                EXPECT_NEAR(e.vectors(j, k).imag(), 0, 1e-14);
                EXPECT_GT(e.vectors(j, k).real(), 0);
            }
        }
    }
}

TEST(HermEig, RejectsNonHermitian) {
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 1) = 1;
    try {
        numerics::herm_eig(a);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
    }
}

TEST(HermEig, RejectsOversizedMatrix) {
    EXPECT_THROW(numerics::require_dim(6), Error);
    EXPECT_THROW(numerics::require_dim(0), Error);
}

TEST(EvolveUnitary, IdentityAtZeroTime) {
    rng::Rng rng(3);
    CMatrix h = rng::random_hermitian(4, rng);
    EXPECT_LT(max_diff(numerics::evolve_unitary(h, 0), numerics::identity(4)), 1e-12);
}

TEST(EvolveUnitary, SpinHalfFullTurnIsMinusIdentity) {
    CMatrix u = numerics::evolve_unitary(observables::spin_x_hamiltonian(2), 2 * kPi);
    EXPECT_LT(max_diff(u, -numerics::identity(2)), 1e-12);
}

TEST(EvolveUnitary, AgreesWithTaylorSeries) {
    rng::Rng rng(5);
    for (int dim = 2; dim <= kMaxDim; ++dim) {
        for (int trial = 0; trial < 20; ++trial) {
            CMatrix h = rng::random_hermitian(dim, rng);
            double t = rng.uniform(-3, 3);
            CMatrix u = numerics::evolve_unitary(h, t);
            EXPECT_LT(max_diff(u, macroreal::testing::taylor_unitary(h, t)), 1e-10);
            EXPECT_LT(max_diff(u.adjoint() * u, numerics::identity(dim)), 1e-10);
        }
    }
}

TEST(EvolveUnitary, GroupProperty) {
    rng::Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        int dim = 2 + rng.below(4);
        CMatrix h = rng::random_hermitian(dim, rng);
        double t1 = rng.uniform(-5, 5), t2 = rng.uniform(-5, 5);
        EXPECT_LT(max_diff(numerics::evolve_unitary(h, t1) * numerics::evolve_unitary(h, t2),
                           numerics::evolve_unitary(h, t1 + t2)),
                  1e-10);
    }
}

TEST(Anticomm, PauliRelations) {
    using namespace states::pauli;
    EXPECT_LT(max_diff(numerics::anticomm(z(), z()), 2 * numerics::identity(2)), 1e-15);
    EXPECT_LT(numerics::max_abs(numerics::anticomm(z(), x())), 1e-15);
}

TEST(Anticomm, MatchesDirectProduct) {
    rng::Rng rng(9);
    CMatrix a = rng::random_hermitian(4, rng), b = rng::random_hermitian(4, rng);
    CMatrix direct(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Complex s = 0;
            for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j) + b(i, k) * a(k, j);
            direct(i, j) = s;
        }
    }
    CMatrix ab = numerics::anticomm(a, b);
    EXPECT_LT(max_diff(ab, direct), 1e-12);
    EXPECT_TRUE(numerics::is_hermitian(ab));
}

TEST(Anticomm, DimensionMismatchThrows) {
    try {
        numerics::anticomm(numerics::identity(2), numerics::identity(3));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
    }
}

TEST(Expval, BasicValues) {
    CMatrix mixed = numerics::identity(3) / 3.0;
    CMatrix traceless = CMatrix::Zero(3, 3);
    traceless(0, 0) = 1;
    traceless(2, 2) = -1;
    EXPECT_NEAR(numerics::expval(mixed, traceless), 0, 1e-15);
    CMatrix up = numerics::outer(numerics::basis_ket(2, 0), numerics::basis_ket(2, 0));
    EXPECT_NEAR(numerics::expval(up, states::pauli::z()), 1, 1e-15);
    auto rho = states::bloch_state({{1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0}});
    EXPECT_NEAR(numerics::expval(rho.matrix(), states::pauli::z()), 0, 1e-15);
}

TEST(Expval, LinearAndNormalized) {
    rng::Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        int dim = 2 + rng.below(4);
        CMatrix rho = macroreal::testing::random_density_matrix(dim, rng);
        CMatrix a = rng::random_hermitian(dim, rng), b = rng::random_hermitian(dim, rng);
        double x = rng.normal();
        EXPECT_NEAR(numerics::expval(rho, a + x * b), numerics::expval(rho, a) + x * numerics::expval(rho, b), 1e-12);
        EXPECT_NEAR(numerics::expval(rho, numerics::identity(dim)), 1, 1e-12);
        EXPECT_LT(std::abs(numerics::trace_product(rho, a).imag()), 1e-10);
    }
}

}  // namespace
