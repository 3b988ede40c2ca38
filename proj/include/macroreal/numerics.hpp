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

#include <complex>

#include <Eigen/Dense>

namespace macroreal {

using Complex = std::complex<double>;

/// Largest Hilbert-space dimension handled. Matrices live on the stack.
inline constexpr int kMaxDim = 5;

using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using RVector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

namespace numerics {

/// Max-norm tolerance for hermiticity, unitarity and projector identities.
inline constexpr double kTol = 1e-10;

struct EigenSystem {
    RVector values;   // ascending
    CMatrix vectors;  // orthonormal columns
};

/// Throws BadDim unless 1 <= dim <= kMaxDim.
void require_dim(int dim);
/// Throws DimMismatch unless a is square with the same size as b.
void require_same_dim(const CMatrix &a, const CMatrix &b);

double max_abs(const CMatrix &a);
double hermiticity_defect(const CMatrix &a);
bool is_hermitian(const CMatrix &a, double tol = kTol);

CMatrix identity(int dim);
/// |a><b|
CMatrix outer(const CVector &a, const CVector &b);
CVector basis_ket(int dim, int index);

/// Eigendecomposition of a Hermitian matrix. Each eigenvector is rephased so that
/// its first component of magnitude above 1e-10 is real and positive.
EigenSystem herm_eig(const CMatrix &a);

/// U = exp(-i h t).
CMatrix evolve_unitary(const CMatrix &h, double t);
CMatrix evolve_unitary(const EigenSystem &h, double t);

CMatrix anticomm(const CMatrix &a, const CMatrix &b);
CMatrix comm(const CMatrix &a, const CMatrix &b);

/// Re tr(rho a).
double expval(const CMatrix &rho, const CMatrix &a);
Complex trace_product(const CMatrix &a, const CMatrix &b);

}  // namespace numerics
}  // namespace macroreal
