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

#include "macroreal/numerics.hpp"

#include <cmath>
#include <string>

#include "macroreal/error.hpp"

namespace macroreal::numerics {

void require_dim(int dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw Error(ErrorCode::BadDim, "dimension " + std::to_string(dim) + " outside 1.." + std::to_string(kMaxDim));
    }
}

void require_same_dim(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw Error(ErrorCode::DimMismatch, std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

double max_abs(const CMatrix &a) {
    double m = 0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            m = std::max(m, std::abs(a(r, c)));
        }
    }
    return m;
}

double hermiticity_defect(const CMatrix &a) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::DimMismatch, "matrix is not square");
    }
    CMatrix d = a - a.adjoint();
    return max_abs(d);
}

bool is_hermitian(const CMatrix &a, double tol) { return hermiticity_defect(a) <= tol; }

CMatrix identity(int dim) {
    require_dim(dim);
    return CMatrix::Identity(dim, dim);
}

CMatrix outer(const CVector &a, const CVector &b) { return a * b.adjoint(); }

CVector basis_ket(int dim, int index) {
    require_dim(dim);
    if (index < 0 || index >= dim) {
        throw Error(ErrorCode::BadDim, "basis index " + std::to_string(index) + " outside dimension " + std::to_string(dim));
    }
    CVector v = CVector::Zero(dim);
    v(index) = 1.0;
    return v;
}

EigenSystem herm_eig(const CMatrix &a) {
    double defect = hermiticity_defect(a);
    if (defect > kTol) {
        throw Error(ErrorCode::NotHermitian, "max |a_ij - conj(a_ji)| = " + std::to_string(defect));
    }
    require_dim(static_cast<int>(a.rows()));
    CMatrix sym = (a + a.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::InvariantBreach, "eigensolver did not converge");
    }
    EigenSystem out{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
        for (Eigen::Index r = 0; r < out.vectors.rows(); ++r) {
            Complex z = out.vectors(r, c);
            if (std::abs(z) > 1e-10) {
                out.vectors.col(c) *= std::conj(z) / std::abs(z);
                break;
            }
        }
    }
    return out;
}

CMatrix evolve_unitary(const EigenSystem &h, double t) {
    const Eigen::Index n = h.values.size();
    CVector phases(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        phases(k) = std::polar(1.0, -h.values(k) * t);
    }
    return h.vectors * phases.asDiagonal() * h.vectors.adjoint();
}

CMatrix evolve_unitary(const CMatrix &h, double t) { return evolve_unitary(herm_eig(h), t); }

CMatrix anticomm(const CMatrix &a, const CMatrix &b) {
    require_same_dim(a, b);
    return a * b + b * a;
}

CMatrix comm(const CMatrix &a, const CMatrix &b) {
    require_same_dim(a, b);
    return a * b - b * a;
}

Complex trace_product(const CMatrix &a, const CMatrix &b) {
    require_same_dim(a, b);
    Complex s = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            s += a(i, k) * b(k, i);
        }
    }
    return s;
}

double expval(const CMatrix &rho, const CMatrix &a) { return trace_product(rho, a).real(); }

}  // namespace macroreal::numerics
