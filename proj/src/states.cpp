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

#include "macroreal/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "macroreal/error.hpp"
#include "macroreal/tables.hpp"

namespace macroreal::states {

namespace pauli {
CMatrix x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
CMatrix y() {
    CMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}
CMatrix z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
}  // namespace pauli

DensityMatrix DensityMatrix::with_provenance(Provenance p) const {
    DensityMatrix copy = *this;
    copy.provenance_ = std::move(p);
    return copy;
}

double DensityMatrix::purity() const { return numerics::trace_product(matrix_, matrix_).real(); }

DensityMatrix validate_density(const CMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimMismatch, "density matrix is not square");
    }
    numerics::require_dim(static_cast<int>(m.rows()));
    std::ostringstream problems;
    bool first = true;
    ErrorCode code = ErrorCode::InvalidState;
    auto note = [&](ErrorCode c, const std::string &what) {
        if (first) {
            code = c;
        } else {
            problems << "; ";
        }
        first = false;
        problems << to_string(c) << " (" << what << ")";
    };

    double herm = numerics::hermiticity_defect(m);
    if (herm > tol) {
        note(ErrorCode::NotHermitian, "defect " + std::to_string(herm));
    }
    Complex tr = m.trace();
    double tr_err = std::abs(tr - 1.0);
    if (tr_err > tol) {
        std::ostringstream s;
        s << "trace " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag() << "i";
        note(ErrorCode::TraceNotOne, s.str());
    }
    CMatrix sym = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
    double lowest = solver.eigenvalues()(0);
    if (lowest < -tol) {
        note(ErrorCode::NotPSD, "lowest eigenvalue " + std::to_string(lowest));
    }
    if (!first) {
        throw Error(code, problems.str());
    }
    return DensityMatrix(m);
}

double wrap_angle(double x) {
    constexpr double two_pi = 2 * std::numbers::pi;
    double w = std::fmod(x, two_pi);
    if (w < 0) {
        w += two_pi;
    }
    return w;
}

DensityMatrix bloch_state(const BlochVector &b) {
    const auto &v = b.v;
    double norm2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    if (norm2 > 1 + 1e-12) {
        throw Error(ErrorCode::InvalidBloch, "|v|^2 = " + std::to_string(norm2));
    }
    CMatrix m = (numerics::identity(2) + v[0] * pauli::x() + v[1] * pauli::y() + v[2] * pauli::z()) * 0.5;
    return validate_density(m).with_provenance({"bloch", 0, {v[0], v[1], v[2]}});
}

CMatrix gellmann_matrix(const GellMannVector &g) {
    const auto &a = g.a;
    const double s3 = std::sqrt(3.0);
    const Complex i(0, 1);
    CMatrix m(3, 3);
    m(0, 0) = 1.0 / 3 + a[2] + a[7] / s3;
    m(0, 1) = a[0] - i * a[1];
    m(0, 2) = a[3] - i * a[4];
    m(1, 0) = a[0] + i * a[1];
    m(1, 1) = 1.0 / 3 - a[2] + a[7] / s3;
    m(1, 2) = a[5] - i * a[6];
    m(2, 0) = a[3] + i * a[4];
    m(2, 1) = a[5] + i * a[6];
    m(2, 2) = 1.0 / 3 - 2 * a[7] / s3;
    return m;
}

DensityMatrix gellmann_state(const GellMannVector &g) {
    double norm2 = 0;
    for (double x : g.a) {
        norm2 += x * x;
    }
    if (norm2 > 1.0 / 3 + 1e-12) {
        throw Error(ErrorCode::InvalidState, "a.a = " + std::to_string(norm2) + " exceeds 1/3");
    }
    CMatrix m = gellmann_matrix(g);
    double det = m.determinant().real();
    if (det < -1e-10) {
        throw Error(ErrorCode::InvalidState, "det(rho) = " + std::to_string(det));
    }
    try {
        return validate_density(m).with_provenance({"gellmann", 0, std::vector<double>(g.a.begin(), g.a.end())});
    } catch (const Error &e) {
        throw Error(ErrorCode::InvalidState, e.what());
    }
}

CVector pure_state(const PureStateParams &p, int dim) {
    int expected = tables::case_dim(p.case_id);
    if (expected != dim) {
        throw Error(ErrorCode::BadCase, "case " + std::to_string(p.case_id) + " is " + std::to_string(expected) +
                                            "-dimensional, not " + std::to_string(dim));
    }
    const double th = wrap_angle(p.theta), al = wrap_angle(p.alpha), be = wrap_angle(p.beta);
    // Amplitudes <psi|E_n>; the returned coefficients are their conjugates.
    CVector bra(dim);
    if (dim == 2) {
        bra << std::cos(th), std::polar(std::sin(th), p.phi[0]);
    } else if (dim == 3) {
        bra << std::cos(th), std::polar(std::sin(th) * std::cos(al), p.phi[0]),
            std::polar(std::sin(th) * std::sin(al), p.phi[1]);
    } else {
        bra << std::cos(th), std::polar(std::sin(th) * std::cos(al), p.phi[0]),
            std::polar(std::sin(th) * std::sin(al) * std::cos(be), p.phi[1]),
            std::polar(std::sin(th) * std::sin(al) * std::sin(be), p.phi[2]);
    }
    return bra.conjugate();
}

CVector pure_state_ket(const PureStateParams &p) {
    int dim = tables::case_dim(p.case_id);
    return tables::eigenbasis(dim) * pure_state(p, dim);
}

DensityMatrix pure_density(const CVector &ket) {
    double n = ket.norm();
    if (std::abs(n - 1) > 1e-10) {
        throw Error(ErrorCode::NotNormalized, "ket norm " + std::to_string(n));
    }
    return validate_density(numerics::outer(ket, ket)).with_provenance({"ket", 0, {}});
}

}  // namespace macroreal::states
