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

#include "macroreal/observables.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "macroreal/error.hpp"
#include "macroreal/tables.hpp"

namespace macroreal::observables {
namespace {

void require_unit(const CVector &v, const char *what) {
    double n = v.norm();
    if (std::abs(n - 1) > 1e-10) {
        throw Error(ErrorCode::NotNormalized, std::string(what) + " has norm " + std::to_string(n));
    }
}

void require_involution(const CMatrix &m, const char *what) {
    if (!numerics::is_hermitian(m)) {
        throw Error(ErrorCode::NotHermitian, what);
    }
    CMatrix sq = m * m - CMatrix::Identity(m.rows(), m.cols());
    double defect = numerics::max_abs(sq);
    if (defect > numerics::kTol) {
        throw Error(ErrorCode::NotDichotomic, std::string(what) + ": |Q^2 - 1| = " + std::to_string(defect));
    }
}

}  // namespace

DichotomicObservable dichotomic_single(const CVector &a) {
    require_unit(a, "|A>");
    numerics::require_dim(static_cast<int>(a.size()));
    CMatrix m = numerics::identity(static_cast<int>(a.size())) - 2.0 * numerics::outer(a, a);
    return DichotomicObservable(m, Construction::SingleProjector, {a});
}

DichotomicObservable dichotomic_double(const CVector &a, const CVector &b) {
    require_unit(a, "|A>");
    require_unit(b, "|B>");
    if (a.size() != b.size()) {
        throw Error(ErrorCode::DimMismatch, "|A> and |B> differ in dimension");
    }
    double ov = std::abs(a.dot(b));
    if (ov > 1e-10) {
        throw Error(ErrorCode::NotOrthogonal, "|<A|B>| = " + std::to_string(ov));
    }
    CMatrix m = numerics::identity(static_cast<int>(a.size())) - 2.0 * numerics::outer(a, a) - 2.0 * numerics::outer(b, b);
    return DichotomicObservable(m, Construction::TwoProjector, {a, b});
}

DichotomicObservable dichotomic_explicit(const CMatrix &m) {
    numerics::require_dim(static_cast<int>(m.rows()));
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimMismatch, "observable is not square");
    }
    require_involution(m, "explicit observable");
    return DichotomicObservable(m, Construction::Explicit, {});
}

DichotomicObservable case_observable(int case_id) {
    tables::CaseInfo info = tables::case_info(case_id);
    CVector a = numerics::basis_ket(info.dim, info.a);
    if (info.b < 0) {
        return dichotomic_single(a);
    }
    return dichotomic_double(a, numerics::basis_ket(info.dim, info.b));
}

const CMatrix &TrichotomicTriple::get(char var) const {
    switch (var) {
        case 'Q': return q;
        case 'R': return r;
        case 'S': return s;
        default: throw Error(ErrorCode::BadInput, std::string("unknown variable '") + var + "'");
    }
}

TrichotomicTriple make_triple(const CMatrix &q, const CMatrix &r, const CMatrix &s) {
    numerics::require_same_dim(q, r);
    numerics::require_same_dim(q, s);
    require_involution(q, "Q");
    require_involution(r, "R");
    require_involution(s, "S");
    CMatrix sum = q + r + s + CMatrix::Identity(q.rows(), q.cols());
    double defect = numerics::max_abs(sum);
    if (defect > 1e-12) {
        throw Error(ErrorCode::NotDichotomic, "|Q + R + S + 1| = " + std::to_string(defect));
    }
    return {q, r, s};
}

TrichotomicTriple trichotomic_spin1() {
    CMatrix e = tables::eigenbasis(3);
    CVector ep = e.col(0), e0 = e.col(1), em = e.col(2);
    using numerics::outer;
    CMatrix q = -outer(e0, e0) - outer(ep, em) - outer(em, ep);
    CMatrix r = -outer(e0, e0) + outer(ep, em) + outer(em, ep);
    CMatrix s = outer(e0, e0) - outer(ep, ep) - outer(em, em);
    return make_triple(q, r, s);
}

CMatrix spin_x_hamiltonian(int dim) {
    if (dim < 2 || dim > kMaxDim) {
        throw Error(ErrorCode::BadDim, "spin-x generator needs dimension 2.." + std::to_string(kMaxDim));
    }
    const double j = (dim - 1) / 2.0;
    CMatrix h = CMatrix::Zero(dim, dim);
    for (int k = 0; k + 1 < dim; ++k) {
        double m = j - k - 1;  // m of the lower state in the pair
        double elem = 0.5 * std::sqrt(j * (j + 1) - m * (m + 1));
        h(k, k + 1) = elem;
        h(k + 1, k) = elem;
    }
    return h;
}

CMatrix cyclic_hamiltonian_5() {
    constexpr int n = 5;
    const double two_pi = 2 * std::numbers::pi;
    CMatrix h = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        CVector e(n);
        for (int m = 0; m < n; ++m) {
            e(m) = std::polar(1 / std::sqrt(5.0), -two_pi * k * m / n);
        }
        h += (two_pi * k / n) * numerics::outer(e, e);
    }
    return (h + h.adjoint()) * 0.5;
}

CMatrix heisenberg(const CMatrix &obs, const numerics::EigenSystem &h, double t) {
    CMatrix u = numerics::evolve_unitary(h, t);
    numerics::require_same_dim(obs, u);
    return u.adjoint() * obs * u;
}

CMatrix heisenberg(const CMatrix &obs, const CMatrix &h, double t) {
    numerics::require_same_dim(obs, h);
    return heisenberg(obs, numerics::herm_eig(h), t);
}

std::vector<CVector> v_vectors(const CMatrix &h, const CVector &a, std::span<const double> times) {
    require_unit(a, "|A>");
    if (a.size() != h.rows()) {
        throw Error(ErrorCode::DimMismatch, "|A> dimension differs from Hamiltonian");
    }
    numerics::EigenSystem eig = numerics::herm_eig(h);
    CVector proj = eig.vectors.adjoint() * a;
    std::vector<CVector> out;
    out.reserve(times.size());
    for (double t : times) {
        CVector v = CVector::Zero(a.size());
        for (Eigen::Index n = 0; n < eig.values.size(); ++n) {
            v += std::polar(1.0, -eig.values(n) * t) * proj(n) * eig.vectors.col(n);
        }
        out.push_back(v);
    }
    return out;
}

SpinModel::SpinModel(CMatrix hamiltonian, Observable observable, states::DensityMatrix initial, std::vector<double> times)
    : hamiltonian_(std::move(hamiltonian)),
      observable_(std::move(observable)),
      initial_(std::move(initial)),
      times_(std::move(times)) {
    numerics::require_same_dim(hamiltonian_, initial_.matrix());
    int obs_dim = std::visit([](const auto &o) { return o.dim(); }, observable_);
    if (obs_dim != initial_.dim()) {
        throw Error(ErrorCode::DimMismatch, "observable dimension differs from state");
    }
    for (double t : times_) {
        if (!std::isfinite(t)) {
            throw Error(ErrorCode::BadInput, "non-finite measurement time");
        }
    }
    eig_ = numerics::herm_eig(hamiltonian_);
}

SpinModel SpinModel::with_times(std::vector<double> times) const {
    SpinModel copy = *this;
    for (double t : times) {
        if (!std::isfinite(t)) {
            throw Error(ErrorCode::BadInput, "non-finite measurement time");
        }
    }
    copy.times_ = std::move(times);
    return copy;
}

CMatrix SpinModel::operator_at_time(double t, char var) const {
    if (const auto *d = std::get_if<DichotomicObservable>(&observable_)) {
        if (var != 'Q') {
            throw Error(ErrorCode::WrongKind, "dichotomic model has only variable Q");
        }
        return heisenberg(d->matrix(), eig_, t);
    }
    return heisenberg(std::get<TrichotomicTriple>(observable_).get(var), eig_, t);
}

CMatrix SpinModel::operator_at(int index, char var) const {
    if (index < 0 || index >= static_cast<int>(times_.size())) {
        throw Error(ErrorCode::BadInput, "time index " + std::to_string(index) + " out of range");
    }
    return operator_at_time(times_[index], var);
}

}  // namespace macroreal::observables
