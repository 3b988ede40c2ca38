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

#include "macroreal/tables.hpp"

#include <cmath>
#include <string>

#include "macroreal/error.hpp"

namespace macroreal::tables {
namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

Complex phase(double x) { return std::polar(1.0, x); }

void require_table_dim(int dim) {
    if (dim < 2 || dim > 4) {
        throw Error(ErrorCode::BadDim, "no eigenbasis table for dimension " + std::to_string(dim));
    }
}

}  // namespace

CMatrix eigenbasis(int dim) {
    require_table_dim(dim);
    CMatrix e(dim, dim);
    if (dim == 2) {
        e << 1, 1,
             1, -1;
        return e / kSqrt2;
    }
    if (dim == 3) {
        e << 0.5, 1 / kSqrt2, 0.5,
             kSqrt2 / 2, 0, -kSqrt2 / 2,
             0.5, -1 / kSqrt2, 0.5;
        return e;
    }
    e << 1, -kSqrt3, kSqrt3, -1,
         kSqrt3, -1, -1, kSqrt3,
         kSqrt3, 1, -1, -kSqrt3,
         1, kSqrt3, kSqrt3, 1;
    return e / (2 * kSqrt2);
}

RVector eigenvalues(int dim) {
    require_table_dim(dim);
    RVector v(dim);
    if (dim == 2) {
        v << 0.5, -0.5;
    } else if (dim == 3) {
        v << 1, 0, -1;
    } else {
        v << 1.5, 0.5, -0.5, -1.5;
    }
    return v;
}

CaseInfo case_info(int case_id) {
    switch (case_id) {
        case 1: return {2, 0, -1};
        case 2: return {2, 1, -1};
        case 3: return {3, 0, -1};
        case 4: return {3, 1, -1};
        case 5: return {3, 2, -1};
        case 6: return {4, 0, -1};
        case 7: return {4, 1, -1};
        case 8: return {4, 2, -1};
        case 9: return {4, 3, -1};
        case 10: return {4, 0, 1};
        case 11: return {4, 0, 2};
        case 12: return {4, 0, 3};
        case 13: return {4, 1, 2};
        case 14: return {4, 1, 3};
        case 15: return {4, 2, 3};
        default: throw Error(ErrorCode::BadCase, "case " + std::to_string(case_id) + " outside 1..15");
    }
}

int case_dim(int case_id) { return case_info(case_id).dim; }

CVector case_v(int case_id, double t) {
    CaseInfo info = case_info(case_id);
    if (info.b >= 0) {
        throw Error(ErrorCode::BadCase, "case " + std::to_string(case_id) + " has two projectors");
    }
    // Coefficients on the eigenbasis columns.
    CVector c(info.dim);
    switch (case_id) {
        case 1: c << phase(-t / 2), phase(t / 2); c /= kSqrt2; break;
        case 2: c << phase(-t / 2), -phase(t / 2); c /= kSqrt2; break;
        case 3: c << phase(-t), kSqrt2, phase(t); c /= 2; break;
        case 4: c << phase(-t), 0, -phase(t); c /= kSqrt2; break;
        case 5: c << phase(-t), -kSqrt2, phase(t); c /= 2; break;
        case 6:
            c << phase(-1.5 * t), -kSqrt3 * phase(-0.5 * t), kSqrt3 * phase(0.5 * t), -phase(1.5 * t);
            c /= 2 * kSqrt2;
            break;
        case 7:
            c << kSqrt3 * phase(-1.5 * t), -phase(-0.5 * t), -phase(0.5 * t), kSqrt3 * phase(1.5 * t);
            c /= 2 * kSqrt2;
            break;
        case 8:
            c << kSqrt3 * phase(-1.5 * t), phase(-0.5 * t), -phase(0.5 * t), -kSqrt3 * phase(1.5 * t);
            c /= 2 * kSqrt2;
            break;
        default:
            c << phase(-1.5 * t), kSqrt3 * phase(-0.5 * t), kSqrt3 * phase(0.5 * t), phase(1.5 * t);
            c /= 2 * kSqrt2;
            break;
    }
    return eigenbasis(info.dim) * c;
}

double case_overlap(int case_id, double dt) {
    switch (case_id) {
        case 1:
        case 2: return std::cos(dt / 2);
        case 3:
        case 5: return 0.5 * (1 + std::cos(dt));
        case 4: return std::cos(dt);
        case 6:
        case 9: return 0.25 * std::cos(1.5 * dt) + 0.75 * std::cos(0.5 * dt);
        case 7:
        case 8: return 0.75 * std::cos(1.5 * dt) + 0.25 * std::cos(0.5 * dt);
        default:
            throw Error(ErrorCode::BadCase, "no single-projector overlap for case " + std::to_string(case_id));
    }
}

Complex mixed_overlap(int n, int m, double dt) {
    const Complex i(0, 1);
    const double s1 = std::sin(0.5 * dt), s3 = std::sin(1.5 * dt);
    if ((n == 6 && m == 8) || (n == 7 && m == 9)) {
        return kSqrt3 / 4 * (std::cos(1.5 * dt) - std::cos(0.5 * dt));
    }
    if ((n == 6 && m == 7) || (n == 8 && m == 9)) {
        return -i * kSqrt3 / 4.0 * (s1 + s3);
    }
    if (n == 6 && m == 9) {
        return i / 4.0 * (3 * s1 - s3);
    }
    if (n == 7 && m == 8) {
        return i / 4.0 * (s1 - 3 * s3);
    }
    throw Error(ErrorCode::BadCase, "no mixed overlap for cases " + std::to_string(n) + "/" + std::to_string(m));
}

}  // namespace macroreal::tables
