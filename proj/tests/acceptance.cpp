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

// Acceptance run: one PASS/FAIL line per criterion with measured values.
// Usage: acceptance [--expect-fail N]...  Expected failures are still
// printed as FAIL but do not change the exit status.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "macroreal/conditions.hpp"
#include "macroreal/constructions.hpp"
#include "macroreal/correlators.hpp"
#include "macroreal/search.hpp"
#include "macroreal/shots.hpp"
#include "test_util.hpp"

using namespace macroreal;
using conditions::Family;
using conditions::Regime;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1e-9;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string &what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char *f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

bool all_pairs(const MRDataset &ds, double target, double tol) {
    for (int i = 0; i < ds.n(); ++i) {
        for (int j = i + 1; j < ds.n(); ++j) {
            if (std::abs(ds.c2(i, j) - target) > tol) return false;
        }
    }
    return true;
}

double lg2_pair(const MRDataset &ds, int i, int j) {
    double best = INFINITY;
    for (int si : {1, -1}) {
        for (int sj : {1, -1}) best = std::min(best, 1 + si * ds.avg(i) + sj * ds.avg(j) + si * sj * ds.c2(i, j));
    }
    return best;
}

double lg3_triple(const MRDataset &ds, int i, int j, int k) {
    double best = INFINITY;
    for (int sj : {1, -1}) {
        for (int sk : {1, -1}) best = std::min(best, 1 + sj * ds.c2(i, j) + sj * sk * ds.c2(j, k) + sk * ds.c2(i, k));
    }
    return best;
}

Outcome criterion1() {
    Outcome o;
    auto c = constructions::construct_n5();
    const auto &ds = c.dataset;
    double pi = conditions::pentagon_min(ds).min_value;
    o.require(std::abs(pi + 0.5) <= kEps, "PI " + fmt("%.12f", pi));
    o.require(all_pairs(ds, -0.25, kEps), "C_ij != -1/4");
    for (int i = 0; i < 5; ++i) o.require(std::abs(ds.avg(i)) <= kEps, "<Q" + std::to_string(i + 1) + "> != 0");
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            o.require(std::abs(lg2_pair(ds, i, j) - 0.75) <= kEps, "LG2 pair min != 3/4");
            for (int k = j + 1; k < 5; ++k) o.require(std::abs(lg3_triple(ds, i, j, k) - 0.25) <= kEps, "LG3 min != 1/4");
        }
    }
    auto md = correlators::dataset_from_model(*c.model, std::vector<int>{1, 2});
    double worst = 0;
    for (const auto &[k, v] : ds.entries()) worst = std::max(worst, std::abs(md.value(k) - v));
    o.require(worst <= kEps, "Hamiltonian dataset differs by " + fmt("%.3g", worst));
    o.note("PI " + fmt("%+.12f", pi) + ", LG3 " + fmt("%.12f", conditions::lg3_min(ds).min_value) + ", LG2 " +
           fmt("%.12f", conditions::lg2_min(ds).min_value) + ", model diff " + fmt("%.1e", worst));
    return o;
}

Outcome criterion2() {
    Outcome o;
    auto c = constructions::construct_n4(1.0 / 6);
    const auto &ds = c.dataset;
    o.require(all_pairs(ds, -0.25, kEps), "C_ij != -1/4");
    double pi = conditions::pentagon_min(ds).min_value;
    o.require(std::abs(pi + 0.5) <= kEps, "PI " + fmt("%.12f", pi));
    double boundary = 0, others = INFINITY;
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            double v = lg2_pair(ds, i, j);
            if (i == 0) {
                boundary = std::max(boundary, std::abs(v));
            } else {
                others = std::min(others, v);
            }
            for (int k = j + 1; k < 5; ++k) others = std::min(others, lg3_triple(ds, i, j, k));
        }
    }
    o.require(boundary <= kEps, "LG2 with <Q1> off boundary by " + fmt("%.3g", boundary));
    o.require(others > 0, "other LG2/LG3 minimum " + fmt("%.6f", others));
    o.note("PI " + fmt("%+.12f", pi) + ", |LG2 with Q1| <= " + fmt("%.1e", boundary) + ", other minima >= " +
           fmt("%.6f", others));
    return o;
}

Outcome criterion3() {
    Outcome o;
    auto spec = presets::figure("2a", 1000);
    auto reports = search::evaluate_point(spec, std::vector<double>{3 * kPi / 2});
    double ho3 = NAN, lg2 = NAN, lg3 = NAN;
    for (const auto &r : reports) {
        if (r.family == Family::HO3) ho3 = r.min_value;
        if (r.family == Family::LG2) lg2 = r.min_value;
        if (r.family == Family::LG3) lg3 = r.min_value;
    }
    o.require(std::abs(ho3 + 1 / std::sqrt(2.0)) <= kEps, "HO3 " + fmt("%.12f", ho3));
    o.require(lg2 >= -kEps && lg3 >= -kEps, "LG2/LG3 violated at 3pi/2");
    auto t0 = std::chrono::steady_clock::now();
    auto result = search::scan(spec);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto w = result.window_containing(Family::LG2, 3 * kPi / 2);
    double lo = 2 * kPi - 2 * std::atan(std::sqrt(2.0));
    double hi = 2 * kPi - 2 * std::atan(1 / std::sqrt(2.0));
    o.require(w.has_value(), "no LG2 window around 3pi/2");
    if (w) {
        o.require(std::abs(w->lo - lo) <= 1e-6 && std::abs(w->hi - hi) <= 1e-6,
                  "window [" + fmt("%.9f", w->lo) + ", " + fmt("%.9f", w->hi) + "]");
        o.note("window [" + fmt("%.9f", w->lo) + ", " + fmt("%.9f", w->hi) + "] vs [" + fmt("%.9f", lo) + ", " +
               fmt("%.9f", hi) + "]");
    }
    o.require(secs < 5, "1001-point scan took " + fmt("%.2f", secs) + " s");
    o.note("HO3(3pi/2) " + fmt("%+.12f", ho3) + ", scan " + fmt("%.3f", secs) + " s");
    return o;
}

Outcome regime_window(std::initializer_list<const char *> ids) {
    Outcome o;
    for (const char *id : ids) {
        auto result = search::scan(presets::figure(id, 1000));
        std::string where;
        for (const auto &iv : result.intervals) {
            if (iv.regime == Regime::StdSatExtViol && where.empty()) {
                where = "[" + fmt("%.6f", iv.lo) + ", " + fmt("%.6f", iv.hi) + "]";
            }
        }
        o.require(!where.empty(), std::string("fig ") + id + ": no window");
        if (!where.empty()) o.note(std::string("fig ") + id + " window " + where);
    }
    return o;
}

Outcome criterion7() {
    Outcome o;
    const std::vector<int> dims{2, 3, 4, 5};
    const long trials = 10000;
    for (Family f : {Family::LG2, Family::LG3, Family::PI, Family::HO3, Family::HO4}) {
        const double bound = conditions::luders_bound(f, search::times_for(f));
        double lowest = INFINITY;
        long below = 0;
        std::string worst_dims;
        for (size_t k = 0; k < dims.size(); ++k) {
            auto s = search::luders_sweep(f, dims[k], trials, rng::derive_seed(2026, k));
            lowest = std::min(lowest, s.min_value);
            below += s.below_bound;
            if (s.below_bound) worst_dims += " d" + std::to_string(dims[k]) + ":" + fmt("%.4f", s.min_value);
        }
        // PI needs five levels to reach its bound; search there.
        std::vector<int> sdims = f == Family::PI ? std::vector<int>{5} : std::vector<int>{2};
        auto best = search::random_search(f, sdims, 100000, 7);
        double found = best.empty() ? INFINITY : best.front().value;
        std::string name(conditions::to_string(f));
        if (below > 0) {
            o.require(false, name + " below " + fmt("%g", bound) + " in " + std::to_string(below) + " instances (" +
                                 worst_dims.substr(1) + ")");
        }
        o.require(found <= bound + 0.05, name + " search reached only " + fmt("%.4f", found));
        o.note(name + " sweep min " + fmt("%.4f", lowest) + ", search " + fmt("%.4f", found));
    }
    return o;
}

Outcome criterion8() {
    Outcome o;
    rng::Rng rng(8);
    double worst = 0;
    for (int dim = 2; dim <= 5; ++dim) {
        for (int trial = 0; trial < 200; ++trial) {
            auto rho = testing::random_state(dim, rng);
            std::vector<CMatrix> ops;
            for (int k = 0; k < 4; ++k) ops.push_back(testing::random_dichotomic(dim, rng));
            for (int order = 1; order <= 4; ++order) {
                auto sub = std::span<const CMatrix>(ops).first(order);
                worst = std::max(worst,
                                 std::abs(correlators::nested(rho, sub) - correlators::sequential_correlator(rho, sub)));
            }
        }
    }
    o.require(worst <= 1e-10, "max difference " + fmt("%.3g", worst));
    o.note("max |anticommutator - sequential| " + fmt("%.2e", worst));
    return o;
}

Outcome criterion9() {
    Outcome o;
    rng::Rng rng(9);
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        auto rho = testing::random_state(2, rng);
        CMatrix q[4];
        for (auto &x : q) x = testing::random_dichotomic(2, rng);
        worst = std::max(worst, std::abs(correlators::corr3(rho, q[0], q[1], q[2]) -
                                         correlators::corr1(rho, q[0]) * correlators::corr2(rho, q[1], q[2])));
        worst = std::max(worst, std::abs(correlators::corr4(rho, q[0], q[1], q[2], q[3]) -
                                         correlators::corr2(rho, q[0], q[1]) * correlators::corr2(rho, q[2], q[3])));
    }
    double counter = 0;
    for (int trial = 0; trial < 100 && counter <= 0.01; ++trial) {
        auto rho = testing::random_state(3, rng);
        CMatrix q[3];
        for (auto &x : q) x = testing::random_dichotomic(3, rng);
        counter = std::max(counter, std::abs(correlators::corr3(rho, q[0], q[1], q[2]) -
                                             correlators::corr1(rho, q[0]) * correlators::corr2(rho, q[1], q[2])));
    }
    o.require(worst <= 1e-10, "spin-1/2 discrepancy " + fmt("%.3g", worst));
    o.require(counter > 0.01, "no spin-1 counterexample");
    o.note("spin-1/2 max discrepancy " + fmt("%.2e", worst) + ", spin-1 counterexample " + fmt("%.4f", counter));
    return o;
}

Outcome criterion10() {
    Outcome o;
    rng::Rng rng(10);
    // Datasets satisfying every third-order condition are exactly the moment
    // vectors of probability distributions over three signs.
    int checked = 0, broken = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<double> p(8);
        double total = 0;
        for (double &x : p) {
            x = (trial % 3 == 0 && rng.uniform() < 0.5) ? 0 : -std::log(1 - rng.uniform());
            total += x;
        }
        if (total == 0) p[0] = total = 1;
        MRDataset ds(3);
        for (unsigned mask = 1; mask < 8; ++mask) {
            std::vector<int> t;
            for (int i = 0; i < 3; ++i) {
                if (mask >> i & 1) t.push_back(i);
            }
            double m = 0;
            for (unsigned s = 0; s < 8; ++s) {
                int prod = 1;
                for (int i : t) prod *= (s >> i & 1) ? -1 : 1;
                m += prod * p[s] / total;
            }
            ds.set(EntryKey(t), m);
        }
        if (!conditions::higher_order_min(ds, 3).satisfied) continue;
        ++checked;
        if (!conditions::lg2_min(ds).satisfied || !conditions::lg3_min(ds).satisfied) ++broken;
    }
    o.require(checked == 10000, "only " + std::to_string(checked) + " datasets satisfied HO3");
    o.require(broken == 0, std::to_string(broken) + " datasets broke LG2/LG3");

    double worst = 0;
    int example_ok = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::Vector3d v = Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal()).normalized();
        Eigen::Vector3d c1 = Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal()).normalized();
        auto dot = [](const Eigen::Vector3d &c) {
            return CMatrix(c(0) * states::pauli::x() + c(1) * states::pauli::y() + c(2) * states::pauli::z());
        };
        auto rho = states::bloch_state({{v(0), v(1), v(2)}});
        std::vector<CMatrix> ops{dot(c1), dot(-c1), dot(-v)};
        auto ds = correlators::dataset_from_operators(rho, ops, std::vector<int>{1, 2, 3});
        double bracket = conditions::evaluate_assignment(ds, Family::HO3, {{0, 1, 2}, {1, 1, 1}, {}});
        double cv = c1.dot(v);
        worst = std::max(worst, std::abs(bracket - (-1 + cv * cv)));
        if (conditions::lg2_min(ds).satisfied && conditions::lg3_min(ds).satisfied && bracket < 0) ++example_ok;
    }
    o.require(worst <= 1e-10, "bracket differs from -1 + (c1.v)^2 by " + fmt("%.3g", worst));
    o.require(example_ok == 100, "example regime held in " + std::to_string(example_ok) + "/100 draws");
    o.note(std::to_string(checked) + " classical datasets, 0 LG2/LG3 failures; spin-1/2 example bracket error " +
           fmt("%.1e", worst));
    return o;
}

Outcome criterion11() {
    Outcome o;
    auto c = constructions::construct_n5();
    auto exact = c.dataset;
    const int reps = 100;
    int good = 0;
    double worst_z = 0;
    for (int rep = 0; rep < reps; ++rep) {
        auto plan = shots::default_plan(*c.model, std::vector<int>{1, 2}, 1000000, rng::derive_seed(11, rep));
        auto est = shots::estimate_dataset(plan);
        bool all = true;
        for (const auto &[k, e] : est.estimates) {
            double z = std::abs(e.value - exact.value(k)) / e.std_error;
            worst_z = std::max(worst_z, z);
            if (z > 5) all = false;
        }
        if (all) ++good;
    }
    o.require(good >= 99, std::to_string(good) + "/100 repetitions fully within 5 sigma");
    o.note(std::to_string(good) + "/" + std::to_string(reps) + " repetitions with every entry within 5 sigma, worst " +
           fmt("%.2f", worst_z) + " sigma");
    return o;
}

struct Criterion {
    int id;
    const char *name;
    double time_limit;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char **argv) {
    std::set<int> expected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
            expected.insert(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--expect-fail N]...\n", argv[0]);
            return 2;
        }
    }

    const std::vector<Criterion> criteria{
        {1, "five-level construction", 1, criterion1},
        {2, "four-level construction", 1, criterion2},
        {3, "spin-1/2 third-order window", 5, criterion3},
        {4, "fourth-order windows (2b, 2c)", 60, [] { return regime_window({"2b", "2c"}); }},
        {5, "pentagon window, spin-3/2", 60, [] { return regime_window({"3"}); }},
        {6, "trichotomic LG3 window, spin-1", 60, [] { return regime_window({"4"}); }},
        {7, "Lueders bounds", 60, criterion7},
        {8, "anticommutator vs sequential oracle", 30, criterion8},
        {9, "spin-1/2 factorization", 60, criterion9},
        {10, "implication property", 60, criterion10},
        {11, "shot simulator coverage", 120, criterion11},
    };

    int unexpected = 0;
    for (const auto &c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o = c.run();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.time_limit) o.require(false, "took " + fmt("%.1f", secs) + " s, limit " + fmt("%.0f", c.time_limit) + " s");
        const bool known = expected.count(c.id) > 0;
        std::printf("criterion %2d %-36s %s  (%.2f s)  %s%s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs,
                    o.detail.c_str(), !o.pass && known ? "  [expected]" : "");
        std::fflush(stdout);
        if (!o.pass && !known) ++unexpected;
        if (o.pass && known) std::printf("criterion %2d passed but was listed as expected to fail\n", c.id);
    }
    return unexpected ? 1 : 0;
}
