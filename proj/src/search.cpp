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

#include "macroreal/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "macroreal/correlators.hpp"
#include "macroreal/error.hpp"
#include "macroreal/parallel.hpp"
#include "macroreal/random.hpp"
#include "macroreal/tables.hpp"

namespace macroreal::search {

using conditions::Candidate;

namespace {

std::vector<int> orders_for(std::span<const Family> families) {
    std::set<int> orders;
    for (Family f : families) {
        switch (f) {
            case Family::LG2:
            case Family::TRI_LG2:
            case Family::TRI_LG3: orders.insert({1, 2}); break;
            case Family::HO3: orders.insert({1, 2, 3}); break;
            case Family::HO4: orders.insert({1, 2, 3, 4}); break;
            default: orders.insert(2); break;
        }
    }
    return {orders.begin(), orders.end()};
}

}  // namespace

void ScanSpec::validate() const {
    const int n = static_cast<int>(model.times().size());
    if (free.empty() || free.size() > 2) {
        throw Error(ErrorCode::InvalidSpec, "scan needs one or two free parameters");
    }
    for (const auto &p : free) {
        if (p.time_index < 0 || p.time_index >= n) {
            throw Error(ErrorCode::InvalidSpec, "free time index " + std::to_string(p.time_index + 1) + " outside 1.." +
                                                    std::to_string(n));
        }
        if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || !(p.lo < p.hi)) {
            throw Error(ErrorCode::InvalidSpec, "range of " + p.name() + " must be finite with lo < hi");
        }
        if (p.resolution < 2) {
            throw Error(ErrorCode::InvalidSpec, "resolution of " + p.name() + " must be at least 2");
        }
    }
    if (free.size() == 2 && free[0].time_index == free[1].time_index) {
        throw Error(ErrorCode::InvalidSpec, "both free parameters name the same time");
    }
    if (families.empty()) {
        throw Error(ErrorCode::InvalidSpec, "no families to evaluate");
    }
    if (model.trichotomic()) {
        for (Family f : families) {
            if (f != Family::LG2 && f != Family::LG3 && f != Family::TRI_LG2 && f != Family::TRI_LG3 &&
                f != Family::NFULL && f != Family::PI && f != Family::LG4_cycle && f != Family::LG5_cycle) {
                throw Error(ErrorCode::InvalidSpec, std::string(conditions::to_string(f)) + " needs higher-order correlators");
            }
        }
    } else {
        for (Family f : families) {
            if (f == Family::TRI_LG2 || f == Family::TRI_LG3) {
                throw Error(ErrorCode::InvalidSpec, std::string(conditions::to_string(f)) + " needs a trichotomic observable");
            }
        }
    }
    if (!(epsilon >= 0) || !(refine_tol > 0)) {
        throw Error(ErrorCode::InvalidSpec, "epsilon must be >= 0 and refine_tol > 0");
    }
}

std::vector<int> ScanSpec::orders() const { return orders_for(families); }

std::vector<ConditionReport> evaluate_point(const ScanSpec &spec, std::span<const double> params) {
    std::vector<double> times = spec.model.times();
    for (size_t k = 0; k < spec.free.size(); ++k) times[spec.free[k].time_index] = params[k];
    observables::SpinModel m = spec.model.with_times(std::move(times));
    auto orders = spec.orders();
    MRDataset ds = correlators::dataset_from_model(m, orders);
    std::vector<ConditionReport> reports;
    for (Family f : spec.families) reports.push_back(conditions::evaluate(ds, f, spec.epsilon));
    return reports;
}

Regime classify_point(const ScanSpec &spec, std::span<const double> params) {
    auto reports = evaluate_point(spec, params);
    return conditions::classify_regime(reports, spec.epsilon, spec.roles).regime;
}

bool ScanResult::has_regime(Regime r) const {
    return std::any_of(intervals.begin(), intervals.end(), [&](const auto &i) { return i.regime == r; });
}

std::optional<FamilyWindow> ScanResult::window_containing(Family family, double x, bool satisfied) const {
    for (const auto &w : windows) {
        if (w.family == family && w.satisfied == satisfied && w.lo <= x && x <= w.hi) return w;
    }
    return std::nullopt;
}

namespace {

// Boundary between a (predicate true) and b (predicate false).
template <class Pred>
double bisect(double a, double b, double tol, Pred pred) {
    while (std::abs(b - a) > tol) {
        double mid = 0.5 * (a + b);
        if (pred(mid)) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

template <class Key, class PointPred, class Emit>
void runs(const std::vector<Key> &keys, const FreeParameter &p, double tol, PointPred same_as, Emit emit) {
    const int count = static_cast<int>(keys.size());
    int start = 0;
    double lo = p.lo;
    for (int k = 1; k <= count; ++k) {
        if (k < count && keys[k] == keys[start]) continue;
        double hi = p.hi;
        if (k < count) {
            Key left = keys[k - 1];
            hi = bisect(p.at(k - 1), p.at(k), tol, [&](double x) { return same_as(x, left); });
        }
        emit(keys[start], lo, hi, start, k - 1);
        lo = hi;
        start = k;
    }
}

}  // namespace

ScanResult scan(const ScanSpec &spec) {
    spec.validate();
    ScanResult out;
    out.families = spec.families;
    for (const auto &p : spec.free) out.param_names.push_back(p.name());

    std::vector<std::vector<double>> grid;
    if (spec.free.size() == 1) {
        for (int k = 0; k <= spec.free[0].resolution; ++k) grid.push_back({spec.free[0].at(k)});
    } else {
        for (int a = 0; a <= spec.free[0].resolution; ++a) {
            for (int b = 0; b <= spec.free[1].resolution; ++b) {
                grid.push_back({spec.free[0].at(a), spec.free[1].at(b)});
            }
        }
    }
    out.points.resize(grid.size());
    parallel_for(grid.size(), spec.workers, [&](size_t i) {
        auto reports = evaluate_point(spec, grid[i]);
        ScanPoint &pt = out.points[i];
        pt.params = grid[i];
        for (const auto &r : reports) pt.minima.push_back(r.min_value);
        pt.regime = conditions::classify_regime(reports, spec.epsilon, spec.roles).regime;
    });
    if (spec.free.size() != 1) return out;

    const FreeParameter &p = spec.free[0];
    std::vector<Regime> labels;
    for (const auto &pt : out.points) labels.push_back(pt.regime);
    runs(labels, p, spec.refine_tol,
         [&](double x, Regime r) { return classify_point(spec, std::span<const double>(&x, 1)) == r; },
         [&](Regime r, double lo, double hi, int first, int last) { out.intervals.push_back({r, lo, hi, first, last}); });

    for (size_t fi = 0; fi < spec.families.size(); ++fi) {
        std::vector<bool> sat;
        for (const auto &pt : out.points) sat.push_back(pt.minima[fi] >= -spec.epsilon);
        ScanSpec single = spec;
        single.families = {spec.families[fi]};
        runs(sat, p, spec.refine_tol,
             [&](double x, bool s) {
                 return (evaluate_point(single, std::span<const double>(&x, 1))[0].min_value >= -spec.epsilon) == s;
             },
             [&](bool s, double lo, double hi, int first, int last) {
                 out.windows.push_back({spec.families[fi], s, lo, hi, first, last});
             });
    }
    return out;
}

int times_for(Family target) {
    switch (target) {
        case Family::LG2: return 2;
        case Family::LG3:
        case Family::HO3: return 3;
        case Family::HO4:
        case Family::LG4_cycle: return 4;
        case Family::PI:
        case Family::NFULL:
        case Family::LG5_cycle: return 5;
        default:
            throw Error(ErrorCode::InvalidSpec,
                        std::string(conditions::to_string(target)) + " is not searchable with a dichotomic observable");
    }
}

MRDataset instance_dataset(const SearchInstance &inst, std::span<const int> orders) {
    states::DensityMatrix rho = states::pure_density(inst.psi);
    std::vector<CMatrix> ops;
    for (const auto &a : inst.axes) ops.push_back(observables::dichotomic_single(a).matrix());
    return correlators::dataset_from_operators(rho, ops, orders);
}

namespace {

struct Chain {
    int dim;
    std::uint64_t seed;
    long budget;
};

struct Objective {
    Family target;
    std::vector<Family> reference;
    std::vector<int> orders;
    double epsilon;
    int m;

    // Lower is better; reference violations carry a steep penalty.
    double operator()(const SearchInstance &inst, bool *feasible, double *value) const {
        MRDataset ds = instance_dataset(inst, orders);
        double v = conditions::evaluate(ds, target, epsilon).min_value;
        double penalty = 0;
        for (Family f : reference) {
            double r = conditions::evaluate(ds, f, epsilon).min_value;
            if (r < -epsilon) penalty += -epsilon - r;
        }
        if (feasible) *feasible = penalty == 0;
        if (value) *value = v;
        return v + 10 * penalty;
    }
};

SearchInstance decode(const std::vector<double> &x, int dim, int m) {
    SearchInstance inst;
    inst.dim = dim;
    auto block = [&](int b) {
        CVector v(dim);
        for (int i = 0; i < dim; ++i) v(i) = Complex(x[2 * (b * dim + i)], x[2 * (b * dim + i) + 1]);
        double n = v.norm();
        if (n < 1e-12) {
            v = CVector::Zero(dim);
            v(0) = 1;
            return v;
        }
        return CVector(v / n);
    };
    inst.psi = block(0);
    for (int t = 0; t < m; ++t) inst.axes.push_back(block(t + 1));
    return inst;
}

void normalize_blocks(std::vector<double> &x, int dim) {
    const int per = 2 * dim;
    for (size_t b = 0; b * per < x.size(); ++b) {
        double s = 0;
        for (int i = 0; i < per; ++i) s += x[b * per + i] * x[b * per + i];
        s = std::sqrt(s);
        if (s > 1e-12) {
            for (int i = 0; i < per; ++i) x[b * per + i] /= s;
        }
    }
}

SearchInstance run_chain(const Chain &c, const Objective &obj) {
    rng::Rng rng(c.seed);
    const size_t size = static_cast<size_t>(2 * c.dim * (obj.m + 1));
    auto fresh = [&] {
        std::vector<double> x(size);
        for (double &v : x) v = rng.normal();
        normalize_blocks(x, c.dim);
        return x;
    };
    std::vector<double> x = fresh();
    double f = obj(decode(x, c.dim, obj.m), nullptr, nullptr);
    std::vector<double> best_x = x;
    double best_f = f;
    double sigma = 0.3;
    std::vector<double> y(size);
    for (long e = 1; e < c.budget; ++e) {
        for (size_t i = 0; i < size; ++i) y[i] = x[i] + sigma * rng.normal();
        normalize_blocks(y, c.dim);
        double fy = obj(decode(y, c.dim, obj.m), nullptr, nullptr);
        if (fy <= f) {
            x.swap(y);
            f = fy;
            sigma = std::min(1.0, sigma * 1.5);
            if (f < best_f) {
                best_f = f;
                best_x = x;
            }
        } else {
            sigma *= 0.9;
        }
        if (sigma < 1e-6) {
            x = fresh();
            f = obj(decode(x, c.dim, obj.m), nullptr, nullptr);
            ++e;
            sigma = 0.3;
        }
    }
    SearchInstance inst = decode(best_x, c.dim, obj.m);
    inst.chain_seed = c.seed;
    return inst;
}

}  // namespace

std::vector<SearchInstance> random_search(Family target, std::span<const int> dims, long iterations, std::uint64_t seed,
                                          const SearchOptions &options) {
    if (iterations < 1) {
        throw Error(ErrorCode::InvalidSpec, "iterations must be at least 1");
    }
    if (dims.empty()) {
        throw Error(ErrorCode::InvalidSpec, "no dimensions to search");
    }
    for (int d : dims) {
        if (d < 2 || d > kMaxDim) throw Error(ErrorCode::BadDim, "search dimension " + std::to_string(d));
    }
    const int m = times_for(target);
    std::vector<Family> all = options.reference;
    all.push_back(target);
    Objective obj{target, options.reference, orders_for(all), options.epsilon, m};

    const int chains = std::max(1, options.chains_per_dim);
    const long per_chain = std::max(1L, iterations / static_cast<long>(dims.size() * chains));
    std::vector<Chain> plan;
    for (int d : dims) {
        for (int c = 0; c < chains; ++c) {
            plan.push_back({d, rng::derive_seed(seed, static_cast<std::uint64_t>(d) * 1000003ULL + c), per_chain});
        }
    }
    std::vector<SearchInstance> found(plan.size());
    parallel_for(plan.size(), options.workers, [&](size_t i) {
        SearchInstance inst = run_chain(plan[i], obj);
        // Re-validate from scratch through the conditions module.
        MRDataset ds = instance_dataset(inst, obj.orders);
        inst.target = target;
        inst.reports.push_back(conditions::evaluate(ds, target, options.epsilon));
        inst.value = inst.reports.back().min_value;
        inst.feasible = true;
        for (Family f : options.reference) {
            inst.reports.push_back(conditions::evaluate(ds, f, options.epsilon));
            if (!inst.reports.back().satisfied) inst.feasible = false;
        }
        found[i] = std::move(inst);
    });
    std::stable_sort(found.begin(), found.end(), [](const SearchInstance &a, const SearchInstance &b) {
        if (a.feasible != b.feasible) return a.feasible;
        if (a.value != b.value) return a.value < b.value;
        return a.chain_seed < b.chain_seed;
    });
    if (static_cast<int>(found.size()) > options.top_k) found.resize(std::max(1, options.top_k));
    return found;
}

namespace {

CMatrix random_projector(int dim, int rank, rng::Rng &rng) {
    CMatrix basis(dim, rank);
    for (int r = 0; r < rank; ++r) {
        CVector v = rng::haar_ket(dim, rng);
        for (int k = 0; k < r; ++k) v -= basis.col(k).dot(v) * basis.col(k);
        basis.col(r) = v / v.norm();
    }
    return basis * basis.adjoint();
}

MRDataset random_quantum_dataset(int dim, int m, std::span<const int> orders, std::uint64_t seed, int kind) {
    rng::Rng rng(seed);
    const double two_pi = 2 * std::numbers::pi;
    std::vector<double> times(m);
    for (double &t : times) t = rng.uniform(0, two_pi);
    std::sort(times.begin(), times.end());
    if (kind == 0) {
        // Spin-x dynamics with the case-table observables and pure states.
        CMatrix h = observables::spin_x_hamiltonian(dim);
        CMatrix q;
        std::optional<states::DensityMatrix> rho;
        if (dim <= 4) {
            const int first = dim == 2 ? 1 : dim == 3 ? 3 : 6;
            const int count = dim == 2 ? 2 : dim == 3 ? 3 : 10;
            int c = first + rng.below(count);
            q = observables::case_observable(c).matrix();
            if (dim == 3 && rng.uniform() < 0.5) {
                rho = rng::random_gellmann_state(rng);
            } else {
                rho = states::pure_density(states::pure_state_ket(rng::random_pure_params(first, rng)));
            }
        } else {
            q = observables::dichotomic_single(numerics::basis_ket(dim, rng.below(dim))).matrix();
            rho = states::pure_density(rng::haar_ket(dim, rng));
        }
        observables::SpinModel model(h, observables::dichotomic_explicit(q), *rho, times);
        return correlators::dataset_from_model(model, orders);
    }
    int rank = 1 + rng.below(dim - 1);
    states::DensityMatrix rho = states::pure_density(rng::haar_ket(dim, rng));
    std::vector<CMatrix> ops;
    if (kind == 1) {
        CMatrix h = rng::random_hermitian(dim, rng);
        CMatrix q = numerics::identity(dim) - 2.0 * random_projector(dim, rank, rng);
        numerics::EigenSystem eig = numerics::herm_eig(h);
        for (double t : times) ops.push_back(observables::heisenberg(q, eig, t));
    } else {
        // Independent projectors per time: arbitrary unitary dynamics.
        for (int i = 0; i < m; ++i) ops.push_back(numerics::identity(dim) - 2.0 * random_projector(dim, rank, rng));
    }
    return correlators::dataset_from_operators(rho, ops, orders);
}

}  // namespace

LudersSweep luders_sweep(Family family, int dim, long trials, std::uint64_t seed, int workers) {
    const int m = times_for(family);
    LudersSweep out{family, dim, trials, conditions::luders_bound(family, m), std::numeric_limits<double>::infinity(), 0};
    std::vector<Family> fam{family};
    auto orders = orders_for(fam);
    std::vector<double> minima(static_cast<size_t>(trials));
    parallel_for(minima.size(), workers, [&](size_t i) {
        MRDataset ds = random_quantum_dataset(dim, m, orders, rng::derive_seed(seed, i), static_cast<int>(i % 3));
        minima[i] = conditions::evaluate(ds, family).min_value;
    });
    for (double v : minima) {
        out.min_value = std::min(out.min_value, v);
        if (v < out.bound - conditions::kDefaultEpsilon) ++out.below_bound;
    }
    return out;
}

double alpha_value(AlphaForm form, double theta, double phi) {
    double s = std::sin(theta);
    if (form == AlphaForm::N5) {
        return 0.75 * s * s + 0.5 * std::sin(2 * theta) * std::cos(2 * phi);
    }
    return (2.0 / 3) * s * s + std::sin(2 * theta) * std::cos(2 * phi) / std::sqrt(3.0);
}

AlphaSolution solve_alpha(double target, AlphaForm form) {
    if (!std::isfinite(target)) {
        throw Error(ErrorCode::Unattainable, "target overlap is not finite");
    }
    auto f = [&](double th) { return alpha_value(form, th, 0) - target; };
    // phi = 0: f(0) = -target; walk away from 0 towards the side where the form
    // moves towards the target and bisect on the first sign change.
    if (target == 0) return {0, 0, 0};
    const double dir = target > 0 ? 1 : -1;
    const int steps = 2000;
    const double step = std::numbers::pi / 2 / steps;
    double a = 0, fa = f(0);
    for (int k = 1; k <= steps; ++k) {
        double b = dir * k * step, fb = f(b);
        if ((fa < 0) != (fb < 0)) {
            double lo = a, hi = b;
            for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-16; ++it) {
                double mid = 0.5 * (lo + hi);
                if ((f(mid) < 0) == (fa < 0)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            double th = 0.5 * (lo + hi);
            return {th, 0, alpha_value(form, th, 0)};
        }
        a = b;
        fa = fb;
    }
    // Fallback: coarse 2-D grid, then coordinate refinement.
    double best_th = 0, best_ph = 0, best = std::abs(f(0));
    const int g = 200;
    for (int i = 0; i <= g; ++i) {
        for (int j = 0; j <= g; ++j) {
            double th = std::numbers::pi * i / g, ph = std::numbers::pi * j / g;
            double r = std::abs(alpha_value(form, th, ph) - target);
            if (r < best) {
                best = r;
                best_th = th;
                best_ph = ph;
            }
        }
    }
    double h = std::numbers::pi / g;
    while (h > 1e-14 && best > 1e-12) {
        bool moved = false;
        for (auto [dt, dp] : {std::pair{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}}) {
            double r = std::abs(alpha_value(form, best_th + dt, best_ph + dp) - target);
            if (r < best) {
                best = r;
                best_th += dt;
                best_ph += dp;
                moved = true;
            }
        }
        if (!moved) h *= 0.5;
    }
    if (best > 1e-10) {
        throw Error(ErrorCode::Unattainable, "overlap " + std::to_string(target) + " is outside the attainable range");
    }
    return {best_th, best_ph, alpha_value(form, best_th, best_ph)};
}

}  // namespace macroreal::search
