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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "macroreal/conditions.hpp"
#include "macroreal/constructions.hpp"
#include "macroreal/correlators.hpp"
#include "macroreal/error.hpp"
#include "macroreal/io.hpp"
#include "macroreal/parallel.hpp"
#include "macroreal/search.hpp"
#include "macroreal/shots.hpp"

using namespace macroreal;
using io::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitInvariant = 3;

struct Outputs {
    fs::path dir;
    std::vector<std::string> names;

    void write(const std::string &name, std::string_view text) {
        io::write_text_file(dir / name, text);
        names.push_back(name);
    }
    void write_json(const std::string &name, const json &j) { write(name, j.dump(2) + "\n"); }
};

std::string dump(const json &j) { return j.dump(2) + "\n"; }

bool use_csv(const json &config) { return config.value("format", std::string("csv")) == "csv"; }

json reports_json(const MRDataset &ds, double eps) {
    json out = json::array();
    std::vector<conditions::ConditionReport> reports;
    for (auto f : conditions::applicable_families(ds)) {
        reports.push_back(conditions::evaluate(ds, f, eps));
        out.push_back(io::to_json(reports.back()));
    }
    return out;
}

json audit_json(const MRDataset &ds, double eps) {
    std::vector<conditions::ConditionReport> reports;
    json rs = json::array();
    for (auto f : conditions::applicable_families(ds)) {
        reports.push_back(conditions::evaluate(ds, f, eps));
        rs.push_back(io::to_json(reports.back()));
    }
    auto label = conditions::classify_regime(reports, eps);
    return {{"n", ds.n()}, {"kind", std::string(to_string(ds.kind()))}, {"reports", rs}, {"regime", io::to_json(label)}};
}

json scan_summary(const search::ScanResult &r) {
    json j = io::to_json(r);
    j.erase("points");
    return j;
}

// Each command reads only its resolved config so that replay can rerun it.

void run_reproduce(const json &config, Outputs &out) {
    const std::string id = config.at("figure");
    auto spec = presets::figure(id, config.at("grid").get<int>());
    spec.epsilon = config.at("epsilon");
    spec.workers = resolve_workers(config.value("workers", 0));
    auto result = search::scan(spec);
    const bool csv = use_csv(config);
    out.write("fig" + id + (csv ? ".csv" : ".json"), csv ? io::scan_to_csv(result, id) : dump(io::to_json(result)));
    json regimes = scan_summary(result);
    regimes["preset"] = id;
    regimes["description"] = presets::figure_description(id);
    regimes["target_regime"] = std::string(to_string(conditions::Regime::StdSatExtViol));
    regimes["found"] = result.has_regime(conditions::Regime::StdSatExtViol);
    out.write_json("fig" + id + "_regimes.json", regimes);
    std::printf("figure %s: %zu points, target regime %s\n", id.c_str(), result.points.size(),
                regimes["found"].get<bool>() ? "found" : "not found");
}

void run_construct(const json &config, Outputs &out) {
    const int n = config.at("n");
    const double eps = config.at("epsilon");
    if (n != 4 && n != 5) throw Error(ErrorCode::BadInput, "construct supports n = 4 or 5");
    auto c = n == 5 ? constructions::construct_n5() : constructions::construct_n4();
    auto vec = [](const CVector &v) {
        std::vector<double> re(v.size()), im(v.size());
        for (int k = 0; k < v.size(); ++k) {
            re[k] = v(k).real();
            im[k] = v(k).imag();
        }
        return json{{"re", re}, {"im", im}};
    };
    json vs = json::array();
    for (const auto &v : c.v) vs.push_back(vec(v));
    json j{{"levels", c.levels},
           {"alpha", c.alpha},
           {"angles", {{"theta", c.angles.theta}, {"phi", c.angles.phi}, {"achieved", c.angles.achieved}}},
           {"psi", vec(c.psi)},
           {"v", vs},
           {"dataset", io::to_json(c.dataset)},
           {"audit", audit_json(c.dataset, eps)}};
    if (c.model) {
        std::vector<int> orders{1, 2};
        auto md = correlators::dataset_from_model(*c.model, orders);
        j["model"] = io::to_json(*c.model);
        j["model_dataset"] = io::to_json(md);
        j["model_audit"] = audit_json(md, eps);
    }
    const std::string stem = "construct_n" + std::to_string(n);
    out.write_json(stem + ".json", j);
    out.write(stem + (use_csv(config) ? "_dataset.csv" : "_dataset.json"),
              use_csv(config) ? io::dataset_to_csv(c.dataset) : dump(io::to_json(c.dataset)));
    for (const auto &r : j["audit"]["reports"]) {
        std::printf("%-10s min %+.12f\n", r["family"].get<std::string>().c_str(), r["min"].get<double>());
    }
}

void run_scan(const json &config, Outputs &out) {
    auto spec = io::scan_spec_from_json(config.at("spec"));
    if (config.contains("epsilon")) spec.epsilon = config.at("epsilon");
    spec.workers = resolve_workers(config.value("workers", 0));
    auto result = search::scan(spec);
    const bool csv = use_csv(config);
    out.write(csv ? "scan.csv" : "scan.json", csv ? io::scan_to_csv(result, spec.preset) : dump(io::to_json(result)));
    out.write_json("scan_regimes.json", scan_summary(result));
    for (const auto &iv : result.intervals) {
        std::printf("%-17s [%.9f, %.9f]\n", std::string(to_string(iv.regime)).c_str(), iv.lo, iv.hi);
    }
}

void run_luders(const json &config, Outputs &out) {
    auto family = conditions::parse_family(config.at("family").get<std::string>());
    std::vector<int> dims = config.at("dims");
    const long trials = config.at("trials");
    const long iterations = config.at("search_iterations");
    const std::uint64_t seed = config.at("seed");
    const int workers = resolve_workers(config.value("workers", 0));
    const double bound = conditions::luders_bound(family, search::times_for(family));
    json sweeps = json::array();
    double lowest = INFINITY;
    long below = 0;
    for (size_t k = 0; k < dims.size(); ++k) {
        auto s = search::luders_sweep(family, dims[k], trials, rng::derive_seed(seed, k), workers);
        sweeps.push_back(io::to_json(s));
        lowest = std::min(lowest, s.min_value);
        below += s.below_bound;
    }
    json best = nullptr;
    if (iterations > 0) {
        search::SearchOptions opt;
        opt.workers = workers;
        opt.top_k = config.value("top_k", 5);
        auto found = search::random_search(family, dims, iterations, rng::derive_seed(seed, dims.size()), opt);
        if (!found.empty()) {
            best = io::to_json(found.front());
            lowest = std::min(lowest, found.front().value);
            if (found.front().value < bound - conditions::kDefaultEpsilon) ++below;
        }
    }
    json j{{"family", std::string(conditions::to_string(family))},
           {"bound", bound},
           {"sweeps", sweeps},
           {"search_best", best},
           {"max_violation", lowest},
           {"below_bound", below},
           {"attained", lowest <= bound + 0.05}};
    out.write_json("luders.json", j);
    std::printf("%s: bound %.6f, most negative %.9f, instances below bound %ld\n",
                std::string(conditions::to_string(family)).c_str(), bound, lowest, below);
}

void run_shots(const json &config, Outputs &out) {
    auto plan = io::plan_from_json(config.at("plan"));
    if (config.contains("seed")) plan.seed = config.at("seed");
    if (config.contains("shots")) plan.shots = config.at("shots");
    plan.validate();
    plan.workers = resolve_workers(config.value("workers", 0));
    const double eps = config.at("epsilon");
    const double z = config.at("significance");
    auto est = shots::estimate_dataset(plan);
    const bool csv = use_csv(config);
    out.write(csv ? "estimates.csv" : "estimates.json", csv ? io::dataset_to_csv(est) : dump(io::to_json(est)));
    json reports = json::array();
    for (auto f : conditions::applicable_families(est.values)) {
        auto r = shots::evaluate_with_errors(est, f, eps, z);
        reports.push_back(io::to_json(r));
        std::printf("%-10s min %+.6f +- %.6f  %s%s\n", std::string(conditions::to_string(f)).c_str(), r.report.min_value,
                    r.std_error, std::string(shots::to_string(r.verdict)).c_str(),
                    r.near_degenerate ? " (near-degenerate argmin)" : "");
    }
    out.write_json("shots_reports.json", json{{"plan", io::to_json(plan)}, {"reports", reports}});
}

void run_audit(const json &config, Outputs *out) {
    auto ds = io::dataset_from_text(config.at("dataset_text").get<std::string>());
    ds.validate();
    json j = audit_json(ds, config.at("epsilon"));
    if (out) {
        out->write_json("audit.json", j);
    } else {
        std::cout << dump(j);
    }
    if (out) std::printf("regime %s\n", j["regime"]["regime"].get<std::string>().c_str());
}

void run(const std::string &command, const json &config, Outputs &out) {
    if (command == "reproduce") return run_reproduce(config, out);
    if (command == "construct") return run_construct(config, out);
    if (command == "scan") return run_scan(config, out);
    if (command == "luders") return run_luders(config, out);
    if (command == "shots") return run_shots(config, out);
    if (command == "audit") return run_audit(config, &out);
    throw Error(ErrorCode::BadInput, "manifest names unknown command '" + command + "'");
}

void finish(const std::string &command, json config, std::uint64_t seed, Outputs &out) {
    config.erase("workers");
    io::RunManifest m{command, config, seed, std::string(io::version()), out.names};
    io::write_text_file(out.dir / "manifest.json", dump(m.to_json()));
}

int replay(const fs::path &manifest_path, const fs::path &out_dir) {
    auto m = io::RunManifest::from_json(io::read_json_file(manifest_path));
    Outputs out{out_dir, {}};
    run(m.command, m.config, out);
    int mismatches = 0;
    for (const auto &name : m.outputs) {
        fs::path original = manifest_path.parent_path() / name;
        bool same = fs::exists(original) && io::read_text_file(original) == io::read_text_file(out_dir / name);
        std::printf("%-28s %s\n", name.c_str(), same ? "identical" : "DIFFERS");
        if (!same) ++mismatches;
    }
    return mismatches ? kExitInvariant : 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Macrorealism condition toolkit: exact datasets, scans, bounds and shot simulation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(io::version()));

    std::string out_dir = "out";
    std::string format = "csv";
    int workers = 0;
    double epsilon = conditions::kDefaultEpsilon;
    auto common = [&](CLI::App *sub) {
        sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
        sub->add_option("--workers", workers, "Worker threads (default: MACROREAL_WORKERS or 1)");
        sub->add_option("--epsilon", epsilon, "Tolerance for calling a condition violated")->capture_default_str();
    };
    auto formatted = [&](CLI::App *sub) {
        sub->add_option("--format", format, "Tabular output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    };

    std::string figure;
    int grid = 1000;
    auto *reproduce = app.add_subcommand("reproduce", "Scan one of the figure parameter sets");
    reproduce->add_option("figure", figure, "Figure id")->required()->check(CLI::IsMember(presets::figure_ids()));
    reproduce->add_option("--grid", grid, "Grid steps along the free time")->capture_default_str()->check(CLI::Range(2, 10000000));
    common(reproduce);
    formatted(reproduce);

    int levels = 5;
    auto *construct = app.add_subcommand("construct", "Analytic equal-correlator constructions");
    construct->add_option("n", levels, "Number of times (4 or 5)")->required()->check(CLI::IsMember({4, 5}));
    common(construct);
    formatted(construct);

    std::string spec_file;
    auto *scan = app.add_subcommand("scan", "Scan a model described by a JSON spec");
    scan->add_option("spec", spec_file, "Scan spec JSON")->required()->check(CLI::ExistingFile);
    scan->add_option("--grid", grid, "Grid steps for free times without their own resolution");
    common(scan);
    formatted(scan);

    std::string family;
    std::vector<int> dims{2, 3, 4, 5};
    long trials = 10000;
    long iterations = 100000;
    std::uint64_t seed = 1;
    auto *luders = app.add_subcommand("luders", "Random instances and search against a quantum bound");
    luders->add_option("family", family, "Condition family")->required();
    luders->add_option("--dims", dims, "Hilbert-space dimensions")->delimiter(',')->check(CLI::Range(2, kMaxDim));
    luders->add_option("--trials", trials, "Random instances per dimension")->capture_default_str();
    luders->add_option("--search-iterations", iterations, "Objective evaluations for the random search")->capture_default_str();
    luders->add_option("--seed", seed, "Master seed")->capture_default_str();
    common(luders);

    std::string plan_file;
    long shots_override = 0;
    double significance = 5;
    auto *shots_cmd = app.add_subcommand("shots", "Finite-shot estimates of a dataset");
    shots_cmd->add_option("plan", plan_file, "Shot plan JSON")->required()->check(CLI::ExistingFile);
    auto *seed_opt = shots_cmd->add_option("--seed", seed, "Override the plan seed");
    shots_cmd->add_option("--shots", shots_override, "Override shots per experiment");
    shots_cmd->add_option("--significance", significance, "Standard errors needed for a verdict")->capture_default_str();
    common(shots_cmd);
    formatted(shots_cmd);

    std::string dataset_file;
    auto *audit = app.add_subcommand("audit", "Evaluate every applicable family on a dataset file");
    audit->add_option("dataset", dataset_file, "Dataset CSV or JSON")->required()->check(CLI::ExistingFile);
    auto *audit_out = audit->add_option("--out", out_dir, "Write audit.json and a manifest here instead of stdout");
    audit->add_option("--epsilon", epsilon, "Tolerance for calling a condition violated")->capture_default_str();

    std::string manifest_file;
    std::string replay_dir;
    auto *replay_cmd = app.add_subcommand("replay", "Rerun a manifest and compare its outputs byte for byte");
    replay_cmd->add_option("manifest", manifest_file, "manifest.json")->required()->check(CLI::ExistingFile);
    replay_cmd->add_option("--out", replay_dir, "Directory for the rerun (default: <manifest dir>/replay)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        Outputs out{out_dir, {}};
        json config{{"epsilon", epsilon}, {"workers", workers}};
        if (format != "csv") config["format"] = format;
        if (*reproduce) {
            config["figure"] = figure;
            config["grid"] = grid;
            config["preset"] = presets::figure_description(figure);
            run_reproduce(config, out);
            finish("reproduce", config, 0, out);
        } else if (*construct) {
            config["n"] = levels;
            run_construct(config, out);
            finish("construct", config, 0, out);
        } else if (*scan) {
            json spec = io::read_json_file(spec_file);
            if (scan->count("--grid") && !spec.contains("grid")) spec["grid"] = grid;
            config["spec"] = spec;
            run_scan(config, out);
            // Store the resolved spec so the manifest stands on its own.
            config["spec"] = io::to_json(io::scan_spec_from_json(spec));
            finish("scan", config, 0, out);
        } else if (*luders) {
            config["family"] = family;
            config["dims"] = dims;
            config["trials"] = trials;
            config["search_iterations"] = iterations;
            config["seed"] = seed;
            run_luders(config, out);
            finish("luders", config, seed, out);
        } else if (*shots_cmd) {
            json plan = io::read_json_file(plan_file);
            config["plan"] = plan;
            config["significance"] = significance;
            if (*seed_opt) config["seed"] = seed;
            if (shots_override > 0) config["shots"] = shots_override;
            run_shots(config, out);
            auto resolved = io::plan_from_json(plan);
            std::uint64_t used = config.contains("seed") ? seed : resolved.seed;
            finish("shots", config, used, out);
        } else if (*audit) {
            config["dataset_text"] = io::read_text_file(dataset_file);
            config["dataset"] = dataset_file;
            if (*audit_out) {
                run_audit(config, &out);
                finish("audit", config, 0, out);
            } else {
                run_audit(config, nullptr);
            }
        } else if (*replay_cmd) {
            fs::path m = manifest_file;
            fs::path dir = replay_dir.empty() ? m.parent_path() / "replay" : fs::path(replay_dir);
            return replay(m, dir);
        }
        if (!*audit || *audit_out) std::printf("wrote %s\n", (fs::path(out_dir) / "manifest.json").string().c_str());
        return 0;
    } catch (const Error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return is_input_error(e.code()) ? kExitBadInput : kExitInvariant;
    } catch (const json::exception &e) {
        std::fprintf(stderr, "error: malformed input: %s\n", e.what());
        return kExitBadInput;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInvariant;
    }
}
