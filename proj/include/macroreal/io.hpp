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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "macroreal/conditions.hpp"
#include "macroreal/dataset.hpp"
#include "macroreal/observables.hpp"
#include "macroreal/search.hpp"
#include "macroreal/shots.hpp"
#include "macroreal/states.hpp"

namespace macroreal::io {

using nlohmann::json;

inline constexpr std::string_view kSchemaLine = "# macroreal-schema v1";

std::string_view version();

/// Number, or a string such as "pi", "-3pi/4", "2*pi", "0.25".
double parse_angle(const json &j);
double parse_angle(std::string_view s);
inline double parse_angle(const char *s) { return parse_angle(std::string_view(s)); }

json to_json(const CMatrix &m);
/// {re: [[..]], im: [[..]]}; im is optional.
CMatrix matrix_from_json(const json &j);
/// [x, ..] or {re: [..], im: [..]}.
CVector vector_from_json(const json &j);

json to_json(const states::DensityMatrix &rho);
/// Serialized density matrix or a state spec: bloch, gellmann, pure_case, ket, explicit.
states::DensityMatrix state_from_json(const json &j);

/// "spin_x", "cyclic5", {type: spin_x, scale}, or an explicit matrix.
CMatrix hamiltonian_from_json(const json &j, int dim);
/// single, double, diag, explicit, table_case, trichotomic_spin1, trichotomic.
observables::Observable observable_from_json(const json &j);

/// {dim?, hamiltonian, observable, state, times}
observables::SpinModel model_from_json(const json &j);
/// Fully explicit form; model_from_json(to_json(m)) reproduces m exactly.
json to_json(const observables::SpinModel &m);

/// Entry labels as written in files: "2", "1;3", "Q1;R2" (1-based).
EntryKey parse_entry_label(std::string_view label);

json to_json(const MRDataset &ds);
MRDataset dataset_from_json(const json &j);
std::string dataset_to_csv(const MRDataset &ds);
/// Adds stderr and shots columns.
std::string dataset_to_csv(const shots::EstimatedDataset &est);
MRDataset dataset_from_csv(std::string_view text);
/// CSV or JSON, decided by the first non-blank character.
MRDataset dataset_from_text(std::string_view text);

json to_json(const conditions::ConditionReport &r);
json to_json(const conditions::RegimeLabel &label);

/// {preset?, model?, free: [{time, lo, hi, resolution}], families, reference, target, epsilon, refine_tol}
search::ScanSpec scan_spec_from_json(const json &j);
json to_json(const search::ScanSpec &spec);
json to_json(const search::ScanResult &r);
/// One row per grid point: free parameters, per-family minima, regime.
std::string scan_to_csv(const search::ScanResult &r, std::string_view preset = {});

/// {model, experiments: [{times, vars}] | orders, shots, seed}
shots::ShotPlan plan_from_json(const json &j);
json to_json(const shots::ShotPlan &plan);
json to_json(const shots::EstimatedDataset &est);
json to_json(const shots::ErrorReport &r);

json to_json(const search::SearchInstance &inst);
json to_json(const search::LudersSweep &s);

/// Everything needed to rerun a command and the files it wrote.
struct RunManifest {
    std::string command;
    json config;
    std::uint64_t seed = 0;
    std::string version{io::version()};
    std::vector<std::string> outputs;

    json to_json() const;
    static RunManifest from_json(const json &j);
};

/// Throws BadInput with line and column on syntax errors.
json parse_json(std::string_view text, std::string_view origin = "input");
json read_json_file(const std::filesystem::path &path);
std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

/// Shortest text that reads back to the same double.
std::string format_double(double x);

}  // namespace macroreal::io
