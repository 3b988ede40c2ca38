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

#include "macroreal/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "macroreal/constructions.hpp"
#include "macroreal/error.hpp"
#include "macroreal/tables.hpp"

namespace macroreal::io {

using conditions::Family;

namespace {

[[noreturn]] void bad(const std::string &msg) { throw Error(ErrorCode::BadInput, msg); }

const json &field(const json &j, const char *name, std::string_view ctx) {
    if (!j.is_object() || !j.contains(name)) {
        bad(std::string(ctx) + ": missing field '" + name + "'");
    }
    return j.at(name);
}

double number(const json &j, std::string_view ctx) {
    if (!j.is_number()) bad(std::string(ctx) + ": expected a number");
    return j.get<double>();
}

int integer(const json &j, std::string_view ctx) {
    if (!j.is_number_integer()) bad(std::string(ctx) + ": expected an integer");
    return j.get<int>();
}

std::string text(const json &j, std::string_view ctx) {
    if (!j.is_string()) bad(std::string(ctx) + ": expected a string");
    return j.get<std::string>();
}

std::vector<double> numbers(const json &j, std::string_view ctx) {
    if (!j.is_array()) bad(std::string(ctx) + ": expected an array");
    std::vector<double> out;
    for (size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], std::string(ctx) + "[" + std::to_string(k) + "]"));
    return out;
}

std::string trim(std::string_view s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string_view::npos) return {};
    size_t b = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

double parse_number(std::string_view s, std::string_view ctx) {
    std::string t = trim(s);
    double x = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size()) {
        bad(std::string(ctx) + ": cannot read number '" + t + "'");
    }
    return x;
}

std::vector<std::vector<double>> rows_of(const CMatrix &m, bool imag) {
    std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) out[r][c] = imag ? m(r, c).imag() : m(r, c).real();
    }
    return out;
}

std::string_view entry_kind(int order) {
    static constexpr std::string_view names[] = {"avg", "C", "D", "E"};
    return names[order - 1];
}

std::vector<int> one_based(const std::vector<int> &v) {
    std::vector<int> out(v);
    for (int &x : out) ++x;
    return out;
}

json families_json(const std::vector<Family> &fs) {
    json out = json::array();
    for (Family f : fs) out.push_back(std::string(conditions::to_string(f)));
    return out;
}

std::vector<Family> families_from(const json &j, std::string_view ctx) {
    if (!j.is_array()) bad(std::string(ctx) + ": expected an array of family names");
    std::vector<Family> out;
    for (const auto &x : j) out.push_back(conditions::parse_family(text(x, ctx)));
    return out;
}

struct MetaLine {
    int n = 0;
    std::optional<VariableKind> kind;
    CorrelatorSubset subset = CorrelatorSubset::Full;
};

MetaLine parse_meta(std::string_view line) {
    MetaLine m;
    std::istringstream in{std::string(line.substr(1))};
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
        if (k == "n") m.n = static_cast<int>(parse_number(v, "n"));
        if (k == "kind") m.kind = parse_variable_kind(v);
        if (k == "subset") m.subset = parse_subset(v);
    }
    return m;
}

}  // namespace

std::string_view version() { return "0.1.0"; }

std::string format_double(double x) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, p);
}

double parse_angle(std::string_view s) {
    std::string t;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    }
    auto pos = t.find("pi");
    if (pos == std::string::npos) return parse_number(t, "angle");
    std::string coef = t.substr(0, pos);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    double c = coef.empty() || coef == "+" ? 1.0 : coef == "-" ? -1.0 : parse_number(coef, "angle '" + std::string(s) + "'");
    double den = 1;
    std::string rest = t.substr(pos + 2);
    if (!rest.empty()) {
        if (rest[0] != '/') bad("angle '" + std::string(s) + "': expected '/' after pi");
        den = parse_number(rest.substr(1), "angle '" + std::string(s) + "'");
    }
    return c * std::numbers::pi / den;
}

double parse_angle(const json &j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_angle(std::string_view(j.get_ref<const std::string &>()));
    bad("angle: expected a number or a string like \"3pi/4\"");
}

json to_json(const CMatrix &m) { return json{{"re", rows_of(m, false)}, {"im", rows_of(m, true)}}; }

CMatrix matrix_from_json(const json &j) {
    const json &re = field(j, "re", "matrix");
    if (!re.is_array() || re.empty()) bad("matrix: 're' must be a non-empty array of rows");
    const int dim = static_cast<int>(re.size());
    numerics::require_dim(dim);
    CMatrix m = CMatrix::Zero(dim, dim);
    for (int r = 0; r < dim; ++r) {
        auto row = numbers(re[r], "matrix.re");
        if (static_cast<int>(row.size()) != dim) bad("matrix: row " + std::to_string(r) + " of 're' has wrong length");
        for (int c = 0; c < dim; ++c) m(r, c) = row[c];
    }
    if (j.contains("im")) {
        const json &im = j.at("im");
        if (!im.is_array() || static_cast<int>(im.size()) != dim) bad("matrix: 'im' shape differs from 're'");
        for (int r = 0; r < dim; ++r) {
            auto row = numbers(im[r], "matrix.im");
            if (static_cast<int>(row.size()) != dim) bad("matrix: row " + std::to_string(r) + " of 'im' has wrong length");
            for (int c = 0; c < dim; ++c) m(r, c) += Complex(0, row[c]);
        }
    }
    return m;
}

CVector vector_from_json(const json &j) {
    std::vector<double> re, im;
    if (j.is_array()) {
        re = numbers(j, "vector");
    } else {
        re = numbers(field(j, "re", "vector"), "vector.re");
        if (j.contains("im")) im = numbers(j.at("im"), "vector.im");
    }
    if (!im.empty() && im.size() != re.size()) bad("vector: 'im' length differs from 're'");
    numerics::require_dim(static_cast<int>(re.size()));
    CVector v(re.size());
    for (size_t k = 0; k < re.size(); ++k) v(k) = Complex(re[k], im.empty() ? 0.0 : im[k]);
    return v;
}

json to_json(const states::DensityMatrix &rho) {
    json j = to_json(rho.matrix());
    j["dim"] = rho.dim();
    const auto &p = rho.provenance();
    json prov{{"type", p.type}, {"params", p.params}};
    if (p.case_id) prov["case"] = p.case_id;
    j["provenance"] = prov;
    return j;
}

states::DensityMatrix state_from_json(const json &j) {
    if (!j.is_object()) bad("state: expected an object");
    std::string type = j.contains("type") ? text(j.at("type"), "state.type") : "explicit";
    if (type == "bloch") {
        auto v = numbers(field(j, "v", "state"), "state.v");
        if (v.size() != 3) bad("state.v: expected 3 components");
        return states::bloch_state({{v[0], v[1], v[2]}});
    }
    if (type == "gellmann") {
        auto a = numbers(field(j, "a", "state"), "state.a");
        if (a.size() != 8) bad("state.a: expected 8 components");
        states::GellMannVector g;
        std::copy(a.begin(), a.end(), g.a.begin());
        return states::gellmann_state(g);
    }
    if (type == "pure_case") {
        states::PureStateParams p;
        p.case_id = integer(field(j, "case", "state"), "state.case");
        if (j.contains("theta")) p.theta = parse_angle(j.at("theta"));
        if (j.contains("alpha")) p.alpha = parse_angle(j.at("alpha"));
        if (j.contains("beta")) p.beta = parse_angle(j.at("beta"));
        if (j.contains("phi")) {
            const json &phi = j.at("phi");
            if (!phi.is_array() || phi.size() > 3) bad("state.phi: expected up to 3 angles");
            for (size_t k = 0; k < phi.size(); ++k) p.phi[k] = parse_angle(phi[k]);
        }
        states::Provenance prov{"pure_case", p.case_id, {p.theta, p.alpha, p.beta, p.phi[0], p.phi[1], p.phi[2]}};
        return states::pure_density(states::pure_state_ket(p)).with_provenance(prov);
    }
    if (type == "ket") {
        CVector ket = vector_from_json(j.contains("ket") ? j.at("ket") : j);
        return states::pure_density(ket).with_provenance({"ket", 0, {}});
    }
    if (type == "explicit") {
        CMatrix m = matrix_from_json(j);
        if (j.contains("dim") && integer(j.at("dim"), "state.dim") != m.rows()) {
            throw Error(ErrorCode::DimMismatch, "state.dim differs from matrix size");
        }
        auto rho = states::validate_density(m);
        if (j.contains("provenance")) {
            const json &p = j.at("provenance");
            states::Provenance prov;
            if (p.contains("type")) prov.type = text(p.at("type"), "provenance.type");
            if (p.contains("case")) prov.case_id = integer(p.at("case"), "provenance.case");
            if (p.contains("params")) prov.params = numbers(p.at("params"), "provenance.params");
            rho = rho.with_provenance(prov);
        }
        return rho;
    }
    bad("state.type: unknown type '" + type + "'");
}

CMatrix hamiltonian_from_json(const json &j, int dim) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "spin_x") return observables::spin_x_hamiltonian(dim);
        if (s == "cyclic5") {
            if (dim != 5) throw Error(ErrorCode::DimMismatch, "cyclic5 needs dim 5");
            return observables::cyclic_hamiltonian_5();
        }
        bad("hamiltonian: unknown name '" + s + "'");
    }
    if (!j.is_object()) bad("hamiltonian: expected a name or an object");
    std::string type = j.contains("type") ? text(j.at("type"), "hamiltonian.type") : "explicit";
    double scale = j.contains("scale") ? number(j.at("scale"), "hamiltonian.scale") : 1.0;
    CMatrix h;
    if (type == "explicit") {
        h = matrix_from_json(j);
    } else {
        h = hamiltonian_from_json(json(type), dim);
    }
    if (h.rows() != dim) throw Error(ErrorCode::DimMismatch, "hamiltonian size differs from state dimension");
    if (!numerics::is_hermitian(h)) throw Error(ErrorCode::NotHermitian, "hamiltonian is not Hermitian");
    return scale * h;
}

observables::Observable observable_from_json(const json &j) {
    if (j.is_string()) return observable_from_json(json{{"type", j.get<std::string>()}});
    std::string type = text(field(j, "type", "observable"), "observable.type");
    if (type == "single") return observables::dichotomic_single(vector_from_json(field(j, "a", "observable")));
    if (type == "double") {
        return observables::dichotomic_double(vector_from_json(field(j, "a", "observable")),
                                              vector_from_json(field(j, "b", "observable")));
    }
    if (type == "diag") {
        auto v = numbers(field(j, "values", "observable"), "observable.values");
        numerics::require_dim(static_cast<int>(v.size()));
        CMatrix m = CMatrix::Zero(v.size(), v.size());
        for (size_t k = 0; k < v.size(); ++k) m(k, k) = v[k];
        return observables::dichotomic_explicit(m);
    }
    if (type == "explicit") return observables::dichotomic_explicit(matrix_from_json(j));
    if (type == "table_case") return observables::case_observable(integer(field(j, "case", "observable"), "observable.case"));
    if (type == "trichotomic_spin1") return observables::trichotomic_spin1();
    if (type == "trichotomic") {
        return observables::make_triple(matrix_from_json(field(j, "q", "observable")),
                                        matrix_from_json(field(j, "r", "observable")),
                                        matrix_from_json(field(j, "s", "observable")));
    }
    bad("observable.type: unknown type '" + type + "'");
}

observables::SpinModel model_from_json(const json &j) {
    if (!j.is_object()) bad("model: expected an object");
    auto rho = state_from_json(field(j, "state", "model"));
    if (j.contains("dim") && integer(j.at("dim"), "model.dim") != rho.dim()) {
        throw Error(ErrorCode::DimMismatch, "model.dim differs from the state dimension");
    }
    CMatrix h = hamiltonian_from_json(field(j, "hamiltonian", "model"), rho.dim());
    auto obs = observable_from_json(field(j, "observable", "model"));
    const json &t = field(j, "times", "model");
    if (!t.is_array() || t.empty()) bad("model.times: expected a non-empty array");
    std::vector<double> times;
    for (const auto &x : t) times.push_back(parse_angle(x));
    return observables::SpinModel(h, std::move(obs), rho, std::move(times));
}

json to_json(const observables::SpinModel &m) {
    json h = to_json(m.hamiltonian());
    h["type"] = "explicit";
    json obs;
    if (m.trichotomic()) {
        const auto &x = std::get<observables::TrichotomicTriple>(m.observable());
        obs = {{"type", "trichotomic"}, {"q", to_json(x.q)}, {"r", to_json(x.r)}, {"s", to_json(x.s)}};
    } else {
        obs = to_json(std::get<observables::DichotomicObservable>(m.observable()).matrix());
        obs["type"] = "explicit";
    }
    json state = to_json(m.initial());
    state["type"] = "explicit";
    return {{"dim", m.dim()}, {"hamiltonian", h}, {"observable", obs}, {"state", state}, {"times", m.times()}};
}

EntryKey parse_entry_label(std::string_view label) {
    std::vector<int> times;
    std::string vars;
    for (const auto &tok : split(label, ';')) {
        if (tok.empty()) bad("entry label '" + std::string(label) + "' has an empty index");
        size_t k = 0;
        char v = 'Q';
        if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
            v = tok[0];
            k = 1;
        }
        int idx = static_cast<int>(parse_number(tok.substr(k), "entry label '" + std::string(label) + "'"));
        if (idx < 1) bad("entry label '" + std::string(label) + "': indices start at 1");
        times.push_back(idx - 1);
        vars += v;
    }
    return EntryKey(times, vars);
}

json to_json(const MRDataset &ds) {
    json entries = json::array();
    for (const auto &[k, v] : ds.entries()) {
        entries.push_back({{"indices", k.label(ds.trichotomic())}, {"value", v}});
    }
    return {{"n", ds.n()},
            {"kind", std::string(to_string(ds.kind()))},
            {"subset", std::string(to_string(ds.subset()))},
            {"entries", entries}};
}

MRDataset dataset_from_json(const json &j) {
    if (j.contains("dataset")) return dataset_from_json(j.at("dataset"));
    int n = integer(field(j, "n", "dataset"), "dataset.n");
    VariableKind kind = j.contains("kind") ? parse_variable_kind(text(j.at("kind"), "dataset.kind")) : VariableKind::Dichotomic;
    CorrelatorSubset subset = j.contains("subset") ? parse_subset(text(j.at("subset"), "dataset.subset")) : CorrelatorSubset::Full;
    MRDataset ds(n, kind, subset);
    const json &entries = field(j, "entries", "dataset");
    if (!entries.is_array()) bad("dataset.entries: expected an array");
    for (size_t k = 0; k < entries.size(); ++k) {
        std::string ctx = "dataset.entries[" + std::to_string(k) + "]";
        ds.set(parse_entry_label(text(field(entries[k], "indices", ctx), ctx + ".indices")),
               number(field(entries[k], "value", ctx), ctx + ".value"));
    }
    return ds;
}

namespace {

std::string csv_head(const MRDataset &ds, bool with_errors) {
    std::string out(kSchemaLine);
    out += "\n# n=" + std::to_string(ds.n()) + " kind=" + std::string(to_string(ds.kind())) +
           " subset=" + std::string(to_string(ds.subset())) + "\n";
    out += with_errors ? "kind,indices,value,stderr,shots\n" : "kind,indices,value\n";
    return out;
}

}  // namespace

std::string dataset_to_csv(const MRDataset &ds) {
    std::string out = csv_head(ds, false);
    for (const auto &[k, v] : ds.entries()) {
        out += std::string(entry_kind(k.order())) + "," + k.label(ds.trichotomic()) + "," + format_double(v) + "\n";
    }
    return out;
}

std::string dataset_to_csv(const shots::EstimatedDataset &est) {
    const MRDataset &ds = est.values;
    std::string out = csv_head(ds, true);
    for (const auto &[k, v] : ds.entries()) {
        auto it = est.estimates.find(k);
        out += std::string(entry_kind(k.order())) + "," + k.label(ds.trichotomic()) + "," + format_double(v) + ",";
        out += it == est.estimates.end() ? "," : format_double(it->second.std_error) + "," + std::to_string(it->second.shots);
        out += "\n";
    }
    return out;
}

MRDataset dataset_from_csv(std::string_view text) {
    MetaLine meta;
    bool header = false;
    int col_kind = -1, col_idx = -1, col_val = -1;
    std::vector<std::pair<EntryKey, double>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        std::string where = "line " + std::to_string(lineno);
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (t.find('=') != std::string::npos) meta = parse_meta(t);
            continue;
        }
        auto cols = split(t, ',');
        if (!header) {
            for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
                if (cols[c] == "kind") col_kind = c;
                if (cols[c] == "indices") col_idx = c;
                if (cols[c] == "value") col_val = c;
            }
            if (col_idx < 0 || col_val < 0) bad(where + ": header must name 'indices' and 'value' columns");
            header = true;
            continue;
        }
        if (static_cast<int>(cols.size()) <= std::max({col_kind, col_idx, col_val})) bad(where + ": too few columns");
        EntryKey key = [&] {
            try {
                return parse_entry_label(cols[col_idx]);
            } catch (const Error &e) {
                bad(where + ": " + e.what());
            }
        }();
        if (col_kind >= 0 && cols[col_kind] != entry_kind(key.order())) {
            bad(where + ": kind '" + cols[col_kind] + "' does not match " + std::to_string(key.order()) + " indices");
        }
        rows.emplace_back(key, parse_number(cols[col_val], where));
    }
    if (!header) bad("dataset CSV has no header line");
    int n = meta.n;
    bool has_r = false;
    for (const auto &[k, v] : rows) {
        n = std::max(n, k.time(k.order() - 1) + 1);
        has_r = has_r || !k.all_q();
    }
    VariableKind kind = meta.kind.value_or(has_r ? VariableKind::Trichotomic : VariableKind::Dichotomic);
    MRDataset ds(std::max(n, 1), kind, meta.subset);
    for (const auto &[k, v] : rows) ds.set(k, v);
    return ds;
}

MRDataset dataset_from_text(std::string_view text) {
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return dataset_from_json(parse_json(text, "dataset"));
    return dataset_from_csv(text);
}

json to_json(const conditions::ConditionReport &r) {
    json argmin{{"times", one_based(r.argmin.times)},
                {"signs", r.argmin.signs},
                {"label", r.argmin.describe()}};
    if (!r.argmin.vars.empty()) argmin["vars"] = r.argmin.vars;
    json j{{"family", std::string(conditions::to_string(r.family))},
           {"n", r.n},
           {"min", r.min_value},
           {"argmin", argmin},
           {"satisfied", r.satisfied},
           {"epsilon", r.epsilon}};
    if (auto b = conditions::try_luders_bound(r.family, r.n)) {
        j["bound"] = *b;
        j["margin"] = r.min_value - *b;
    } else {
        j["bound"] = nullptr;
        j["margin"] = nullptr;
    }
    return j;
}

json to_json(const conditions::RegimeLabel &label) {
    json sat = json::object();
    for (const auto &[f, s] : label.satisfied) sat[std::string(conditions::to_string(f))] = s;
    return {{"regime", std::string(conditions::to_string(label.regime))}, {"satisfied", sat}};
}

search::ScanSpec scan_spec_from_json(const json &j) {
    if (!j.is_object()) bad("scan spec: expected an object");
    int grid = j.contains("grid") ? integer(j.at("grid"), "scan.grid") : 1000;
    std::optional<search::ScanSpec> spec;
    if (j.contains("preset")) {
        std::string id = text(j.at("preset"), "scan.preset");
        try {
            spec = presets::figure(id, grid);
        } catch (const Error &e) {
            bad("scan.preset: " + std::string(e.what()));
        }
        if (j.contains("model")) spec->model = model_from_json(j.at("model"));
    } else {
        spec = search::ScanSpec{.model = model_from_json(field(j, "model", "scan")), .roles = conditions::RegimeRoles::standard()};
    }
    if (j.contains("free")) {
        const json &free = j.at("free");
        if (!free.is_array()) bad("scan.free: expected an array");
        spec->free.clear();
        for (size_t k = 0; k < free.size(); ++k) {
            std::string ctx = "scan.free[" + std::to_string(k) + "]";
            search::FreeParameter p;
            p.time_index = integer(field(free[k], "time", ctx), ctx + ".time") - 1;
            p.lo = parse_angle(field(free[k], "lo", ctx));
            p.hi = parse_angle(field(free[k], "hi", ctx));
            p.resolution = free[k].contains("resolution") ? integer(free[k].at("resolution"), ctx + ".resolution") : grid;
            spec->free.push_back(p);
        }
    }
    if (j.contains("families")) spec->families = families_from(j.at("families"), "scan.families");
    if (j.contains("reference")) spec->roles.reference = families_from(j.at("reference"), "scan.reference");
    if (j.contains("target")) spec->roles.target = families_from(j.at("target"), "scan.target");
    if (j.contains("epsilon")) spec->epsilon = number(j.at("epsilon"), "scan.epsilon");
    if (j.contains("refine_tol")) spec->refine_tol = number(j.at("refine_tol"), "scan.refine_tol");
    spec->validate();
    return *spec;
}

json to_json(const search::ScanSpec &spec) {
    json free = json::array();
    for (const auto &p : spec.free) {
        free.push_back({{"time", p.time_index + 1}, {"lo", p.lo}, {"hi", p.hi}, {"resolution", p.resolution}});
    }
    json j{{"model", to_json(spec.model)},
           {"free", free},
           {"families", families_json(spec.families)},
           {"reference", families_json(spec.roles.reference)},
           {"target", families_json(spec.roles.target)},
           {"epsilon", spec.epsilon},
           {"refine_tol", spec.refine_tol}};
    if (!spec.preset.empty()) j["preset"] = spec.preset;
    return j;
}

json to_json(const search::ScanResult &r) {
    json points = json::array();
    for (const auto &p : r.points) {
        points.push_back({{"params", p.params}, {"minima", p.minima}, {"regime", std::string(conditions::to_string(p.regime))}});
    }
    json intervals = json::array();
    for (const auto &iv : r.intervals) {
        intervals.push_back({{"regime", std::string(conditions::to_string(iv.regime))},
                             {"lo", iv.lo},
                             {"hi", iv.hi},
                             {"first", iv.first},
                             {"last", iv.last}});
    }
    json windows = json::array();
    for (const auto &w : r.windows) {
        windows.push_back({{"family", std::string(conditions::to_string(w.family))},
                           {"satisfied", w.satisfied},
                           {"lo", w.lo},
                           {"hi", w.hi},
                           {"first", w.first},
                           {"last", w.last}});
    }
    return {{"params", r.param_names},
            {"families", families_json(r.families)},
            {"points", points},
            {"intervals", intervals},
            {"windows", windows}};
}

std::string scan_to_csv(const search::ScanResult &r, std::string_view preset) {
    std::string out(kSchemaLine);
    out += "\n# scan";
    if (!preset.empty()) out += " preset=" + std::string(preset);
    out += "\n";
    for (const auto &name : r.param_names) out += name + ",";
    for (Family f : r.families) out += std::string(conditions::to_string(f)) + ",";
    out += "regime\n";
    for (const auto &p : r.points) {
        for (double x : p.params) out += format_double(x) + ",";
        for (double x : p.minima) out += format_double(x) + ",";
        out += std::string(conditions::to_string(p.regime)) + "\n";
    }
    return out;
}

shots::ShotPlan plan_from_json(const json &j) {
    if (!j.is_object()) bad("plan: expected an object");
    auto model = model_from_json(field(j, "model", "plan"));
    long n_shots = field(j, "shots", "plan").is_number_integer() ? j.at("shots").get<long>() : -1;
    if (n_shots < 1) bad("plan.shots: expected a positive integer");
    std::uint64_t seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
    if (j.contains("experiments")) {
        shots::ShotPlan plan{model, {}, n_shots, seed, 1};
        const json &ex = j.at("experiments");
        if (!ex.is_array()) bad("plan.experiments: expected an array");
        for (size_t k = 0; k < ex.size(); ++k) {
            std::string ctx = "plan.experiments[" + std::to_string(k) + "]";
            std::vector<int> times;
            for (double t : numbers(field(ex[k], "times", ctx), ctx + ".times")) times.push_back(static_cast<int>(t) - 1);
            std::string vars = ex[k].contains("vars") ? text(ex[k].at("vars"), ctx + ".vars") : std::string(times.size(), 'Q');
            plan.experiments.push_back({times, vars});
        }
        plan.validate();
        return plan;
    }
    std::vector<int> orders{1, 2};
    if (j.contains("orders")) {
        orders.clear();
        for (double o : numbers(j.at("orders"), "plan.orders")) orders.push_back(static_cast<int>(o));
    }
    return shots::default_plan(model, orders, n_shots, seed);
}

json to_json(const shots::ShotPlan &plan) {
    json ex = json::array();
    for (const auto &e : plan.experiments) ex.push_back({{"times", one_based(e.times)}, {"vars", e.vars}});
    return {{"model", to_json(plan.model)}, {"experiments", ex}, {"shots", plan.shots}, {"seed", plan.seed}};
}

json to_json(const shots::EstimatedDataset &est) {
    json entries = json::array();
    for (const auto &[k, e] : est.estimates) {
        entries.push_back({{"indices", k.label(est.values.trichotomic())},
                           {"value", e.value},
                           {"stderr", e.std_error},
                           {"shots", e.shots}});
    }
    return {{"dataset", to_json(est.values)}, {"estimates", entries}};
}

json to_json(const shots::ErrorReport &r) {
    json j = to_json(r.report);
    j["stderr"] = r.std_error;
    j["z"] = std::isfinite(r.z) ? json(r.z) : json(nullptr);
    j["verdict"] = std::string(shots::to_string(r.verdict));
    j["near_degenerate"] = r.near_degenerate;
    return j;
}

json to_json(const search::SearchInstance &inst) {
    json axes = json::array();
    auto vec = [](const CVector &v) {
        std::vector<double> re(v.size()), im(v.size());
        for (int k = 0; k < v.size(); ++k) {
            re[k] = v(k).real();
            im[k] = v(k).imag();
        }
        return json{{"re", re}, {"im", im}};
    };
    for (const auto &a : inst.axes) axes.push_back(vec(a));
    json reports = json::array();
    for (const auto &r : inst.reports) reports.push_back(to_json(r));
    return {{"dim", inst.dim},
            {"target", std::string(conditions::to_string(inst.target))},
            {"value", inst.value},
            {"feasible", inst.feasible},
            {"psi", vec(inst.psi)},
            {"axes", axes},
            {"reports", reports},
            {"chain_seed", inst.chain_seed}};
}

json to_json(const search::LudersSweep &s) {
    return {{"family", std::string(conditions::to_string(s.family))},
            {"dim", s.dim},
            {"trials", s.trials},
            {"bound", s.bound},
            {"min", s.min_value},
            {"below_bound", s.below_bound}};
}

json RunManifest::to_json() const {
    return {{"command", command}, {"config", config}, {"seed", seed}, {"version", version}, {"outputs", outputs}};
}

RunManifest RunManifest::from_json(const json &j) {
    RunManifest m;
    m.command = text(field(j, "command", "manifest"), "manifest.command");
    m.config = field(j, "config", "manifest");
    if (j.contains("seed")) m.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("version")) m.version = text(j.at("version"), "manifest.version");
    if (j.contains("outputs")) {
        for (const auto &o : j.at("outputs")) m.outputs.push_back(text(o, "manifest.outputs"));
    }
    return m;
}

json parse_json(std::string_view text, std::string_view origin) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        // Translate the byte offset into line and column.
        size_t byte = std::min<size_t>(e.byte, text.size());
        int line = 1, col = 1;
        for (size_t k = 0; k + 1 < byte; ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        bad(std::string(origin) + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
    }
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json_file(const std::filesystem::path &path) { return parse_json(read_text_file(path), path.string()); }

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) bad("cannot write " + path.string());
    out << text;
}

}  // namespace macroreal::io
