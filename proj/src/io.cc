// Copyright 2026 The Readmit Authors
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

#include "readmit/io.h"

#include <cctype>
#include <fstream>
#include <sstream>

#include "readmit/error.h"

namespace readmit {

namespace {

template <class F>
auto guarded(const char *what, F body) {
    try {
        return body();
    } catch (const json::exception &e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    } catch (const std::out_of_range &e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

std::uint64_t parse_word(const std::string &text, std::size_t n) {
    const BitString b = BitString::parse(text);
    if (b.size() != n) throw ConfigError("bit string '" + text + "' does not have " + std::to_string(n) + " bits");
    return b.word();
}

std::size_t read_n(const json &j) {
    const auto n = j.at("n").get<std::size_t>();
    if (n == 0 || n > kMaxQubits) throw ConfigError("n must be in [1, 64]");
    return n;
}

}  // namespace

json noise_model_to_json(const NoiseModel &model) {
    json j;
    j["n"] = num_qubits(model);
    if (const auto *tp = std::get_if<TPNoise>(&model)) {
        j["kind"] = "tp";
        j["eps"] = tp->eps();
        j["eta"] = tp->eta();
    } else if (const auto *ctmp = std::get_if<CTMPModel>(&model)) {
        j["kind"] = "ctmp";
        json terms = json::array();
        for (const auto &t : ctmp->terms()) {
            json q = json::array({t.first});
            if (is_two_qubit(t.kind)) q.push_back(t.second);
            terms.push_back({{"kind", std::string(to_string(t.kind))}, {"qubits", q}, {"rate", t.rate}});
        }
        j["terms"] = terms;
        if (auto g = ctmp->cached_gamma()) {
            j["gamma"] = *g;
            j["gamma_exact"] = ctmp->gamma_is_exact();
        }
    } else {
        const auto &a = std::get<FullNoiseMatrix>(model).matrix();
        j["kind"] = "full";
        j["layout"] = "a[y][x]";
        json rows = json::array();
        for (Eigen::Index y = 0; y < a.rows(); ++y) {
            json row = json::array();
            for (Eigen::Index x = 0; x < a.cols(); ++x) row.push_back(a(y, x));
            rows.push_back(row);
        }
        j["a"] = rows;
    }
    return j;
}

NoiseModel noise_model_from_json(const json &j) {
    return guarded("noise model", [&]() -> NoiseModel {
        const std::size_t n = read_n(j);
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "tp") {
            auto eps = j.at("eps").get<std::vector<double>>();
            auto eta = j.at("eta").get<std::vector<double>>();
            if (eps.size() != n || eta.size() != n) throw ConfigError("eps/eta must have n entries");
            return TPNoise(std::move(eps), std::move(eta));
        }
        if (kind == "ctmp") {
            std::vector<CTMPGeneratorTerm> terms;
            for (const auto &t : j.at("terms")) {
                CTMPGeneratorTerm term;
                term.kind = parse_flip_kind(t.at("kind").get<std::string>());
                const auto q = t.at("qubits").get<std::vector<std::size_t>>();
                if (q.size() != (is_two_qubit(term.kind) ? 2u : 1u)) {
                    throw ConfigError("term '" + t.at("kind").get<std::string>() + "' has the wrong number of qubits");
                }
                term.first = q[0];
                term.second = q.size() > 1 ? q[1] : 0;
                term.rate = t.at("rate").get<double>();
                terms.push_back(term);
            }
            CTMPModel model(n, std::move(terms));
            if (j.contains("gamma")) model.cache_gamma(j.at("gamma").get<double>(), j.value("gamma_exact", false));
            return model;
        }
        if (kind == "full") {
            if (j.contains("layout") && j.at("layout").get<std::string>() != "a[y][x]") {
                throw ConfigError("unsupported full-matrix layout (expected \"a[y][x]\")");
            }
            if (n > kMaxDenseQubits) throw ConfigError("full noise matrix needs n <= 12");
            const auto dim = Eigen::Index{1} << n;
            const auto &rows = j.at("a");
            if (rows.size() != static_cast<std::size_t>(dim)) throw ConfigError("full matrix must have 2^n rows");
            Eigen::MatrixXd a(dim, dim);
            for (Eigen::Index y = 0; y < dim; ++y) {
                const auto &row = rows.at(static_cast<std::size_t>(y));
                if (row.size() != static_cast<std::size_t>(dim)) throw ConfigError("full matrix must have 2^n columns");
                for (Eigen::Index x = 0; x < dim; ++x) a(y, x) = row.at(static_cast<std::size_t>(x)).get<double>();
            }
            return FullNoiseMatrix(n, std::move(a));
        }
        throw ConfigError("unknown noise model kind '" + kind + "'");
    });
}

json calibration_to_json(const CalibrationData &data) {
    const std::size_t n = data.num_qubits();
    json records = json::array();
    for (const auto &[x, counts] : data.records()) {
        json c = json::object();
        for (const auto &[y, m] : counts) c[word_to_string(n, y)] = m;
        records.push_back({{"input", word_to_string(n, x)}, {"counts", c}});
    }
    return {{"n", n}, {"n_cal", data.n_cal()}, {"records", records}};
}

CalibrationData calibration_from_json(const json &j) {
    return guarded("calibration data", [&] {
        const std::size_t n = read_n(j);
        std::map<std::uint64_t, CalibrationData::Counts> records;
        for (const auto &r : j.at("records")) {
            const auto x = parse_word(r.at("input").get<std::string>(), n);
            if (records.count(x)) throw ConfigError("duplicate record for input " + word_to_string(n, x));
            CalibrationData::Counts counts;
            for (const auto &[y, m] : r.at("counts").items()) counts[parse_word(y, n)] += m.get<std::uint64_t>();
            records[x] = std::move(counts);
        }
        return CalibrationData(n, j.at("n_cal").get<std::uint64_t>(), std::move(records));
    });
}

json calibration_set_to_json(const CalibrationSet &set) {
    json inputs = json::array();
    for (auto x : set.inputs()) inputs.push_back(word_to_string(set.num_qubits(), x));
    return {{"n", set.num_qubits()}, {"kind", std::string(to_string(set.kind()))}, {"inputs", inputs}};
}

CalibrationSet calibration_set_from_json(const json &j) {
    return guarded("calibration set", [&] {
        const std::size_t n = read_n(j);
        std::vector<std::uint64_t> inputs;
        for (const auto &s : j.at("inputs")) inputs.push_back(parse_word(s.get<std::string>(), n));
        // The kind is a label; the inputs listed are what gets calibrated.
        const auto kind = j.contains("kind") ? parse_calibration_kind(j.at("kind").get<std::string>()) : CalibrationKind::Custom;
        return CalibrationSet(n, std::move(inputs), kind);
    });
}

json circuit_to_json(const CliffordCircuit &circuit) {
    json gates = json::array();
    for (const auto &g : circuit.gates()) {
        json q = json::array({g.q0});
        if (g.kind == GateKind::CZ || g.kind == GateKind::CNOT) q.push_back(g.q1);
        json e = {{"g", std::string(to_string(g.kind))}, {"q", q}};
        if (g.kind == GateKind::Clifford1) e["index"] = g.index;
        gates.push_back(e);
    }
    return {{"n", circuit.num_qubits()}, {"gates", gates}};
}

CliffordCircuit circuit_from_json(const json &j) {
    return guarded("circuit", [&] {
        CliffordCircuit c(read_n(j));
        for (const auto &e : j.at("gates")) {
            Gate g;
            g.kind = parse_gate_kind(e.at("g").get<std::string>());
            const auto q = e.at("q").get<std::vector<std::size_t>>();
            const bool two = g.kind == GateKind::CZ || g.kind == GateKind::CNOT;
            if (q.size() != (two ? 2u : 1u)) throw ConfigError("gate " + e.at("g").get<std::string>() + " arity");
            g.q0 = q[0];
            g.q1 = two ? q[1] : 0;
            if (g.kind == GateKind::Clifford1) g.index = e.at("index").get<unsigned>();
            c.add(g);
        }
        return c;
    });
}

json shots_to_json(const ShotSet &shots) {
    json list = json::array();
    for (auto w : shots.words()) list.push_back(word_to_string(shots.num_qubits(), w));
    return {{"n", shots.num_qubits()}, {"shots", list}};
}

ShotSet shots_from_json(const json &j) {
    return guarded("shots", [&] {
        const std::size_t n = read_n(j);
        ShotSet s(n);
        if (j.contains("shots")) {
            for (const auto &w : j.at("shots")) s.push_back_word(parse_word(w.get<std::string>(), n));
        } else {
            std::map<std::uint64_t, std::uint64_t> counts;
            for (const auto &[y, m] : j.at("counts").items()) counts[parse_word(y, n)] += m.get<std::uint64_t>();
            for (const auto &[y, m] : counts) {
                for (std::uint64_t i = 0; i < m; ++i) s.push_back_word(y);
            }
        }
        return s;
    });
}

json result_to_json(const MitigationResult &r) {
    return {{"xi", r.xi},
            {"std_err", r.std_err},
            {"samples_used", r.samples_used},
            {"method", std::string(to_string(r.method))},
            {"gamma_used", r.gamma_used},
            {"c_norm", r.c_norm},
            {"seed", r.seed},
            {"sampled", r.sampled}};
}

json overhead_to_json(const OverheadReport &r) {
    return {{"model", r.model_kind}, {"gamma", r.gamma},   {"Gamma", r.Gamma},     {"c_norm", r.c_norm},
            {"overhead", r.overhead}, {"delta", r.delta}, {"T", r.samples}, {"M", r.shots}};
}

json decomposition_to_json(const StochasticDecomposition &d) {
    json terms = json::array();
    for (std::size_t a = 0; a < d.coeffs.size(); ++a) {
        json f = json::array();
        for (auto t : d.maps[a].target) f.push_back(t);
        terms.push_back({{"c", d.coeffs[a]}, {"f", f}});
    }
    return {{"norm", d.norm}, {"terms", terms}};
}

DiagonalObservable parse_observable(std::string_view text, std::size_t n) {
    std::string_view s = text;
    int sign = +1;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        sign = s.front() == '-' ? -1 : 1;
        s.remove_prefix(1);
    }
    if (s == "I") return DiagonalObservable(n, {}, sign);
    std::vector<std::size_t> support;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != 'Z') throw ConfigError("observable '" + std::string(text) + "': expected Z<qubit> factors");
        std::size_t j = ++i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw ConfigError("observable '" + std::string(text) + "': missing qubit index");
        support.push_back(std::stoul(std::string(s.substr(i, j - i))));
        i = j;
    }
    if (support.empty()) throw ConfigError("observable '" + std::string(text) + "' is empty");
    return guarded("observable", [&] { return DiagonalObservable(n, support, sign); });
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
    if (!out) throw ConfigError("write failed for " + path);
}

}  // namespace readmit
