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

#include "readmit/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "readmit/error.h"
#include "readmit/noise_strength.h"
#include "readmit/pipeline.h"

namespace readmit {

namespace {

// Stream labels keep the random inputs of different stages independent.
enum Stage : std::uint64_t {
    kTruth = 1,
    kCircuit,
    kCalibration,
    kFullCalibration,
    kStabilizers,
    kShots,
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stage, std::uint64_t a, std::uint64_t b = 0) {
    return mix64(mix64(seed ^ mix64(stage)) ^ mix64(a * 0x100000001b3ULL + b));
}

Rng stage_rng(std::uint64_t seed, std::uint64_t stage, std::uint64_t a, std::uint64_t b = 0) {
    return make_stream(derive_seed(seed, stage, a, b), 0);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string csv_header(const char *experiment, const char *columns) {
    return std::string(kCsvVersion) + " experiment=" + experiment + "\n" + columns + "\n";
}

Mitigator make_mitigator(const std::string &method, const TPNoise &tp, const CTMPModel &ctmp,
                         const std::optional<FullNoiseMatrix> &exact, double delta,
                         std::optional<std::uint64_t> samples) {
    Mitigator m;
    m.sampler.delta = delta;
    m.sampler.samples = samples;
    if (method == "raw") {
        m.model = std::monostate{};
    } else if (method == "tp") {
        m.model = tp;
    } else if (method == "ctmp") {
        m.model = ctmp;
    } else if (method == "exact") {
        if (!exact) throw ConfigError("method 'exact' needs n <= 10");
        m.model = *exact;
    } else {
        throw ConfigError("unknown method '" + method + "'");
    }
    return m;
}

void check_methods(const std::vector<std::string> &methods) {
    if (methods.empty()) throw ConfigError("no mitigation methods requested");
    for (const auto &m : methods) {
        if (m != "raw" && m != "tp" && m != "ctmp" && m != "exact") throw ConfigError("unknown method '" + m + "'");
    }
}

struct StabilizerRun {
    PauliOperator pauli;
    std::vector<MitigationResult> per_method;
};

// Shots for stabilizer k come from one stream and are shared by all methods.
std::vector<StabilizerRun> measure_stabilizers(const CliffordCircuit &circuit, const NoiseModel &truth,
                                               const std::vector<Mitigator> &mitigators,
                                               const std::vector<PauliOperator> &paulis, std::size_t shots,
                                               std::uint64_t seed, unsigned threads) {
    std::vector<StabilizerRun> runs(paulis.size());
    parallel_chunks(paulis.size(), threads, [&](std::size_t k) {
        Rng rng = make_stream(seed, k);
        const auto setting = pauli_to_measurement(paulis[k]);
        const ShotSet data = sample_noisy_shots(circuit, setting.rotation, truth, shots, rng);
        runs[k].pauli = paulis[k];
        for (std::size_t m = 0; m < mitigators.size(); ++m) {
            Mitigator local = mitigators[m];
            local.sampler.seed = derive_seed(seed, kShots, k, m);
            local.sampler.threads = 1;
            runs[k].per_method.push_back(mitigate(data, setting.observable, local));
        }
    });
    return runs;
}

std::vector<WeightRow> group_by_weight(std::size_t n, const std::vector<std::string> &methods,
                                       const std::vector<StabilizerRun> &runs) {
    std::vector<WeightRow> out;
    std::set<std::size_t> weights;
    for (const auto &r : runs) weights.insert(r.pauli.weight());
    for (std::size_t w : weights) {
        for (std::size_t m = 0; m < methods.size(); ++m) {
            double sum = 0, var = 0;
            std::size_t count = 0;
            for (const auto &r : runs) {
                if (r.pauli.weight() != w) continue;
                sum += r.per_method[m].xi;
                var += r.per_method[m].std_err * r.per_method[m].std_err;
                ++count;
            }
            const double c = static_cast<double>(count);
            out.push_back({n, methods[m], w, sum / c, std::sqrt(var) / c, count});
        }
    }
    return out;
}

CTMPModel fitted_ctmp(const CalibrationData &data) {
    CTMPModel model = fit_ctmp(data);
    noise_strength(model);
    return model;
}

}  // namespace

// ---------------------------------------------------------------- ground truth

CTMPModel random_ground_truth(std::size_t n, const std::vector<QubitPair> &edges, const GroundTruthOptions &o,
                              Rng &rng) {
    std::normal_distribution<double> normal(o.rate_mean, o.rate_spread);
    std::vector<double> eps(n), eta(n);
    auto draw = [&] { return o.rate_spread > 0 ? std::clamp(normal(rng), o.rate_min, o.rate_max) : o.rate_mean; };
    for (std::size_t j = 0; j < n; ++j) {
        eps[j] = draw();
        eta[j] = draw();
    }
    std::vector<CTMPGeneratorTerm> terms = CTMPModel::from_tp(TPNoise(eps, eta)).terms();
    if (o.pair_rate_max > 0) {
        static constexpr FlipKind kinds[] = {FlipKind::Swap01To10, FlipKind::Raise00To11, FlipKind::Lower11To00};
        for (auto [a, b] : edges) {
            const std::uint64_t pick = uniform_index(rng, 4);
            const double rate = o.pair_rate_max * uniform01(rng);
            if (pick == 3) {
                terms.push_back({FlipKind::Swap01To10, b, a, rate});
            } else {
                terms.push_back({kinds[pick], a, b, rate});
            }
        }
    }
    return CTMPModel(n, std::move(terms));
}

CTMPModel restrict_model(const CTMPModel &model, std::size_t n) {
    std::vector<CTMPGeneratorTerm> kept;
    for (const auto &t : model.terms()) {
        if (t.first <= n && t.second <= n) kept.push_back(t);
    }
    return CTMPModel(n, std::move(kept));
}

double single_qubit_gamma(const CTMPModel &model) {
    double g = 0;
    for (std::size_t j = 1; j <= model.num_qubits(); ++j) {
        g += std::max(model.rate(FlipKind::ZeroToOne, j), model.rate(FlipKind::OneToZero, j));
    }
    return g;
}

// ---------------------------------------------------------------- TVD

std::vector<TvdRow> run_tvd_experiment(const TvdConfig &c) {
    if (c.ns.empty() || c.repeats == 0) throw ConfigError("tvd: need at least one n and one repeat");
    const std::size_t n_max = *std::max_element(c.ns.begin(), c.ns.end());
    if (*std::min_element(c.ns.begin(), c.ns.end()) < 2 || n_max > kMaxDenseQubits) {
        throw ConfigError("tvd: n must be in [2, 12]");
    }
    Rng truth_rng = stage_rng(c.seed, kTruth, n_max);
    const CTMPModel base = random_ground_truth(n_max, {}, c.truth, truth_rng);
    std::vector<CTMPGeneratorTerm> terms = base.terms();
    if (c.pair_rate > 0) {
        if (!is_two_qubit(c.pair_kind)) throw ConfigError("tvd: pair term must be a two-qubit kind");
        terms.push_back({c.pair_kind, c.pair_first, c.pair_second, c.pair_rate});
    }
    const CTMPModel truth(n_max, std::move(terms));

    std::vector<TvdRow> rows(c.ns.size() * c.repeats);
    parallel_chunks(rows.size(), c.threads, [&](std::size_t task) {
        const std::size_t n = c.ns[task / c.repeats];
        const std::size_t r = task % c.repeats;
        const NoiseModel model = restrict_model(truth, n);
        const auto w2 = simulate_calibration(model, make_calibration_set(CalibrationKind::Weight2, n), c.n_cal,
                                             derive_seed(c.seed, kCalibration, n, r));
        const auto full = simulate_calibration(model, make_calibration_set(CalibrationKind::Full, n), c.n_cal,
                                               derive_seed(c.seed, kFullCalibration, n, r));
        const FullNoiseMatrix a_full = fit_full(full);
        const FullNoiseMatrix a_ctmp = build_full_matrix(fit_ctmp(w2));
        const FullNoiseMatrix a_tp = build_full_matrix(fit_tp(w2));
        rows[task] = {n, r, tvd(a_full, a_ctmp), tvd(a_full, a_tp)};
    });
    return rows;
}

std::string tvd_csv(const std::vector<TvdRow> &rows) {
    std::string out = csv_header("tvd", "n,repeat,tvd_ctmp,tvd_tp");
    for (const auto &r : rows) {
        out += std::to_string(r.n) + "," + std::to_string(r.repeat) + "," + fmt(r.tvd_ctmp) + "," + fmt(r.tvd_tp) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------- graph states

GraphResult run_graph_experiment(const GraphConfig &c) {
    check_methods(c.methods);
    if (c.shots == 0 || c.repeats == 0) throw ConfigError("graph: shots and repeats must be positive");
    GraphResult out;
    for (std::size_t n : c.ns) {
        if (n < 2 || n > 20) throw ConfigError("graph: n must be in [2, 20]");
        Rng truth_rng = stage_rng(c.seed, kTruth, n);
        const CTMPModel truth = random_ground_truth(n, line_coupling(n), c.truth, truth_rng);
        const auto data = simulate_calibration(truth, make_calibration_set(c.calibration, n), c.n_cal,
                                               derive_seed(c.seed, kCalibration, n), c.threads);
        const TPNoise tp = fit_tp(data);
        const CTMPModel ctmp = fitted_ctmp(data);
        std::optional<FullNoiseMatrix> exact;
        if (n <= 10 && std::count(c.methods.begin(), c.methods.end(), "exact")) exact = build_full_matrix(truth);

        const CliffordCircuit circuit = graph_state_circuit(n);
        const Tableau tableau = simulate(circuit);
        std::vector<PauliOperator> paulis;
        if (n == 6) {
            paulis = enumerate_stabilizers(tableau);
        } else {
            Rng pick = stage_rng(c.seed, kStabilizers, n);
            for (std::size_t i = 0; i < c.num_stabilizers; ++i) paulis.push_back(stabilizer_sample(tableau, pick));
        }
        std::vector<Mitigator> mitigators;
        for (const auto &m : c.methods) mitigators.push_back(make_mitigator(m, tp, ctmp, exact, c.delta, c.samples));
        const auto runs = measure_stabilizers(circuit, truth, mitigators, paulis, c.shots * c.repeats,
                                              derive_seed(c.seed, kShots, n), c.threads);
        for (std::size_t m = 0; m < c.methods.size(); ++m) {
            double sum = 0, var = 0;
            for (const auto &r : runs) {
                sum += r.per_method[m].xi;
                var += r.per_method[m].std_err * r.per_method[m].std_err;
            }
            const double k = static_cast<double>(runs.size());
            out.rows.push_back({n, c.methods[m], sum / k, std::sqrt(var) / k});
        }
        auto weights = group_by_weight(n, c.methods, runs);
        out.by_weight.insert(out.by_weight.end(), weights.begin(), weights.end());
    }
    return out;
}

std::string graph_csv(const std::vector<GraphRow> &rows) {
    std::string out = csv_header("graph", "n,method,fidelity,std_err");
    for (const auto &r : rows) {
        out += std::to_string(r.n) + "," + r.method + "," + fmt(r.fidelity) + "," + fmt(r.std_err) + "\n";
    }
    return out;
}

std::string weight_csv(const std::vector<WeightRow> &rows) {
    std::string out = csv_header("graph-weights", "n,method,weight,mean,std_err,count");
    for (const auto &r : rows) {
        out += std::to_string(r.n) + "," + r.method + "," + std::to_string(r.weight) + "," + fmt(r.mean) + "," +
               fmt(r.std_err) + "," + std::to_string(r.count) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------- noise strength

std::vector<GammaRow> run_gamma_experiment(const GammaConfig &c) {
    std::vector<GammaRow> rows(c.ns.size());
    for (std::size_t n : c.ns) {
        if (n < 2 || n > kMaxExactGammaQubits) throw ConfigError("gamma: n must be in [2, 24]");
    }
    parallel_chunks(c.ns.size(), c.threads, [&](std::size_t i) {
        const std::size_t n = c.ns[i];
        CTMPModel truth;
        if (c.uniform_rate) {
            truth = CTMPModel::from_tp(TPNoise::uniform(n, *c.uniform_rate, *c.uniform_rate));
        } else {
            Rng truth_rng = stage_rng(c.seed, kTruth, n);
            truth = random_ground_truth(n, line_coupling(n), c.truth, truth_rng);
        }
        const auto data =
            simulate_calibration(truth, make_calibration_set(c.calibration, n), c.n_cal, derive_seed(c.seed, kCalibration, n));
        CTMPModel fit = fit_ctmp(data);
        rows[i] = {n, noise_strength(fit), noise_strength(truth), single_qubit_gamma(truth)};
    });
    return rows;
}

std::string gamma_csv(const std::vector<GammaRow> &rows) {
    std::string out = csv_header("gamma", "n,gamma_fit,gamma_true,gamma_single");
    for (const auto &r : rows) {
        out += std::to_string(r.n) + "," + fmt(r.gamma_fit) + "," + fmt(r.gamma_true) + "," + fmt(r.gamma_single) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------- 20-qubit random Clifford

Clifford20Result run_clifford20_experiment(const Clifford20Config &c) {
    check_methods(c.methods);
    if (c.n < 2 || c.n > 24) throw ConfigError("clifford20: n must be in [2, 24]");
    if (c.shots == 0) throw ConfigError("clifford20: shots must be positive");
    const auto coupling = c.n == 20 ? coupling_map_20q() : line_coupling(c.n);
    Clifford20Result out;
    auto &s = out.summary;

    Rng truth_rng = stage_rng(c.seed, kTruth, c.n);
    CTMPModel truth = random_ground_truth(c.n, coupling, c.truth, truth_rng);
    s.gamma_true = noise_strength(truth);
    Rng circuit_rng = stage_rng(c.seed, kCircuit, c.n);
    s.circuit = random_clifford_circuit(c.n, c.depth, coupling, circuit_rng);

    const auto data = simulate_calibration(truth, make_calibration_set(c.calibration, c.n), c.n_cal,
                                           derive_seed(c.seed, kCalibration, c.n), c.threads);
    const auto t0 = std::chrono::steady_clock::now();
    const CTMPModel ctmp = fitted_ctmp(data);
    s.fit_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    s.gamma_fit = *ctmp.cached_gamma();
    const TPNoise tp = fit_tp(data);
    std::optional<FullNoiseMatrix> exact;
    if (c.n <= 10 && std::count(c.methods.begin(), c.methods.end(), "exact")) exact = build_full_matrix(truth);

    const Tableau tableau = simulate(s.circuit);
    std::vector<PauliOperator> paulis;
    Rng pick = stage_rng(c.seed, kStabilizers, c.n);
    for (std::size_t w = c.min_weight; w <= std::min(c.max_weight, c.n); ++w) {
        try {
            for (std::size_t i = 0; i < c.per_weight; ++i) paulis.push_back(stabilizer_sample_weight(tableau, w, pick));
        } catch (const std::runtime_error &) {
            s.skipped_weights.push_back(w);
        }
    }
    if (paulis.empty()) throw DataError("clifford20: no stabilizers in the requested weight range");

    std::vector<Mitigator> mitigators;
    for (const auto &m : c.methods) mitigators.push_back(make_mitigator(m, tp, ctmp, exact, c.delta, c.samples));
    const auto t1 = std::chrono::steady_clock::now();
    const auto runs = measure_stabilizers(s.circuit, truth, mitigators, paulis, c.shots,
                                          derive_seed(c.seed, kShots, c.n), c.threads);
    s.mitigation_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count() /
                           static_cast<double>(paulis.size());
    out.rows = group_by_weight(c.n, c.methods, runs);
    return out;
}

std::string clifford20_csv(const std::vector<WeightRow> &rows) {
    std::string out = csv_header("clifford20", "weight,method,mean,std_err,count");
    for (const auto &r : rows) {
        out += std::to_string(r.weight) + "," + r.method + "," + fmt(r.mean) + "," + fmt(r.std_err) + "," +
               std::to_string(r.count) + "\n";
    }
    return out;
}

json clifford20_summary_json(const Clifford20Summary &s) {
    return {{"gamma_true", s.gamma_true},
            {"gamma_fit", s.gamma_fit},
            {"fit_seconds", s.fit_seconds},
            {"seconds_per_observable", s.mitigation_seconds},
            {"skipped_weights", s.skipped_weights},
            {"circuit", circuit_to_json(s.circuit)}};
}

// ---------------------------------------------------------------- configs

namespace {

class Reader {
   public:
    explicit Reader(const json &j, const char *what) : j_(j), what_(what) {
        if (!j.is_object()) throw ConfigError(std::string(what) + " config must be a JSON object");
    }

    template <class T>
    void get(const char *key, T &out) {
        seen_.insert(key);
        if (!j_.contains(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception &e) {
            throw ConfigError(std::string(what_) + "." + key + ": " + e.what());
        }
    }

    template <class T>
    void get_optional(const char *key, std::optional<T> &out) {
        seen_.insert(key);
        if (!j_.contains(key)) return;
        if (j_.at(key).is_null()) {
            out.reset();
            return;
        }
        T v{};
        get(key, v);
        out = v;
    }

    void kind(const char *key, CalibrationKind &out) {
        std::string s;
        get(key, s);
        if (!s.empty()) {
            try {
                out = parse_calibration_kind(s);
            } catch (const std::invalid_argument &e) {
                throw ConfigError(e.what());
            }
        }
    }

    void truth(GroundTruthOptions &o) {
        seen_.insert("truth");
        if (!j_.contains("truth")) return;
        Reader r(j_.at("truth"), "truth");
        r.get("rate_mean", o.rate_mean);
        r.get("rate_spread", o.rate_spread);
        r.get("rate_min", o.rate_min);
        r.get("rate_max", o.rate_max);
        r.get("pair_rate_max", o.pair_rate_max);
        r.finish();
    }

    void finish() const {
        for (const auto &[k, v] : j_.items()) {
            if (!seen_.count(k)) throw ConfigError(std::string(what_) + ": unknown key '" + k + "'");
        }
    }

   private:
    const json &j_;
    const char *what_;
    std::set<std::string> seen_ = {"experiment", "seed", "threads", "out"};
};

}  // namespace

TvdConfig tvd_config_from_json(const json &j) {
    TvdConfig c;
    Reader r(j, "tvd");
    r.get("ns", c.ns);
    r.get("repeats", c.repeats);
    r.get("n_cal", c.n_cal);
    r.truth(c.truth);
    std::string kind;
    r.get("pair_kind", kind);
    if (!kind.empty()) {
        try {
            c.pair_kind = parse_flip_kind(kind);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(e.what());
        }
    }
    r.get("pair_first", c.pair_first);
    r.get("pair_second", c.pair_second);
    r.get("pair_rate", c.pair_rate);
    r.finish();
    return c;
}

GraphConfig graph_config_from_json(const json &j) {
    GraphConfig c;
    Reader r(j, "graph");
    r.get("ns", c.ns);
    r.get("methods", c.methods);
    r.kind("calibration", c.calibration);
    r.get("n_cal", c.n_cal);
    r.get("shots", c.shots);
    r.get("repeats", c.repeats);
    r.get("num_stabilizers", c.num_stabilizers);
    r.get("delta", c.delta);
    r.get_optional("samples", c.samples);
    r.truth(c.truth);
    r.finish();
    return c;
}

GammaConfig gamma_config_from_json(const json &j) {
    GammaConfig c;
    Reader r(j, "gamma");
    r.get("ns", c.ns);
    r.kind("calibration", c.calibration);
    r.get("n_cal", c.n_cal);
    r.get_optional("uniform_rate", c.uniform_rate);
    r.truth(c.truth);
    r.finish();
    return c;
}

Clifford20Config clifford20_config_from_json(const json &j) {
    Clifford20Config c;
    Reader r(j, "clifford20");
    r.get("n", c.n);
    r.get("depth", c.depth);
    r.get("methods", c.methods);
    r.kind("calibration", c.calibration);
    r.get("n_cal", c.n_cal);
    r.get("shots", c.shots);
    r.get("per_weight", c.per_weight);
    r.get("min_weight", c.min_weight);
    r.get("max_weight", c.max_weight);
    r.get("delta", c.delta);
    r.get_optional("samples", c.samples);
    r.truth(c.truth);
    r.finish();
    return c;
}

}  // namespace readmit
