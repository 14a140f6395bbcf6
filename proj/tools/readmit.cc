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

// readmit command-line driver.
//
// Every subcommand accepts --config FILE.json whose keys (option names with
// '-' written as '_') provide defaults; explicit flags win. Exit status is 0
// on success, 2 for configuration errors and 3 for numeric or model errors.

#include <CLI11.hpp>
#include <cstdint>
#include <cstring>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "readmit/calibration.h"
#include "readmit/error.h"
#include "readmit/experiments.h"
#include "readmit/io.h"
#include "readmit/mitigation.h"
#include "readmit/noise_model.h"
#include "readmit/noise_strength.h"
#include "readmit/pipeline.h"
#include "readmit/stabilizer.h"

using namespace readmit;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Common {
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::string out;
    std::string config;
};

void add_common(CLI::App *cmd, Common &c, bool seed_required) {
    cmd->add_option("--seed", c.seed, seed_required ? "RNG seed (required)" : "RNG seed");
    cmd->add_option("--threads", c.threads, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
    cmd->add_option("-o,--out", c.out, "output file (default: stdout)");
    cmd->add_option("--config", c.config, "JSON file with option defaults");
}

std::uint64_t need_seed(const Common &c) {
    if (!c.seed) throw ConfigError("--seed is required (seeds are never defaulted)");
    return *c.seed;
}

void emit(const Common &c, const std::string &text) {
    if (c.out.empty() || c.out == "-") {
        std::cout << text;
    } else {
        write_text_file(c.out, text);
    }
}

// Config defaults are read before CLI11 parses, so flags overwrite them.
json prescan_config(int argc, char **argv) {
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        std::string path;
        if (a == "--config" && i + 1 < argc) path = argv[i + 1];
        if (a.rfind("--config=", 0) == 0) path = a.substr(9);
        if (!path.empty()) return read_json_file(path);
    }
    return json::object();
}

class Defaults {
   public:
    explicit Defaults(json j) : j_(std::move(j)) {
    }

    template <class T>
    void take(const char *key, T &out) {
        used_.push_back(key);
        if (!j_.contains(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception &e) {
            throw ConfigError(std::string("config key '") + key + "': " + e.what());
        }
    }
    template <class T>
    void take(const char *key, std::optional<T> &out) {
        used_.push_back(key);
        if (!j_.contains(key)) return;
        T v{};
        take(key, v);
        out = v;
    }
    void common(Common &c) {
        take("seed", c.seed);
        take("threads", c.threads);
        take("out", c.out);
    }
    // Rejects keys no option claimed.
    void finish() const {
        for (const auto &[k, v] : j_.items()) {
            if (std::find(used_.begin(), used_.end(), k) == used_.end()) {
                throw ConfigError("unknown config key '" + k + "'");
            }
        }
    }
    const json &raw() const {
        return j_;
    }

   private:
    json j_;
    std::vector<std::string> used_ = {"config"};
};

// ---------------------------------------------------------------- calibrate

struct CalibrateOpts {
    Common c;
    std::string model;
    std::string kind = "weight1";
    std::string inputs;
    std::uint64_t n_cal = 8192;
    std::string fit;
    std::string fit_out;
};

int run_calibrate(const CalibrateOpts &o) {
    if (o.model.empty()) throw ConfigError("calibrate: --model is required");
    const NoiseModel model = noise_model_from_json(read_json_file(o.model));
    const std::size_t n = num_qubits(model);
    CalibrationSet set = o.inputs.empty() ? make_calibration_set(parse_calibration_kind(o.kind), n)
                                          : calibration_set_from_json(read_json_file(o.inputs));
    const auto data = simulate_calibration(model, set, o.n_cal, need_seed(o.c), o.c.threads);
    emit(o.c, calibration_to_json(data).dump(1) + "\n");
    if (!o.fit.empty()) {
        json fitted;
        if (o.fit == "tp") {
            fitted = noise_model_to_json(fit_tp(data));
        } else if (o.fit == "ctmp") {
            fitted = noise_model_to_json(fit_ctmp(data));
        } else if (o.fit == "full") {
            fitted = noise_model_to_json(fit_full(data));
        } else {
            throw ConfigError("--fit must be tp, ctmp or full");
        }
        if (o.fit_out.empty()) {
            std::cerr << fitted.dump(1) << "\n";
        } else {
            write_text_file(o.fit_out, fitted.dump(1) + "\n");
        }
    }
    return 0;
}

// ---------------------------------------------------------------- fit

struct FitOpts {
    Common c;
    std::string data;
    std::string kind = "ctmp";
    bool gamma = true;
};

int run_fit(const FitOpts &o) {
    if (o.data.empty()) throw ConfigError("fit: --data is required");
    const CalibrationData data = calibration_from_json(read_json_file(o.data));
    json out;
    if (o.kind == "tp") {
        out = noise_model_to_json(fit_tp(data));
    } else if (o.kind == "full") {
        out = noise_model_to_json(fit_full(data));
    } else if (o.kind == "ctmp") {
        CTMPModel model = fit_ctmp(data);
        if (o.gamma) {
            NoiseStrengthOptions ns;
            if (model.num_qubits() > kMaxExactGammaQubits) ns.annealing.seed = need_seed(o.c);
            noise_strength(model, ns);
        }
        out = noise_model_to_json(model);
    } else {
        throw ConfigError("fit: --model-kind must be tp, ctmp or full");
    }
    emit(o.c, out.dump(1) + "\n");
    return 0;
}

// ---------------------------------------------------------------- simulate-shots

struct ShotsOpts {
    Common c;
    std::string circuit;
    std::size_t graph = 0;
    std::string pauli;
    std::string model;
    std::size_t shots = 8192;
};

int run_simulate_shots(const ShotsOpts &o) {
    CliffordCircuit circuit;
    if (!o.circuit.empty()) {
        circuit = circuit_from_json(read_json_file(o.circuit));
    } else if (o.graph >= 2) {
        circuit = graph_state_circuit(o.graph);
    } else {
        throw ConfigError("simulate-shots: give --circuit FILE or --graph N");
    }
    const std::size_t n = circuit.num_qubits();
    CliffordCircuit rotation(n);
    json meta = json::object();
    if (!o.pauli.empty()) {
        const PauliOperator p = PauliOperator::parse(o.pauli);
        if (p.num_qubits() != n) throw ConfigError("--pauli length differs from the circuit width");
        auto setting = pauli_to_measurement(p);
        rotation = setting.rotation;
        meta["observable"] = setting.observable.str();
    }
    Rng rng = make_stream(need_seed(o.c), 0);
    ShotSet shots = o.model.empty()
                        ? sample_ideal(circuit, rotation, o.shots, rng)
                        : sample_noisy_shots(circuit, rotation, noise_model_from_json(read_json_file(o.model)), o.shots, rng);
    json out = shots_to_json(shots);
    for (auto &[k, v] : meta.items()) out[k] = v;
    emit(o.c, out.dump() + "\n");
    return 0;
}

// ---------------------------------------------------------------- mitigate

struct MitigateOpts {
    Common c;
    std::string shots;
    std::string model;
    std::string observable;
    std::string method = "ctmp";
    double delta = 0.01;
    std::optional<std::uint64_t> samples;
    std::optional<double> gamma;
    bool tp_sampling = false;
};

int run_mitigate(const MitigateOpts &o) {
    if (o.shots.empty()) throw ConfigError("mitigate: --shots is required");
    const json shots_json = read_json_file(o.shots);
    const ShotSet shots = shots_from_json(shots_json);
    const std::size_t n = shots.num_qubits();
    std::string obs_text = o.observable;
    if (obs_text.empty() && shots_json.contains("observable")) obs_text = shots_json.at("observable").get<std::string>();
    if (obs_text.empty()) throw ConfigError("mitigate: --observable is required");
    const DiagonalObservable obs = parse_observable(obs_text, n);

    Mitigator m;
    m.sampler.delta = o.delta;
    m.sampler.samples = o.samples;
    m.sampler.gamma = o.gamma;
    m.sampler.seed = need_seed(o.c);
    m.sampler.threads = o.c.threads;
    m.tp_sampling = o.tp_sampling;
    const MitigationMethod method = parse_mitigation_method(o.method);
    std::optional<NoiseModel> model;
    if (method != MitigationMethod::Raw) {
        if (o.model.empty()) throw ConfigError("mitigate: --model is required for method " + o.method);
        model = noise_model_from_json(read_json_file(o.model));
        if (num_qubits(*model) != n) throw ConfigError("mitigate: model and shots differ in width");
    }
    json overhead;
    switch (method) {
        case MitigationMethod::Raw:
            break;
        case MitigationMethod::Exact:
            m.model = build_full_matrix(*model);
            overhead = overhead_to_json(overhead_report(std::get<FullNoiseMatrix>(m.model), o.delta));
            break;
        case MitigationMethod::TpAlg2: {
            const auto *tp = std::get_if<TPNoise>(&*model);
            if (!tp) throw ConfigError("mitigate: method tp needs a tp noise model");
            m.model = *tp;
            overhead = overhead_to_json(overhead_report(*tp, o.delta));
            break;
        }
        case MitigationMethod::CtmpAlg1: {
            CTMPModel ctmp;
            if (const auto *tp = std::get_if<TPNoise>(&*model)) {
                ctmp = CTMPModel::from_tp(*tp);
            } else if (const auto *c = std::get_if<CTMPModel>(&*model)) {
                ctmp = *c;
            } else {
                throw ConfigError("mitigate: method ctmp needs a tp or ctmp noise model");
            }
            if (!ctmp.cached_gamma()) {
                NoiseStrengthOptions ns;
                ns.annealing.seed = m.sampler.seed;
                noise_strength(ctmp, ns);
            }
            m.model = ctmp;
            overhead = overhead_to_json(overhead_report(ctmp, o.delta, m.sampler));
            break;
        }
    }
    json out = result_to_json(mitigate(shots, obs, m));
    out["observable"] = obs.str();
    if (!overhead.is_null()) out["overhead"] = overhead;
    emit(o.c, out.dump(1) + "\n");
    return 0;
}

// ---------------------------------------------------------------- experiment

struct ExperimentOpts {
    Common c;
    std::string name;
    std::optional<std::uint64_t> n_cal;
    std::optional<std::size_t> repeats;
    std::optional<std::size_t> shots;
    std::optional<double> delta;
    std::optional<std::uint64_t> samples;
    std::vector<std::size_t> ns;
    std::string weights_out;
    std::string summary_out;
};

int run_experiment(const ExperimentOpts &o, const json &config) {
    json cfg = config;
    for (const char *k : {"seed", "threads", "out", "experiment", "weights_out", "summary_out"}) cfg.erase(k);
    const std::uint64_t seed = need_seed(o.c);
    if (o.name == "tvd") {
        TvdConfig c = tvd_config_from_json(cfg);
        c.seed = seed;
        c.threads = o.c.threads;
        if (o.n_cal) c.n_cal = *o.n_cal;
        if (o.repeats) c.repeats = *o.repeats;
        if (!o.ns.empty()) c.ns = o.ns;
        emit(o.c, tvd_csv(run_tvd_experiment(c)));
    } else if (o.name == "graph") {
        GraphConfig c = graph_config_from_json(cfg);
        c.seed = seed;
        c.threads = o.c.threads;
        if (o.n_cal) c.n_cal = *o.n_cal;
        if (o.repeats) c.repeats = *o.repeats;
        if (o.shots) c.shots = *o.shots;
        if (o.delta) c.delta = *o.delta;
        if (o.samples) c.samples = o.samples;
        if (!o.ns.empty()) c.ns = o.ns;
        const auto r = run_graph_experiment(c);
        emit(o.c, graph_csv(r.rows));
        if (!o.weights_out.empty()) write_text_file(o.weights_out, weight_csv(r.by_weight));
    } else if (o.name == "gamma") {
        GammaConfig c = gamma_config_from_json(cfg);
        c.seed = seed;
        c.threads = o.c.threads;
        if (o.n_cal) c.n_cal = *o.n_cal;
        if (!o.ns.empty()) c.ns = o.ns;
        emit(o.c, gamma_csv(run_gamma_experiment(c)));
    } else if (o.name == "clifford20") {
        Clifford20Config c = clifford20_config_from_json(cfg);
        c.seed = seed;
        c.threads = o.c.threads;
        if (o.n_cal) c.n_cal = *o.n_cal;
        if (o.shots) c.shots = *o.shots;
        if (o.delta) c.delta = *o.delta;
        if (o.samples) c.samples = o.samples;
        const auto r = run_clifford20_experiment(c);
        emit(o.c, clifford20_csv(r.rows));
        const std::string summary = clifford20_summary_json(r.summary).dump(1) + "\n";
        if (o.summary_out.empty()) {
            std::cerr << summary;
        } else {
            write_text_file(o.summary_out, summary);
        }
    } else {
        throw ConfigError("unknown experiment '" + o.name + "'");
    }
    return 0;
}

std::string subcommand_of(int argc, char **argv) {
    for (int i = 1; i < argc; ++i) {
        if (argv[i][0] != '-') return argv[i];
    }
    return {};
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"readmit: readout-error mitigation with tensor-product and CTMP noise models"};
    app.require_subcommand(1);

    CalibrateOpts cal;
    FitOpts fit;
    ShotsOpts sim;
    MitigateOpts mit;
    ExperimentOpts exp;
    json config;
    try {
        config = prescan_config(argc, argv);
        Defaults d(config);
        const std::string sub = subcommand_of(argc, argv);
        if (sub == "calibrate") {
            d.common(cal.c);
            d.take("model", cal.model);
            d.take("kind", cal.kind);
            d.take("inputs", cal.inputs);
            d.take("n_cal", cal.n_cal);
            d.take("fit", cal.fit);
            d.take("fit_out", cal.fit_out);
            d.finish();
        } else if (sub == "fit") {
            d.common(fit.c);
            d.take("data", fit.data);
            d.take("model_kind", fit.kind);
            d.finish();
        } else if (sub == "simulate-shots") {
            d.common(sim.c);
            d.take("circuit", sim.circuit);
            d.take("graph", sim.graph);
            d.take("pauli", sim.pauli);
            d.take("model", sim.model);
            d.take("shots", sim.shots);
            d.finish();
        } else if (sub == "mitigate") {
            d.common(mit.c);
            d.take("shots", mit.shots);
            d.take("model", mit.model);
            d.take("observable", mit.observable);
            d.take("method", mit.method);
            d.take("delta", mit.delta);
            d.take("samples", mit.samples);
            d.take("gamma", mit.gamma);
            d.take("tp_sampling", mit.tp_sampling);
            d.finish();
        } else if (sub == "experiment") {
            d.common(exp.c);
            d.take("experiment", exp.name);
            d.take("weights_out", exp.weights_out);
            d.take("summary_out", exp.summary_out);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    auto *c_cal = app.add_subcommand("calibrate", "simulate calibration rounds for a noise model");
    add_common(c_cal, cal.c, true);
    c_cal->add_option("--model", cal.model, "ground-truth noise model JSON");
    c_cal->add_option("--kind", cal.kind, "weight1 | weight2 | hadamard | full");
    c_cal->add_option("--inputs", cal.inputs, "custom calibration set JSON (overrides --kind)");
    c_cal->add_option("--n-cal", cal.n_cal, "rounds per input state");
    c_cal->add_option("--fit", cal.fit, "also fit tp | ctmp | full from the simulated data");
    c_cal->add_option("--fit-out", cal.fit_out, "where to write the fitted model (default: stderr)");

    auto *c_fit = app.add_subcommand("fit", "fit a noise model from calibration counts");
    add_common(c_fit, fit.c, false);
    c_fit->add_option("--data", fit.data, "calibration JSON");
    c_fit->add_option("--model-kind", fit.kind, "tp | ctmp | full");

    auto *c_sim = app.add_subcommand("simulate-shots", "sample (noisy) measurement outcomes of a Clifford circuit");
    add_common(c_sim, sim.c, true);
    c_sim->add_option("--circuit", sim.circuit, "circuit JSON");
    c_sim->add_option("--graph", sim.graph, "use the n-qubit line graph state");
    c_sim->add_option("--pauli", sim.pauli, "measure this Pauli, e.g. -XZIY (adds the basis rotation)");
    c_sim->add_option("--model", sim.model, "readout noise model JSON (omit for ideal readout)");
    c_sim->add_option("--shots", sim.shots, "number of shots");

    auto *c_mit = app.add_subcommand("mitigate", "error-mitigated mean of a parity observable");
    add_common(c_mit, mit.c, true);
    c_mit->add_option("--shots", mit.shots, "shots JSON");
    c_mit->add_option("--model", mit.model, "noise model JSON used for mitigation");
    c_mit->add_option("--observable", mit.observable, "parity observable such as +Z1Z3");
    c_mit->add_option("--method", mit.method, "exact | tp | ctmp | raw");
    c_mit->add_option("--delta", mit.delta, "target precision");
    c_mit->add_option("--samples", mit.samples, "override the inner sample count T");
    c_mit->add_option("--gamma", mit.gamma, "override the CTMP noise strength (must not be smaller)");
    c_mit->add_flag("--tp-sampling", mit.tp_sampling, "sample per-qubit quasi-probabilities instead of using the product formula");

    auto *c_exp = app.add_subcommand("experiment", "run a desk-scale experiment and write CSV");
    add_common(c_exp, exp.c, true);
    c_exp->add_option("name", exp.name, "tvd | graph | gamma | clifford20");
    c_exp->add_option("--n-cal", exp.n_cal, "calibration rounds per input");
    c_exp->add_option("--repeats", exp.repeats, "repeats (tvd) or shot multiplier (graph)");
    c_exp->add_option("--shots", exp.shots, "shots per stabilizer");
    c_exp->add_option("--delta", exp.delta, "mitigation precision");
    c_exp->add_option("--samples", exp.samples, "inner samples per observable");
    c_exp->add_option("--n", exp.ns, "register sizes")->delimiter(',');
    c_exp->add_option("--weights-out", exp.weights_out, "graph: per-weight CSV path");
    c_exp->add_option("--summary-out", exp.summary_out, "clifford20: summary JSON path (default: stderr)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (c_cal->parsed()) return run_calibrate(cal);
        if (c_fit->parsed()) return run_fit(fit);
        if (c_sim->parsed()) return run_simulate_shots(sim);
        if (c_mit->parsed()) return run_mitigate(mit);
        if (c_exp->parsed()) return run_experiment(exp, config);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const json::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
