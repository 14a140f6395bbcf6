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

#ifndef READMIT_EXPERIMENTS_H
#define READMIT_EXPERIMENTS_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "readmit/calibration.h"
#include "readmit/ctmp_model.h"
#include "readmit/io.h"
#include "readmit/stabilizer.h"

namespace readmit {

/// First line of every experiment CSV; bump when columns change.
inline constexpr const char *kCsvVersion = "# readmit-csv v1";

/// Simulated device: per-qubit readout rates from a clipped normal (defaults
/// follow typical superconducting-qubit readout errors of 3.44% +- 1.72%) and
/// one random two-qubit generator per coupling edge with rate below
/// `pair_rate_max`.
struct GroundTruthOptions {
    double rate_mean = 0.0344;
    double rate_spread = 0.0172;
    double rate_min = 0.005;
    double rate_max = 0.08;
    double pair_rate_max = 0.01;
};

CTMPModel random_ground_truth(std::size_t n, const std::vector<QubitPair> &edges, const GroundTruthOptions &options,
                              Rng &rng);

/// Keeps the terms of `model` supported on qubits 1..n.
CTMPModel restrict_model(const CTMPModel &model, std::size_t n);

/// Sum over qubits of L_j max(eps_j, eta_j) with the single-qubit rates of
/// `model`, i.e. the noise strength without its pair terms.
double single_qubit_gamma(const CTMPModel &model);

// ---------------------------------------------------------------- TVD

struct TvdConfig {
    std::vector<std::size_t> ns = {4, 5, 6, 7};
    std::size_t repeats = 16;
    std::uint64_t n_cal = 8192;
    GroundTruthOptions truth;
    /// The correlated term added to the ground truth; rate 0 disables it.
    FlipKind pair_kind = FlipKind::Lower11To00;
    std::size_t pair_first = 1;
    std::size_t pair_second = 2;
    double pair_rate = 0.03;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct TvdRow {
    std::size_t n;
    std::size_t repeat;
    double tvd_ctmp;
    double tvd_tp;
};

/// Registers are nested (qubits 1..n of one simulated device). Each repeat
/// draws a weight-2 calibration (for the TP and CTMP fits) and a full
/// calibration (for A_full) from the ground truth.
std::vector<TvdRow> run_tvd_experiment(const TvdConfig &config);
std::string tvd_csv(const std::vector<TvdRow> &rows);

// ---------------------------------------------------------------- graph states

struct GraphConfig {
    std::vector<std::size_t> ns = {4, 6, 8, 10, 12};
    /// raw, tp, ctmp, exact (exact inverse of the true A, n <= 10).
    std::vector<std::string> methods = {"raw", "tp", "ctmp"};
    CalibrationKind calibration = CalibrationKind::Weight2;
    std::uint64_t n_cal = 8192;
    std::size_t shots = 8192;
    std::size_t repeats = 16;  // shots per stabilizer = shots * repeats
    /// Group elements drawn uniformly per n; n = 6 always uses all 64.
    std::size_t num_stabilizers = 64;
    double delta = 0.05;
    std::optional<std::uint64_t> samples;
    GroundTruthOptions truth;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct GraphRow {
    std::size_t n;
    std::string method;
    double fidelity;
    double std_err;
};

struct WeightRow {
    std::size_t n;  // register size
    std::string method;
    std::size_t weight;
    double mean;
    double std_err;
    std::size_t count;
};

struct GraphResult {
    std::vector<GraphRow> rows;
    std::vector<WeightRow> by_weight;
};

GraphResult run_graph_experiment(const GraphConfig &config);
std::string graph_csv(const std::vector<GraphRow> &rows);
std::string weight_csv(const std::vector<WeightRow> &rows);

// ---------------------------------------------------------------- noise strength

struct GammaConfig {
    std::vector<std::size_t> ns = {4, 5, 6, 7, 8, 9, 10, 11, 12};
    CalibrationKind calibration = CalibrationKind::Weight2;
    std::uint64_t n_cal = 8192;
    /// Per-qubit eps = eta; when unset, rates come from `truth`.
    std::optional<double> uniform_rate = 0.05;
    GroundTruthOptions truth{0.05, 0.0, 0.0, 1.0, 0.0};
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct GammaRow {
    std::size_t n;
    double gamma_fit;
    double gamma_true;
    double gamma_single;  // sum_j L_j max(eps_j, eta_j) of the ground truth
};

std::vector<GammaRow> run_gamma_experiment(const GammaConfig &config);
std::string gamma_csv(const std::vector<GammaRow> &rows);

// ---------------------------------------------------------------- 20-qubit random Clifford

struct Clifford20Config {
    std::size_t n = 20;
    std::size_t depth = 4;
    std::vector<std::string> methods = {"raw", "tp", "ctmp"};
    CalibrationKind calibration = CalibrationKind::Hadamard;
    std::uint64_t n_cal = 8192;
    std::size_t shots = 8192;
    std::size_t per_weight = 25;
    std::size_t min_weight = 1;
    std::size_t max_weight = 20;
    double delta = 0.05;
    std::optional<std::uint64_t> samples;
    GroundTruthOptions truth;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct Clifford20Summary {
    double gamma_true = 0;
    double gamma_fit = 0;
    double fit_seconds = 0;
    double mitigation_seconds = 0;  // per CTMP observable, single stream
    std::vector<std::size_t> skipped_weights;
    CliffordCircuit circuit;
};

struct Clifford20Result {
    std::vector<WeightRow> rows;
    Clifford20Summary summary;
};

Clifford20Result run_clifford20_experiment(const Clifford20Config &config);
std::string clifford20_csv(const std::vector<WeightRow> &rows);
json clifford20_summary_json(const Clifford20Summary &summary);

// ---------------------------------------------------------------- configs

/// Fill a config from JSON; absent keys keep their defaults. Unknown keys are
/// rejected with ConfigError.
TvdConfig tvd_config_from_json(const json &j);
GraphConfig graph_config_from_json(const json &j);
GammaConfig gamma_config_from_json(const json &j);
Clifford20Config clifford20_config_from_json(const json &j);

}  // namespace readmit

#endif  // READMIT_EXPERIMENTS_H
