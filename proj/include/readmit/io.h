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

#ifndef READMIT_IO_H
#define READMIT_IO_H

#include <json.hpp>
#include <string>
#include <string_view>

#include "readmit/calibration.h"
#include "readmit/mitigation.h"
#include "readmit/noise_model.h"
#include "readmit/observable.h"
#include "readmit/shots.h"
#include "readmit/stabilizer.h"
#include "readmit/stochastic_decomposition.h"

namespace readmit {

using json = nlohmann::json;

// Every *_from_json throws ConfigError with a description of the offending
// field. Bit strings are '0'/'1' text with qubit 1 leftmost.

/// {"n", "kind": "tp", "eps": [...], "eta": [...]}
/// {"n", "kind": "ctmp", "terms": [{"kind": "01->10", "qubits": [j, k], "rate": r}]}
/// {"n", "kind": "full", "layout": "a[y][x]", "a": [[...], ...]} with row y,
/// column x holding P(y | x).
json noise_model_to_json(const NoiseModel &model);
NoiseModel noise_model_from_json(const json &j);

/// {"n", "n_cal", "records": [{"input": "0101", "counts": {"0101": 8100}}]}
json calibration_to_json(const CalibrationData &data);
CalibrationData calibration_from_json(const json &j);

/// {"n", "kind", "inputs": ["0000", ...]}
json calibration_set_to_json(const CalibrationSet &set);
CalibrationSet calibration_set_from_json(const json &j);

/// {"n", "gates": [{"g": "CZ", "q": [1, 2]}, {"g": "C1", "q": [3], "index": 17}]}
json circuit_to_json(const CliffordCircuit &circuit);
CliffordCircuit circuit_from_json(const json &j);

/// {"n", "shots": ["0101", ...]} or {"n", "counts": {"0101": 12, ...}}.
/// Counts expand in ascending outcome order.
json shots_to_json(const ShotSet &shots);
ShotSet shots_from_json(const json &j);

json result_to_json(const MitigationResult &result);
json overhead_to_json(const OverheadReport &report);
json decomposition_to_json(const StochasticDecomposition &d);

/// "+Z1Z3", "-Z2", "Z1" or "+I" on an n-qubit register.
DiagonalObservable parse_observable(std::string_view text, std::size_t n);

json read_json_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

}  // namespace readmit

#endif  // READMIT_IO_H
