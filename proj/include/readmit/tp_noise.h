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

#ifndef READMIT_TP_NOISE_H
#define READMIT_TP_NOISE_H

#include <cstddef>
#include <vector>

namespace readmit {

/// Independent per-qubit readout noise: qubit j reads 0 as 1 with probability
/// eps[j-1] and 1 as 0 with probability eta[j-1].
class TPNoise {
   public:
    TPNoise() = default;
    /// Requires equal lengths, rates in [0, 1] and eps + eta < 1 per qubit.
    TPNoise(std::vector<double> eps, std::vector<double> eta);
    static TPNoise uniform(std::size_t n, double eps, double eta);

    std::size_t num_qubits() const {
        return eps_.size();
    }
    /// Rates indexed from 0 (entry 0 is qubit 1).
    const std::vector<double> &eps() const {
        return eps_;
    }
    const std::vector<double> &eta() const {
        return eta_;
    }
    double eps(std::size_t qubit) const {
        return eps_.at(qubit - 1);
    }
    double eta(std::size_t qubit) const {
        return eta_.at(qubit - 1);
    }

   private:
    std::vector<double> eps_;
    std::vector<double> eta_;
};

}  // namespace readmit

#endif  // READMIT_TP_NOISE_H
