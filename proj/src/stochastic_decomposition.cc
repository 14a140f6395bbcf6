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

#include "readmit/stochastic_decomposition.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "readmit/error.h"

namespace readmit {

namespace {

std::size_t count_nonzeros(const Eigen::MatrixXd &m) {
    std::size_t k = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) k += m(i, j) != 0.0;
    }
    return k;
}

void flush_small(Eigen::MatrixXd &m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (std::abs(m(i, j)) < kDecompositionZero) m(i, j) = 0.0;
        }
    }
}

int sign_of(double v) {
    return (v > 0) - (v < 0);
}

// Row of the largest-magnitude entry of column j with the given sign, or -1.
Eigen::Index largest_with_sign(const Eigen::MatrixXd &m, Eigen::Index j, int sign) {
    Eigen::Index best = -1;
    double best_mag = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        double v = m(i, j);
        if (sign_of(v) == sign && std::abs(v) > best_mag) {
            best_mag = std::abs(v);
            best = i;
        }
    }
    return best;
}

}  // namespace

std::optional<double> column_sums_equal(const Eigen::MatrixXd &m) {
    if (m.rows() == 0 || m.cols() == 0) return std::nullopt;
    const Eigen::RowVectorXd sums = m.colwise().sum();
    if (sums.maxCoeff() - sums.minCoeff() > kColumnSumTolerance) return std::nullopt;
    return sums.mean();
}

double gamma_of(const Eigen::MatrixXd &m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

Eigen::MatrixXd DeterministicMap::dense() const {
    const auto dim = static_cast<Eigen::Index>(target.size());
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) s(target[static_cast<std::size_t>(j)], j) = 1.0;
    return s;
}

Eigen::MatrixXd StochasticDecomposition::reconstruct() const {
    if (maps.empty()) return Eigen::MatrixXd();
    const auto dim = static_cast<Eigen::Index>(maps.front().target.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t a = 0; a < maps.size(); ++a) {
        for (Eigen::Index j = 0; j < dim; ++j) m(maps[a].target[static_cast<std::size_t>(j)], j) += coeffs[a];
    }
    return m;
}

StochasticDecomposition decompose_min_norm(const Eigen::MatrixXd &m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("decompose_min_norm: need a square matrix");
    if (m.rows() > kMaxDecompositionDim) {
        throw std::invalid_argument("decompose_min_norm: dimension " + std::to_string(m.rows()) + " exceeds 256");
    }
    if (!column_sums_equal(m)) {
        throw std::invalid_argument("decompose_min_norm: column sums differ; no stochastic decomposition exists");
    }
    const Eigen::Index dim = m.rows();
    Eigen::MatrixXd work = m;
    flush_small(work);

    StochasticDecomposition out;
    std::size_t nonzeros = count_nonzeros(work);
    // Each step either zeroes an entry or (zero-sum case) moves to a
    // non-zero sum; this bound is far above any legitimate run.
    const std::size_t max_steps = 4 * static_cast<std::size_t>(dim * dim) + 16;
    while (nonzeros > 0) {
        if (out.steps.size() >= max_steps) throw NumericError("decompose_min_norm: construction did not terminate");
        const double sigma = work.colwise().sum().mean();
        const bool zero_sum = std::abs(sigma) <= kColumnSumTolerance;

        // Pick omega: smallest magnitude non-zero entry, restricted to the sign
        // of sigma when sigma != 0.
        Eigen::Index oi = -1, oj = -1;
        double omega_mag = INFINITY;
        const int want = zero_sum ? 0 : sign_of(sigma);
        for (Eigen::Index j = 0; j < dim; ++j) {
            for (Eigen::Index i = 0; i < dim; ++i) {
                double v = work(i, j);
                if (v == 0.0 || (want != 0 && sign_of(v) != want)) continue;
                if (std::abs(v) < omega_mag) {
                    omega_mag = std::abs(v);
                    oi = i;
                    oj = j;
                }
            }
        }
        if (oi < 0) throw NumericError("decompose_min_norm: no entry carries the sign of the column sum");
        const double omega = work(oi, oj);
        const int sign = sign_of(omega);

        DeterministicMap f;
        f.target.resize(static_cast<std::size_t>(dim));
        for (Eigen::Index j = 0; j < dim; ++j) {
            Eigen::Index row = j == oj ? oi : largest_with_sign(work, j, sign);
            if (row < 0) {
                if (!zero_sum) throw NumericError("decompose_min_norm: column lacks an entry with the sum's sign");
                row = j;  // zero column: any target works
            }
            f.target[static_cast<std::size_t>(j)] = row;
        }

        DecompositionStep step;
        step.zero_sum_case = zero_sum;
        step.omega = omega;
        step.nonzeros_before = nonzeros;
        step.gamma_before = gamma_of(work);
        for (Eigen::Index j = 0; j < dim; ++j) work(f.target[static_cast<std::size_t>(j)], j) -= omega;
        work(oi, oj) = 0.0;
        flush_small(work);
        nonzeros = count_nonzeros(work);
        step.nonzeros_after = nonzeros;
        step.gamma_after = gamma_of(work);

        out.coeffs.push_back(omega);
        out.maps.push_back(std::move(f));
        out.norm += std::abs(omega);
        out.steps.push_back(step);
    }
    return out;
}

}  // namespace readmit
