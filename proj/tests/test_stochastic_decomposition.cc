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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.h"
#include "oracles.h"
#include "readmit/random.h"
#include "readmit/stochastic_decomposition.h"

namespace readmit {
namespace {

Eigen::MatrixXd two_by_two() {
    Eigen::MatrixXd a(2, 2);
    a << 0.9, 0.2, 0.1, 0.8;
    return a;
}

// Sum of absolute column entries, maximised, computed by hand.
double max_abs_column(const Eigen::MatrixXd &m) {
    double best = 0;
    for (int j = 0; j < m.cols(); ++j) {
        double s = 0;
        for (int i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

std::size_t nonzeros(const Eigen::MatrixXd &m) {
    std::size_t c = 0;
    for (int j = 0; j < m.cols(); ++j) {
        for (int i = 0; i < m.rows(); ++i) c += std::abs(m(i, j)) >= kDecompositionZero;
    }
    return c;
}

void expect_valid(const StochasticDecomposition &d, const Eigen::MatrixXd &m, double tol = 1e-10) {
    ASSERT_EQ(d.coeffs.size(), d.maps.size());
    double norm = 0;
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(m.rows(), m.cols());
    for (std::size_t a = 0; a < d.maps.size(); ++a) {
        const Eigen::MatrixXd s = d.maps[a].dense();
        for (int j = 0; j < s.cols(); ++j) EXPECT_NEAR(s.col(j).sum(), 1.0, 1e-12);
        EXPECT_GE(s.minCoeff(), 0.0);
        sum += d.coeffs[a] * s;
        norm += std::abs(d.coeffs[a]);
    }
    EXPECT_NEAR(d.norm, norm, 1e-12);
    EXPECT_LE((sum - m).cwiseAbs().maxCoeff(), tol);
    EXPECT_LT((d.reconstruct() - m).cwiseAbs().maxCoeff(), tol);
}

TEST(ColumnSums, Examples) {
    EXPECT_EQ(column_sums_equal(Eigen::MatrixXd::Identity(5, 5)), 1.0);
    Eigen::MatrixXd d(2, 2);
    d << 1, 0, 0, 2;
    EXPECT_FALSE(column_sums_equal(d).has_value());
    const auto s = column_sums_equal(two_by_two().inverse());
    ASSERT_TRUE(s.has_value());
    EXPECT_NEAR(*s, 1.0, 1e-12);

    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
        const auto inv = column_sums_equal(oracle::dirichlet_stochastic(6, rng, 1.0, 2.0).inverse());
        ASSERT_TRUE(inv.has_value());
        EXPECT_NEAR(*inv, 1.0, 1e-10);
    }
}

TEST(GammaOf, Examples) {
    EXPECT_EQ(gamma_of(Eigen::MatrixXd::Identity(4, 4)), 1.0);
    EXPECT_NEAR(gamma_of(two_by_two().inverse()), 11.0 / 7.0, 1e-12);

    Eigen::MatrixXd f(2, 2);
    f << 0.95, 0.05, 0.05, 0.95;
    Eigen::MatrixXd kron(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) kron.block(2 * i, 2 * j, 2, 2) = f(i, j) * f;
    }
    EXPECT_NEAR(gamma_of(kron.inverse()), (10.0 / 9.0) * (10.0 / 9.0), 1e-12);

    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        const Eigen::MatrixXd m = Eigen::MatrixXd::Random(5, 7);
        EXPECT_DOUBLE_EQ(gamma_of(m), max_abs_column(m));
    }
}

TEST(Decompose, IdentityIsOneTerm) {
    const auto d = decompose_min_norm(Eigen::MatrixXd::Identity(6, 6));
    ASSERT_EQ(d.coeffs.size(), 1u);
    EXPECT_DOUBLE_EQ(d.coeffs[0], 1.0);
    EXPECT_EQ(d.maps[0].dense(), Eigen::MatrixXd::Identity(6, 6));
    EXPECT_DOUBLE_EQ(d.norm, 1.0);
}

TEST(Decompose, TwoByTwoInverse) {
    const Eigen::MatrixXd m = two_by_two().inverse();
    const auto d = decompose_min_norm(m);
    expect_valid(d, m, 1e-14);
    EXPECT_NEAR(d.norm, 11.0 / 7.0, 1e-12);
}

TEST(Decompose, RejectsUnequalColumnSumsAndLargeInputs) {
    Eigen::MatrixXd d(2, 2);
    d << 1, 0, 0, 2;
    EXPECT_THROW(decompose_min_norm(d), std::invalid_argument);
    EXPECT_THROW(decompose_min_norm(Eigen::MatrixXd::Identity(257, 257)), std::invalid_argument);
    EXPECT_THROW(decompose_min_norm(Eigen::MatrixXd::Identity(2, 3)), std::invalid_argument);
}

TEST(Decompose, RandomInverseStochasticIsOptimal) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng = make_stream(31, seed);
        const Eigen::MatrixXd m = oracle::dirichlet_stochastic(8, rng, 1.0, 3.0).inverse();
        const auto d = decompose_min_norm(m);
        expect_valid(d, m);
        EXPECT_NEAR(d.norm, max_abs_column(m), 1e-9) << "seed " << seed;
        EXPECT_GE(d.norm, max_abs_column(m) - 1e-9);
        std::size_t first_case_steps = 0;
        for (const auto &st : d.steps) first_case_steps += !st.zero_sum_case;
        EXPECT_LE(first_case_steps, nonzeros(m));
    }
}

// A zero-sum step may fill a zero column, so only the non-zero-sum steps
// are guaranteed to remove an entry.
TEST(Decompose, StepsShrinkGammaByOmega) {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        const Eigen::MatrixXd m = oracle::dirichlet_stochastic(6, rng, 0.5, 1.0).inverse();
        const auto d = decompose_min_norm(m);
        ASSERT_FALSE(d.steps.empty());
        EXPECT_FALSE(d.steps.front().zero_sum_case);
        double spent = 0;
        for (const auto &s : d.steps) {
            if (s.zero_sum_case) {
                EXPECT_LE(s.gamma_after, s.gamma_before - std::abs(s.omega) + 1e-9);
            } else {
                EXPECT_NEAR(s.gamma_after, s.gamma_before - std::abs(s.omega), 1e-9);
                EXPECT_LT(s.nonzeros_after, s.nonzeros_before);
            }
            spent += std::abs(s.omega);
        }
        EXPECT_NEAR(spent, gamma_of(m), 1e-9);
        EXPECT_LT(d.steps.back().gamma_after, 1e-9);
    }
}

TEST(Decompose, ScaledAndNegatedInverses) {
    Rng rng(6);
    for (double scale : {2.5, -1.0, -0.3}) {
        const Eigen::MatrixXd m = scale * oracle::dirichlet_stochastic(5, rng, 1.0, 2.0).inverse();
        const auto d = decompose_min_norm(m);
        expect_valid(d, m);
        EXPECT_NEAR(d.norm, max_abs_column(m), 1e-9);
    }
}

// Difference of two random deterministic maps: every column sums to zero.
Eigen::MatrixXd zero_sum(int dim, Rng &rng) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    std::uniform_int_distribution<int> pick(0, dim - 1);
    std::uniform_real_distribution<double> w(0.1, 1.0);
    for (int k = 0; k < 3; ++k) {
        const double c = w(rng);
        for (int j = 0; j < dim; ++j) {
            m(pick(rng), j) += c;
            m(pick(rng), j) -= c;
        }
    }
    return m;
}

TEST(Decompose, ZeroSumMatricesUseTheSecondCase) {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        const Eigen::MatrixXd m = zero_sum(6, rng);
        if (m.cwiseAbs().maxCoeff() < kDecompositionZero) continue;
        const auto d = decompose_min_norm(m);
        expect_valid(d, m);
        EXPECT_GE(d.norm, max_abs_column(m) - 1e-9);
        EXPECT_NEAR(d.norm, max_abs_column(m), 1e-9);
        ASSERT_FALSE(d.steps.empty());
        EXPECT_TRUE(d.steps.front().zero_sum_case);
        for (const auto &s : d.steps) EXPECT_LE(s.gamma_after, s.gamma_before - std::abs(s.omega) + 1e-9);
    }
}

TEST(Decompose, ZeroMatrixHasNoTerms) {
    const auto d = decompose_min_norm(Eigen::MatrixXd::Zero(3, 3));
    EXPECT_EQ(d.norm, 0.0);
    EXPECT_TRUE(d.reconstruct().isZero());
}

}  // namespace
}  // namespace readmit
