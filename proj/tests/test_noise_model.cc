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

#include "fixtures.h"
#include "oracles.h"
#include "readmit/error.h"
#include "readmit/noise_model.h"

namespace readmit {
namespace {

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
    Eigen::MatrixXd m(2, 2);
    m << a, b, c, d;
    return m;
}

// Per-entry 4 sigma binomial band between empirical frequencies and a column.
void expect_column_frequencies(const NoiseModel &model, std::uint64_t x, const Eigen::VectorXd &col, int draws,
                               std::uint64_t seed) {
    Rng rng(seed);
    Eigen::VectorXd freq = Eigen::VectorXd::Zero(col.size());
    for (int i = 0; i < draws; ++i) freq(static_cast<Eigen::Index>(sample_noisy_word(model, x, rng))) += 1;
    freq /= draws;
    for (Eigen::Index y = 0; y < col.size(); ++y) {
        const double p = col(y);
        const double band = 4 * std::sqrt(std::max(p * (1 - p), 1e-12) / draws) + 1e-12;
        EXPECT_NEAR(freq(y), p, std::max(band, 4.0 / draws)) << "outcome " << y << " from " << x;
    }
}

TEST(CTMPModel, ValidatesTerms) {
    EXPECT_THROW(CTMPModel(2, {{FlipKind::ZeroToOne, 3, 0, 0.1}}), std::invalid_argument);
    EXPECT_THROW(CTMPModel(2, {{FlipKind::ZeroToOne, 1, 0, -0.1}}), std::invalid_argument);
    EXPECT_THROW(CTMPModel(2, {{FlipKind::Swap01To10, 1, 1, 0.1}}), std::invalid_argument);
    EXPECT_THROW(CTMPModel(2, {{FlipKind::ZeroToOne, 1, 0, 0.1}, {FlipKind::ZeroToOne, 1, 0, 0.2}}),
                 std::invalid_argument);
    // Unordered pairs: (2,1) and (1,2) name the same 00->11 term.
    EXPECT_THROW(CTMPModel(2, {{FlipKind::Raise00To11, 2, 1, 0.1}, {FlipKind::Raise00To11, 1, 2, 0.1}}),
                 std::invalid_argument);
    // Ordered pairs are distinct for 01->10.
    const CTMPModel ok(2, {{FlipKind::Swap01To10, 2, 1, 0.1}, {FlipKind::Swap01To10, 1, 2, 0.2}});
    EXPECT_DOUBLE_EQ(ok.rate(FlipKind::Swap01To10, 2, 1), 0.1);
    EXPECT_DOUBLE_EQ(ok.rate(FlipKind::Swap01To10, 1, 2), 0.2);
    EXPECT_EQ(parse_flip_kind("11->00"), FlipKind::Lower11To00);
    EXPECT_EQ(to_string(FlipKind::Swap01To10), "01->10");
}

TEST(SampleNoisy, IdentityTPChannel) {
    const NoiseModel tp = TPNoise::uniform(5, 0, 0);
    Rng rng(1);
    for (std::uint64_t x = 0; x < 32; ++x) EXPECT_EQ(sample_noisy_word(tp, x, rng), x);
    EXPECT_THROW(sample_noisy(tp, BitString::parse("010"), rng), std::invalid_argument);
}

TEST(SampleNoisy, SingleRateCTMPMatchesMasterEquation) {
    const NoiseModel m = CTMPModel(1, {{FlipKind::ZeroToOne, 1, 0, 0.05}});
    Rng rng(2);
    const int draws = 100000;
    int ones = 0;
    for (int i = 0; i < draws; ++i) ones += sample_noisy_word(m, 0, rng) == 1;
    const double p = 1 - std::exp(-0.05);
    EXPECT_NEAR(p, 0.04877, 1e-5);
    EXPECT_NEAR(ones / double(draws), p, 4 * std::sqrt(p * (1 - p) / draws));
}

TEST(SampleNoisy, FullMatrixColumn) {
    const NoiseModel m = FullNoiseMatrix(1, mat2(0.9, 0.2, 0.1, 0.8));
    Eigen::VectorXd col(2);
    col << 0.9, 0.1;
    expect_column_frequencies(m, 0, col, 100000, 3);
}

TEST(SampleNoisy, EmpiricalColumnsMatchDenseMatrices) {
    Rng rng(4);
    for (std::size_t n : {2u, 4u, 6u}) {
        const CTMPModel ctmp = fixture::random_ctmp(n, 0.08, rng, 0.5);
        const TPNoise tp = fixture::random_tp(n, 0.1, rng);
        const Eigen::MatrixXd a_ctmp = build_full_matrix(ctmp).matrix();
        const Eigen::MatrixXd a_tp = build_full_matrix(tp).matrix();
        const std::uint64_t x = rng() & full_mask(n);
        expect_column_frequencies(ctmp, x, a_ctmp.col(static_cast<Eigen::Index>(x)), 100000, 10 + n);
        expect_column_frequencies(tp, x, a_tp.col(static_cast<Eigen::Index>(x)), 100000, 20 + n);
        expect_column_frequencies(FullNoiseMatrix(n, a_ctmp), x, a_ctmp.col(static_cast<Eigen::Index>(x)), 100000,
                                  30 + n);
    }
}

TEST(BuildFullMatrix, Examples) {
    const auto tp = build_full_matrix(TPNoise({0.1}, {0.2})).matrix();
    EXPECT_TRUE(tp.isApprox(mat2(0.9, 0.2, 0.1, 0.8), 1e-15));

    const auto zero = build_full_matrix(CTMPModel(3, {{FlipKind::ZeroToOne, 1, 0, 0.0}})).matrix();
    EXPECT_TRUE(zero.isApprox(Eigen::MatrixXd::Identity(8, 8)));

    const double r = 0.3;
    const auto one = build_full_matrix(CTMPModel(1, {{FlipKind::ZeroToOne, 1, 0, r}})).matrix();
    EXPECT_NEAR(one(0, 0), std::exp(-r), 1e-14);
    EXPECT_NEAR(one(1, 0), 1 - std::exp(-r), 1e-14);
    EXPECT_NEAR(one(0, 1), 0, 1e-15);
    EXPECT_NEAR(one(1, 1), 1, 1e-15);

    EXPECT_THROW(build_full_matrix(TPNoise::uniform(13, 0.01, 0.01)), std::invalid_argument);
}

TEST(BuildFullMatrix, TPKroneckerMatchesEntrywiseProduct) {
    Rng rng(5);
    for (std::size_t n = 1; n <= 6; ++n) {
        const TPNoise tp = fixture::random_tp(n, 0.3, rng);
        EXPECT_LT((build_full_matrix(tp).matrix() - oracle::tp_matrix(tp)).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(BuildFullMatrix, CTMPMatchesPadeExponentialAndIsStochastic) {
    Rng rng(6);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 1 + t % 5;
        const CTMPModel m = fixture::random_ctmp(n, t < 15 ? 0.05 : 0.6, rng);
        EXPECT_TRUE(generator_matrix(m).isApprox(oracle::generator(m)));
        EXPECT_LT((generator_matrix(m) - oracle::generator(m)).cwiseAbs().maxCoeff(), 1e-15);
        const Eigen::MatrixXd a = build_full_matrix(m).matrix();
        EXPECT_LT((a - oracle::expm(oracle::generator(m))).cwiseAbs().maxCoeff(), 1e-11);
        EXPECT_LT((a.colwise().sum().array() - 1).abs().maxCoeff(), 1e-9);
        EXPECT_GE(a.minCoeff(), 0.0);
        const Eigen::MatrixXd inv = expm_generator(m, -1.0);
        EXPECT_LT((inv * a - Eigen::MatrixXd::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(BuildFullMatrix, TPEmbeddedAsCTMPMatchesKronecker) {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 1 + t % 6;
        const TPNoise tp = fixture::random_tp(n, 0.45, rng);
        const auto via_ctmp = build_full_matrix(CTMPModel::from_tp(tp)).matrix();
        EXPECT_LT((via_ctmp - build_full_matrix(tp).matrix()).cwiseAbs().maxCoeff(), 1e-8);
    }
}

TEST(MarkovStepB, ColumnExamples) {
    const CTMPModel up(1, {{FlipKind::ZeroToOne, 1, 0, 0.2}});
    Rng rng(8);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_EQ(markov_step_B(up, 0.2, 0, rng), 1u);
        EXPECT_EQ(markov_step_B(up, 0.2, 1, rng), 1u);
    }
    const CTMPModel swap(2, {{FlipKind::Swap01To10, 1, 2, 0.1}});
    for (int i = 0; i < 1000; ++i) {
        EXPECT_EQ(markov_step_B(swap, 0.1, 0b01, rng), 0b10u);
        EXPECT_EQ(markov_step_B(swap, 0.1, 0b00, rng), 0b00u);
    }
}

TEST(MarkovStepB, StaleGammaIsAHardError) {
    const CTMPModel m(2, {{FlipKind::ZeroToOne, 1, 0, 0.2}, {FlipKind::ZeroToOne, 2, 0, 0.2}});
    Rng rng(9);
    EXPECT_THROW(markov_step_B(m, 0.3, 0b00, rng), NumericError);
    EXPECT_NO_THROW(markov_step_B(m, 0.3, 0b11, rng));
    EXPECT_THROW(markov_step_B(m, 0.0, 0b11, rng), NumericError);
}

TEST(MarkovStepB, ComposedStepsReproduceDensePowers) {
    Rng rng(10);
    for (std::size_t n : {2u, 3u, 5u}) {
        const CTMPModel m = fixture::random_ctmp(n, 0.1, rng, 0.6);
        const double gamma = oracle::brute_gamma(m);
        const auto dim = Eigen::Index{1} << n;
        const Eigen::MatrixXd b = Eigen::MatrixXd::Identity(dim, dim) + oracle::generator(m) / gamma;
        const std::uint64_t x = rng() & full_mask(n);
        Eigen::MatrixXd power = Eigen::MatrixXd::Identity(dim, dim);
        for (int alpha = 1; alpha <= 3; ++alpha) {
            power = b * power;
            const int draws = 60000;
            Eigen::VectorXd freq = Eigen::VectorXd::Zero(dim);
            for (int i = 0; i < draws; ++i) {
                std::uint64_t y = x;
                for (int k = 0; k < alpha; ++k) y = markov_step_B(m, gamma, y, rng);
                freq(static_cast<Eigen::Index>(y)) += 1.0 / draws;
            }
            for (Eigen::Index y = 0; y < dim; ++y) {
                const double p = power(y, static_cast<Eigen::Index>(x));
                EXPECT_NEAR(freq(y), p, 4 * std::sqrt(p * (1 - p) / draws) + 1e-9) << "n=" << n << " alpha=" << alpha;
            }
        }
    }
}

TEST(FullNoiseMatrix, Validates) {
    EXPECT_THROW(FullNoiseMatrix(1, mat2(0.9, 0.2, 0.2, 0.8)), std::invalid_argument);
    EXPECT_THROW(FullNoiseMatrix(1, mat2(1.1, 0.2, -0.1, 0.8)), std::invalid_argument);
    EXPECT_THROW(FullNoiseMatrix(2, mat2(1, 0, 0, 1)), std::invalid_argument);
    EXPECT_THROW(FullNoiseMatrix(13, Eigen::MatrixXd()), std::invalid_argument);
}

TEST(Tvd, Examples) {
    const FullNoiseMatrix id(1, mat2(1, 0, 0, 1));
    EXPECT_EQ(tvd(id, id), 0.0);
    EXPECT_NEAR(tvd(id, FullNoiseMatrix(1, mat2(0.9, 0, 0.1, 1))), 0.1, 1e-15);
    EXPECT_NEAR(tvd(id, FullNoiseMatrix(1, mat2(0, 1, 1, 0))), 1.0, 1e-15);
    EXPECT_THROW(tvd(id, build_full_matrix(TPNoise::uniform(2, 0, 0))), std::invalid_argument);
}

}  // namespace
}  // namespace readmit
