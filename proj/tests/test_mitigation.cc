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
#include <numeric>

#include "fixtures.h"
#include "oracles.h"
#include "readmit/error.h"
#include "readmit/mitigation.h"
#include "readmit/noise_model.h"
#include "readmit/noise_strength.h"

namespace readmit {
namespace {

// M noisy readouts of states drawn from `ideal`.
ShotSet noisy_shots(const NoiseModel &model, const ProbVector &ideal, std::size_t m, Rng &rng) {
    ShotSet shots(ideal.num_qubits());
    for (std::size_t i = 0; i < m; ++i) shots.push_back_word(sample_noisy_word(model, ideal.sample(rng), rng));
    return shots;
}

// xi = M^-1 sum_i sum_x O(x) <x|A^-1|s_i> with a dense inverse.
double oracle_xi(const Eigen::MatrixXd &a, const ShotSet &shots, const ObservableFn &obs) {
    const Eigen::MatrixXd inv = a.inverse();
    double total = 0;
    for (auto s : shots.words()) {
        for (Eigen::Index x = 0; x < inv.rows(); ++x) total += obs(static_cast<std::uint64_t>(x)) * inv(x, s);
    }
    return total / shots.size();
}

ProbVector random_state(std::size_t n, Rng &rng) {
    std::map<std::uint64_t, double> p;
    double total = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) total += p[x] = uniform01(rng) + 0.05;
    for (auto &[x, v] : p) v /= total;
    return ProbVector(n, p);
}

DiagonalObservable random_parity(std::size_t n, Rng &rng) {
    std::vector<std::size_t> support;
    for (std::size_t q = 1; q <= n; ++q) {
        if (uniform01(rng) < 0.5) support.push_back(q);
    }
    if (support.empty()) support.push_back(1 + uniform_index(rng, n));
    return DiagonalObservable(n, support);
}

TEST(GammaTp, Examples) {
    EXPECT_EQ(gamma_tp(TPNoise::uniform(3, 0, 0)), 1.0);
    EXPECT_NEAR(gamma_tp(TPNoise({0.1}, {0.2})), 11.0 / 7.0, 1e-14);
    EXPECT_NEAR(gamma_tp(TPNoise::uniform(4, 0.05, 0.05)), std::pow(10.0 / 9.0, 4), 1e-12);
}

TEST(GammaTp, MatchesDenseInverse) {
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        const TPNoise tp = fixture::random_tp(1 + t % 6, 0.2, rng);
        const Eigen::MatrixXd inv = oracle::tp_matrix(tp).inverse();
        EXPECT_NEAR(gamma_tp(tp), inv.cwiseAbs().colwise().sum().maxCoeff(), 1e-10);
    }
}

TEST(RequiredShots, Examples) {
    EXPECT_EQ(required_shots(0.1, 1.0), 400u);
    EXPECT_EQ(required_shots(0.1, 11.0 / 7.0), 988u);
    EXPECT_EQ(required_shots(0.05, 1.0), 1600u);
    EXPECT_THROW(required_shots(0.0, 1.0), std::invalid_argument);
    const auto plan = plan_samples(0.1, 11.0 / 7.0);
    EXPECT_EQ(plan.samples, 988u);
    EXPECT_EQ(plan.c_norm, 11.0 / 7.0);
}

TEST(Overhead, Examples) {
    const auto r07 = overhead_for_gamma(0.7, 0.05);
    EXPECT_NEAR(r07.overhead, std::exp(2.8), 1e-9);
    EXPECT_LE(r07.overhead, 20.0);
    EXPECT_NEAR(overhead_for_gamma(1.1, 0.05).overhead, std::exp(4.4), 1e-9);
    EXPECT_NEAR(overhead_for_gamma(1.1, 0.05).overhead, 81.45, 0.01);
    EXPECT_EQ(r07.samples, static_cast<std::uint64_t>(std::ceil(4 * std::exp(2.8) / 0.0025 * (1 - 1e-15))));

    EXPECT_EQ(overhead_report(TPNoise::uniform(3, 0, 0), 0.1).overhead, 1.0);
    EXPECT_NEAR(overhead_report(TPNoise::uniform(3, 1e-9, 1e-9), 0.1).overhead, 1.0, 1e-7);
    const auto tp = overhead_report(TPNoise({0.1}, {0.2}), 0.1);
    EXPECT_NEAR(tp.Gamma, 11.0 / 7.0, 1e-12);
    EXPECT_EQ(tp.shots, 988u);

    Eigen::MatrixXd a(2, 2);
    a << 0.9, 0.2, 0.1, 0.8;
    EXPECT_NEAR(overhead_report(FullNoiseMatrix(1, a), 0.1).Gamma, 11.0 / 7.0, 1e-12);
}

TEST(TpCoefficients, Examples) {
    const auto c = tp_quasi_coefficients(0.05, 0.05);
    EXPECT_NEAR(c[0], 1.9 / 1.8, 1e-14);
    EXPECT_NEAR(c[1], -0.1 / 1.8, 1e-14);
    EXPECT_EQ(c[2], 0.0);
    EXPECT_EQ(c[3], 0.0);
    EXPECT_NEAR(std::abs(c[0]) + std::abs(c[1]), 10.0 / 9.0, 1e-14);
    EXPECT_EQ(tp_quasi_coefficients(0, 0), (std::array<double, 4>{1, 0, 0, 0}));
    EXPECT_THROW(tp_quasi_coefficients(0.6, 0.4), NumericError);
}

TEST(TpCoefficients, CombinationIsTheFactorInverse) {
    Rng rng(2);
    Eigen::Matrix2d id, flip, set0, set1;
    id << 1, 0, 0, 1;
    flip << 0, 1, 1, 0;
    set0 << 1, 1, 0, 0;
    set1 << 0, 0, 1, 1;
    for (int t = 0; t < 100; ++t) {
        const double e = 0.45 * uniform01(rng), h = 0.45 * uniform01(rng);
        const auto c = tp_quasi_coefficients(e, h);
        Eigen::Matrix2d f;
        f << 1 - e, h, e, 1 - h;
        const Eigen::Matrix2d combo = c[0] * id + c[1] * flip + c[2] * set0 + c[3] * set1;
        EXPECT_LT((combo - f.inverse()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_NEAR(std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]) + std::abs(c[3]),
                    (1 + std::abs(e - h)) / (1 - e - h), 1e-12);
    }
}

TEST(Poisson, MomentsAndMass) {
    for (double mean : {0.3, 1.1, 4.0, 12.0}) {
        Rng rng(3);
        const int draws = 200000;
        std::vector<int> hist(64, 0);
        double s = 0, s2 = 0;
        for (int i = 0; i < draws; ++i) {
            const unsigned k = sample_poisson(mean, rng);
            s += k;
            s2 += double(k) * k;
            if (k < hist.size()) hist[k]++;
        }
        const double m = s / draws, var = s2 / draws - m * m;
        EXPECT_NEAR(m, mean, 5 * std::sqrt(mean / draws));
        EXPECT_NEAR(var, mean, 0.03 * mean + 0.01);
        double pk = std::exp(-mean);
        for (unsigned k = 0; k < 8; ++k) {
            EXPECT_NEAR(hist[k] / double(draws), pk, 5 * std::sqrt(pk * (1 - pk) / draws) + 1e-6) << mean << " " << k;
            pk *= mean / (k + 1);
        }
    }
    Rng rng(4);
    EXPECT_EQ(sample_poisson(0.0, rng), 0u);
    EXPECT_THROW(sample_poisson(-1.0, rng), std::invalid_argument);
}

TEST(Series, TruncationConvergesToTheInverse) {
    Rng rng(5);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (int t = 0; t < 5; ++t) {
            const CTMPModel m = fixture::random_ctmp(n, 0.3, rng);
            const double gamma = oracle::brute_gamma(m);
            if (gamma == 0) continue;
            const Eigen::MatrixXd g = oracle::generator(m);
            const Eigen::Index dim = g.rows();
            const Eigen::MatrixXd b = Eigen::MatrixXd::Identity(dim, dim) + g / gamma;
            EXPECT_GE(b.minCoeff(), -1e-15);
            const Eigen::MatrixXd target = oracle::expm(-g);
            const unsigned k_max = static_cast<unsigned>(std::ceil(gamma + 10 * std::sqrt(gamma) + 20));
            Eigen::MatrixXd power = Eigen::MatrixXd::Identity(dim, dim);
            Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dim, dim);
            for (unsigned a = 0; a <= k_max; ++a) {
                sum += ctmp_series_coefficient(gamma, a) * power;
                power = b * power;
            }
            EXPECT_LT((sum - target).cwiseAbs().colwise().sum().maxCoeff(), 1e-8);
        }
    }
    EXPECT_NEAR(ctmp_c_norm(0.5), std::exp(1.0), 1e-14);
    EXPECT_NEAR(ctmp_series_coefficient(0.5, 2), std::exp(0.5) * 0.125, 1e-15);
}

TEST(Raw, MeanAndStdErr) {
    const ShotSet shots(2, {0b00, 0b01, 0b11, 0b10});
    const auto r = mitigate_raw(shots, DiagonalObservable(2, {2}));
    EXPECT_EQ(r.xi, 0.0);
    EXPECT_EQ(r.method, MitigationMethod::Raw);
    EXPECT_EQ(r.samples_used, 4u);
    EXPECT_GE(r.std_err, 0.0);
    EXPECT_THROW(mitigate_raw(ShotSet(2), DiagonalObservable(2, {1})), std::invalid_argument);
}

TEST(Exact, IdentityGivesRaw) {
    Rng rng(6);
    const ShotSet shots = noisy_shots(TPNoise::uniform(3, 0.1, 0.1), random_state(3, rng), 500, rng);
    const DiagonalObservable z(3, {1, 3});
    const auto r = mitigate_exact(shots, FullNoiseMatrix(3, Eigen::MatrixXd::Identity(8, 8)), z);
    EXPECT_NEAR(r.xi, raw_mean(shots, z), 1e-12);
    EXPECT_EQ(r.method, MitigationMethod::Exact);
}

TEST(Exact, MatchesDenseInverseOracle) {
    Rng rng(7);
    for (std::size_t n = 1; n <= 5; ++n) {
        const CTMPModel m = fixture::random_ctmp(n, 0.1, rng);
        const Eigen::MatrixXd a = oracle::expm(oracle::generator(m));
        const ShotSet shots = noisy_shots(m, random_state(n, rng), 300, rng);
        const DiagonalObservable obs = random_parity(n, rng);
        const auto r = mitigate_exact(shots, FullNoiseMatrix(n, a), obs);
        EXPECT_NEAR(r.xi, oracle_xi(a, shots, obs), 1e-10);
        EXPECT_NEAR(r.c_norm, a.inverse().cwiseAbs().colwise().sum().maxCoeff(), 1e-9);
        EXPECT_NEAR(r.std_err, r.c_norm / std::sqrt(300.0), 1e-9);
    }
}

TEST(Exact, SingleQubitExample) {
    Eigen::MatrixXd a(2, 2);
    a << 0.9, 0.2, 0.1, 0.8;
    const FullNoiseMatrix full(1, a);
    Rng rng(8);
    ShotSet shots(1);
    for (int i = 0; i < 1000; ++i) shots.push_back_word(sample_noisy_word(NoiseModel(full), 0, rng));
    const auto r = mitigate_exact(shots, full, DiagonalObservable(1, {1}));
    EXPECT_NEAR(r.xi, 1.0, 3 * (11.0 / 7.0) / std::sqrt(1000.0));
}

TEST(Exact, TwoQubitParityRecoversOne) {
    const TPNoise tp({0.04, 0.07}, {0.06, 0.03});
    Rng rng(9);
    const ShotSet shots = noisy_shots(tp, ProbVector::point(BitString(2, 0)), 20000, rng);
    const DiagonalObservable zz(2, {1, 2});
    const auto r = mitigate_exact(shots, build_full_matrix(tp), zz);
    EXPECT_NEAR(r.xi, 1.0, 3 * r.std_err);
    // Raw mean of Z1Z2 on |00> is (1 - 2 eps1)(1 - 2 eps2).
    const double raw = raw_mean(shots, zz);
    EXPECT_NEAR(raw, (1 - 2 * 0.04) * (1 - 2 * 0.07), 4 / std::sqrt(20000.0));
    EXPECT_LT(raw, 0.9);
}

TEST(Exact, SingularMatrixThrows) {
    const FullNoiseMatrix bad(1, Eigen::MatrixXd::Constant(2, 2, 0.5));
    EXPECT_THROW(mitigate_exact(ShotSet(1, {0}), bad, DiagonalObservable(1, {1})), NumericError);
}

TEST(Exact, UnbiasedWithBoundedSpread) {
    const std::size_t n = 2, m = 400, runs = 200;
    Rng rng(10);
    const CTMPModel model = fixture::random_ctmp(n, 0.1, rng, 1.0);
    const FullNoiseMatrix a = build_full_matrix(model);
    const ProbVector ideal = random_state(n, rng);
    const DiagonalObservable obs(n, {1, 2});
    const double truth = ideal.expectation(obs);
    double s = 0, s2 = 0, gamma = 0;
    for (std::size_t r = 0; r < runs; ++r) {
        Rng run_rng = make_stream(11, r);
        const auto res = mitigate_exact(noisy_shots(model, ideal, m, run_rng), a, obs);
        s += res.xi;
        s2 += res.xi * res.xi;
        gamma = res.c_norm;
    }
    const double mean = s / runs, sd = std::sqrt((s2 - runs * mean * mean) / (runs - 1));
    EXPECT_LT(std::abs(mean - truth), 4 * gamma / std::sqrt(double(runs * m)));
    EXPECT_LE(sd, 1.2 * gamma / std::sqrt(double(m)));
}

TEST(Tp, ZeroNoiseIsRaw) {
    Rng rng(12);
    const ShotSet shots = noisy_shots(TPNoise::uniform(4, 0, 0), random_state(4, rng), 200, rng);
    const DiagonalObservable obs(4, {1, 2, 4});
    EXPECT_NEAR(mitigate_tp(shots, TPNoise::uniform(4, 0, 0), obs).xi, raw_mean(shots, obs), 1e-14);
    SamplerOptions opt;
    opt.delta = 0.05;
    opt.seed = 3;
    EXPECT_NEAR(mitigate_tp(shots, TPNoise::uniform(4, 0, 0), ObservableFn(obs), opt).xi, raw_mean(shots, obs), 0.1);
}

TEST(Tp, ProductFormulaMatchesDenseInverse) {
    Rng rng(13);
    for (std::size_t n = 1; n <= 6; ++n) {
        const TPNoise tp = fixture::random_tp(n, 0.1, rng);
        const ShotSet shots = noisy_shots(tp, random_state(n, rng), 200, rng);
        const DiagonalObservable obs = random_parity(n, rng);
        const auto r = mitigate_tp(shots, tp, obs);
        EXPECT_NEAR(r.xi, oracle_xi(oracle::tp_matrix(tp), shots, obs), 1e-10);
        EXPECT_FALSE(r.sampled);
        EXPECT_EQ(r.method, MitigationMethod::TpAlg2);
    }
}

TEST(Tp, PathsAgreeOnParity) {
    const std::size_t n = 5;
    const TPNoise tp = TPNoise::uniform(n, 0.03, 0.03);
    Rng rng(14);
    const ShotSet shots = noisy_shots(tp, ProbVector::point(BitString(n, 0)), 8192, rng);
    const DiagonalObservable obs(n, {1, 2, 3, 4, 5});
    SamplerOptions opt;
    opt.delta = 0.01;
    opt.seed = 15;
    opt.threads = 4;
    const auto a = mitigate_tp(shots, tp, obs);
    const auto b = mitigate_tp(shots, tp, ObservableFn(obs), opt);
    EXPECT_TRUE(b.sampled);
    EXPECT_EQ(b.samples_used, required_shots(0.01, gamma_tp(tp)));
    EXPECT_NEAR(a.xi, b.xi, 2 * opt.delta);
    const double sigma = gamma_tp(tp) / std::sqrt(8192.0);
    EXPECT_NEAR(a.xi, 1.0, 3 * sigma);
    EXPECT_NEAR(b.xi, 1.0, 3 * sigma + opt.delta);
}

TEST(Ctmp, ZeroRatesGiveRaw) {
    Rng rng(16);
    const ShotSet shots = noisy_shots(TPNoise::uniform(3, 0.1, 0.0), random_state(3, rng), 100, rng);
    const DiagonalObservable obs(3, {2});
    const auto r = mitigate_ctmp(shots, CTMPModel(3, {}), obs, SamplerOptions{});
    EXPECT_EQ(r.xi, raw_mean(shots, obs));
    EXPECT_EQ(r.method, MitigationMethod::Exact);
}

TEST(Ctmp, AgreesWithExactInverse) {
    Rng rng(17);
    for (std::size_t n = 2; n <= 5; ++n) {
        CTMPModel m = fixture::random_ctmp(n, 0.05, rng, 0.3);
        const double gamma = noise_strength(m);
        const ShotSet shots = noisy_shots(m, random_state(n, rng), 2000, rng);
        const DiagonalObservable obs = random_parity(n, rng);
        SamplerOptions opt;
        opt.delta = 0.01;
        opt.seed = 100 + n;
        opt.threads = 4;
        const auto r = mitigate_ctmp(shots, m, obs, opt);
        EXPECT_EQ(r.method, MitigationMethod::CtmpAlg1);
        EXPECT_EQ(r.gamma_used, gamma);
        EXPECT_NEAR(r.c_norm, std::exp(2 * gamma), 1e-12);
        EXPECT_EQ(r.samples_used, required_shots(0.01, std::exp(2 * gamma)));
        EXPECT_NEAR(r.xi, mitigate_exact(shots, build_full_matrix(m), obs).xi, 2 * opt.delta) << "n=" << n;
    }
}

TEST(Ctmp, SingleQubitRatesAgreeWithTp) {
    Rng rng(18);
    const std::size_t n = 4;
    const TPNoise tp = fixture::random_tp(n, 0.04, rng);
    const CTMPModel m = CTMPModel::from_tp(tp);
    const ShotSet shots = noisy_shots(tp, random_state(n, rng), 4000, rng);
    const DiagonalObservable obs(n, {1, 3, 4});
    SamplerOptions opt;
    opt.delta = 0.01;
    opt.seed = 19;
    opt.threads = 4;
    EXPECT_NEAR(mitigate_ctmp(shots, m, obs, opt).xi, mitigate_tp(shots, tp, obs).xi, 2 * opt.delta);
}

TEST(Ctmp, GammaResolution) {
    CTMPModel m(2, {{FlipKind::ZeroToOne, 1, 0, 0.1}, {FlipKind::OneToZero, 2, 0, 0.2}});
    SamplerOptions opt;
    EXPECT_NEAR(resolve_ctmp_gamma(m, opt), 0.3, 1e-15);
    opt.gamma = 0.5;
    EXPECT_EQ(resolve_ctmp_gamma(m, opt), 0.5);
    opt.gamma.reset();
    m.cache_gamma(0.3, false);
    EXPECT_NEAR(resolve_ctmp_gamma(m, opt), 0.3 * 1.05, 1e-15);
}

TEST(Ctmp, LargerGammaStaysConsistent) {
    Rng rng(20);
    CTMPModel m = fixture::random_ctmp(3, 0.05, rng);
    const ShotSet shots = noisy_shots(m, random_state(3, rng), 1000, rng);
    const DiagonalObservable obs(3, {1, 2});
    SamplerOptions opt;
    opt.delta = 0.02;
    opt.seed = 21;
    opt.threads = 4;
    opt.gamma = noise_strength(m) + 0.2;
    EXPECT_NEAR(mitigate_ctmp(shots, m, obs, opt).xi, mitigate_exact(shots, build_full_matrix(m), obs).xi, 2 * opt.delta);
}

void expect_same(const MitigationResult &a, const MitigationResult &b) {
    EXPECT_EQ(a.xi, b.xi);
    EXPECT_EQ(a.std_err, b.std_err);
    EXPECT_EQ(a.samples_used, b.samples_used);
    EXPECT_EQ(a.method, b.method);
    EXPECT_EQ(a.gamma_used, b.gamma_used);
    EXPECT_EQ(a.c_norm, b.c_norm);
    EXPECT_EQ(a.seed, b.seed);
}

TEST(Determinism, SameSeedSameResultForAnyThreadCount) {
    Rng rng(22);
    CTMPModel m = fixture::random_ctmp(4, 0.05, rng);
    const TPNoise tp = fixture::random_tp(4, 0.05, rng);
    const ShotSet shots = noisy_shots(m, random_state(4, rng), 500, rng);
    const DiagonalObservable obs(4, {1, 4});
    SamplerOptions opt;
    opt.samples = 300000;
    opt.seed = 23;
    opt.chunk_size = 10000;
    std::vector<MitigationResult> ctmp, tpr;
    for (unsigned threads : {1u, 2u, 7u}) {
        opt.threads = threads;
        ctmp.push_back(mitigate_ctmp(shots, m, obs, opt));
        tpr.push_back(mitigate_tp(shots, tp, ObservableFn(obs), opt));
    }
    for (std::size_t i = 1; i < ctmp.size(); ++i) {
        expect_same(ctmp[0], ctmp[i]);
        expect_same(tpr[0], tpr[i]);
    }
    opt.seed = 24;
    EXPECT_NE(mitigate_ctmp(shots, m, obs, opt).xi, ctmp[0].xi);
}

TEST(MethodNames, RoundTrip) {
    for (auto m : {MitigationMethod::Raw, MitigationMethod::Exact, MitigationMethod::TpAlg2, MitigationMethod::CtmpAlg1}) {
        EXPECT_EQ(parse_mitigation_method(to_string(m)), m);
    }
    EXPECT_EQ(parse_mitigation_method("tp"), MitigationMethod::TpAlg2);
    EXPECT_EQ(parse_mitigation_method("ctmp"), MitigationMethod::CtmpAlg1);
    EXPECT_THROW(parse_mitigation_method("zne"), std::invalid_argument);
}

}  // namespace
}  // namespace readmit
