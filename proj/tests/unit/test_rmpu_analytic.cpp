// Copyright 2026 The paulispec Authors
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

#include "paulispec/circuits.hpp"
#include "paulispec/rmpu_analytic.hpp"
#include "paulispec/spectrum.hpp"
#include "paulispec/stats.hpp"

namespace {

using namespace paulispec;

RmpuParams params(std::size_t n, std::size_t r, int k = 2, double gamma = 0.0) {
    RmpuParams p;
    p.n_sites = n;
    p.overlap = r;
    p.k = k;
    p.gamma = gamma;
    return p;
}

TEST(Lambda, Examples) {
    const auto lm = lambda_matrices(4, 2);
    const auto &grp = symmetric_group(4);
    EXPECT_DOUBLE_EQ(lm.lambda1(0), 16.0);
    EXPECT_DOUBLE_EQ(lm.lambda2(0), 4.0);
    for (std::size_t i = 0; i < grp.size(); ++i) {
        const auto &s = grp.elements[i];
        if (s.even_cycles_only() && s.cycles() == 2) EXPECT_DOUBLE_EQ(lm.lambda2(static_cast<Eigen::Index>(i)), 4.0);
        const double rearranged = lm.lambda1(static_cast<Eigen::Index>(i)) / 4.0 * (s.even_cycles_only() ? 4.0 : 1.0);
        EXPECT_DOUBLE_EQ(lm.lambda2(static_cast<Eigen::Index>(i)), rearranged);
    }
}

TEST(Boundary, LeftVectorSupport) {
    const auto b = boundary_vectors(params(3, 1));
    const auto &grp = symmetric_group(4);
    int pairings = 0, four_cycles = 0, nonzero = 0;
    for (std::size_t i = 0; i < grp.size(); ++i) {
        const double l = b.left(static_cast<Eigen::Index>(i));
        if (l == 0.0) continue;
        ++nonzero;
        if (grp.elements[i].cycles() == 2) {
            ++pairings;
            EXPECT_DOUBLE_EQ(l, 4.0);
        } else {
            ++four_cycles;
            EXPECT_DOUBLE_EQ(l, 2.0);
        }
    }
    EXPECT_EQ(nonzero, 9);
    EXPECT_EQ(pairings, 3);
    EXPECT_EQ(four_cycles, 6);
    EXPECT_EQ(b.left(0), 0.0);
}

TEST(Transfer, DiagonalDominanceTrend) {
    // T_{ss} / d^{a(s)} -> 1 as chi grows, with a(s) = 2#s + 2 1_E(s) - 2 - 2k.
    const auto &grp = symmetric_group(4);
    std::vector<double> dev;
    for (std::size_t r : {2u, 3u, 4u}) {
        const auto t = transfer_matrix(params(r + 1, r));
        double worst = 0.0;
        for (std::size_t i = 0; i < grp.size(); ++i) {
            const auto &s = grp.elements[i];
            const int a = 2 * s.cycles() + 2 * (s.even_cycles_only() ? 1 : 0) - 2 - 4;
            const double ratio = t.T(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) / std::pow(2.0, a);
            worst = std::max(worst, std::abs(ratio - 1.0));
        }
        dev.push_back(worst);
    }
    EXPECT_LT(dev[1], dev[0]);
    EXPECT_LT(dev[2], dev[1]);
    EXPECT_LT(dev[2], 0.2);
}

TEST(Transfer, PairingToIdentityLimit) {
    // chi^2 T_{tau e} -> d^-2 (d^2 - 1).
    const std::size_t tau = lexicographic_rank(Permutation::from_cycles(4, {{0, 1}, {2, 3}}));
    double prev = INFINITY;
    for (std::size_t r : {2u, 4u, 6u}) {
        const auto t = transfer_matrix(params(r + 1, r));
        const double chi = std::ldexp(1.0, static_cast<int>(r));
        const double gap = std::abs(chi * chi * t.T(static_cast<Eigen::Index>(tau), 0) - 0.75);
        EXPECT_LT(gap, prev);
        prev = gap;
    }
    EXPECT_LT(prev, 0.01);
}

TEST(Transfer, FullNoiseStaysFinite) {
    const auto t = transfer_matrix(params(4, 1, 2, 1.0));
    EXPECT_TRUE(t.T.allFinite());
    EXPECT_TRUE(t.R.allFinite());
}

TEST(MomentExact, GlobalGateMonteCarlo) {
    auto spec = CircuitSpec::rmpu(2, 1);
    spec.master_seed = 101;
    RunningStats mu;
    for (std::uint64_t r = 0; r < 2000; ++r) mu.add(moment_mu(run_circuit(spec, r).pauli_coefficients(), 2));
    EXPECT_NEAR(rmpu_moment_exact(params(2, 1)), mu.mean(), 3.0 * mu.stderr_of_mean());
    // Exact value for one Haar gate on D = 4: 3 D^2 (D^2 - 1) ... evaluated through Weingarten elsewhere.
    EXPECT_NEAR(rmpu_moment_exact(params(2, 1)), global_haar_moment(2, 2), 1e-12);
}

TEST(MomentExact, NoisyStaircaseMonteCarlo) {
    auto spec = CircuitSpec::rmpu(4, 1, 0.05);
    spec.master_seed = 202;
    RunningStats nu;
    for (std::uint64_t r = 0; r < 2000; ++r) nu.add(moment_nu(run_circuit(spec, r).pauli_coefficients(), 2));
    EXPECT_NEAR(rmpu_moment_exact(params(4, 1, 2, 0.05)), nu.mean(), 3.0 * nu.stderr_of_mean());
}

TEST(MomentExact, HaarFloorAndNoiselessReduction) {
    for (std::size_t n : {4u, 6u, 8u}) {
        EXPECT_GE(rmpu_moment_exact(params(n, n / 2)), 3.0 * (1.0 - 0.5));
    }
    EXPECT_GT(global_haar_moment(10, 2), 3.0 * (1.0 - 1e-3));
    const auto a = rmpu_moment_exact(params(6, 2, 2, 0.0));
    const auto b = rmpu_moment_exact(params(6, 2, 2, 0.0));
    EXPECT_EQ(a, b);
}

TEST(MomentExact, LargeSystemsStayFinite) {
    const double v = rmpu_log_moment_exact(params(40, 20, 3, 0.0));
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(v, std::log(15.0) - 1.0);
}

TEST(Asymptotic, Examples) {
    EXPECT_NEAR(rmpu_constant(2, 2, 0.0), 0.25, 1e-15);
    EXPECT_NEAR(rmpu_constant(2, 2, 0.1), 3.0 / (16.0 * std::pow(0.9, -4.0) - 4.0), 1e-15);
    EXPECT_NEAR(rmpu_constant(2, 2, 0.1), 0.14715, 1e-5);
    // x = 2^(N/2) / 2^r = 1 at N = 2r.
    const auto p = params(8, 4);
    EXPECT_NEAR(rmpu_scaling_variable(p), 1.0, 1e-15);
    EXPECT_NEAR(rmpu_moment_asymptotic(p), 3.75, 1e-13);
    EXPECT_THROW(rmpu_moment_asymptotic(params(8, 4, 1)), std::invalid_argument);
}

TEST(Asymptotic, ConvergesAsChiDoubles) {
    // Fixed x = 1: N = 2r.
    double prev = INFINITY;
    for (std::size_t r : {2u, 3u, 4u, 5u, 6u}) {
        const auto p = params(2 * r, r);
        const double gap = std::abs(rmpu_moment_exact(p) - rmpu_moment_asymptotic(p)) / rmpu_moment_asymptotic(p);
        EXPECT_LT(gap, prev) << "r=" << r;
        prev = gap;
    }
}

TEST(Scaling, Predictions) {
    const auto s = scaling_predictions(2, 2);
    EXPECT_NEAR(s.tau, 1.0 / std::log(1.25), 1e-15);
    EXPECT_NEAR(s.tau, 4.4814, 1e-4);
    EXPECT_NEAR(s.gamma_c_times_n, std::log(1.25), 1e-15);
    EXPECT_NEAR(s.t_star(10.0), 15.53, 0.01);
    EXPECT_DOUBLE_EQ(scaling_predictions(2, 2, 3.0).tau, 3.0);
}

TEST(Params, Validation) {
    EXPECT_THROW(params(4, 4).validate(), std::invalid_argument);
    EXPECT_THROW(params(4, 0).validate(), std::invalid_argument);
    EXPECT_THROW(rmpu_moment_exact(params(5, 1, 4)), std::invalid_argument);
}

}  // namespace
