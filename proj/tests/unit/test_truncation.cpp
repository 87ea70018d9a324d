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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "paulispec/circuits.hpp"
#include "paulispec/spectrum.hpp"
#include "paulispec/stats.hpp"
#include "paulispec/truncation.hpp"

namespace {

using namespace paulispec;

TEST(TruncateTop, Examples) {
    PauliCoefficients c{1, {0.8, 0.0, -0.5, 0.3}};
    const auto t = truncate_top(c, 2);
    ASSERT_EQ(t.kept.size(), 2u);
    EXPECT_EQ(t.kept[0].first, 0u);
    EXPECT_EQ(t.kept[1].first, 2u);
    EXPECT_DOUBLE_EQ(t.kept[1].second, -0.5);
    EXPECT_NEAR(t.dropped_weight, 0.09, 1e-15);
    EXPECT_EQ(truncate_top(c, 4).dropped_weight, 0.0);
    EXPECT_THROW(truncate_top(c, 0), std::invalid_argument);
    EXPECT_THROW(truncate_top(c, 5), std::invalid_argument);

    PauliCoefficients s{2, std::vector<double>(16)};
    s.values[7] = 1.0;
    const auto one = truncate_top(s, 1);
    EXPECT_EQ(one.kept[0].first, 7u);
    EXPECT_EQ(one.dropped_weight, 0.0);
}

TEST(TruncateTop, TiesByAscendingIndex) {
    PauliCoefficients c{1, {0.5, -0.5, 0.5, 0.1}};
    const auto t = truncate_top(c, 2);
    EXPECT_EQ(t.kept[0].first, 0u);
    EXPECT_EQ(t.kept[1].first, 1u);
}

TEST(TruncateTop, OptimalAgainstRandomSubsets) {
    auto spec = CircuitSpec::chain(4, 4);
    std::mt19937_64 rng(5);
    for (std::uint64_t r = 0; r < 5; ++r) {
        const auto c = run_circuit(spec, r).pauli_coefficients();
        for (std::size_t np : {1u, 4u, 16u}) {
            const double best = truncate_top(c, np).dropped_weight;
            std::vector<std::size_t> idx(c.size());
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            for (int trial = 0; trial < 20; ++trial) {
                std::shuffle(idx.begin(), idx.end(), rng);
                double dropped = 0.0;
                for (std::size_t i = np; i < idx.size(); ++i) dropped += c[idx[i]] * c[idx[i]];
                EXPECT_LE(best, dropped + 1e-15);
            }
        }
    }
}

TEST(ExpectationZeroState, Examples) {
    PauliCoefficients z{1, {0, 0, 0, 1}};
    PauliCoefficients x{1, {0, 1, 0, 0}};
    PauliCoefficients proj{1, {0.5, 0, 0, 0.5}};
    EXPECT_EQ(expectation_zero_state(z), 1.0);
    EXPECT_EQ(expectation_zero_state(x), 0.0);
    EXPECT_EQ(expectation_zero_state(proj), 1.0);
    EXPECT_EQ(expectation_zero_state(truncate_top(proj, 1)), 0.5);
}

TEST(TruncationMse, ExactAtFullSizeAndDeterministic) {
    auto spec = CircuitSpec::chain(4, 8, 0.02);
    spec.master_seed = 8;
    const std::vector<std::size_t> grid{1, 4, 16, 256};
    const auto a = truncation_mse(spec, grid, 30, 1);
    const auto b = truncation_mse(spec, grid, 30, 3);
    ASSERT_EQ(a.size(), grid.size());
    EXPECT_EQ(a.back().mse, 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_EQ(a[i].mse, b[i].mse);
        EXPECT_EQ(a[i].n_samples, 30u);
    }
    EXPECT_THROW(truncation_mse(spec, {257}, 2), std::invalid_argument);
}

TEST(TruncationMse, NonIncreasingOnAverage) {
    auto spec = CircuitSpec::chain(5, 10, 0.04);
    spec.master_seed = 12;
    const auto pts = truncation_mse(spec, default_np_grid(5), 200);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double tol = 3.0 * std::hypot(pts[i].std_error, pts[i - 1].std_error);
        EXPECT_LE(pts[i].mse, pts[i - 1].mse + tol) << "N_P=" << pts[i].n_p;
    }
}

TEST(NpGrid, PowersOfTwoCapped) {
    EXPECT_EQ(default_np_grid(2), (std::vector<std::size_t>{1, 2, 4, 8, 16}));
    EXPECT_EQ(default_np_grid(9).back(), 4096u);
    EXPECT_EQ(default_np_grid(9).size(), 13u);
}

TEST(SimulabilityBound, Examples) {
    EXPECT_NEAR(simulability_bound(1.0, std::log(8.0) + 1.0, 8.0, 3), 0.0, 1e-15);
    EXPECT_NEAR(simulability_bound(2.0, 0.0, 1.0, 4), -2.0 / 8.0, 1e-15);
    EXPECT_THROW(simulability_bound(1.0, 1.0, 0.5, 3), std::invalid_argument);
}

TEST(SimulabilityBound, EnsembleJensenDirection) {
    auto spec = CircuitSpec::chain(6, 4);
    spec.master_seed = 66;
    RunningStats mu, per;
    const double np = 16.0;
    for (std::uint64_t r = 0; r < 200; ++r) {
        const auto c = run_circuit(spec, r).pauli_coefficients();
        mu.add(moment_mu(c, 2));
        per.add(simulability_bound(1.0, ose(c, 2.0), np, 6));
    }
    EXPECT_LE(ensemble_simulability_bound(mu.mean(), 2, np, 6), per.mean() + 1e-12);
}

TEST(Adversarial, ObservedAboveBound) {
    auto spec = CircuitSpec::chain(5, 6);
    spec.master_seed = 1;
    for (std::uint64_t r = 0; r < 5; ++r) {
        const auto c = run_circuit(spec, r).pauli_coefficients();
        for (std::size_t np : {1u, 4u, 16u, 64u}) {
            const auto chk = adversarial_truncation_error(c, np);
            EXPECT_NEAR(chk.norm, 1.0, 1e-10);
            EXPECT_GE(chk.observed, chk.bound - 1e-10);
        }
    }
    PauliCoefficients big{7, std::vector<double>(std::size_t{1} << 14)};
    EXPECT_THROW(adversarial_truncation_error(big, 1), std::invalid_argument);
}

}  // namespace
