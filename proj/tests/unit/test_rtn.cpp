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
#include "paulispec/rtn.hpp"
#include "paulispec/spectrum.hpp"
#include "paulispec/stats.hpp"

namespace {

using namespace paulispec;

TEST(Plaquette, IdentityAndUniformWeights) {
    for (double g : {0.0, 0.1, 0.5}) {
        const auto j = plaquette_weights(2, 2, g);
        for (std::size_t rho = 0; rho < j.dim; ++rho) {
            EXPECT_NEAR(j(0, 0, rho), rho == 0 ? 1.0 : 0.0, 1e-13) << "gamma=" << g;
        }
    }
    const auto j = plaquette_weights(2, 2, 0.1);
    const auto tau = lexicographic_rank(Permutation::from_cycles(4, {{0, 1}, {2, 3}}));
    EXPECT_NEAR(j(tau, tau, tau), 0.6561, 1e-13);
    const auto &grp = symmetric_group(4);
    for (std::size_t s = 0; s < grp.size(); ++s) {
        EXPECT_NEAR(j(s, s, s), std::pow(0.9, 4 - grp.elements[s].fixed_points()), 1e-12);
    }
    const auto j0 = plaquette_weights(2, 2, 0.0);
    for (std::size_t s = 0; s < j0.dim; ++s) EXPECT_NEAR(j0(s, s, s), 1.0, 1e-12);
    EXPECT_THROW(plaquette_weights(3, 2, 0.0), std::invalid_argument);
}

TEST(Boundary, Examples) {
    const auto b = boundary_weights(2, 2);
    const auto tau = static_cast<Eigen::Index>(lexicographic_rank(Permutation::from_cycles(4, {{0, 1}, {2, 3}})));
    const auto cyc = static_cast<Eigen::Index>(lexicographic_rank(Permutation::from_cycles(4, {{0, 1, 2, 3}})));
    EXPECT_DOUBLE_EQ(b.top(tau), 4.0);
    EXPECT_DOUBLE_EQ(b.bottom_operator(0), 0.0);
    EXPECT_DOUBLE_EQ(b.bottom_operator(cyc), 2.0);
}

TEST(Contract, SingleGateMatchesTransferMatrix) {
    for (double g : {0.0, 0.1}) {
        RmpuParams p;
        p.n_sites = 2;
        p.overlap = 1;
        p.gamma = g;
        const auto r = contract_brickwork(2, 1, 2, 2, g);
        EXPECT_NEAR(r.value, rmpu_moment_exact(p), 1e-10 * r.value);
    }
}

TEST(Contract, NormIdentityAtKOne) {
    for (std::size_t n : {4u, 5u, 6u}) {
        for (std::size_t t : {1u, 3u, 6u}) {
            EXPECT_NEAR(contract_brickwork(n, t, 1, 2, 0.0).value, 1.0, 1e-10) << n << " " << t;
        }
    }
}

TEST(Contract, LightconeExactness) {
    RtnOptions on, off;
    off.lightcone = false;
    for (double g : {0.0, 0.05}) {
        const auto a = contract_brickwork(4, 3, 2, 2, g, on);
        const auto b = contract_brickwork(4, 3, 2, 2, g, off);
        EXPECT_NEAR(a.value, b.value, 1e-10 * a.value);
    }
}

TEST(Contract, MatchesSimulatorNoisy) {
    const double g = 0.02;
    auto spec = CircuitSpec::chain(6, 6, g);
    spec.noise = NoisePlacement::PerGateSupport;
    spec.master_seed = 606;
    RunningStats nu;
    for (std::uint64_t r = 0; r < 1000; ++r) nu.add(moment_nu(run_circuit(spec, r).pauli_coefficients(), 2));
    const auto res = contract_brickwork(6, 6, 2, 2, g);
    EXPECT_NEAR(res.value, nu.mean(), 3.0 * nu.stderr_of_mean());
}

TEST(Contract, TruncationMonotonicity) {
    RtnOptions small, big;
    small.chi_mps = 16;
    big.chi_mps = 64;
    const auto a = contract_brickwork(8, 5, 2, 2, 0.0, small);
    const auto b = contract_brickwork(8, 5, 2, 2, 0.0, big);
    EXPECT_LE(std::abs(a.value - b.value), a.truncation_error + b.truncation_error);
    EXPECT_LE(a.max_bond, 16u);
}

TEST(Contract, DeepCircuitApproachesGlobalHaar) {
    const auto series = contract_brickwork_series(4, 30, 2, 2, 0.0);
    const double haar = global_haar_moment(4, 2);
    EXPECT_NEAR(series.back().value, haar, 1e-3 * haar);
    EXPECT_EQ(series.size(), 30u);
    EXPECT_EQ(series.front().depth, 1u);
}

}  // namespace
