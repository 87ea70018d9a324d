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

#include "oracles/oracles.hpp"
#include "paulispec/circuits.hpp"
#include "paulispec/pauli_core.hpp"
#include "paulispec/stats.hpp"
#include "paulispec/weingarten.hpp"

namespace {

using namespace paulispec;

double max_coeff_diff(const PauliCoefficients &a, const std::vector<double> &b) {
    double worst = 0.0;
    for (std::size_t p = 0; p < b.size(); ++p) worst = std::max(worst, std::abs(a.values[p] - b[p]));
    return worst;
}

TEST(PauliTransformOracle, MatchesDirectTraces) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
        oracle::Mat a(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = oracle::cplx(normal(rng), normal(rng));
        }
        const oracle::Mat h = a + a.adjoint();
        std::vector<cplx> flat(static_cast<std::size_t>(dim * dim));
        for (Eigen::Index i = 0; i < dim; ++i) {
            for (Eigen::Index j = 0; j < dim; ++j) flat[static_cast<std::size_t>(i * dim + j)] = h(i, j);
        }
        const auto got = pauli_transform(flat, static_cast<std::size_t>(dim));
        EXPECT_LT(max_coeff_diff(got, oracle::pauli_coefficients(h, n)), 1e-12) << "N=" << n;
    }
}

struct EvolveCase {
    CircuitSpec spec;
    const char *name;
};

TEST(SimulatorOracle, MatchesFullMatrixEvolution) {
    std::vector<EvolveCase> cases;
    cases.push_back({CircuitSpec::chain(4, 3, 0.0), "chain noiseless"});
    cases.push_back({CircuitSpec::chain(5, 4, 0.07), "chain per-qubit noise"});
    {
        auto s = CircuitSpec::chain(4, 3, 0.1);
        s.noise = NoisePlacement::PerGateSupport;
        cases.push_back({s, "chain per-gate noise"});
    }
    cases.push_back({CircuitSpec::grid(2, 2, 4, 0.05), "grid"});
    cases.push_back({CircuitSpec::rmpu(4, 2, 0.05), "rmpu"});
    {
        auto s = CircuitSpec::chain(3, 2, 0.0);
        s.initial_axis = PauliAxis::Y;
        s.initial_site = 0;
        cases.push_back({s, "chain Y at the edge"});
    }
    for (auto &c : cases) {
        c.spec.master_seed = 1234;
        for (std::uint64_t r = 0; r < 3; ++r) {
            const auto got = run_circuit(c.spec, r).pauli_coefficients();
            const auto want = oracle::pauli_coefficients(oracle::evolve(c.spec, r), c.spec.sites());
            EXPECT_LT(max_coeff_diff(got, want), 1e-10) << c.name << " realization " << r;
        }
    }
}

TEST(NoisyWeingartenOracle, MonteCarloChannelAverage) {
    const double q = 4.0;
    const double g = 0.1;
    const auto mc = oracle::noisy_weingarten_mc(q, g, 100000, 2024);
    const auto wg = noisy_weingarten(2, q, g);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double tol = std::max(3.0 * mc.stderr_(i, j), 1e-12);
            EXPECT_NEAR(wg.entries(i, j), mc.mean(i, j), tol) << i << "," << j;
        }
    }
}

TEST(NoisyWeingartenOracle, NoiselessMatchesHandInverse) {
    const auto mc = oracle::noisy_weingarten_mc(4.0, 0.0, 20000, 5);
    EXPECT_NEAR(mc.mean(0, 0), 1.0 / 15.0, 3.0 * mc.stderr_(0, 0));
    EXPECT_NEAR(mc.mean(0, 1), -1.0 / 60.0, 3.0 * mc.stderr_(0, 1));
    EXPECT_GT(mc.stderr_(0, 0), 0.0);
}

TEST(HaarOracle, LibrarySamplerMoments) {
    RunningStats m2, m4;
    for (std::uint64_t s = 0; s < 100000; ++s) {
        auto stream = gate_stream(99, 0, s);
        const auto u = sample_haar_matrix(2, stream);
        const double p = std::norm(u[0]);
        m2.add(p);
        m4.add(p * p);
    }
    EXPECT_NEAR(m2.mean(), 0.5, 3.0 * m2.stderr_of_mean());
    EXPECT_NEAR(m4.mean(), 1.0 / 3.0, 3.0 * m4.stderr_of_mean());
}

}  // namespace
