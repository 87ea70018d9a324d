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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "paulispec/experiments.hpp"
#include "paulispec/rmpu_analytic.hpp"

namespace {

using namespace paulispec;
namespace fs = std::filesystem;

std::string slurp(const fs::path &p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const MomentEstimate &find(const std::vector<MomentEstimate> &rows, MomentQuantity q, std::size_t t, int k = 2) {
    for (const auto &r : rows) {
        if (r.quantity == q && r.meta.num_layers() == t && r.k == k) return r;
    }
    throw std::runtime_error("row not found");
}

std::vector<SeriesPoint> exponential(double a, double kappa, double ref) {
    std::vector<SeriesPoint> s;
    for (int t = 4; t <= 20; ++t) s.push_back({double(t), ref + a * std::exp(-kappa * t), 0.0});
    return s;
}

TEST(FitKappa, SyntheticExponentials) {
    const auto f = fit_kappa(exponential(5.0, 0.3, 3.0), 3.0, 4.0, 20.0);
    EXPECT_NEAR(f.kappa, 0.3, 1e-12);
    EXPECT_EQ(f.n_points, 17u);
    EXPECT_NEAR(fit_kappa(exponential(5.0, -0.1, 3.0), 3.0, 4.0, 20.0).kappa, -0.1, 1e-12);
    // Values below the reference are fitted on |deviation|.
    EXPECT_NEAR(fit_kappa(exponential(-2.0, 0.2, 3.0), 3.0, 4.0, 20.0).kappa, 0.2, 1e-12);
}

TEST(FitKappa, SignificanceFilterAndErrors) {
    std::vector<SeriesPoint> s{{1, 3.5, 0.01}, {2, 3.25, 0.01}, {3, 3.02, 0.05}, {4, 3.1, 0.01}};
    const auto f = fit_kappa(s, 3.0, 0.0, 10.0);
    EXPECT_EQ(f.n_points, 3u);
    EXPECT_EQ(f.t_max, 4.0);
    std::vector<SeriesPoint> flat{{1, 3.0, 0.1}, {2, 3.01, 0.1}, {3, 2.99, 0.1}};
    EXPECT_THROW(fit_kappa(flat, 3.0, 0.0, 10.0), std::runtime_error);
}

TEST(LocateThreshold, Examples) {
    const auto r = locate_threshold({{0.2, 0.1, 0.01}, {0.3, -0.1, 0.01}});
    EXPECT_NEAR(r.value, 0.25, 1e-15);
    EXPECT_EQ(r.sign_changes, 1u);
    EXPECT_NEAR(r.std_error, 0.1 * std::sqrt(2.0) * 0.01 * 0.1 / 0.04, 1e-12);
    EXPECT_THROW(locate_threshold({{0.1, 0.3, 0.0}, {0.2, 0.2, 0.0}, {0.3, 0.1, 0.0}}), std::runtime_error);
    const auto two = locate_threshold({{0.1, 1, 0}, {0.2, -1, 0}, {0.3, 1, 0}});
    EXPECT_EQ(two.sign_changes, 2u);
}

TEST(Sweep, PointsAndOverrides) {
    ExperimentConfig c;
    c.circuit = CircuitSpec::chain(6, 4);
    c.sweep.sizes = {4, 6};
    c.sweep.gamma_n = {0.2, 0.4};
    c.sweep.gammas = {0.9};
    const auto pts = sweep_points(c);
    ASSERT_EQ(pts.size(), 4u);
    EXPECT_NEAR(pts[0].gamma, 0.05, 1e-15);
    EXPECT_NEAR(pts[3].gamma, 0.4 / 6.0, 1e-15);
}

TEST(Validate, EngineLimits) {
    ExperimentConfig c;
    c.circuit = CircuitSpec::chain(14, 4);
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.circuit = CircuitSpec::chain(6, 4);
    c.n_realizations = 1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.n_realizations = 10;
    c.engine = Engine::RmpuExact;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.engine = Engine::Rtn;
    c.sweep.ks = {3};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    EXPECT_THROW(engine_from_string("dmrg"), std::invalid_argument);
    EXPECT_EQ(engine_from_string(to_string(Engine::RmpuAsymptotic)), Engine::RmpuAsymptotic);
}

TEST(RunEnsemble, UntouchedOperatorHasExactMoments) {
    ExperimentConfig c;
    c.circuit = CircuitSpec::chain(5, 1);
    c.circuit.initial_site = 4;
    c.n_realizations = 10;
    const auto rows = run_ensemble(c);
    const auto &mu = find(rows, MomentQuantity::Mu, 1);
    EXPECT_NEAR(mu.value, std::pow(32.0, 2.0), 1e-9);
    EXPECT_NEAR(mu.std_error, 0.0, 1e-9);
}

TEST(RunEnsemble, DeterministicAcrossThreadCounts) {
    ExperimentConfig c;
    c.circuit = CircuitSpec::chain(5, 4, 0.02);
    c.circuit.master_seed = 42;
    c.sweep.depths = {2, 4};
    c.n_realizations = 16;
    const auto a = run_ensemble(c);
    c.threads = 3;
    const auto b = run_ensemble(c);
    ASSERT_EQ(a.size(), b.size());
    ASSERT_EQ(a.size(), 6u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].value, b[i].value);
        EXPECT_EQ(a[i].std_error, b[i].std_error);
    }
    const auto &nu = find(a, MomentQuantity::Nu, 4);
    const auto &ratio = find(a, MomentQuantity::NuOverF2k, 4);
    EXPECT_NEAR(ratio.value, nu.value / std::pow(0.98, 4.0 * 20.0), 1e-12 * ratio.value);
}

TEST(RunEnsemble, StandardErrorShrinksWithSamples) {
    ExperimentConfig c;
    c.circuit = CircuitSpec::chain(4, 8);
    c.circuit.master_seed = 3;
    c.n_realizations = 1000;
    const double e1 = find(run_ensemble(c), MomentQuantity::Mu, 8).std_error;
    c.n_realizations = 2000;
    const double e2 = find(run_ensemble(c), MomentQuantity::Mu, 8).std_error;
    EXPECT_NEAR(e2 / e1, 1.0 / std::sqrt(2.0), 0.1);
}

TEST(RunEnsemble, RmpuEnginesAgreeWithSimulator) {
    ExperimentConfig c;
    c.circuit = CircuitSpec::rmpu(3, 1, 0.05);
    c.circuit.master_seed = 9;
    c.n_realizations = 2000;
    const auto sim = run_ensemble(c);
    c.engine = Engine::RmpuExact;
    const auto exact = run_ensemble(c);
    const auto &s = find(sim, MomentQuantity::Nu, 2);
    const auto &e = find(exact, MomentQuantity::Nu, 2);
    EXPECT_NEAR(s.value, e.value, 3.0 * s.std_error);
    EXPECT_EQ(e.n_samples, 0u);
}

TEST(RunEnsemble, RtnEngineAgreesWithSimulator) {
    ExperimentConfig c;
    c.circuit = CircuitSpec::chain(6, 4);
    c.circuit.master_seed = 10;
    c.n_realizations = 1000;
    c.sweep.depths = {2, 4};
    const auto sim = run_ensemble(c);
    c.engine = Engine::Rtn;
    const auto rtn = run_ensemble(c);
    for (std::size_t t : {2u, 4u}) {
        const auto &s = find(sim, MomentQuantity::Mu, t);
        const auto &r = find(rtn, MomentQuantity::Mu, t);
        EXPECT_NEAR(s.value, r.value, 3.0 * s.std_error) << "t=" << t;
        EXPECT_LT(r.std_error, 1e-6);
    }
}

TEST(Histograms, AveragedAndNormalized) {
    ExperimentConfig c;
    c.circuit = CircuitSpec::chain(4, 6);
    c.n_realizations = 8;
    c.hist_bins = 20;
    const auto recs = run_histograms(c);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_NEAR(recs[0].histogram.zero_mass + [&] {
        double m = 0.0;
        const auto &h = recs[0].histogram;
        for (std::size_t b = 0; b < h.n_bins(); ++b) m += h.density[b] * (h.bin_hi[b] - h.bin_lo[b]);
        return m + h.overflow_mass;
    }(), 1.0, 1e-12);
    EXPECT_EQ(recs[0].density_stderr.size(), 20u);
}

TEST(Output, CsvHeadersAndSidecar) {
    const fs::path dir = fs::temp_directory_path() / "paulispec_test_out";
    fs::create_directories(dir);
    ExperimentConfig c;
    c.circuit = CircuitSpec::chain(4, 2, 0.01);
    c.circuit.master_seed = 5;
    c.n_realizations = 4;
    const auto rows = run_ensemble(c);
    write_moments_csv((dir / "m.csv").string(), c.engine, rows);
    write_moments_csv((dir / "m2.csv").string(), c.engine, run_ensemble(c));
    const std::string text = slurp(dir / "m.csv");
    EXPECT_EQ(text.substr(0, text.find('\n')), kMomentsHeader);
    EXPECT_EQ(text, slurp(dir / "m2.csv"));
    EXPECT_NE(text.find("simulator,chain,4,0,2,0.01,per_qubit_per_layer,2,mu,"), std::string::npos);

    write_histogram_csv((dir / "h.csv").string(), run_histograms(c));
    const std::string h = slurp(dir / "h.csv");
    EXPECT_EQ(h.substr(0, h.find('\n')), kHistogramHeader);

    c.sweep.n_p = {1, 4};
    write_mse_csv((dir / "e.csv").string(), run_truncation(c));
    const std::string e = slurp(dir / "e.csv");
    EXPECT_EQ(e.substr(0, e.find('\n')), kMseHeader);

    write_sidecar((dir / "s.json").string(), c, "paulispec moments", 1.5);
    const auto doc = nlohmann::json::parse(slurp(dir / "s.json"));
    EXPECT_EQ(doc["version"], code_version());
    EXPECT_EQ(doc["wall_seconds"], 1.5);
    EXPECT_EQ(doc["circuit"]["N"], 4);
    EXPECT_EQ(doc["circuit"]["noise_placement"], "per_qubit_per_layer");
    fs::remove_all(dir);
}

TEST(Selftest, AllCasesPass) {
    for (const auto &c : run_selftest(7, 400, 1)) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

}  // namespace
