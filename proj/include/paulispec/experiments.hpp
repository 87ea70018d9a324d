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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paulispec/circuits.hpp"
#include "paulispec/spectrum.hpp"
#include "paulispec/truncation.hpp"

namespace paulispec {

enum class Engine { Simulator, Rtn, RmpuExact, RmpuAsymptotic };

std::string to_string(Engine e);
Engine engine_from_string(const std::string &s);

/// Lists swept by the driver. Empty lists fall back to the circuit spec.
struct SweepSpec {
    std::vector<std::size_t> depths;
    /// Per-qubit (or per-gate) rates. Ignored when gamma_n is set.
    std::vector<double> gammas;
    /// Error per cycle gamma N; the rate used is gamma_n / N.
    std::vector<double> gamma_n;
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> overlaps;
    std::vector<int> ks{2};
    std::vector<std::size_t> n_p;
};

struct ExperimentConfig {
    CircuitSpec circuit;
    SweepSpec sweep;
    std::size_t n_realizations = 100;
    Engine engine = Engine::Simulator;
    /// 0 uses the hardware concurrency.
    std::size_t threads = 1;
    std::string out_dir = ".";
    std::size_t chi_mps = 256;
    double rtn_threshold = 1e-12;
    std::size_t hist_bins = kDefaultHistogramBins;
    double hist_u_min = kDefaultHistogramUMin;
    double hist_u_max = kDefaultHistogramUMax;

    /// Throws std::invalid_argument when the sweep is outside the engine's limits.
    void validate() const;
};

/// One resolved point of the sweep.
struct SweepPoint {
    std::size_t n_sites = 0;
    std::size_t overlap = 1;
    double gamma = 0.0;
};

/// Cartesian product of sizes, overlaps and rates, in that nesting order.
std::vector<SweepPoint> sweep_points(const ExperimentConfig &config);

/// Circuit spec of the configuration specialised to one sweep point.
CircuitSpec point_spec(const ExperimentConfig &config, const SweepPoint &point, std::size_t depth);

/// Ensemble moments for every sweep point, depth and k. Simulator rows carry
/// mu, nu and nu_over_F2k with standard errors; rtn rows carry nu and
/// nu_over_F2k with the truncation estimate as their error; rmpu rows are exact.
std::vector<MomentEstimate> run_ensemble(const ExperimentConfig &config);

struct HistogramRecord {
    std::size_t n_sites = 0;
    std::size_t depth = 0;
    double gamma = 0.0;
    std::uint64_t seed = 0;
    std::size_t n_samples = 0;
    /// Realization-averaged histogram.
    SpectrumHistogram histogram;
    std::vector<double> density_stderr;
    double zero_mass_stderr = 0.0;
};

/// Averaged Pauli-spectrum histograms (simulator engine) at every depth.
std::vector<HistogramRecord> run_histograms(const ExperimentConfig &config);

struct MseRecord {
    std::size_t n_sites = 0;
    std::size_t depth = 0;
    double gamma = 0.0;
    std::uint64_t seed = 0;
    MsePoint point;
};

/// Truncation MSE over the N_P grid (default: powers of two) for every sweep point and depth.
std::vector<MseRecord> run_truncation(const ExperimentConfig &config);

struct FitResult {
    double kappa = 0.0;
    double kappa_stderr = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    double r_squared = 0.0;
    std::size_t n_points = 0;
};

struct SeriesPoint {
    double x = 0.0;
    double value = 0.0;
    double std_error = 0.0;
};

/// Weighted fit of log|value - reference| = c - kappa t over the points of the
/// window whose deviation exceeds 3 standard errors. Throws std::runtime_error
/// with fewer than 3 such points.
FitResult fit_kappa(const std::vector<SeriesPoint> &series, double reference, double t_min, double t_max);

/// fit_kappa with the default window [N/2, 2N] and reference (2k-1)!! = 3.
FitResult fit_kappa(const std::vector<SeriesPoint> &series, std::size_t n_sites);

struct ThresholdResult {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t sign_changes = 0;
};

/// Linear interpolation of kappa(gamma N) across its first sign change.
/// Throws std::runtime_error when kappa does not change sign.
ThresholdResult locate_threshold(const std::vector<SeriesPoint> &series);

/// Output files.
inline constexpr const char *kMomentsHeader =
    "engine,geometry,N,r,t,gamma,noise_placement,k,quantity,value,stderr,n_samples,seed";
inline constexpr const char *kHistogramHeader = "N,t,gamma,bin_lo,bin_hi,density,zero_mass,n_samples,seed";
inline constexpr const char *kMseHeader = "N,t,gamma,N_P,mse,stderr,n_samples,seed";

void write_moments_csv(const std::string &path, Engine engine, const std::vector<MomentEstimate> &rows);
void write_histogram_csv(const std::string &path, const std::vector<HistogramRecord> &rows);
void write_mse_csv(const std::string &path, const std::vector<MseRecord> &rows);

/// JSON document with the resolved configuration, code version, command and wall time.
std::string sidecar_json(const ExperimentConfig &config, const std::string &command, double wall_seconds);
void write_sidecar(const std::string &path, const ExperimentConfig &config, const std::string &command,
                   double wall_seconds);

std::string code_version();

struct SelftestCase {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Small oracle-equivalence suite: Weingarten inverses, transfer matrix vs
/// simulator, replica contraction vs transfer matrix.
std::vector<SelftestCase> run_selftest(std::uint64_t seed, std::size_t realizations, std::size_t threads);

}  // namespace paulispec
