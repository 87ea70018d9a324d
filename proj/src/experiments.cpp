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

#include "paulispec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "paulispec/parallel.hpp"
#include "paulispec/rmpu_analytic.hpp"
#include "paulispec/rtn.hpp"
#include "paulispec/stats.hpp"

namespace paulispec {

std::string to_string(Engine e) {
    switch (e) {
        case Engine::Simulator:
            return "simulator";
        case Engine::Rtn:
            return "rtn";
        case Engine::RmpuExact:
            return "rmpu_exact";
        case Engine::RmpuAsymptotic:
            break;
    }
    return "rmpu_asymptotic";
}

Engine engine_from_string(const std::string &s) {
    if (s == "simulator") return Engine::Simulator;
    if (s == "rtn") return Engine::Rtn;
    if (s == "rmpu_exact") return Engine::RmpuExact;
    if (s == "rmpu_asymptotic") return Engine::RmpuAsymptotic;
    throw std::invalid_argument("unknown engine '" + s + "' (expected simulator, rtn, rmpu_exact or rmpu_asymptotic)");
}

namespace {

std::vector<std::size_t> resolved_depths(const ExperimentConfig &config, const SweepPoint &point) {
    if (config.circuit.geometry == Geometry::Rmpu) {
        return {point.n_sites - point.overlap};
    }
    std::vector<std::size_t> depths = config.sweep.depths.empty() ? std::vector<std::size_t>{config.circuit.depth}
                                                                  : config.sweep.depths;
    std::sort(depths.begin(), depths.end());
    depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
    return depths;
}

}  // namespace

std::vector<SweepPoint> sweep_points(const ExperimentConfig &config) {
    const CircuitSpec &c = config.circuit;
    std::vector<std::size_t> sizes = config.sweep.sizes;
    if (sizes.empty()) {
        sizes.push_back(c.sites());
    }
    std::vector<std::size_t> overlaps = config.sweep.overlaps;
    if (overlaps.empty()) {
        overlaps.push_back(c.overlap);
    }
    std::vector<SweepPoint> out;
    for (std::size_t n : sizes) {
        for (std::size_t r : overlaps) {
            if (!config.sweep.gamma_n.empty()) {
                for (double gn : config.sweep.gamma_n) {
                    out.push_back({n, r, gn / static_cast<double>(n)});
                }
            } else if (!config.sweep.gammas.empty()) {
                for (double g : config.sweep.gammas) {
                    out.push_back({n, r, g});
                }
            } else {
                out.push_back({n, r, c.gamma});
            }
        }
    }
    return out;
}

CircuitSpec point_spec(const ExperimentConfig &config, const SweepPoint &point, std::size_t depth) {
    CircuitSpec s = config.circuit;
    if (s.geometry == Geometry::Grid) {
        s.n_sites = s.lx * s.ly;
    } else {
        s.n_sites = point.n_sites;
    }
    s.overlap = point.overlap;
    s.gamma = point.gamma;
    if (s.geometry != Geometry::Rmpu) {
        s.depth = depth;
    }
    return s;
}

void ExperimentConfig::validate() const {
    if (circuit.geometry == Geometry::Grid && !sweep.sizes.empty()) {
        throw std::invalid_argument("grid size is set by lx and ly; the N sweep must be empty");
    }
    if (sweep.ks.empty()) {
        throw std::invalid_argument("the k sweep is empty");
    }
    for (int k : sweep.ks) {
        if (k < 1) throw std::invalid_argument("moment index k must be >= 1");
    }
    for (std::size_t t : sweep.depths) {
        if (t < 1) throw std::invalid_argument("depths must be >= 1");
    }
    if (hist_bins < 1 || !(hist_u_min > 0.0) || !(hist_u_max > hist_u_min)) {
        throw std::invalid_argument("histogram needs bins >= 1 and 0 < u_min < u_max");
    }
    const bool rmpu_engine = engine == Engine::RmpuExact || engine == Engine::RmpuAsymptotic;
    if (rmpu_engine && circuit.geometry != Geometry::Rmpu) {
        throw std::invalid_argument("rmpu engines need the rmpu geometry");
    }
    if (engine == Engine::Rtn && circuit.geometry != Geometry::Chain) {
        throw std::invalid_argument("the rtn engine contracts the chain geometry only");
    }
    if (engine == Engine::Simulator && n_realizations < 2) {
        throw std::invalid_argument("the simulator needs at least 2 realizations for a standard error");
    }
    for (const SweepPoint &p : sweep_points(*this)) {
        const CircuitSpec s = point_spec(*this, p, std::max<std::size_t>(1, circuit.depth));
        s.validate();
        switch (engine) {
            case Engine::Simulator:
                if (s.sites() > kMaxDenseSites) {
                    throw std::invalid_argument("simulator sizes are limited to N <= 13");
                }
                break;
            case Engine::Rtn:
                if (s.sites() > 24) throw std::invalid_argument("rtn sizes are limited to N <= 24");
                for (int k : sweep.ks) {
                    if (k > 2) throw std::invalid_argument("rtn supports k <= 2");
                }
                if (chi_mps < 1) throw std::invalid_argument("chi_mps must be >= 1");
                break;
            case Engine::RmpuExact:
                for (int k : sweep.ks) {
                    if (2 * k > kMaxGroupMatrixDegree) throw std::invalid_argument("rmpu_exact supports k <= 3");
                }
                break;
            case Engine::RmpuAsymptotic:
                for (int k : sweep.ks) {
                    if (k < 2) throw std::invalid_argument("rmpu_asymptotic needs k >= 2");
                }
                if (!(p.gamma < 1.0)) throw std::invalid_argument("rmpu_asymptotic needs gamma < 1");
                break;
        }
    }
}

namespace {

MomentEstimate make_estimate(const CircuitSpec &spec, MomentQuantity q, int k, double value, double err,
                             std::size_t n) {
    MomentEstimate e;
    e.quantity = q;
    e.k = k;
    e.value = value;
    e.std_error = err;
    e.n_samples = n;
    e.meta = spec;
    return e;
}

void simulator_moments(const ExperimentConfig &config, const SweepPoint &point, std::vector<MomentEstimate> &out) {
    const auto depths = resolved_depths(config, point);
    const auto &ks = config.sweep.ks;
    const CircuitSpec spec = point_spec(config, point, depths.back());
    const std::size_t nd = depths.size();
    const std::size_t nk = ks.size();
    // samples[r][(d * nk + j) * 2 + {0: mu, 1: nu}]
    std::vector<std::vector<double>> samples(config.n_realizations);
    parallel_for(config.n_realizations, config.threads, [&](std::size_t r) {
        std::vector<double> row(nd * nk * 2);
        run_circuit(spec, r, [&](std::size_t layers, const OperatorState &op) {
            const auto it = std::find(depths.begin(), depths.end(), layers);
            if (it == depths.end()) return;
            const auto d = static_cast<std::size_t>(it - depths.begin());
            const PauliCoefficients coeffs = op.pauli_coefficients();
            for (std::size_t j = 0; j < nk; ++j) {
                row[(d * nk + j) * 2] = moment_mu(coeffs, ks[j]);
                row[(d * nk + j) * 2 + 1] = moment_nu(coeffs, ks[j]);
            }
        });
        samples[r] = std::move(row);
    });
    for (std::size_t d = 0; d < nd; ++d) {
        const CircuitSpec meta = point_spec(config, point, depths[d]);
        const double f = circuit_fidelity(meta, meta.num_layers());
        for (std::size_t j = 0; j < nk; ++j) {
            RunningStats mu, nu;
            for (const auto &row : samples) {
                mu.add(row[(d * nk + j) * 2]);
                nu.add(row[(d * nk + j) * 2 + 1]);
            }
            const double f2k = std::pow(f, 2.0 * ks[j]);
            const std::size_t n = config.n_realizations;
            out.push_back(make_estimate(meta, MomentQuantity::Mu, ks[j], mu.mean(), mu.stderr_of_mean(), n));
            out.push_back(make_estimate(meta, MomentQuantity::Nu, ks[j], nu.mean(), nu.stderr_of_mean(), n));
            out.push_back(make_estimate(meta, MomentQuantity::NuOverF2k, ks[j], nu.mean() / f2k,
                                        nu.stderr_of_mean() / f2k, n));
        }
    }
}

void rtn_moments(const ExperimentConfig &config, const SweepPoint &point, std::vector<MomentEstimate> &out) {
    const auto depths = resolved_depths(config, point);
    RtnOptions opt;
    opt.chi_mps = config.chi_mps;
    opt.threshold = config.rtn_threshold;
    opt.initial_site = config.circuit.initial_site;
    const auto &ks = config.sweep.ks;
    std::vector<std::vector<RtnResult>> series(ks.size());
    parallel_for(ks.size(), config.threads, [&](std::size_t j) {
        series[j] = contract_brickwork_series(point.n_sites, depths.back(), ks[j], 2, point.gamma, opt);
    });
    for (std::size_t t : depths) {
        CircuitSpec meta = point_spec(config, point, t);
        meta.noise = NoisePlacement::PerGateSupport;
        const double f = circuit_fidelity(meta, t);
        for (std::size_t j = 0; j < ks.size(); ++j) {
            const RtnResult &r = series[j][t - 1];
            const double f2k = std::pow(f, 2.0 * ks[j]);
            if (point.gamma == 0.0) {
                out.push_back(make_estimate(meta, MomentQuantity::Mu, ks[j], r.value, r.truncation_error, 0));
            }
            out.push_back(make_estimate(meta, MomentQuantity::Nu, ks[j], r.value, r.truncation_error, 0));
            out.push_back(
                make_estimate(meta, MomentQuantity::NuOverF2k, ks[j], r.value / f2k, r.truncation_error / f2k, 0));
        }
    }
}

void rmpu_moments(const ExperimentConfig &config, const SweepPoint &point, std::vector<MomentEstimate> &out) {
    const CircuitSpec meta = point_spec(config, point, 0);
    for (int k : config.sweep.ks) {
        RmpuParams p;
        p.n_sites = point.n_sites;
        p.overlap = point.overlap;
        p.k = k;
        p.gamma = point.gamma;
        const double value =
            config.engine == Engine::RmpuExact ? rmpu_moment_exact(p) : rmpu_moment_asymptotic(p);
        const double f2k = std::pow(1.0 - point.gamma, 2.0 * k * static_cast<double>(p.m()));
        if (point.gamma == 0.0) {
            out.push_back(make_estimate(meta, MomentQuantity::Mu, k, value, 0.0, 0));
        }
        out.push_back(make_estimate(meta, MomentQuantity::Nu, k, value, 0.0, 0));
        out.push_back(make_estimate(meta, MomentQuantity::NuOverF2k, k, value / f2k, 0.0, 0));
    }
}

}  // namespace

std::vector<MomentEstimate> run_ensemble(const ExperimentConfig &config) {
    config.validate();
    std::vector<MomentEstimate> out;
    for (const SweepPoint &point : sweep_points(config)) {
        switch (config.engine) {
            case Engine::Simulator:
                simulator_moments(config, point, out);
                break;
            case Engine::Rtn:
                rtn_moments(config, point, out);
                break;
            case Engine::RmpuExact:
            case Engine::RmpuAsymptotic:
                rmpu_moments(config, point, out);
                break;
        }
    }
    return out;
}

std::vector<HistogramRecord> run_histograms(const ExperimentConfig &config) {
    config.validate();
    if (config.engine != Engine::Simulator) {
        throw std::invalid_argument("histograms need the simulator engine");
    }
    std::vector<HistogramRecord> out;
    for (const SweepPoint &point : sweep_points(config)) {
        const auto depths = resolved_depths(config, point);
        const CircuitSpec spec = point_spec(config, point, depths.back());
        std::vector<std::vector<SpectrumHistogram>> samples(config.n_realizations);
        parallel_for(config.n_realizations, config.threads, [&](std::size_t r) {
            std::vector<SpectrumHistogram> row(depths.size());
            run_circuit(spec, r, [&](std::size_t layers, const OperatorState &op) {
                const auto it = std::find(depths.begin(), depths.end(), layers);
                if (it == depths.end()) return;
                row[static_cast<std::size_t>(it - depths.begin())] = spectrum_histogram(
                    op.pauli_coefficients(), config.hist_bins, config.hist_u_min, config.hist_u_max);
            });
            samples[r] = std::move(row);
        });
        for (std::size_t d = 0; d < depths.size(); ++d) {
            HistogramRecord rec;
            const CircuitSpec meta = point_spec(config, point, depths[d]);
            rec.n_sites = meta.sites();
            rec.depth = depths[d];
            rec.gamma = point.gamma;
            rec.seed = meta.master_seed;
            rec.n_samples = config.n_realizations;
            const SpectrumHistogram &first = samples.front()[d];
            rec.histogram.bin_lo = first.bin_lo;
            rec.histogram.bin_hi = first.bin_hi;
            rec.histogram.density.assign(first.n_bins(), 0.0);
            rec.density_stderr.assign(first.n_bins(), 0.0);
            for (std::size_t b = 0; b < first.n_bins(); ++b) {
                RunningStats s;
                for (const auto &row : samples) s.add(row[d].density[b]);
                rec.histogram.density[b] = s.mean();
                rec.density_stderr[b] = s.stderr_of_mean();
            }
            RunningStats zero, over;
            for (const auto &row : samples) {
                zero.add(row[d].zero_mass);
                over.add(row[d].overflow_mass);
            }
            rec.histogram.zero_mass = zero.mean();
            rec.histogram.overflow_mass = over.mean();
            rec.zero_mass_stderr = zero.stderr_of_mean();
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::vector<MseRecord> run_truncation(const ExperimentConfig &config) {
    config.validate();
    if (config.engine != Engine::Simulator) {
        throw std::invalid_argument("truncation needs the simulator engine");
    }
    std::vector<MseRecord> out;
    for (const SweepPoint &point : sweep_points(config)) {
        for (std::size_t t : resolved_depths(config, point)) {
            const CircuitSpec spec = point_spec(config, point, t);
            const auto grid = config.sweep.n_p.empty() ? default_np_grid(spec.sites()) : config.sweep.n_p;
            for (const MsePoint &mp : truncation_mse(spec, grid, config.n_realizations, config.threads)) {
                MseRecord rec;
                rec.n_sites = spec.sites();
                rec.depth = t;
                rec.gamma = point.gamma;
                rec.seed = spec.master_seed;
                rec.point = mp;
                out.push_back(rec);
            }
        }
    }
    return out;
}

FitResult fit_kappa(const std::vector<SeriesPoint> &series, double reference, double t_min, double t_max) {
    std::vector<double> x, y, sigma;
    bool weighted = true;
    for (const SeriesPoint &p : series) {
        if (p.x < t_min || p.x > t_max) continue;
        const double dev = std::abs(p.value - reference);
        if (!(dev > 3.0 * p.std_error) || !(dev > 0.0)) continue;
        x.push_back(p.x);
        y.push_back(std::log(dev));
        sigma.push_back(p.std_error / dev);
        weighted = weighted && p.std_error > 0.0;
    }
    if (x.size() < 3) {
        throw std::runtime_error("kappa fit needs at least 3 points with a significant deviation");
    }
    const LinearFit fit = weighted ? linear_fit(x, y, sigma) : linear_fit(x, y);
    FitResult out;
    out.kappa = -fit.slope;
    out.kappa_stderr = fit.slope_stderr;
    out.t_min = *std::min_element(x.begin(), x.end());
    out.t_max = *std::max_element(x.begin(), x.end());
    out.r_squared = fit.r_squared;
    out.n_points = x.size();
    return out;
}

FitResult fit_kappa(const std::vector<SeriesPoint> &series, std::size_t n_sites) {
    const double n = static_cast<double>(n_sites);
    return fit_kappa(series, haar_moment(2), 0.5 * n, 2.0 * n);
}

ThresholdResult locate_threshold(const std::vector<SeriesPoint> &series) {
    std::vector<SeriesPoint> s = series;
    std::stable_sort(s.begin(), s.end(), [](const SeriesPoint &a, const SeriesPoint &b) { return a.x < b.x; });
    ThresholdResult out;
    bool found = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double k1 = s[i].value;
        const double k2 = s[i + 1].value;
        if (!((k1 > 0.0 && k2 <= 0.0) || (k1 < 0.0 && k2 >= 0.0))) continue;
        ++out.sign_changes;
        if (found) continue;
        found = true;
        const double dx = s[i + 1].x - s[i].x;
        const double denom = k1 - k2;
        out.value = s[i].x + dx * k1 / denom;
        const double d1 = -dx * k2 / (denom * denom);
        const double d2 = dx * k1 / (denom * denom);
        out.std_error = std::sqrt(d1 * d1 * s[i].std_error * s[i].std_error +
                                  d2 * d2 * s[i + 1].std_error * s[i + 1].std_error);
    }
    if (!found) {
        throw std::runtime_error("kappa does not change sign over the series");
    }
    return out;
}

}  // namespace paulispec
