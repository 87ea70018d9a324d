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

#include "paulispec/truncation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "paulispec/parallel.hpp"
#include "paulispec/spectrum.hpp"
#include "paulispec/stats.hpp"

namespace paulispec {

std::vector<std::uint64_t> magnitude_order(const PauliCoefficients &coeffs) {
    std::vector<std::uint64_t> order(coeffs.size());
    std::iota(order.begin(), order.end(), std::uint64_t{0});
    const auto &v = coeffs.values;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint64_t a, std::uint64_t b) { return std::abs(v[a]) > std::abs(v[b]); });
    return order;
}

TruncationResult truncate_top(const PauliCoefficients &coeffs, std::size_t n_p) {
    if (n_p < 1 || n_p > coeffs.size()) {
        throw std::invalid_argument("N_P must lie in [1, 4^N]");
    }
    const auto order = magnitude_order(coeffs);
    TruncationResult out;
    out.n_sites = coeffs.n_sites;
    out.kept.reserve(n_p);
    for (std::size_t i = 0; i < n_p; ++i) {
        out.kept.emplace_back(order[i], coeffs.values[order[i]]);
    }
    NeumaierSum dropped;
    for (std::size_t i = n_p; i < order.size(); ++i) {
        const double a = coeffs.values[order[i]];
        dropped.add(a * a);
    }
    out.dropped_weight = dropped.value();
    return out;
}

double expectation_zero_state(const PauliCoefficients &coeffs) {
    NeumaierSum acc;
    for (std::uint64_t p = 0; p < coeffs.size(); ++p) {
        if (zdiag_indicator(p, coeffs.n_sites)) {
            acc.add(coeffs.values[p]);
        }
    }
    return acc.value();
}

double expectation_zero_state(const TruncationResult &truncated) {
    NeumaierSum acc;
    for (const auto &[p, a] : truncated.kept) {
        if (zdiag_indicator(p, truncated.n_sites)) {
            acc.add(a);
        }
    }
    return acc.value();
}

std::vector<std::size_t> default_np_grid(std::size_t n_sites) {
    const double total = std::ldexp(1.0, 2 * static_cast<int>(n_sites));
    std::vector<std::size_t> grid;
    for (std::size_t e = 0; e <= 12; ++e) {
        const std::size_t np = std::size_t{1} << e;
        if (static_cast<double>(np) > total) break;
        grid.push_back(np);
    }
    return grid;
}

std::vector<MsePoint> truncation_mse(const CircuitSpec &spec, const std::vector<std::size_t> &np_grid,
                                     std::size_t n_realizations, std::size_t threads) {
    spec.validate();
    if (np_grid.empty()) {
        throw std::invalid_argument("N_P grid is empty");
    }
    const double total = std::ldexp(1.0, 2 * static_cast<int>(spec.sites()));
    for (std::size_t np : np_grid) {
        if (np < 1 || static_cast<double>(np) > total) {
            throw std::invalid_argument("N_P must lie in [1, 4^N]");
        }
    }
    // errors[r][g]: squared error of realization r at grid point g.
    std::vector<std::vector<double>> errors(n_realizations);
    parallel_for(n_realizations, threads, [&](std::size_t r) {
        const OperatorState op = run_circuit(spec, r);
        const PauliCoefficients coeffs = op.pauli_coefficients();
        const auto order = magnitude_order(coeffs);
        const double full = expectation_zero_state(coeffs);
        std::vector<double> row(np_grid.size());
        // Running sum of diagonal coefficients along the magnitude order.
        NeumaierSum prefix;
        std::size_t done = 0;
        std::vector<std::size_t> sorted_idx(np_grid.size());
        std::iota(sorted_idx.begin(), sorted_idx.end(), std::size_t{0});
        std::sort(sorted_idx.begin(), sorted_idx.end(),
                  [&](std::size_t a, std::size_t b) { return np_grid[a] < np_grid[b]; });
        for (std::size_t g : sorted_idx) {
            for (; done < np_grid[g]; ++done) {
                const std::uint64_t p = order[done];
                if (zdiag_indicator(p, coeffs.n_sites)) prefix.add(coeffs.values[p]);
            }
            const double diff = full - prefix.value();
            row[g] = diff * diff;
        }
        errors[r] = std::move(row);
    });
    std::vector<MsePoint> out(np_grid.size());
    for (std::size_t g = 0; g < np_grid.size(); ++g) {
        RunningStats s;
        for (std::size_t r = 0; r < n_realizations; ++r) {
            s.add(errors[r][g]);
        }
        out[g].n_p = np_grid[g];
        out[g].mse = s.mean();
        out[g].std_error = s.stderr_of_mean();
        out[g].n_samples = s.count();
    }
    return out;
}

double simulability_bound(double norm, double m2, double n_p, std::size_t n_sites) {
    if (!(n_p >= 1.0)) {
        throw std::invalid_argument("N_P must be >= 1");
    }
    if (n_sites < 1) {
        throw std::invalid_argument("N must be >= 1");
    }
    return norm / (2.0 * static_cast<double>(n_sites)) * (m2 - std::log(n_p) - 1.0);
}

double ensemble_simulability_bound(double mu_bar_k, int k, double n_p, std::size_t n_sites) {
    if (!(mu_bar_k > 0.0)) {
        throw std::invalid_argument("moment must be positive");
    }
    // log(D^(2-2k) mu) with D = 2^N.
    const double log_scaled = std::log(mu_bar_k) + (2.0 - 2.0 * k) * static_cast<double>(n_sites) * std::log(2.0);
    return simulability_bound(1.0, -log_scaled, n_p, n_sites);
}

AdversarialCheck adversarial_truncation_error(const PauliCoefficients &coeffs, std::size_t n_p) {
    if (coeffs.n_sites > kMaxAdversarialSites) {
        throw std::invalid_argument("adversarial check is limited to N <= 6");
    }
    const TruncationResult t = truncate_top(coeffs, n_p);
    PauliCoefficients residual = coeffs;
    for (const auto &[p, a] : t.kept) {
        residual.values[p] = 0.0;
    }
    const auto mat = pauli_to_matrix(residual);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << coeffs.n_sites);
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            m(i, j) = mat[static_cast<std::size_t>(i * dim + j)];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m, Eigen::EigenvaluesOnly);
    AdversarialCheck out;
    out.observed = eig.eigenvalues().cwiseAbs().maxCoeff();
    NeumaierSum norm_sq;
    for (double a : coeffs.values) norm_sq.add(a * a);
    out.norm = std::sqrt(norm_sq.value());
    out.m2 = ose(coeffs, 2.0);
    out.bound = simulability_bound(out.norm, out.m2, static_cast<double>(n_p), coeffs.n_sites);
    return out;
}

}  // namespace paulispec
