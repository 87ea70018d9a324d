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

#include "paulispec/rmpu_analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "paulispec/spectrum.hpp"

namespace paulispec {

double RmpuParams::chi() const { return std::pow(static_cast<double>(d), static_cast<double>(overlap)); }

std::size_t RmpuParams::m() const { return n_sites - overlap; }

double RmpuParams::q() const { return static_cast<double>(d) * chi(); }

void RmpuParams::validate() const {
    if (d < 2 || (d & (d - 1)) != 0) {
        throw std::invalid_argument("d must be a power of two >= 2");
    }
    if (overlap < 1 || overlap + 1 > n_sites) {
        throw std::invalid_argument("rmpu needs 1 <= r <= N - 1");
    }
    if (k < 1) {
        throw std::invalid_argument("moment index k must be >= 1");
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("gamma must lie in [0, 1]");
    }
}

LambdaMatrices lambda_matrices(int n, int d) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("lambda matrices need an even replica number");
    }
    const SymmetricGroup &g = symmetric_group(n);
    const auto m = static_cast<Eigen::Index>(g.size());
    LambdaMatrices out;
    out.lambda1.resize(m);
    out.lambda2.resize(m);
    for (Eigen::Index a = 0; a < m; ++a) {
        const int c = g.cycle_counts[static_cast<std::size_t>(a)];
        const int e = g.even_only[static_cast<std::size_t>(a)] ? 1 : 0;
        out.lambda1(a) = std::pow(static_cast<double>(d), c);
        out.lambda2(a) = std::pow(static_cast<double>(d), c + 2 * e - 2);
    }
    return out;
}

namespace {

void require_transfer_degree(const RmpuParams &p) {
    p.validate();
    if (2 * p.k > kMaxGroupMatrixDegree) {
        throw std::invalid_argument("transfer matrices are supported for k <= 3");
    }
}

}  // namespace

BoundaryVectors boundary_vectors(const RmpuParams &params) {
    require_transfer_degree(params);
    const int n = 2 * params.k;
    const SymmetricGroup &g = symmetric_group(n);
    const auto m = static_cast<Eigen::Index>(g.size());
    const LambdaMatrices lam = lambda_matrices(n, params.d);
    const auto wg = cached_noisy_weingarten(n, params.q(), params.gamma);
    const double chi = params.chi();
    const double log_d = std::log(static_cast<double>(params.d));

    BoundaryVectors out;
    out.left.resize(m);
    Eigen::VectorXd top(m);
    for (Eigen::Index a = 0; a < m; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        out.left(a) = g.even_only[ua] ? std::pow(chi, g.cycle_counts[ua]) : 0.0;
        const int exponent = g.cycle_counts[ua] + 2 * (g.even_only[ua] ? 1 : 0) - 2;
        top(a) = std::exp(log_d * static_cast<double>(exponent) * static_cast<double>(params.overlap + 1));
    }
    out.right = lam.lambda1.asDiagonal() * (wg->entries * top);
    return out;
}

TransferOperator transfer_matrix(const RmpuParams &params) {
    require_transfer_degree(params);
    const int n = 2 * params.k;
    const LambdaMatrices lam = lambda_matrices(n, params.d);
    const auto wg = cached_noisy_weingarten(n, params.q(), params.gamma);
    const auto gram = cached_gram_matrix(n, params.chi());
    TransferOperator out;
    out.n = n;
    out.T = lam.lambda1.asDiagonal() * wg->entries * lam.lambda2.asDiagonal() * gram->entries;
    out.pseudo_inverse = wg->pseudo_inverse;
    BoundaryVectors b = boundary_vectors(params);
    out.L = std::move(b.left);
    out.R = std::move(b.right);
    return out;
}

double rmpu_log_moment_exact(const RmpuParams &params) {
    const TransferOperator op = transfer_matrix(params);
    Eigen::VectorXd v = op.R;
    double log_scale = 0.0;
    for (std::size_t step = 1; step < params.m(); ++step) {
        v = op.T * v;
        const double s = v.cwiseAbs().maxCoeff();
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw std::domain_error("transfer product vanished or overflowed");
        }
        v /= s;
        log_scale += std::log(s);
    }
    const double value = op.L.dot(v);
    if (!(value > 0.0)) {
        throw std::domain_error("transfer product is not positive");
    }
    return log_scale + std::log(value);
}

double rmpu_moment_exact(const RmpuParams &params) { return std::exp(rmpu_log_moment_exact(params)); }

double rmpu_constant(int d, int k, double gamma) {
    if (k < 2) {
        throw std::invalid_argument("C_k needs k >= 2");
    }
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("C_k needs 0 <= gamma < 1");
    }
    const double d2 = static_cast<double>(d) * d;
    return (d2 - 1.0) / (std::pow(static_cast<double>(d), 2 * k) * std::pow(1.0 - gamma, -2.0 * k) - d2);
}

double rmpu_scaling_variable(const RmpuParams &params) {
    const double n = static_cast<double>(params.n_sites);
    const double r = static_cast<double>(params.overlap);
    return std::pow(static_cast<double>(params.d), n * (1.0 - 1.0 / params.k) - r);
}

double rmpu_moment_asymptotic(const RmpuParams &params) {
    params.validate();
    const double c = rmpu_constant(params.d, params.k, params.gamma);
    const double f = std::pow(1.0 - params.gamma, static_cast<double>(params.m()));
    const double x = rmpu_scaling_variable(params);
    const double two_k = 2.0 * params.k;
    return haar_moment(params.k) * std::pow(f, two_k) * (1.0 + c * std::pow(x / f, two_k));
}

double global_haar_moment(std::size_t n_sites, int k, int d) {
    RmpuParams p;
    p.n_sites = n_sites;
    p.overlap = n_sites - 1;
    p.d = d;
    p.k = k;
    return rmpu_moment_exact(p);
}

double ScalingPredictions::t_star(double n_sites) const {
    return n_sites * tau * (1.0 - 1.0 / k) * std::log(static_cast<double>(d));
}

double ScalingPredictions::brickwork_correction(double n_sites, double t, double gamma) const {
    const double log_ratio =
        gamma * n_sites * t + n_sites * (1.0 - 1.0 / k) * std::log(static_cast<double>(d)) - t / tau;
    return 1.0 + c_prime * rmpu_constant(d, k, gamma) * std::exp(2.0 * k * log_ratio);
}

ScalingPredictions scaling_predictions(int d, int k, std::optional<double> tau_override, double c_prime) {
    if (d < 2) {
        throw std::invalid_argument("d must be >= 2");
    }
    if (k < 1) {
        throw std::invalid_argument("moment index k must be >= 1");
    }
    ScalingPredictions s;
    s.d = d;
    s.k = k;
    const double dd = static_cast<double>(d);
    s.tau = tau_override ? *tau_override : 1.0 / std::log((dd * dd + 1.0) / (2.0 * dd));
    if (!(s.tau > 0.0)) {
        throw std::invalid_argument("tau must be positive");
    }
    s.gamma_c_times_n = 1.0 / s.tau;
    s.c_prime = c_prime;
    return s;
}

}  // namespace paulispec
