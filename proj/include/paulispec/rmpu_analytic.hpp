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

#include <Eigen/Dense>
#include <cstddef>
#include <optional>

#include "paulispec/weingarten.hpp"

namespace paulispec {

/// Staircase of m = N - r overlapping Haar gates, each on r + 1 qudits of
/// dimension d, followed by depolarizing noise on the gate support.
struct RmpuParams {
    std::size_t n_sites = 2;
    std::size_t overlap = 1;  // r
    int d = 2;
    int k = 2;
    double gamma = 0.0;

    /// chi = d^r.
    double chi() const;
    /// m = N - r.
    std::size_t m() const;
    /// Gate dimension d * chi.
    double q() const;
    void validate() const;
};

/// Diagonals of Lambda_1 (d^#sigma) and Lambda_2 (d^(#sigma + 2 1_E(sigma) - 2)) over S_n.
struct LambdaMatrices {
    Eigen::VectorXd lambda1;
    Eigen::VectorXd lambda2;
};

/// n must be even.
LambdaMatrices lambda_matrices(int n, int d);

struct BoundaryVectors {
    Eigen::VectorXd left;   // chi^#sigma 1_E(sigma)
    Eigen::VectorXd right;  // Lambda_1 Wg~(d chi, gamma) Lambda_2^(r+1) 1
};

BoundaryVectors boundary_vectors(const RmpuParams &params);

struct TransferOperator {
    int n = 0;
    Eigen::MatrixXd T;
    Eigen::VectorXd L;
    Eigen::VectorXd R;
    bool pseudo_inverse = false;
};

/// T = Lambda_1(d) Wg~(d chi, gamma) Lambda_2(d) G(chi); requires 2k <= 6.
TransferOperator transfer_matrix(const RmpuParams &params);

/// log(L^T T^(m-1) R), with a running scale in the matrix power. Throws
/// std::domain_error if the product is not positive.
double rmpu_log_moment_exact(const RmpuParams &params);

/// Ensemble average of nu_k (equal to mu_k at gamma = 0) for the operator on site 0.
double rmpu_moment_exact(const RmpuParams &params);

/// C_k(gamma) = (d^2 - 1) / (d^(2k) (1-gamma)^(-2k) - d^2); k >= 2.
double rmpu_constant(int d, int k, double gamma);

/// (2k-1)!! F^(2k) [1 + C_k(gamma) (x / F)^(2k)] with x = d^(N(1-1/k)) / chi and
/// F = (1-gamma)^m. Requires k >= 2 and gamma < 1.
double rmpu_moment_asymptotic(const RmpuParams &params);

/// x = d^(N(1-1/k)) / chi.
double rmpu_scaling_variable(const RmpuParams &params);

/// Exact mu_k for one global Haar unitary on N qudits (RMPU with r = N - 1).
double global_haar_moment(std::size_t n_sites, int k, int d = 2);

struct ScalingPredictions {
    int d = 2;
    int k = 2;
    double tau = 0.0;
    double gamma_c_times_n = 0.0;
    /// Unknown O(1) prefactor of the brickwork correction.
    double c_prime = 1.0;

    /// t_k* = N tau (1 - 1/k) log d.
    double t_star(double n_sites) const;
    /// 1 + C' C_k(gamma) (e^(gamma N t) d^(N(1-1/k)) / e^(t/tau))^(2k).
    double brickwork_correction(double n_sites, double t, double gamma) const;
};

/// tau = 1 / log((d^2 + 1) / 2d) unless overridden; tau is taken independent of k.
ScalingPredictions scaling_predictions(int d, int k, std::optional<double> tau_override = std::nullopt,
                                       double c_prime = 1.0);

}  // namespace paulispec
