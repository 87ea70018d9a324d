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
#include <vector>

namespace paulispec {

/// J_{sigma pi rho} = sum_delta Wg~_{rho delta}(d^2, gamma) G_{delta sigma}(d) G_{delta pi}(d),
/// over S_(2k) in the enumeration of weingarten.hpp. Supports k in {1, 2}.
struct PlaquetteTensor {
    int k = 2;
    int d = 2;
    double gamma = 0.0;
    std::size_t dim = 0;  // (2k)!
    std::vector<double> J;

    double operator()(std::size_t sigma, std::size_t pi, std::size_t rho) const {
        return J[(sigma * dim + pi) * dim + rho];
    }
};

PlaquetteTensor plaquette_weights(int k, int d, double gamma);

struct BoundaryWeights {
    /// d^(#sigma + 2 1_E(sigma) - 2): Pauli sum at the top of every site.
    Eigen::VectorXd top;
    /// d^#sigma 1_E(sigma): overlap of a permutation with the initial Pauli.
    Eigen::VectorXd bottom_operator;
};

BoundaryWeights boundary_weights(int k, int d);

struct RtnOptions {
    std::size_t chi_mps = 256;
    /// Singular values below threshold * (largest) are discarded.
    double threshold = 1e-12;
    /// Skip gates whose inputs are both still the identity permutation.
    bool lightcone = true;
    /// Defaults to floor(N/2), matching the chain simulator.
    std::optional<std::size_t> initial_site;
    /// Results with a larger estimated error are flagged.
    double error_flag_threshold = 1e-6;
};

struct RtnResult {
    std::size_t depth = 0;
    double value = 0.0;
    double log_value = 0.0;
    /// Estimated absolute error from discarded singular values.
    double truncation_error = 0.0;
    std::size_t max_bond = 1;
    bool flagged = false;
};

/// Boundary-MPS contraction of the noisy brickwork lattice (per-gate-support
/// noise of dimension d^2) with the chain layer pattern. Returns the ensemble
/// average of nu_k after every layer t = 1..t_max.
std::vector<RtnResult> contract_brickwork_series(std::size_t n_sites, std::size_t t_max, int k, int d, double gamma,
                                                 const RtnOptions &options = {});

/// Ensemble average of nu_k at depth t.
RtnResult contract_brickwork(std::size_t n_sites, std::size_t t, int k, int d, double gamma,
                             const RtnOptions &options = {});

}  // namespace paulispec
