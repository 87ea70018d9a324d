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
#include <utility>
#include <vector>

#include "paulispec/circuits.hpp"
#include "paulispec/pauli_core.hpp"

namespace paulispec {

/// The N_P strings with the largest |a_P|, ties broken by ascending index.
struct TruncationResult {
    std::size_t n_sites = 0;
    /// (string index, coefficient), sorted by |a| descending.
    std::vector<std::pair<std::uint64_t, double>> kept;
    /// Sum of a_P^2 over dropped strings.
    double dropped_weight = 0.0;
};

/// Indices of all strings ordered by |a| descending, then index ascending.
std::vector<std::uint64_t> magnitude_order(const PauliCoefficients &coeffs);

/// Throws std::invalid_argument unless 1 <= n_p <= 4^N.
TruncationResult truncate_top(const PauliCoefficients &coeffs, std::size_t n_p);

/// Tr[O |0..0><0..0|] = sum of a_P over strings made of I and Z.
double expectation_zero_state(const PauliCoefficients &coeffs);
double expectation_zero_state(const TruncationResult &truncated);

/// Powers of two 1, 2, 4, ..., 2^12, capped at 4^N.
std::vector<std::size_t> default_np_grid(std::size_t n_sites);

struct MsePoint {
    std::size_t n_p = 0;
    double mse = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

/// Mean over realizations of (<0|O|0> - <0|O~|0>)^2 at every N_P of the grid,
/// using the exactly evolved operator of `spec`. Realization i uses stream
/// index i; the result does not depend on `threads`.
std::vector<MsePoint> truncation_mse(const CircuitSpec &spec, const std::vector<std::size_t> &np_grid,
                                     std::size_t n_realizations, std::size_t threads = 1);

/// (|O|_2 / 2N) (M2 - log N_P - 1); negative values are vacuous.
double simulability_bound(double norm, double m2, double n_p, std::size_t n_sites);

/// (1 / 2N) (-log(D^(2-2k) mu_bar_k) - log N_P - 1), the bound on the
/// normalized error obtained from the ensemble-averaged moment.
double ensemble_simulability_bound(double mu_bar_k, int k, double n_p, std::size_t n_sites);

/// Largest dimension allowed for the adversarial eigensolve (N <= 6).
inline constexpr std::size_t kMaxAdversarialSites = 6;

struct AdversarialCheck {
    /// |Tr[(O - O~) rho]| for rho the extremal eigenvector of O - O~.
    double observed = 0.0;
    /// simulability_bound with the operator's own norm and M2.
    double bound = 0.0;
    double norm = 0.0;
    double m2 = 0.0;
};

/// Dense eigensolve of the truncation residual at N <= 6.
AdversarialCheck adversarial_truncation_error(const PauliCoefficients &coeffs, std::size_t n_p);

}  // namespace paulispec
