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
#include <string>
#include <vector>

#include "paulispec/circuits.hpp"
#include "paulispec/pauli_core.hpp"

namespace paulispec {

/// pi_O(P) = a_P^2 / sum_Q a_Q^2. Throws std::invalid_argument for the zero operator.
std::vector<double> pi_distribution(const PauliCoefficients &coeffs);

/// mu_k = D^(2k-2) sum_P pi_O(P)^k, accumulated with compensated summation.
double moment_mu(const PauliCoefficients &coeffs, int k);

/// nu_k = D^(2k-2) sum_P a_P^(2k); nu_1 = Tr[O^2]/D.
double moment_nu(const PauliCoefficients &coeffs, int k);

/// Renyi entropy of pi_O of order k >= 0, k != 1; lies in [0, 2N log 2].
double ose(const PauliCoefficients &coeffs, double k);

/// Shannon entropy of pi_O (the k -> 1 limit).
double ose_shannon(const PauliCoefficients &coeffs);

/// (2k-1)!!, the moments of the fully scrambled spectrum.
double haar_moment(int k);

/// Operator Porter-Thomas density e^(-u/2) / sqrt(2 pi u).
double opt_density(double u);

/// Probability mass the OPT density assigns to [lo, hi].
double opt_mass(double lo, double hi);

struct SpectrumHistogram {
    std::vector<double> bin_lo;
    std::vector<double> bin_hi;
    std::vector<double> density;
    double zero_mass = 0.0;      // strings with u < u_min
    double overflow_mass = 0.0;  // strings with u >= u_max

    std::size_t n_bins() const { return density.size(); }
    /// zero_mass + sum density * width + overflow_mass.
    double total_mass() const;
};

/// Default binning: 60 log-spaced bins over [1e-6, 1e3].
inline constexpr std::size_t kDefaultHistogramBins = 60;
inline constexpr double kDefaultHistogramUMin = 1e-6;
inline constexpr double kDefaultHistogramUMax = 1e3;

/// Histogram of u = D^2 pi_O(P) over all 4^N strings, each of weight D^-2,
/// in log-spaced bins.
SpectrumHistogram spectrum_histogram(const PauliCoefficients &coeffs, std::size_t n_bins = kDefaultHistogramBins,
                                     double u_min = kDefaultHistogramUMin, double u_max = kDefaultHistogramUMax);

enum class MomentQuantity { Mu, Nu, NuOverF2k };

std::string to_string(MomentQuantity q);
MomentQuantity moment_quantity_from_string(const std::string &s);

/// Ensemble-averaged moment with its provenance.
struct MomentEstimate {
    MomentQuantity quantity = MomentQuantity::Mu;
    int k = 2;
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    CircuitSpec meta;
};

}  // namespace paulispec
