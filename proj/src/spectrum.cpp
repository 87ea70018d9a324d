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

#include "paulispec/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "paulispec/stats.hpp"

namespace paulispec {

namespace {

double squared_norm(const PauliCoefficients &coeffs) {
    NeumaierSum acc;
    for (double a : coeffs.values) {
        acc.add(a * a);
    }
    return acc.value();
}

double dim_power(std::size_t n_sites, int exponent) {
    // D^e = 2^(N e)
    return std::ldexp(1.0, static_cast<int>(n_sites) * exponent);
}

void require_k(int k) {
    if (k < 1) {
        throw std::invalid_argument("moment index k must be >= 1");
    }
}

}  // namespace

std::vector<double> pi_distribution(const PauliCoefficients &coeffs) {
    const double norm = squared_norm(coeffs);
    if (!(norm > 0.0)) {
        throw std::invalid_argument("pi distribution of the zero operator is undefined");
    }
    std::vector<double> pi(coeffs.values.size());
    for (std::size_t p = 0; p < pi.size(); ++p) {
        pi[p] = coeffs.values[p] * coeffs.values[p] / norm;
    }
    return pi;
}

double moment_mu(const PauliCoefficients &coeffs, int k) {
    require_k(k);
    const auto pi = pi_distribution(coeffs);
    if (k == 1) {
        return 1.0;
    }
    NeumaierSum acc;
    for (double p : pi) {
        if (p != 0.0) {
            acc.add(std::pow(p, k));
        }
    }
    return dim_power(coeffs.n_sites, 2 * k - 2) * acc.value();
}

double moment_nu(const PauliCoefficients &coeffs, int k) {
    require_k(k);
    NeumaierSum acc;
    for (double a : coeffs.values) {
        if (a != 0.0) {
            acc.add(std::pow(a * a, k));
        }
    }
    return dim_power(coeffs.n_sites, 2 * k - 2) * acc.value();
}

double ose(const PauliCoefficients &coeffs, double k) {
    if (!(k >= 0.0) || k == 1.0) {
        throw std::invalid_argument("OSE order must satisfy k >= 0 and k != 1");
    }
    const auto pi = pi_distribution(coeffs);
    NeumaierSum acc;
    for (double p : pi) {
        if (p > 0.0) {
            acc.add(k == 0.0 ? 1.0 : std::pow(p, k));
        }
    }
    return std::log(acc.value()) / (1.0 - k);
}

double ose_shannon(const PauliCoefficients &coeffs) {
    const auto pi = pi_distribution(coeffs);
    NeumaierSum acc;
    for (double p : pi) {
        if (p > 0.0) {
            acc.add(-p * std::log(p));
        }
    }
    return acc.value();
}

double haar_moment(int k) {
    require_k(k);
    double out = 1.0;
    for (int j = 2 * k - 1; j > 1; j -= 2) {
        out *= j;
    }
    return out;
}

double opt_density(double u) {
    if (!(u > 0.0)) {
        throw std::invalid_argument("OPT density is defined for u > 0");
    }
    return std::exp(-0.5 * u) / std::sqrt(2.0 * std::numbers::pi * u);
}

double opt_mass(double lo, double hi) {
    // The OPT law is that of a squared standard normal: P(u < x) = erf(sqrt(x/2)).
    auto cdf = [](double x) { return x <= 0.0 ? 0.0 : std::erf(std::sqrt(0.5 * x)); };
    return cdf(hi) - cdf(lo);
}

double SpectrumHistogram::total_mass() const {
    NeumaierSum acc;
    acc.add(zero_mass);
    acc.add(overflow_mass);
    for (std::size_t b = 0; b < density.size(); ++b) {
        acc.add(density[b] * (bin_hi[b] - bin_lo[b]));
    }
    return acc.value();
}

SpectrumHistogram spectrum_histogram(const PauliCoefficients &coeffs, std::size_t n_bins, double u_min,
                                     double u_max) {
    if (n_bins == 0 || !(u_min > 0.0) || !(u_max > u_min)) {
        throw std::invalid_argument("histogram needs n_bins >= 1 and 0 < u_min < u_max");
    }
    const auto pi = pi_distribution(coeffs);
    const double d2 = dim_power(coeffs.n_sites, 2);
    const double weight = 1.0 / d2;
    const double log_lo = std::log(u_min);
    const double log_span = std::log(u_max) - log_lo;

    SpectrumHistogram h;
    h.bin_lo.resize(n_bins);
    h.bin_hi.resize(n_bins);
    for (std::size_t b = 0; b < n_bins; ++b) {
        h.bin_lo[b] = std::exp(log_lo + log_span * static_cast<double>(b) / static_cast<double>(n_bins));
        h.bin_hi[b] = std::exp(log_lo + log_span * static_cast<double>(b + 1) / static_cast<double>(n_bins));
    }
    h.bin_lo.front() = u_min;
    h.bin_hi.back() = u_max;

    std::vector<std::size_t> counts(n_bins, 0);
    std::size_t below = 0, above = 0;
    for (double p : pi) {
        const double u = d2 * p;
        if (u < u_min) {
            ++below;
        } else if (u >= u_max) {
            ++above;
        } else {
            auto b = static_cast<std::size_t>((std::log(u) - log_lo) / log_span * static_cast<double>(n_bins));
            if (b >= n_bins) b = n_bins - 1;
            // Rounding at the edges.
            while (b > 0 && u < h.bin_lo[b]) --b;
            while (b + 1 < n_bins && u >= h.bin_hi[b]) ++b;
            ++counts[b];
        }
    }
    h.zero_mass = static_cast<double>(below) * weight;
    h.overflow_mass = static_cast<double>(above) * weight;
    h.density.resize(n_bins);
    for (std::size_t b = 0; b < n_bins; ++b) {
        h.density[b] = static_cast<double>(counts[b]) * weight / (h.bin_hi[b] - h.bin_lo[b]);
    }
    return h;
}

std::string to_string(MomentQuantity q) {
    switch (q) {
        case MomentQuantity::Mu:
            return "mu";
        case MomentQuantity::Nu:
            return "nu";
        case MomentQuantity::NuOverF2k:
            break;
    }
    return "nu_over_F2k";
}

MomentQuantity moment_quantity_from_string(const std::string &s) {
    if (s == "mu") return MomentQuantity::Mu;
    if (s == "nu") return MomentQuantity::Nu;
    if (s == "nu_over_F2k") return MomentQuantity::NuOverF2k;
    throw std::invalid_argument("unknown moment quantity '" + s + "'");
}

}  // namespace paulispec
