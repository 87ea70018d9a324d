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
#include <numeric>
#include <random>

#include "paulispec/circuits.hpp"
#include "paulispec/spectrum.hpp"

namespace {

using namespace paulispec;

PauliCoefficients single(std::size_t n, std::uint64_t p, double a = 1.0) {
    PauliCoefficients c{n, std::vector<double>(std::size_t{1} << (2 * n))};
    c.values[p] = a;
    return c;
}

PauliCoefficients x_plus_z() {
    PauliCoefficients c{1, {0.0, 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0)}};
    return c;
}

PauliCoefficients random_coeffs(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    PauliCoefficients c{n, std::vector<double>(std::size_t{1} << (2 * n))};
    for (double &v : c.values) v = normal(rng);
    return c;
}

// Simpson rule on [a, b] after the substitution u = s^2 (removes the u^-1/2 singularity).
double integrate_opt(double power, double smax) {
    const int n = 200000;
    const double h = smax / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double s = i * h;
        const double f = s == 0.0 ? 2.0 / std::sqrt(2.0 * M_PI) * (power == 0.0 ? 1.0 : 0.0)
                                   : 2.0 * s * std::pow(s * s, power) * opt_density(s * s);
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * f;
    }
    return acc * h / 3.0;
}

TEST(PiDistribution, Examples) {
    const auto pi = pi_distribution(single(2, encode_pauli("ZI").index()));
    EXPECT_DOUBLE_EQ(pi[encode_pauli("ZI").index()], 1.0);
    EXPECT_DOUBLE_EQ(std::accumulate(pi.begin(), pi.end(), 0.0), 1.0);
    const auto two = pi_distribution(x_plus_z());
    EXPECT_NEAR(two[1], 0.5, 1e-15);
    EXPECT_NEAR(two[3], 0.5, 1e-15);
    const auto r = pi_distribution(random_coeffs(3, 1));
    EXPECT_NEAR(std::accumulate(r.begin(), r.end(), 0.0), 1.0, 1e-14);
    EXPECT_THROW(pi_distribution(PauliCoefficients{1, {0, 0, 0, 0}}), std::invalid_argument);
}

TEST(Moments, Examples) {
    EXPECT_DOUBLE_EQ(moment_mu(single(2, 3), 2), 16.0);
    EXPECT_NEAR(moment_mu(random_coeffs(3, 2), 1), 1.0, 1e-14);
    EXPECT_NEAR(moment_mu(x_plus_z(), 2), 2.0, 1e-14);
    const auto x09 = single(1, 1, 0.9);
    // nu_2 = D^-2 Tr[O X]^4 = D^2 0.9^4 and nu_2 / nu_1^2 is the single-string mu_2 = D^2.
    EXPECT_NEAR(moment_nu(x09, 2), 4.0 * 0.6561, 1e-14);
    EXPECT_NEAR(moment_nu(x09, 1), 0.81, 1e-15);
    EXPECT_NEAR(moment_nu(x09, 2) / std::pow(moment_nu(x09, 1), 2), moment_mu(x09, 2), 1e-13);
    EXPECT_GE(moment_nu(random_coeffs(2, 3), 3), 0.0);
}

TEST(Moments, MuIsNormalizedNu) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto c = random_coeffs(3, seed);
        for (int k = 1; k <= 4; ++k) {
            const double mu = moment_mu(c, k);
            EXPECT_NEAR(mu, moment_nu(c, k) / std::pow(moment_nu(c, 1), k), 1e-10 * mu);
        }
    }
}

TEST(Moments, LocalPauliMomentsExact) {
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto c = single(n, std::uint64_t{3} << (2 * (n / 2)));
        for (int k = 1; k <= 3; ++k) {
            EXPECT_EQ(moment_mu(c, k), std::ldexp(1.0, static_cast<int>(n) * (2 * k - 2)));
        }
    }
}

TEST(Ose, Examples) {
    EXPECT_DOUBLE_EQ(ose(single(2, 5), 2.0), 0.0);
    PauliCoefficients uniform{2, std::vector<double>(16, 0.25)};
    EXPECT_NEAR(ose(uniform, 2.0), 4.0 * std::log(2.0), 1e-14);
    EXPECT_NEAR(ose(uniform, 0.0), 4.0 * std::log(2.0), 1e-14);
    EXPECT_NEAR(ose(x_plus_z(), 2.0), std::log(2.0), 1e-15);
    EXPECT_THROW(ose(x_plus_z(), 1.0), std::invalid_argument);
}

TEST(Ose, RenyiMonotone) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto c = random_coeffs(3, 10 + seed);
        const double m1 = ose_shannon(c);
        double prev = m1;
        for (double k : {2.0, 3.0, 4.0}) {
            const double m = ose(c, k);
            EXPECT_LE(m, prev + 1e-12);
            EXPECT_GE(m, 0.0);
            EXPECT_LE(m, 6.0 * std::log(2.0) + 1e-12);
            prev = m;
        }
    }
}

TEST(HaarMoment, DoubleFactorial) {
    EXPECT_EQ(haar_moment(1), 1.0);
    EXPECT_EQ(haar_moment(2), 3.0);
    EXPECT_EQ(haar_moment(3), 15.0);
}

TEST(OptDensity, NormalizationAndMoments) {
    EXPECT_NEAR(opt_mass(0.0, INFINITY), 1.0, 1e-12);
    EXPECT_NEAR(integrate_opt(0.0, 12.0), 1.0, 1e-8);
    EXPECT_NEAR(integrate_opt(1.0, 14.0), 1.0, 1e-8);
    EXPECT_NEAR(integrate_opt(2.0, 16.0), 3.0, 1e-8);
    EXPECT_NEAR(opt_mass(0.5, 2.0), std::erf(1.0) - std::erf(0.5), 1e-12);
}

TEST(Histogram, LocalPauliTwoDeltas) {
    const auto h = spectrum_histogram(single(2, 3), 60, 1e-6, 1e3);
    EXPECT_DOUBLE_EQ(h.zero_mass, 15.0 / 16.0);
    EXPECT_DOUBLE_EQ(h.overflow_mass, 0.0);
    double mass = 0.0;
    std::size_t hit = 0;
    for (std::size_t b = 0; b < h.n_bins(); ++b) {
        const double m = h.density[b] * (h.bin_hi[b] - h.bin_lo[b]);
        if (m > 0) {
            ++hit;
            EXPECT_LE(h.bin_lo[b], 16.0);
            EXPECT_GT(h.bin_hi[b], 16.0);
        }
        mass += m;
    }
    EXPECT_EQ(hit, 1u);
    EXPECT_NEAR(mass, 1.0 / 16.0, 1e-15);
    EXPECT_NEAR(h.total_mass(), 1.0, 1e-14);
}

TEST(Histogram, TotalsAndMomentReconstruction) {
    const auto c = random_coeffs(5, 4);
    const auto h = spectrum_histogram(c, 400, 1e-8, 1e3);
    EXPECT_NEAR(h.total_mass(), 1.0, 1e-12);
    // Each string carries weight D^-2, so the u^k moment of the histogram is mu_k.
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t b = 0; b < h.n_bins(); ++b) {
        const double mid = std::sqrt(h.bin_lo[b] * h.bin_hi[b]);
        const double w = h.density[b] * (h.bin_hi[b] - h.bin_lo[b]);
        m1 += w * mid;
        m2 += w * mid * mid;
    }
    EXPECT_NEAR(m1, 1.0, 0.05);
    EXPECT_NEAR(m2, moment_mu(c, 2), 0.05 * moment_mu(c, 2));
}

TEST(MomentQuantity, Names) {
    EXPECT_EQ(to_string(MomentQuantity::NuOverF2k), "nu_over_F2k");
    EXPECT_EQ(moment_quantity_from_string("mu"), MomentQuantity::Mu);
    EXPECT_THROW(moment_quantity_from_string("sigma"), std::invalid_argument);
}

}  // namespace
