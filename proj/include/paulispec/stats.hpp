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

#include <cmath>
#include <cstddef>
#include <span>

namespace paulispec {

/// Compensated (Neumaier) summation; order-deterministic.
class NeumaierSum {
   public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

   private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Welford mean/variance accumulator.
class RunningStats {
   public:
    void add(double x) {
        ++n_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
    }
    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    /// Unbiased sample variance; 0 for fewer than two samples.
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double stderr_of_mean() const { return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

   private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double intercept_stderr = 0.0;
    double r_squared = 0.0;
    std::size_t n_points = 0;
};

/// Least squares y = a + b x. With sigma given (all > 0) the fit is weighted by
/// 1/sigma^2 and the parameter errors come from the weighted normal matrix;
/// with empty sigma, errors come from the residual scatter.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y, std::span<const double> sigma = {});

}  // namespace paulispec
