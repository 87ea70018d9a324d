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

#include "paulispec/stats.hpp"

#include <stdexcept>

namespace paulispec {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y, std::span<const double> sigma) {
    const std::size_t n = x.size();
    if (y.size() != n || (!sigma.empty() && sigma.size() != n)) {
        throw std::invalid_argument("linear_fit: mismatched input lengths");
    }
    if (n < 2) {
        throw std::invalid_argument("linear_fit: need at least two points");
    }
    const bool weighted = !sigma.empty();
    double sw = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double w = 1.0;
        if (weighted) {
            if (!(sigma[i] > 0.0)) {
                throw std::invalid_argument("linear_fit: sigma must be positive");
            }
            w = 1.0 / (sigma[i] * sigma[i]);
        }
        sw += w;
        sx += w * x[i];
        sy += w * y[i];
    }
    const double xm = sx / sw;
    const double ym = sy / sw;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = weighted ? 1.0 / (sigma[i] * sigma[i]) : 1.0;
        sxx += w * (x[i] - xm) * (x[i] - xm);
        sxy += w * (x[i] - xm) * (y[i] - ym);
        syy += w * (y[i] - ym) * (y[i] - ym);
    }
    if (!(sxx > 0.0)) {
        throw std::invalid_argument("linear_fit: x values are degenerate");
    }
    LinearFit fit;
    fit.n_points = n;
    fit.slope = sxy / sxx;
    fit.intercept = ym - fit.slope * xm;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = weighted ? 1.0 / (sigma[i] * sigma[i]) : 1.0;
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        ss_res += w * r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    if (weighted) {
        fit.slope_stderr = std::sqrt(1.0 / sxx);
        fit.intercept_stderr = std::sqrt(1.0 / sw + xm * xm / sxx);
    } else if (n > 2) {
        const double s2 = ss_res / static_cast<double>(n - 2);
        fit.slope_stderr = std::sqrt(s2 / sxx);
        fit.intercept_stderr = std::sqrt(s2 * (1.0 / static_cast<double>(n) + xm * xm / sxx));
    }
    return fit;
}

}  // namespace paulispec
