// Copyright 2026 The tracer-current Project Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#include "tracer/stats.hpp"

#include <algorithm>
#include <cmath>

#include "tracer/error.hpp"

namespace tracer {

double RunningStats::stderr_of_mean() const {
    if (n < 2) {
        return 0.0;
    }
    return std::sqrt(variance() / static_cast<double>(n));
}

double ks_p_value(double statistic, std::size_t n) {
    const double x = statistic * std::sqrt(static_cast<double>(n));
    if (x < 0.2) {
        return 1.0;
    }
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) {
            break;
        }
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw value_error("ks_test: empty sample");
    }
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return {samples.size(), d, ks_p_value(d, samples.size())};
}

} // namespace tracer
