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

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace tracer {

/// Neumaier compensated summation. The current is a long alternating-sign
/// sum, so plain accumulation would lose digits over ~1e8 terms.
class KahanSum {
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

/// Welford running mean/variance.
struct RunningStats {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    /// Unbiased sample variance (n-1 normalization).
    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double stderr_of_mean() const;
};

struct KsResult {
    std::size_t n = 0;
    double statistic = 0.0;
    double p_value = 0.0;
};

/// Two-sided one-sample Kolmogorov-Smirnov test against a continuous CDF.
/// Asymptotic p-value (Kolmogorov distribution); fine for n >= ~100.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Survival function of the Kolmogorov distribution at sqrt(n)*D.
double ks_p_value(double statistic, std::size_t n);

} // namespace tracer
