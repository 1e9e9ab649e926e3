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

#include <functional>

namespace tracer {

/// Integral over (0, inf) of v^m * exp(-eta/v - x*v^2/2) dv.
///
/// Evaluated on the log grid v = e^s, where the integrand decays at least
/// exponentially in both directions and the trapezoid rule converges
/// geometrically in 1/h. The grid is truncated where the integrand drops
/// below 1e-30 of its peak and the step is halved until the relative
/// change is within rel_tol. Throws solver_error if that never happens.
double speed_moment_integral(int m, double x, double eta, double rel_tol = 1e-12);

/// Adaptive Simpson on [a, b]; tol is an absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

/// Golden-section maximum of a unimodal (or concave) function on [a, b],
/// refined until the bracket is shorter than xtol. Returns (argmax, max).
struct GoldenResult {
    double argmax;
    double max;
};
GoldenResult golden_max(const std::function<double(double)>& f, double a, double b,
                        double xtol);

} // namespace tracer
