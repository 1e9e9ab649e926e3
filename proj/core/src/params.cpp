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

#include "tracer/params.hpp"

#include <cmath>
#include <string>

#include "tracer/error.hpp"

namespace tracer {

namespace {
constexpr double pi = 3.14159265358979323846;
}

WallParams::WallParams(double beta_l, double beta_r)
    : beta_left(beta_l), beta_right(beta_r) {
    if (!(std::isfinite(beta_l) && beta_l > 0.0) ||
        !(std::isfinite(beta_r) && beta_r > 0.0)) {
        throw value_error("WallParams: inverse temperatures must be finite and > 0 (got " +
                          std::to_string(beta_l) + ", " + std::to_string(beta_r) + ")");
    }
}

ScaledParams::ScaledParams(double temp_mean_, double temp_gap_, double epsilon_)
    : temp_mean(temp_mean_), temp_gap(temp_gap_), epsilon(epsilon_) {
    if (!(std::isfinite(temp_mean) && temp_mean > 0.0)) {
        throw value_error("ScaledParams: mean temperature must be finite and > 0");
    }
    if (!std::isfinite(temp_gap) || !(std::isfinite(epsilon) && epsilon >= 0.0)) {
        throw value_error("ScaledParams: invalid temperature gap or epsilon");
    }
    if (!(std::abs(epsilon * temp_gap) / 2.0 < temp_mean)) {
        throw value_error("ScaledParams: |eps*tau|/2 must stay below T so both wall "
                          "temperatures remain positive");
    }
}

WallParams ScaledParams::wall_params() const {
    const double half = epsilon * temp_gap / 2.0;
    return WallParams(1.0 / (temp_mean + half), 1.0 / (temp_mean - half));
}

double conductivity(const WallParams& params) {
    return 1.0 / (std::sqrt(pi * params.beta_left / 2.0) +
                  std::sqrt(pi * params.beta_right / 2.0));
}

double mean_gap(double beta) {
    if (!(std::isfinite(beta) && beta > 0.0)) {
        throw value_error("mean_gap: beta must be finite and > 0");
    }
    return std::sqrt(beta * pi / 2.0);
}

double green_kubo_variance(double temperature) {
    if (!(std::isfinite(temperature) && temperature > 0.0)) {
        throw value_error("green_kubo_variance: temperature must be finite and > 0");
    }
    const WallParams eq(1.0 / temperature, 1.0 / temperature);
    return 4.0 * conductivity(eq) * temperature * temperature;
}

double j_star(const WallParams& params) {
    return conductivity(params) * (params.temp_left() - params.temp_right());
}

double scaling_kappa(double temperature) {
    if (!(std::isfinite(temperature) && temperature > 0.0)) {
        throw value_error("scaling_kappa: temperature must be finite and > 0");
    }
    return std::sqrt(temperature / (2.0 * pi));
}

} // namespace tracer
