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

namespace tracer {

/// Inverse temperatures of the two thermal walls. Validated at
/// construction; all quantities are in natural units (k_B = 1).
struct WallParams {
    double beta_left;
    double beta_right;

    WallParams(double beta_l, double beta_r);

    double temp_left() const { return 1.0 / beta_left; }
    double temp_right() const { return 1.0 / beta_right; }

    /// beta_left <= beta_right, the ordering assumed by the CGF solver.
    bool is_ordered() const { return beta_left <= beta_right; }

    /// Wall-swapped parameters; the current changes sign under this map.
    WallParams swapped() const { return WallParams(beta_right, beta_left); }
};

/// (T, tau, epsilon) parametrization used by the scaling limits:
/// beta_left = 1/(T + eps*tau/2), beta_right = 1/(T - eps*tau/2).
/// This is the single place where the sign convention of the gradient
/// lives; everything else converts through wall_params().
struct ScaledParams {
    double temp_mean;  ///< T > 0
    double temp_gap;   ///< tau (signed)
    double epsilon;    ///< scaling parameter >= 0

    ScaledParams(double temp_mean, double temp_gap, double epsilon = 1.0);

    WallParams wall_params() const;
};

/// Conductivity kappa with 1/kappa = sqrt(pi*beta_L/2) + sqrt(pi*beta_R/2).
/// Symmetric in the two walls.
double conductivity(const WallParams& params);

/// Mean flight time mu(beta) = E(tau_1) = sqrt(beta*pi/2) for a wall at
/// inverse temperature beta.
double mean_gap(double beta);

/// Equilibrium current-variance rate in the Green-Kubo normalization
/// sigma(T) = 4*kappa(T)*T^2, with kappa evaluated at beta_L = beta_R = 1/T.
/// Equals (2/beta^2)*sqrt(2/(beta*pi)).
double green_kubo_variance(double temperature);

/// Stationary mean current j* = kappa * (T_L - T_R). Antisymmetric under
/// a wall swap.
double j_star(const WallParams& params);

/// Equal-temperature scaling constant kappa = sqrt(T/(2*pi)). Agrees with
/// conductivity() only at zero temperature gap.
double scaling_kappa(double temperature);

} // namespace tracer
