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

#include <string>
#include <vector>

#include "tracer/params.hpp"

namespace tracer {

/// Branch labels of the rate function and its scaling limits. For
/// T_L >= T_R the rate function is 0 on [0, j*], affine on [-j*, 0], and
/// strictly convex outside.
enum class RateRegion { flat, linear, quadratic_right, quadratic_left };

std::string to_string(RateRegion region);

struct RatePoint {
    double x = 0.0;
    double value = 0.0;
    RateRegion region = RateRegion::flat;
};

struct RateCurve {
    WallParams params;
    std::vector<RatePoint> samples;
};

/// I(j, B) = sup_lambda { lambda j - f(lambda, B) }. The plateau
/// ([0, j*]: 0) and the affine branch ([-j*, 0]: (beta_R - beta_L)|j|)
/// are returned in closed form (a flat-top golden section would stall
/// there); outside, a golden section over the open CGF domain refined to
/// |dlambda| <= 1e-8. Finite for every real j.
double legendre(double j, const WallParams& params);

/// The pure golden-section evaluation, no closed-form short-circuit.
/// Used to cross-check the plateau handling.
double legendre_numeric(double j, const WallParams& params);

struct LegendreMax {
    double value = 0.0;
    double maximizer = 0.0;  ///< smallest maximizing lambda when tied
    RateRegion region = RateRegion::flat;
};
LegendreMax legendre_with_maximizer(double j, const WallParams& params);

/// Max over a few plateau points of |legendre_numeric - closed form|.
/// The plateau short-circuit is only trusted because this stays tiny.
double plateau_consistency(const WallParams& params);

RateCurve rate_curve(const std::vector<double>& js, const WallParams& params);

struct GcSymmetryReport {
    double max_residual = 0.0;
    bool pass = false;  ///< residual <= 1e-6
};

/// Checks I(j) = (beta_L - beta_R) j + I(-j) over the curve's grid.
/// The grid must be symmetric about 0.
GcSymmetryReport gc_symmetry_check(const RateCurve& curve);

/// Small-gradient limits of the scaled CGF and rate function, with
/// kappa free (the figure captions treat kappa, tau, T as independent):
///   H = max(kappa tau lambda + kappa T^2 lambda^2, 0)
///   G = (j - kappa tau)^2/(4 kappa T^2) outside, 0 on the flat segment
///       (j tau in [0, kappa tau^2]), -j tau / T^2 on the affine segment.
/// Both are continuous at every seam and Legendre-dual to each other.
double limit_H_free(double lambda, double kappa, double tau, double temperature);
double limit_G_free(double j, double kappa, double tau, double temperature);
RateRegion limit_H_region(double lambda, double kappa, double tau, double temperature);
RateRegion limit_G_region(double j, double kappa, double tau, double temperature);

/// The physical limits, kappa = sqrt(T / 2 pi). Seams of H sit at
/// lambda = 0 and lambda = -tau/T^2; seams of G at j tau in
/// {kappa tau^2, 0, -kappa tau^2}.
double limit_H(double lambda, double tau, double temperature);
double limit_G(double j, double tau, double temperature);

/// Closed form of one branch of G (resp. H) extended to the closure of
/// its region; the branches agree at the seams, which is what the figure
/// files' duplicated seam rows certify.
double limit_G_branch(RateRegion region, double j, double kappa, double tau,
                      double temperature);
double limit_H_branch(RateRegion region, double lambda, double kappa, double tau,
                      double temperature);

/// Figure-convention curves (kappa = tau = 1, T^2 = 1, so kappa*tau =
/// kappa*T^2 = 1). Seam abscissae appear twice, once per adjacent branch,
/// each computed from that branch's closed form.
std::vector<RatePoint> figure_G_curve(double x_min, double x_max, int interior_points);
std::vector<RatePoint> figure_H_curve(double x_min, double x_max, int interior_points);

struct FigureFiles {
    std::string g_csv;
    std::string h_csv;
    std::string gnuplot;
};

/// Emits the data behind the G-vs-j and H-vs-lambda figures plus a
/// gnuplot script rendering them. Data only; no plotting happens here.
FigureFiles write_figure_files(const std::string& directory, int interior_points = 600);

struct ScalingRow {
    double epsilon = 0.0;
    double gap_cgf = 0.0;   ///< sup over the lambda grid of |eps^-2 F - H|
    double gap_rate = 0.0;  ///< sup over the j grid of |eps^-2 I - G|
};

struct ScalingReport {
    std::vector<ScalingRow> rows;  ///< ordered as the input epsilons
    bool monotone = false;         ///< both gap columns decrease along the ladder
    double final_gap_cgf = 0.0;
    double final_gap_rate = 0.0;

    bool pass(double final_tol) const {
        return monotone && final_gap_cgf <= final_tol && final_gap_rate <= final_tol;
    }
};

/// For each epsilon computes eps^-2 F(eps lambda, eps tau, T) via the CGF
/// solver and eps^-2 I(eps j) via legendre, and reports sup-norm gaps to
/// limit_H / limit_G. Epsilons must be decreasing and admissible.
ScalingReport scaling_convergence(const std::vector<double>& lambda_grid,
                                  const std::vector<double>& j_grid, double tau,
                                  double temperature,
                                  const std::vector<double>& epsilons);

} // namespace tracer
