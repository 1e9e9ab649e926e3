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

/// Piecewise structure of the cumulant generating function in lambda.
/// With beta_L <= beta_R: flat on [beta_L - beta_R, 0], analytic on each
/// side of it, +infinity outside (-beta_R, beta_L).
enum class CgfRegion { flat, analytic_positive, analytic_negative, infinite };

std::string to_string(CgfRegion region);

struct CgfSolution {
    double lambda = 0.0;
    double eta0 = 0.0;     ///< f(lambda); +infinity in the infinite region
    CgfRegion region = CgfRegion::flat;
    double residual = 0.0; ///< |F(lambda, eta0) - 1| for analytic solutions
    int iterations = 0;

    double value() const { return eta0; }
};

/// Kernel C(x, eta) = integral over (0,inf) of v e^{-eta/v - x v^2/2} dv.
/// Strictly decreasing in both arguments; C(x, 0) = 1/x.
/// Throws for x <= 0 (divergent integral).
double kernel_C(double x, double eta, double rel_tol = 1e-12);

/// F(lambda, eta, B) = beta_L beta_R C(beta_R + lambda, eta) C(beta_L - lambda, eta).
/// Domain: lambda strictly inside (-beta_R, beta_L).
double big_F(double lambda, double eta, const WallParams& params);

/// Partial derivatives of F, evaluated as tensor products of the
/// one-dimensional moment integrals K_m(x, eta) = int v^m e^{-eta/v - x v^2/2} dv:
///   dF/dlambda = bL bR [K1(bR+l) K3(bL-l) - K3(bR+l) K1(bL-l)] / 2
///   dF/deta    = -bL bR [K0(bR+l) K1(bL-l) + K1(bR+l) K0(bL-l)]  (< 0 always)
double dF_dlambda(double lambda, double eta, const WallParams& params);
double dF_deta(double lambda, double eta, const WallParams& params);

/// Solves F(lambda, eta0, B) = 1 for eta0 >= 0, classifying the region
/// first. Flat-region lambdas return exactly 0 (analytic branch).
/// Lambdas within 1e-6 of the domain endpoints are rejected (f blows up
/// there and the quadrature is ill-conditioned). Bracket doubling that
/// fails after 200 steps raises solver_error.
CgfSolution solve_cgf(double lambda, const WallParams& params);

struct CgfDerivative {
    double value = 0.0;
    CgfRegion region = CgfRegion::flat;
};

/// f'(lambda) = -dF/dlambda / dF/deta at (lambda, f(lambda)). Flat-region
/// lambdas return 0 with the flat flag; the junction points themselves
/// (where only one-sided derivatives exist) are errors.
CgfDerivative cgf_derivative(double lambda, const WallParams& params);

/// The reflection lambda -> beta_L - beta_R - lambda of the
/// Gallavotti-Cohen symmetry f(lambda) = f(reflected lambda).
double gc_reflect(double lambda, const WallParams& params);

struct CgfCurvePoint {
    double lambda;
    double eta0;
    CgfRegion region;
    double residual;
    int iterations;
};

/// solve_cgf over a grid; grid points outside the open domain are errors.
std::vector<CgfCurvePoint> cgf_curve(const std::vector<double>& lambdas,
                                     const WallParams& params);

} // namespace tracer
