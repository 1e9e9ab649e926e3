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

#include "tracer/cgf.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tracer/error.hpp"
#include "tracer/quadrature.hpp"

namespace tracer {

namespace {

constexpr double endpoint_margin = 1e-6;
constexpr double residual_tol = 1e-10;
constexpr double kernel_tol = 1e-12;

void check_domain(double lambda, const WallParams& params, const char* who) {
    if (!(lambda > -params.beta_right && lambda < params.beta_left)) {
        throw value_error(std::string(who) + ": lambda=" + std::to_string(lambda) +
                          " outside the open domain (-beta_R, beta_L)");
    }
}

} // namespace

std::string to_string(CgfRegion region) {
    switch (region) {
    case CgfRegion::flat: return "flat";
    case CgfRegion::analytic_positive: return "analytic-positive";
    case CgfRegion::analytic_negative: return "analytic-negative";
    case CgfRegion::infinite: return "infinite";
    }
    return "?";
}

double kernel_C(double x, double eta, double rel_tol) {
    if (!(x > 0.0)) {
        throw value_error("kernel_C: x must be > 0, the integral diverges otherwise");
    }
    if (!(eta >= 0.0)) {
        throw value_error("kernel_C: eta must be >= 0");
    }
    return speed_moment_integral(1, x, eta, rel_tol);
}

double big_F(double lambda, double eta, const WallParams& params) {
    check_domain(lambda, params, "big_F");
    if (!(eta >= 0.0)) {
        throw value_error("big_F: eta must be >= 0");
    }
    return params.beta_left * params.beta_right *
           kernel_C(params.beta_right + lambda, eta) *
           kernel_C(params.beta_left - lambda, eta);
}

double dF_dlambda(double lambda, double eta, const WallParams& params) {
    check_domain(lambda, params, "dF_dlambda");
    const double x1 = params.beta_right + lambda;
    const double x2 = params.beta_left - lambda;
    const double tol = 1e-10;
    const double k1a = speed_moment_integral(1, x1, eta, tol);
    const double k3b = speed_moment_integral(3, x2, eta, tol);
    const double k3a = speed_moment_integral(3, x1, eta, tol);
    const double k1b = speed_moment_integral(1, x2, eta, tol);
    return 0.5 * params.beta_left * params.beta_right * (k1a * k3b - k3a * k1b);
}

double dF_deta(double lambda, double eta, const WallParams& params) {
    check_domain(lambda, params, "dF_deta");
    const double x1 = params.beta_right + lambda;
    const double x2 = params.beta_left - lambda;
    const double tol = 1e-10;
    const double k0a = speed_moment_integral(0, x1, eta, tol);
    const double k1b = speed_moment_integral(1, x2, eta, tol);
    const double k1a = speed_moment_integral(1, x1, eta, tol);
    const double k0b = speed_moment_integral(0, x2, eta, tol);
    return -params.beta_left * params.beta_right * (k0a * k1b + k1a * k0b);
}

double gc_reflect(double lambda, const WallParams& params) {
    return params.beta_left - params.beta_right - lambda;
}

namespace {

CgfSolution solve_canonical(double lambda, const WallParams& params) {
    // params canonical: beta_L <= beta_R
    const double window_left = params.beta_left - params.beta_right;

    CgfSolution sol;
    sol.lambda = lambda;

    if (lambda >= window_left && lambda <= 0.0) {
        sol.eta0 = 0.0;
        sol.region = CgfRegion::flat;
        return sol;
    }
    if (lambda <= -params.beta_right || lambda >= params.beta_left) {
        sol.eta0 = std::numeric_limits<double>::infinity();
        sol.region = CgfRegion::infinite;
        return sol;
    }
    if (lambda > params.beta_left - endpoint_margin ||
        lambda < -params.beta_right + endpoint_margin) {
        throw value_error("solve_cgf: lambda within 1e-6 of a domain endpoint; f "
                          "diverges there and the quadrature is ill-conditioned");
    }

    sol.region = lambda > 0.0 ? CgfRegion::analytic_positive : CgfRegion::analytic_negative;

    auto eval = [&](double eta) { return big_F(lambda, eta, params) - 1.0; };

    // F(lambda, 0) > 1 outside the flat window; find an eta with F < 1.
    double lo = 0.0;
    double f_lo = eval(0.0);
    if (f_lo <= 0.0) {
        // can only be quadrature noise immediately at the window edge
        sol.eta0 = 0.0;
        sol.residual = std::abs(f_lo);
        return sol;
    }
    double hi = 1.0;
    double f_hi = eval(hi);
    int doublings = 0;
    while (f_hi > 0.0) {
        if (++doublings > 200) {
            throw solver_error("solve_cgf: no bracket after 200 doublings at lambda=" +
                               std::to_string(lambda));
        }
        lo = hi;
        f_lo = f_hi;
        hi *= 2.0;
        f_hi = eval(hi);
    }

    // Bisection refined by secant steps; monotonicity of F in eta makes the
    // bracket safe, so a failure here means the quadrature lied.
    int iterations = doublings;
    double x0 = lo, f0 = f_lo, x1 = hi, f1 = f_hi;
    double root = 0.5 * (lo + hi);
    double f_root = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 200; ++i) {
        double candidate = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!(candidate > lo && candidate < hi)) {
            candidate = 0.5 * (lo + hi);
        }
        root = candidate;
        f_root = eval(root);
        ++iterations;
        if (std::abs(f_root) <= residual_tol) {
            break;
        }
        if (f_root > 0.0) {
            lo = root;
        } else {
            hi = root;
        }
        x0 = x1;
        f0 = f1;
        x1 = root;
        f1 = f_root;
        if (hi - lo < 1e-16 * (1.0 + hi)) {
            break;
        }
    }
    if (std::abs(f_root) > residual_tol) {
        throw solver_error("solve_cgf: residual " + std::to_string(std::abs(f_root)) +
                           " above tolerance at lambda=" + std::to_string(lambda));
    }
    sol.eta0 = root;
    sol.residual = std::abs(f_root);
    sol.iterations = iterations;
    return sol;
}

CgfRegion mirror_region(CgfRegion region) {
    switch (region) {
    case CgfRegion::analytic_positive: return CgfRegion::analytic_negative;
    case CgfRegion::analytic_negative: return CgfRegion::analytic_positive;
    default: return region;
    }
}

} // namespace

CgfSolution solve_cgf(double lambda, const WallParams& params) {
    if (!std::isfinite(lambda)) {
        throw value_error("solve_cgf: lambda must be finite");
    }
    if (params.is_ordered()) {
        return solve_canonical(lambda, params);
    }
    // wall swap negates the current: f(lambda, B) = f(-lambda, swap(B))
    CgfSolution sol = solve_canonical(-lambda, params.swapped());
    sol.lambda = lambda;
    sol.region = mirror_region(sol.region);
    return sol;
}

CgfDerivative cgf_derivative(double lambda, const WallParams& params) {
    if (!params.is_ordered()) {
        CgfDerivative d = cgf_derivative(-lambda, params.swapped());
        d.value = -d.value;
        d.region = mirror_region(d.region);
        return d;
    }
    const double window_left = params.beta_left - params.beta_right;
    if (lambda == window_left || lambda == 0.0) {
        throw value_error("cgf_derivative: only one-sided derivatives exist at the "
                          "junction points of the flat window");
    }
    if (lambda > window_left && lambda < 0.0) {
        return {0.0, CgfRegion::flat};
    }
    const CgfSolution sol = solve_cgf(lambda, params);
    if (sol.region == CgfRegion::infinite) {
        throw value_error("cgf_derivative: lambda outside the open domain");
    }
    const double num = dF_dlambda(lambda, sol.eta0, params);
    const double den = dF_deta(lambda, sol.eta0, params);
    return {-num / den, sol.region};
}

std::vector<CgfCurvePoint> cgf_curve(const std::vector<double>& lambdas,
                                     const WallParams& params) {
    std::vector<CgfCurvePoint> curve;
    curve.reserve(lambdas.size());
    for (double lambda : lambdas) {
        const CgfSolution sol = solve_cgf(lambda, params);
        if (sol.region == CgfRegion::infinite) {
            throw value_error("cgf_curve: grid point outside the open domain");
        }
        curve.push_back({sol.lambda, sol.eta0, sol.region, sol.residual, sol.iterations});
    }
    return curve;
}

} // namespace tracer
