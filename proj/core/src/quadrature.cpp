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

#include "tracer/quadrature.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "tracer/error.hpp"

namespace tracer {

namespace {

// log of the integrand after v = e^s: (m+1)s - eta*e^{-s} - (x/2)e^{2s}.
inline double log_integrand(int m, double x, double eta, double s) {
    return (m + 1) * s - eta * std::exp(-s) - 0.5 * x * std::exp(2.0 * s);
}

// derivative of log_integrand in s; strictly decreasing, so the peak is
// its unique zero.
inline double dlog_integrand(int m, double x, double eta, double s) {
    return (m + 1) + eta * std::exp(-s) - x * std::exp(2.0 * s);
}

double find_peak(int m, double x, double eta) {
    if (eta == 0.0) {
        return 0.5 * std::log((m + 1) / x);
    }
    double lo = 0.5 * std::log((m + 1) / x);
    while (dlog_integrand(m, x, eta, lo) < 0.0) {
        lo -= 1.0;
    }
    double hi = lo + 1.0;
    while (dlog_integrand(m, x, eta, hi) > 0.0) {
        hi += 1.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (dlog_integrand(m, x, eta, mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double speed_moment_integral(int m, double x, double eta, double rel_tol) {
    if (m < 0) {
        throw value_error("speed_moment_integral: moment order must be >= 0");
    }
    if (!(std::isfinite(x) && x > 0.0)) {
        throw value_error("speed_moment_integral: x must be > 0, the integral diverges "
                          "otherwise (got x=" + std::to_string(x) + ")");
    }
    if (!(std::isfinite(eta) && eta >= 0.0)) {
        throw value_error("speed_moment_integral: eta must be >= 0");
    }

    const double s_peak = find_peak(m, x, eta);
    const double g_peak = log_integrand(m, x, eta, s_peak);

    // Truncate where the integrand is below e^-72 ~ 5e-32 of the peak.
    constexpr double drop = 72.0;
    double s_lo = s_peak;
    while (log_integrand(m, x, eta, s_lo) > g_peak - drop) {
        s_lo -= 1.0;
    }
    double s_hi = s_peak;
    while (log_integrand(m, x, eta, s_hi) > g_peak - drop) {
        s_hi += 1.0;
    }

    // Trapezoid with successive halving; interior nodes only get reused.
    int n = 64;
    double h = (s_hi - s_lo) / n;
    double acc = 0.5 * (std::exp(log_integrand(m, x, eta, s_lo) - g_peak) +
                        std::exp(log_integrand(m, x, eta, s_hi) - g_peak));
    for (int i = 1; i < n; ++i) {
        acc += std::exp(log_integrand(m, x, eta, s_lo + i * h) - g_peak);
    }
    double prev = h * acc;
    for (int pass = 0; pass < 18; ++pass) {
        double odd = 0.0;
        for (int i = 0; i < n; ++i) {
            odd += std::exp(log_integrand(m, x, eta, s_lo + (i + 0.5) * h) - g_peak);
        }
        acc += odd;
        n *= 2;
        h *= 0.5;
        const double cur = h * acc;
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) {
            return std::exp(g_peak) * cur;
        }
        prev = cur;
    }
    throw solver_error("speed_moment_integral: no convergence to rel_tol=" +
                       std::to_string(rel_tol) + " at x=" + std::to_string(x) +
                       " eta=" + std::to_string(eta));
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) {
        throw solver_error("adaptive_simpson: max recursion depth reached");
    }
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (a == b) {
        return 0.0;
    }
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

GoldenResult golden_max(const std::function<double(double)>& f, double a, double b,
                        double xtol) {
    if (!(b > a)) {
        throw value_error("golden_max: empty interval");
    }
    constexpr double invphi = 0.6180339887498948482;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > xtol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc > fd ? GoldenResult{c, fc} : GoldenResult{d, fd};
}

} // namespace tracer
