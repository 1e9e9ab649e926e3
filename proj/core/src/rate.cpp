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

#include "tracer/rate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>

#include "tracer/cgf.hpp"
#include "tracer/csv.hpp"
#include "tracer/error.hpp"
#include "tracer/quadrature.hpp"

namespace tracer {

namespace {

constexpr double domain_margin = 2e-6;
constexpr double golden_xtol = 1e-8;

double sup_via_golden(double j, const WallParams& params) {
    const double lo = -params.beta_right + domain_margin;
    const double hi = params.beta_left - domain_margin;
    const auto best = golden_max(
        [&](double lambda) { return lambda * j - solve_cgf(lambda, params).value(); },
        lo, hi, golden_xtol);
    return best.max;
}

} // namespace

std::string to_string(RateRegion region) {
    switch (region) {
    case RateRegion::flat: return "flat";
    case RateRegion::linear: return "linear";
    case RateRegion::quadratic_right: return "quadratic-right";
    case RateRegion::quadratic_left: return "quadratic-left";
    }
    return "?";
}

LegendreMax legendre_with_maximizer(double j, const WallParams& params) {
    if (!std::isfinite(j)) {
        throw value_error("legendre: j must be finite");
    }
    if (!params.is_ordered()) {
        // I(j, B) = I(-j, swap(B)); the maximizer negates
        LegendreMax m = legendre_with_maximizer(-j, params.swapped());
        m.maximizer = -m.maximizer;
        if (m.region == RateRegion::quadratic_right) {
            m.region = RateRegion::quadratic_left;
        } else if (m.region == RateRegion::quadratic_left) {
            m.region = RateRegion::quadratic_right;
        }
        return m;
    }
    const double jstar = j_star(params);
    const double window_left = params.beta_left - params.beta_right;
    LegendreMax out;
    if (j >= 0.0 && j <= jstar) {
        // plateau: sup attained on the whole flat window; value 0,
        // smallest maximizer is the window's left edge when j = 0
        out.value = 0.0;
        out.maximizer = j == 0.0 ? window_left : 0.0;
        out.region = RateRegion::flat;
        return out;
    }
    if (j >= -jstar && j < 0.0) {
        out.value = (params.beta_right - params.beta_left) * std::abs(j);
        out.maximizer = window_left;
        out.region = RateRegion::linear;
        return out;
    }
    const double lo = -params.beta_right + domain_margin;
    const double hi = params.beta_left - domain_margin;
    const auto best = golden_max(
        [&](double lambda) { return lambda * j - solve_cgf(lambda, params).value(); },
        lo, hi, golden_xtol);
    out.value = best.max;
    out.maximizer = best.argmax;
    out.region = j > jstar ? RateRegion::quadratic_right : RateRegion::quadratic_left;
    return out;
}

double legendre(double j, const WallParams& params) {
    return legendre_with_maximizer(j, params).value;
}

double legendre_numeric(double j, const WallParams& params) {
    if (!params.is_ordered()) {
        return legendre_numeric(-j, params.swapped());
    }
    return sup_via_golden(j, params);
}

double plateau_consistency(const WallParams& params) {
    const WallParams canon = params.is_ordered() ? params : params.swapped();
    const double jstar = j_star(canon);
    double worst = 0.0;
    for (double frac : {-0.9, -0.5, -0.1, 0.0, 0.3, 0.7, 1.0}) {
        const double j = frac * jstar;
        worst = std::max(worst,
                         std::abs(legendre_numeric(j, canon) - legendre(j, canon)));
    }
    return worst;
}

RateCurve rate_curve(const std::vector<double>& js, const WallParams& params) {
    RateCurve curve{params, {}};
    curve.samples.reserve(js.size());
    for (double j : js) {
        const auto m = legendre_with_maximizer(j, params);
        curve.samples.push_back({j, m.value, m.region});
    }
    return curve;
}

GcSymmetryReport gc_symmetry_check(const RateCurve& curve) {
    const auto& s = curve.samples;
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(s[i].x + s[n - 1 - i].x) > 1e-12) {
            throw value_error("gc_symmetry_check: grid is not symmetric about 0");
        }
    }
    const double affinity = curve.params.beta_left - curve.params.beta_right;
    GcSymmetryReport report;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid =
            std::abs(s[i].value - affinity * s[i].x - s[n - 1 - i].value);
        report.max_residual = std::max(report.max_residual, resid);
    }
    report.pass = report.max_residual <= 1e-6;
    return report;
}

namespace {

void check_limit_args(double kappa, double temperature) {
    if (!(temperature > 0.0 && std::isfinite(temperature))) {
        throw value_error("scaling limit: temperature must be finite and > 0");
    }
    if (!(kappa > 0.0 && std::isfinite(kappa))) {
        throw value_error("scaling limit: kappa must be finite and > 0");
    }
}

} // namespace

double limit_H_free(double lambda, double kappa, double tau, double temperature) {
    check_limit_args(kappa, temperature);
    const double t2 = temperature * temperature;
    // parabola with roots at 0 and -tau/T^2; the flat window is exactly
    // where it dips negative
    return std::max(kappa * tau * lambda + kappa * t2 * lambda * lambda, 0.0);
}

RateRegion limit_H_region(double lambda, double kappa, double tau, double temperature) {
    check_limit_args(kappa, temperature);
    const double t2 = temperature * temperature;
    if (lambda * tau > 0.0) {
        return RateRegion::quadratic_right;
    }
    if (tau != 0.0 && lambda * tau < -tau * tau / t2) {
        return RateRegion::quadratic_left;
    }
    if (tau == 0.0 && lambda != 0.0) {
        return lambda > 0.0 ? RateRegion::quadratic_right : RateRegion::quadratic_left;
    }
    return RateRegion::flat;
}

double limit_G_free(double j, double kappa, double tau, double temperature) {
    check_limit_args(kappa, temperature);
    const double t2 = temperature * temperature;
    if (tau == 0.0) {
        return j * j / (4.0 * kappa * t2);
    }
    const double jt = j * tau;
    const double edge = kappa * tau * tau;
    if (jt >= 0.0 && jt <= edge) {
        return 0.0;
    }
    if (jt < 0.0 && jt >= -edge) {
        return -jt / t2;
    }
    const double d = j - kappa * tau;
    return d * d / (4.0 * kappa * t2);
}

RateRegion limit_G_region(double j, double kappa, double tau, double temperature) {
    check_limit_args(kappa, temperature);
    const double jt = j * tau;
    const double edge = kappa * tau * tau;
    if (tau == 0.0) {
        return j == 0.0 ? RateRegion::flat
                        : (j > 0.0 ? RateRegion::quadratic_right : RateRegion::quadratic_left);
    }
    if (jt >= 0.0 && jt <= edge) {
        return RateRegion::flat;
    }
    if (jt < 0.0 && jt >= -edge) {
        return RateRegion::linear;
    }
    return jt > 0.0 ? RateRegion::quadratic_right : RateRegion::quadratic_left;
}

double limit_H(double lambda, double tau, double temperature) {
    return limit_H_free(lambda, scaling_kappa(temperature), tau, temperature);
}

double limit_G(double j, double tau, double temperature) {
    return limit_G_free(j, scaling_kappa(temperature), tau, temperature);
}

double limit_G_branch(RateRegion region, double j, double kappa, double tau,
                      double temperature) {
    check_limit_args(kappa, temperature);
    const double t2 = temperature * temperature;
    switch (region) {
    case RateRegion::flat: return 0.0;
    case RateRegion::linear: return -j * tau / t2;
    case RateRegion::quadratic_right:
    case RateRegion::quadratic_left: {
        const double d = j - kappa * tau;
        return d * d / (4.0 * kappa * t2);
    }
    }
    return 0.0;
}

double limit_H_branch(RateRegion region, double lambda, double kappa, double tau,
                      double temperature) {
    check_limit_args(kappa, temperature);
    const double t2 = temperature * temperature;
    switch (region) {
    case RateRegion::flat: return 0.0;
    case RateRegion::linear: return 0.0;
    case RateRegion::quadratic_right:
    case RateRegion::quadratic_left:
        return kappa * tau * lambda + kappa * t2 * lambda * lambda;
    }
    return 0.0;
}

namespace {

// Grid over [x_min, x_max] with every seam inserted twice, labelled and
// evaluated by the two adjacent branches.
std::vector<RatePoint> seamed_curve(double x_min, double x_max, int interior_points,
                                    const std::vector<double>& seams,
                                    const std::function<RateRegion(double)>& region_of,
                                    const std::function<double(RateRegion, double)>& value) {
    if (!(x_max > x_min) || interior_points < 2) {
        throw value_error("figure curve: need x_max > x_min and >= 2 points");
    }
    std::vector<RatePoint> out;
    const double step = (x_max - x_min) / (interior_points - 1);
    auto push_plain = [&](double x) {
        const RateRegion r = region_of(x);
        out.push_back({x, value(r, x), r});
    };
    double x = x_min;
    std::size_t next_seam = 0;
    std::vector<double> inner;
    for (double s : seams) {
        if (s > x_min && s < x_max) {
            inner.push_back(s);
        }
    }
    for (int i = 0; i < interior_points; ++i, x = x_min + i * step) {
        while (next_seam < inner.size() && inner[next_seam] <= x) {
            const double s = inner[next_seam];
            const RateRegion left = region_of(s - 1e-9);
            const RateRegion right = region_of(s + 1e-9);
            out.push_back({s, value(left, s), left});
            out.push_back({s, value(right, s), right});
            ++next_seam;
        }
        bool is_seam = false;
        for (double s : inner) {
            if (x == s) {
                is_seam = true;
            }
        }
        if (!is_seam) {
            push_plain(x);
        }
    }
    return out;
}

} // namespace

std::vector<RatePoint> figure_G_curve(double x_min, double x_max, int interior_points) {
    const double kappa = 1.0, tau = 1.0, temp = 1.0;
    return seamed_curve(
        x_min, x_max, interior_points, {-kappa * tau, 0.0, kappa * tau},
        [&](double j) { return limit_G_region(j, kappa, tau, temp); },
        [&](RateRegion r, double j) { return limit_G_branch(r, j, kappa, tau, temp); });
}

std::vector<RatePoint> figure_H_curve(double x_min, double x_max, int interior_points) {
    const double kappa = 1.0, tau = 1.0, temp = 1.0;
    return seamed_curve(
        x_min, x_max, interior_points, {-tau, 0.0},
        [&](double l) { return limit_H_region(l, kappa, tau, temp); },
        [&](RateRegion r, double l) { return limit_H_branch(r, l, kappa, tau, temp); });
}

FigureFiles write_figure_files(const std::string& directory, int interior_points) {
    FigureFiles files;
    files.g_csv = directory + "/figure1_G.csv";
    files.h_csv = directory + "/figure6_H.csv";
    files.gnuplot = directory + "/plot_figures.gp";

    {
        CsvWriter csv(files.g_csv, "tracer.figure_G.v1", {"j", "G", "region"});
        csv.comment("convention", "kappa*tau=1, kappa*T^2=1");
        csv.comment("kappa", 1.0);
        csv.comment("tau", 1.0);
        csv.comment("T", 1.0);
        for (const auto& pt : figure_G_curve(-3.0, 3.0, interior_points)) {
            csv.row({format_sig(pt.x), format_sig(pt.value), to_string(pt.region)});
        }
    }
    {
        CsvWriter csv(files.h_csv, "tracer.figure_H.v1", {"lambda", "H", "region"});
        csv.comment("convention", "kappa=tau=T^2=1");
        csv.comment("kappa", 1.0);
        csv.comment("tau", 1.0);
        csv.comment("T", 1.0);
        for (const auto& pt : figure_H_curve(-3.0, 2.0, interior_points)) {
            csv.row({format_sig(pt.x), format_sig(pt.value), to_string(pt.region)});
        }
    }
    {
        std::ofstream gp(files.gnuplot);
        if (!gp) {
            throw value_error("write_figure_files: cannot open " + files.gnuplot);
        }
        // each csv carries 1 schema line + 4 parameter comments + 1 header
        gp << "set datafile separator ','\n"
           << "set datafile commentschars '#'\n"
           << "set grid\n"
           << "set term pngcairo size 900,600\n"
           << "set output 'figure1_G.png'\n"
           << "set xlabel 'j'\nset ylabel 'G(j)'\n"
           << "plot 'figure1_G.csv' skip 6 using 1:2 with lines title 'G'\n"
           << "set output 'figure6_H.png'\n"
           << "set xlabel 'lambda'\nset ylabel 'H(lambda)'\n"
           << "plot 'figure6_H.csv' skip 6 using 1:2 with lines title 'H'\n";
    }
    return files;
}

ScalingReport scaling_convergence(const std::vector<double>& lambda_grid,
                                  const std::vector<double>& j_grid, double tau,
                                  double temperature,
                                  const std::vector<double>& epsilons) {
    if (epsilons.empty() || !std::is_sorted(epsilons.rbegin(), epsilons.rend())) {
        throw value_error("scaling_convergence: epsilons must be a decreasing list");
    }
    ScalingReport report;
    for (double eps : epsilons) {
        const ScaledParams scaled(temperature, tau, eps);  // validates admissibility
        const WallParams walls = scaled.wall_params();
        for (double lambda : lambda_grid) {
            const double l = eps * lambda;
            if (!(l > -walls.beta_right + domain_margin &&
                  l < walls.beta_left - domain_margin)) {
                throw value_error("scaling_convergence: eps*lambda leaves the CGF domain");
            }
        }
        ScalingRow row;
        row.epsilon = eps;
        for (double lambda : lambda_grid) {
            const double u = solve_cgf(eps * lambda, walls).value() / (eps * eps);
            row.gap_cgf =
                std::max(row.gap_cgf, std::abs(u - limit_H(lambda, tau, temperature)));
        }
        for (double j : j_grid) {
            const double i = legendre(eps * j, walls) / (eps * eps);
            row.gap_rate =
                std::max(row.gap_rate, std::abs(i - limit_G(j, tau, temperature)));
        }
        report.rows.push_back(row);
    }
    report.monotone = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        if (report.rows[i].gap_cgf >= report.rows[i - 1].gap_cgf ||
            report.rows[i].gap_rate >= report.rows[i - 1].gap_rate) {
            report.monotone = false;
        }
    }
    report.final_gap_cgf = report.rows.back().gap_cgf;
    report.final_gap_rate = report.rows.back().gap_rate;
    return report;
}

} // namespace tracer
