#include <doctest.h>

#include <cmath>

#include "tracer/cgf.hpp"
#include "tracer/error.hpp"
#include "tracer/params.hpp"
#include "tracer/quadrature.hpp"
#include "tracer/rate.hpp"

using namespace tracer;

namespace {

// Independent oracle: dense-lambda-grid supremum of lambda*j - f(lambda).
double dense_grid_sup(double j, const WallParams& walls, int points) {
    const double lo = -walls.beta_right + 1e-5;
    const double hi = walls.beta_left - 1e-5;
    double best = -1e300;
    for (int i = 0; i <= points; ++i) {
        const double l = lo + (hi - lo) * i / points;
        best = std::max(best, l * j - solve_cgf(l, walls).value());
    }
    return best;
}

} // namespace

TEST_CASE("legendre plateau and affine branch") {
    const WallParams walls(0.5, 1.0);
    const double jstar = j_star(walls);
    for (double f : {0.0, 0.3, 0.6, 1.0}) {
        CHECK(legendre(f * jstar, walls) == 0.0);
    }
    for (double f : {0.2, 0.5, 1.0}) {
        CHECK(legendre(-f * jstar, walls) ==
              doctest::Approx((walls.beta_right - walls.beta_left) * f * jstar)
                  .epsilon(1e-12));
    }
}

TEST_CASE("legendre against the dense-grid oracle outside the plateau") {
    const WallParams walls(0.5, 1.0);
    const double jstar = j_star(walls);
    const double j = 2.0 * jstar;
    const double oracle = dense_grid_sup(j, walls, 4000);
    CHECK(legendre(j, walls) == doctest::Approx(oracle).epsilon(1e-6));
    // frozen regression value from the oracle
    CHECK(legendre(j, walls) == doctest::Approx(0.0299504793).epsilon(1e-6));
    // numeric route agrees with the closed-form short-circuit on the plateau
    CHECK(plateau_consistency(walls) <= 1e-6);
}

TEST_CASE("legendre maximizer and tie-breaking") {
    const WallParams walls(0.5, 1.0);
    const auto at_zero = legendre_with_maximizer(0.0, walls);
    // the whole flat window maximizes at j = 0; report its left edge
    CHECK(at_zero.maximizer ==
          doctest::Approx(walls.beta_left - walls.beta_right).epsilon(1e-12));
    CHECK(at_zero.value == 0.0);
    const auto right = legendre_with_maximizer(2.0 * j_star(walls), walls);
    CHECK(right.region == RateRegion::quadratic_right);
    CHECK(right.maximizer > 0.0);
}

TEST_CASE("legendre under a wall swap") {
    // I(j, B) = I(-j, swap(B)); the plateau moves to [-j*, 0]
    const WallParams walls(0.5, 1.0);
    const WallParams swapped = walls.swapped();
    const double jstar = j_star(walls);
    for (double j : {0.4 * jstar, -0.7 * jstar, 1.8 * jstar}) {
        CHECK(legendre(-j, swapped) == doctest::Approx(legendre(j, walls)).epsilon(1e-9));
    }
    CHECK(legendre(-0.5 * jstar, swapped) == 0.0);
    CHECK(legendre_with_maximizer(1.5 * jstar, walls).maximizer ==
          doctest::Approx(-legendre_with_maximizer(-1.5 * jstar, swapped).maximizer)
              .epsilon(1e-6));
}

TEST_CASE("gc symmetry of the rate curve") {
    const WallParams walls(0.5, 1.0);
    std::vector<double> js;
    for (int i = -10; i <= 10; ++i) {
        js.push_back(0.12 * i);
    }
    const auto curve = rate_curve(js, walls);
    const auto report = gc_symmetry_check(curve);
    CHECK(report.pass);
    CHECK(report.max_residual <= 1e-6);
    // spot value: I(-0.1) - I(0.1) = (beta_R - beta_L) * 0.1
    CHECK(legendre(-0.1, walls) - legendre(0.1, walls) ==
          doctest::Approx(0.05).epsilon(1e-10));

    SUBCASE("equilibrium curve is even") {
        const auto eq = rate_curve(js, WallParams(1.0, 1.0));
        for (std::size_t i = 0; i < js.size(); ++i) {
            CHECK(eq.samples[i].value ==
                  doctest::Approx(eq.samples[js.size() - 1 - i].value).epsilon(1e-8));
        }
    }
    SUBCASE("asymmetric grids are rejected") {
        const auto bad = rate_curve({-0.1, 0.3}, walls);
        CHECK_THROWS_AS(gc_symmetry_check(bad), value_error);
    }
}

TEST_CASE("rate function is strictly convex outside the affine part") {
    const WallParams walls(0.5, 1.0);
    const double jstar = j_star(walls);
    for (double j : {1.4 * jstar, 2.0 * jstar, -1.6 * jstar}) {
        const double h = 0.05 * jstar;
        const double second = legendre(j - h, walls) - 2.0 * legendre(j, walls) +
                              legendre(j + h, walls);
        CHECK(second > 0.0);
    }
}

TEST_CASE("limit_H closed form") {
    SUBCASE("figure convention kappa=tau=T^2=1") {
        CHECK(limit_H_free(0.0, 1.0, 1.0, 1.0) == 0.0);
        CHECK(limit_H_free(-1.0, 1.0, 1.0, 1.0) == 0.0);
        CHECK(limit_H_free(-0.5, 1.0, 1.0, 1.0) == 0.0);
        CHECK(limit_H_free(1.0, 1.0, 1.0, 1.0) == doctest::Approx(2.0));
    }
    SUBCASE("physical kappa and seams") {
        const double tau = 1.0, T = 1.0;
        const double k = scaling_kappa(T);
        CHECK(limit_H(1.0, tau, T) == doctest::Approx(2.0 * k).epsilon(1e-14));
        // continuity at both seams
        for (double seam : {0.0, -tau / (T * T)}) {
            const double below = limit_H(seam - 1e-9, tau, T);
            const double above = limit_H(seam + 1e-9, tau, T);
            CHECK(std::abs(below - above) <= 1e-8);
        }
        // tau = 0 reduces to the pure parabola
        CHECK(limit_H(0.7, 0.0, 2.0) ==
              doctest::Approx(scaling_kappa(2.0) * 4.0 * 0.49).epsilon(1e-14));
    }
    SUBCASE("gc symmetry about -tau/T^2") {
        const double tau = 0.8, T = 1.3;
        const double w = -tau / (T * T);
        for (double l : {0.3, 1.1, -2.0}) {
            CHECK(limit_H(l, tau, T) == doctest::Approx(limit_H(w - l, tau, T)).epsilon(1e-12));
        }
    }
    SUBCASE("one-sided slopes at 0 are 0 and kappa*tau") {
        const double tau = 1.0, T = 1.0, h = 1e-7;
        CHECK((limit_H(h, tau, T) - limit_H(0.0, tau, T)) / h ==
              doctest::Approx(scaling_kappa(T) * tau).epsilon(1e-5));
        CHECK((limit_H(0.0, tau, T) - limit_H(-h, tau, T)) / h ==
              doctest::Approx(0.0).epsilon(1e-5));
    }
}

TEST_CASE("limit_G closed form") {
    const double tau = 1.0, T = 1.0;
    const double k = scaling_kappa(T);
    CHECK(limit_G(k * tau, tau, T) == 0.0);
    CHECK(limit_G(0.0, tau, T) == 0.0);
    // seam continuity at all three seams
    for (double seam : {k * tau, 0.0, -k * tau}) {
        CHECK(std::abs(limit_G(seam - 1e-9, tau, T) - limit_G(seam + 1e-9, tau, T)) <=
              1e-8);
    }
    // scaled GC symmetry: G(j) - G(-j) = -j tau / T^2
    for (double j : {0.1, 0.5, 1.7}) {
        CHECK(limit_G(j, tau, T) - limit_G(-j, tau, T) ==
              doctest::Approx(-j * tau / (T * T)).epsilon(1e-10));
    }
    // convexity (midpoint) on a grid
    for (double j = -2.0; j <= 2.0; j += 0.25) {
        const double mid = limit_G(j + 0.125, tau, T);
        CHECK(mid <= 0.5 * (limit_G(j, tau, T) + limit_G(j + 0.25, tau, T)) + 1e-12);
    }
    CHECK(limit_G(0.7, 0.0, 1.0) ==
          doctest::Approx(0.49 / (4.0 * scaling_kappa(1.0))).epsilon(1e-14));
}

TEST_CASE("limit_G is the Legendre transform of limit_H") {
    const double tau = 1.0, T = 1.0;
    const double k = scaling_kappa(T);
    for (double j = -2.0; j <= 2.0; j += 0.2) {
        // numerical conjugate over a box that surely contains the maximizer
        const double box = (std::abs(j) + k * tau) / (2.0 * k * T * T) + 2.0;
        const auto best = golden_max(
            [&](double l) { return l * j - limit_H(l, tau, T); }, -box, box, 1e-10);
        CHECK(best.max == doctest::Approx(limit_G(j, tau, T)).epsilon(1e-6));
    }
}

TEST_CASE("branch evaluators agree at the seams") {
    const double k = 1.0, tau = 1.0, T = 1.0;
    CHECK(limit_G_branch(RateRegion::flat, k * tau, k, tau, T) ==
          doctest::Approx(limit_G_branch(RateRegion::quadratic_right, k * tau, k, tau, T))
              .epsilon(1e-14));
    CHECK(limit_G_branch(RateRegion::linear, -k * tau, k, tau, T) ==
          doctest::Approx(limit_G_branch(RateRegion::quadratic_left, -k * tau, k, tau, T))
              .epsilon(1e-14));
    CHECK(limit_H_branch(RateRegion::flat, -tau, k, tau, T) ==
          doctest::Approx(limit_H_branch(RateRegion::quadratic_left, -tau, k, tau, T))
              .epsilon(1e-14));
}

TEST_CASE("figure curves duplicate seams consistently") {
    const auto g = figure_G_curve(-3.0, 3.0, 121);
    int seam_pairs = 0;
    for (std::size_t i = 1; i < g.size(); ++i) {
        if (g[i].x == g[i - 1].x) {
            ++seam_pairs;
            CHECK(std::abs(g[i].value - g[i - 1].value) <= 1e-12);
            CHECK(g[i].region != g[i - 1].region);
        }
    }
    CHECK(seam_pairs == 3);
    const auto h = figure_H_curve(-3.0, 2.0, 121);
    seam_pairs = 0;
    for (std::size_t i = 1; i < h.size(); ++i) {
        if (h[i].x == h[i - 1].x) {
            ++seam_pairs;
            CHECK(std::abs(h[i].value - h[i - 1].value) <= 1e-12);
        }
    }
    CHECK(seam_pairs == 2);
}

TEST_CASE("scaled flat window is epsilon-invariant") {
    // lambda in [-tau/T^2, 0] stays in the flat region for every epsilon
    const double tau = 1.0, T = 1.0;
    for (double eps : {0.1, 0.05}) {
        const WallParams walls = ScaledParams(T, tau, eps).wall_params();
        for (double l : {-0.9, -0.5, -0.1}) {
            CHECK(solve_cgf(eps * l, walls).value() == 0.0);
        }
    }
}

TEST_CASE("scaling convergence report") {
    std::vector<double> lambdas, js;
    for (int i = 0; i <= 16; ++i) {
        lambdas.push_back(-1.0 + 2.0 * i / 16.0);
        js.push_back(-1.0 + 2.0 * i / 16.0);
    }
    const auto report =
        scaling_convergence(lambdas, js, 1.0, 1.0, {0.1, 0.05, 0.025});
    REQUIRE(report.rows.size() == 3);
    CHECK(report.monotone);
    CHECK(report.rows[1].gap_cgf < report.rows[0].gap_cgf);
    CHECK(report.rows[1].gap_rate < report.rows[0].gap_rate);
    // on |lambda| <= 1 the eps = 0.025 gaps are already small
    CHECK(report.final_gap_cgf < 3e-3);
    CHECK(report.final_gap_rate < 3e-3);

    CHECK_THROWS_AS(scaling_convergence(lambdas, js, 1.0, 1.0, {0.05, 0.1}),
                    value_error);
    CHECK_THROWS_AS(scaling_convergence(lambdas, js, 1.0, 0.01, {30.0}), value_error);
}

TEST_CASE("scaling limits under a sign-flipped gradient") {
    // H(lambda, -tau, T) = H(-lambda, tau, T) and likewise for G
    for (double x : {-1.5, -0.3, 0.2, 1.0}) {
        CHECK(limit_H(x, -1.0, 1.2) ==
              doctest::Approx(limit_H(-x, 1.0, 1.2)).epsilon(1e-13));
        CHECK(limit_G(x, -1.0, 1.2) ==
              doctest::Approx(limit_G(-x, 1.0, 1.2)).epsilon(1e-13));
    }
    // the solver route agrees for tau < 0 (wall-swapped parameters inside):
    // the gaps mirror the tau > 0 ones exactly
    std::vector<double> grid;
    for (int i = 0; i <= 8; ++i) {
        grid.push_back(-1.0 + 2.0 * i / 8.0);
    }
    const auto neg = scaling_convergence(grid, grid, -1.0, 1.0, {0.05});
    const auto pos = scaling_convergence(grid, grid, 1.0, 1.0, {0.05});
    CHECK(neg.final_gap_cgf == doctest::Approx(pos.final_gap_cgf).epsilon(1e-9));
    CHECK(neg.final_gap_rate == doctest::Approx(pos.final_gap_rate).epsilon(1e-9));
    CHECK(neg.final_gap_cgf < 1e-2);
}

TEST_CASE("scaling convergence at zero gradient") {
    // tau = 0: eps^-2 F(eps lambda, 0, 1) approaches kappa lambda^2 T^2
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) {
        grid.push_back(-1.0 + 2.0 * i / 10.0);
    }
    const auto report = scaling_convergence(grid, grid, 0.0, 1.0, {0.05});
    // measured gaps ~1.6e-3 and ~3.8e-3 at eps = 0.05
    CHECK(report.final_gap_cgf < 5e-3);
    CHECK(report.final_gap_rate < 1e-2);
}
