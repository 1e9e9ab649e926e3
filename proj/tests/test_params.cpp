#include <doctest.h>

#include <cmath>

#include "tracer/error.hpp"
#include "tracer/params.hpp"
#include "tracer/rng.hpp"

using namespace tracer;

TEST_CASE("wall params validate eagerly") {
    CHECK_THROWS_AS(WallParams(0.0, 1.0), value_error);
    CHECK_THROWS_AS(WallParams(1.0, -2.0), value_error);
    CHECK_THROWS_AS(WallParams(1.0, std::nan("")), value_error);
    const WallParams w(0.5, 1.0);
    CHECK(w.temp_left() == doctest::Approx(2.0));
    CHECK(w.temp_right() == doctest::Approx(1.0));
}

TEST_CASE("conductivity closed form") {
    // direct evaluation of 1/kappa = sqrt(pi bL/2) + sqrt(pi bR/2)
    CHECK(conductivity(WallParams(1.0, 1.0)) ==
          doctest::Approx(0.3989422804014327).epsilon(1e-12));
    CHECK(conductivity(WallParams(0.5, 1.0)) ==
          doctest::Approx(0.4673899545102183).epsilon(1e-12));
    // symmetric in the walls
    CHECK(conductivity(WallParams(0.5, 1.0)) ==
          conductivity(WallParams(1.0, 0.5)));
    // equal temperatures match the scaling-limit constant sqrt(T/2pi)
    for (double T : {0.3, 1.0, 2.5}) {
        CHECK(conductivity(WallParams(1.0 / T, 1.0 / T)) ==
              doctest::Approx(scaling_kappa(T)).epsilon(1e-14));
    }
}

TEST_CASE("mean gap") {
    CHECK(mean_gap(1.0) == doctest::Approx(1.2533141373155003).epsilon(1e-14));
    CHECK(mean_gap(2.0) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    // mu scales as sqrt(beta)
    CHECK(mean_gap(4.0) == doctest::Approx(2.0 * mean_gap(1.0)).epsilon(1e-14));
    CHECK(mean_gap(0.7) * (1.0 / mean_gap(0.7)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(mean_gap(0.0), value_error);
}

TEST_CASE("green-kubo closed form and identity") {
    CHECK(green_kubo_variance(1.0) ==
          doctest::Approx(1.5957691216057308).epsilon(1e-12));
    // 4 kappa T^2 == (2/beta^2) sqrt(2/(beta pi)) for random temperatures
    CounterRng rng(99);
    for (int i = 0; i < 10; ++i) {
        const double T = 0.2 + 3.0 * rng.uniform01();
        const double beta = 1.0 / T;
        const double alt = 2.0 / (beta * beta) * std::sqrt(2.0 / (beta * M_PI));
        CHECK(green_kubo_variance(T) == doctest::Approx(alt).epsilon(1e-13));
        CHECK(green_kubo_variance(T) ==
              doctest::Approx(4.0 * conductivity(WallParams(beta, beta)) * T * T)
                  .epsilon(1e-14));
    }
}

TEST_CASE("j_star sign and antisymmetry") {
    CHECK(j_star(WallParams(1.0, 1.0)) == 0.0);
    const WallParams w(0.5, 1.0);
    CHECK(j_star(w) == doctest::Approx(0.4673899545102183).epsilon(1e-12));
    CHECK(j_star(w.swapped()) == doctest::Approx(-j_star(w)).epsilon(1e-14));
}

TEST_CASE("scaled params conversion") {
    const ScaledParams sp(1.0, 1.0, 0.1);
    const WallParams w = sp.wall_params();
    CHECK(w.beta_left == doctest::Approx(1.0 / 1.05).epsilon(1e-15));
    CHECK(w.beta_right == doctest::Approx(1.0 / 0.95).epsilon(1e-15));
    CHECK_THROWS_AS(ScaledParams(1.0, 3.0, 1.0), value_error);   // |tau|/2 >= T
    CHECK_THROWS_AS(ScaledParams(-1.0, 0.0, 1.0), value_error);
}
