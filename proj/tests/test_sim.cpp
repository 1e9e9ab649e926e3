#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tracer/error.hpp"
#include "tracer/params.hpp"
#include "tracer/rng.hpp"
#include "tracer/sim.hpp"
#include "tracer/stats.hpp"

using namespace tracer;

TEST_CASE("sample_speed inverse CDF") {
    // beta v^2/2 = 1/2 at u = e^{-1/2}
    CHECK(sample_speed(1.0, std::exp(-0.5)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(sample_speed(1.0, 0.0), value_error);
    CHECK_THROWS_AS(sample_speed(1.0, 1.0), value_error);
    CHECK_THROWS_AS(sample_speed(0.0, 0.5), value_error);
}

TEST_CASE("sample_speed moments") {
    CounterRng rng(5, 0);
    RunningStats v1, v4;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        const double v = sample_speed(1.0, rng.uniform01());
        v1.push(v);
        v4.push(v * v * v * v);
    }
    // E v = sqrt(pi/2), E v^4 = 8/beta^2; three standard errors
    CHECK(std::abs(v1.mean - std::sqrt(M_PI / 2.0)) <= 3.0 * v1.stderr_of_mean());
    CHECK(std::abs(v4.mean - 8.0) <= 3.0 * v4.stderr_of_mean());
}

TEST_CASE("no collision before the horizon when S0 exceeds it") {
    const SimConfig config(WallParams(1.0, 1.0), 0.5, 1,
                           InitialState{0.0, 0.5});  // S0 = 2
    const auto stats = simulate(config);
    CHECK(stats.collisions == 0);
    CHECK(stats.current == 0.0);
}

TEST_CASE("sim config validates its state eagerly") {
    const WallParams w(1.0, 1.0);
    CHECK_THROWS_AS(SimConfig(w, 0.0, 1), value_error);
    CHECK_THROWS_AS(SimConfig(w, -1.0, 1), value_error);
    CHECK_THROWS_AS(SimConfig(w, 1.0, 1, InitialState{1.5, 1.0}), value_error);
    CHECK_THROWS_AS(SimConfig(w, 1.0, 1, InitialState{0.5, 0.0}), value_error);
}

TEST_CASE("collision log invariants and current recomputation") {
    const SimConfig config(WallParams(0.5, 1.0), 500.0, 42);
    std::vector<CollisionRecord> log;
    const auto stats = simulate_with_log(config, log);
    REQUIRE(log.size() == stats.collisions);
    KahanSum recomputed;
    for (std::size_t i = 0; i < log.size(); ++i) {
        CHECK(log[i].k == i + 1);
        CHECK(log[i].speed > 0.0);
        if (i > 0) {
            CHECK(log[i].time > log[i - 1].time);         // strictly increasing
            CHECK(log[i].sign == -log[i - 1].sign);       // alternating walls
        }
        CHECK(log[i].time <= config.horizon);
        recomputed.add(0.5 * log[i].speed * log[i].speed * log[i].sign);
    }
    CHECK(recomputed.value() == stats.current);  // exact, same summation order
}

TEST_CASE("collision log ring buffer keeps the tail") {
    const SimConfig config(WallParams(1.0, 1.0), 200.0, 3);
    std::vector<CollisionRecord> full, tail;
    const auto s1 = simulate_with_log(config, full);
    const auto s2 = simulate_with_log(config, tail, 16);
    CHECK(s1.collisions == s2.collisions);
    REQUIRE(full.size() > 16);
    REQUIRE(tail.size() == 16);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(tail[i].k == full[full.size() - 16 + i].k);
        CHECK(tail[i].time == full[full.size() - 16 + i].time);
    }
}

TEST_CASE("wall-swap mirror negates the current path by path") {
    // swapped walls with the mirrored start replay the same speed stream
    const std::uint64_t seed = 777;
    const InitialState init{0.25, 1.3};
    const SimConfig config(WallParams(0.5, 1.0), 300.0, seed, init);
    const SimConfig mirrored(WallParams(1.0, 0.5), 300.0, seed,
                             InitialState{1.0 - init.q0, -init.p0});
    const auto a = simulate(config);
    const auto b = simulate(mirrored);
    CHECK(a.collisions == b.collisions);
    CHECK(a.current == -b.current);  // bit-exact
}

TEST_CASE("ensemble determinism across thread counts") {
    const SimConfig config(WallParams(0.5, 1.0), 200.0, 2024);
    const auto serial = run_ensemble(config, 32, 1);
    const auto parallel = run_ensemble(config, 32, 8);
    REQUIRE(serial.replicas.size() == parallel.replicas.size());
    for (std::size_t i = 0; i < serial.replicas.size(); ++i) {
        CHECK(serial.replicas[i].current == parallel.replicas[i].current);
        CHECK(serial.replicas[i].collisions == parallel.replicas[i].collisions);
    }
    // replica 0 is exactly simulate(config)
    const auto single = simulate(config);
    CHECK(single.current == serial.replicas[0].current);
}

TEST_CASE("equilibrium mean current vanishes") {
    const SimConfig config(WallParams(1.0, 1.0), 2000.0, 11);
    const auto ens = run_ensemble(config, 400);
    CHECK(std::abs(ens.mean_current_rate()) <= 3.0 * ens.stderr_current_rate());
}

TEST_CASE("non-equilibrium mean current approaches j*") {
    const WallParams walls(0.5, 1.0);
    const SimConfig config(walls, 5000.0, 12);
    const auto ens = run_ensemble(config, 300);
    CHECK(ens.mean_current_rate() ==
          doctest::Approx(j_star(walls)).epsilon(0.02));
}

TEST_CASE("equilibrium variance rate matches the CGF curvature") {
    // Var(J)/t -> f''(0) = 1/(beta^2 mu) = 2 kappa T^2; the independent
    // oracle here is the closed form, the estimate is pure simulation.
    const SimConfig config(WallParams(1.0, 1.0), 5000.0, 13);
    const auto ens = run_ensemble(config, 2000);
    const double expected = 1.0 / mean_gap(1.0);
    CHECK(ens.var_current_per_time() == doctest::Approx(expected).epsilon(0.12));
}

TEST_CASE("renewal rate check") {
    const SimConfig config(WallParams(1.0, 1.0), 10000.0, 21);
    const auto ens = run_ensemble(config, 200);
    const auto report = renewal_rate_check(ens, 1.0);
    CHECK(report.pass);
    CHECK(report.mean_rate == doctest::Approx(1.0 / mean_gap(1.0)).epsilon(0.01));
}

TEST_CASE("degenerate horizon sees no collision for almost every start") {
    std::size_t collisions = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const SimConfig config(WallParams(1.0, 1.0), 1e-9, s);
        collisions += simulate(config).collisions;
    }
    CHECK(collisions == 0);
}

TEST_CASE("variance of the collision rate decreases with the horizon") {
    const auto short_run = run_ensemble(SimConfig(WallParams(1.0, 1.0), 1e3, 31), 200);
    const auto long_run = run_ensemble(SimConfig(WallParams(1.0, 1.0), 1e5, 31), 200);
    CHECK(long_run.var_collision_rate() < short_run.var_collision_rate());
}

TEST_CASE("stationary speed test accepts the invariant law and rejects phi") {
    const WallParams walls(1.0, 1.0);
    const double t = 100.0 * mean_gap(1.0);
    const SimConfig config(walls, t, 99);

    SUBCASE("exact half-Gaussian samples pass") {
        CounterRng rng(4, 0);
        std::vector<double> samples;
        for (int i = 0; i < 10000; ++i) {
            // inverse CDF of the half-Gaussian via bisection on erf
            const double u = rng.uniform01();
            double lo = 0.0, hi = 8.0;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (std::erf(mid / std::sqrt(2.0)) < u ? lo : hi) = mid;
            }
            samples.push_back(0.5 * (lo + hi));
        }
        const auto ks = ks_test(samples, [](double p) {
            return std::erf(p / std::sqrt(2.0));
        });
        CHECK(ks.p_value >= 0.01);
    }

    SUBCASE("simulated process passes") {
        const auto report = stationary_speed_test(config, {t}, 10000);
        CHECK(report.samples == 10000);
        CHECK(report.pass);
    }

    SUBCASE("collision-weighted phi samples fail") {
        // speeds drawn from phi itself are speed-biased relative to the
        // time-stationary law and must be detected
        CounterRng rng(8, 0);
        std::vector<double> samples;
        for (int i = 0; i < 10000; ++i) {
            samples.push_back(sample_speed(1.0, rng.uniform01()));
        }
        const auto ks = ks_test(samples, [](double p) {
            return std::erf(p / std::sqrt(2.0));
        });
        CHECK(ks.p_value < 0.01);
    }

    SUBCASE("refuses undersized samples and early times") {
        CHECK_THROWS_AS(stationary_speed_test(config, {t}, 100), value_error);
        CHECK_THROWS_AS(stationary_speed_test(config, {1.0}, 10000), value_error);
        CHECK_THROWS_AS(
            stationary_speed_test(SimConfig(WallParams(0.5, 1.0), t, 1), {t}, 10000),
            value_error);
    }
}
