#include <doctest.h>

#include <cmath>
#include <vector>

#include "tracer/error.hpp"
#include "tracer/params.hpp"
#include "tracer/rng.hpp"
#include "tracer/sim.hpp"
#include "tracer/stats.hpp"

using namespace tracer;

TEST_CASE("neumaier summation recovers what naive summation drops") {
    KahanSum acc;
    double naive = 0.0;
    acc.add(1e16);
    naive += 1e16;
    for (int i = 0; i < 100; ++i) {
        acc.add(1.0);
        naive += 1.0;
    }
    acc.add(-1e16);
    naive += -1e16;
    CHECK(acc.value() == 100.0);
    CHECK(naive != 100.0);
}

TEST_CASE("neumaier summation tracks an extended-precision reference") {
    CounterRng rng(21, 0);
    KahanSum acc;
    long double ref = 0.0L;
    for (int i = 0; i < 200000; ++i) {
        const double x =
            (rng.uniform01() - 0.5) * std::exp(30.0 * rng.uniform01() - 15.0);
        acc.add(x);
        ref += static_cast<long double>(x);
    }
    CHECK(acc.value() ==
          doctest::Approx(static_cast<double>(ref)).epsilon(1e-13));
}

TEST_CASE("running stats against closed forms") {
    RunningStats s;
    for (double x : {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0}) {
        s.push(x);
    }
    CHECK(s.mean == doctest::Approx(5.0));
    CHECK(s.variance() == doctest::Approx(32.0 / 7.0));
}

TEST_CASE("kolmogorov distribution quantiles") {
    // classic critical values of the asymptotic KS distribution
    CHECK(ks_p_value(1.3581 / std::sqrt(1e6), 1000000) ==
          doctest::Approx(0.05).epsilon(2e-3));
    CHECK(ks_p_value(1.6276 / std::sqrt(1e6), 1000000) ==
          doctest::Approx(0.01).epsilon(2e-3));
    CHECK(ks_p_value(0.5 / std::sqrt(1e6), 1000000) > 0.95);
}

TEST_CASE("ks test rejects a shifted law and accepts the true one") {
    std::vector<double> unif;
    for (int i = 0; i < 5000; ++i) {
        unif.push_back((i + 0.5) / 5000.0);
    }
    const auto good = ks_test(unif, [](double x) { return x; });
    CHECK(good.p_value > 0.9);
    const auto bad = ks_test(unif, [](double x) { return x * x; });
    CHECK(bad.p_value < 1e-6);
    CHECK_THROWS_AS(ks_test({}, [](double x) { return x; }), value_error);
}

TEST_CASE("speeds_at_times matches the collision-log reconstruction") {
    const SimConfig config(WallParams(0.5, 1.0), 400.0, 2718);
    std::vector<CollisionRecord> log;
    simulate_with_log(config, log);
    REQUIRE(log.size() > 10);

    std::vector<double> times;
    for (int i = 1; i <= 37; ++i) {
        times.push_back(log[2].time + (400.0 - log[2].time) * i / 38.0);
    }
    const auto speeds = speeds_at_times(config, times, 0);
    REQUIRE(speeds.size() == times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        // flight k spans [S_{k-1}, S_k) and moves at the speed drawn at S_{k-1}
        double expected = 0.0;
        for (std::size_t k = 1; k < log.size(); ++k) {
            if (times[i] >= log[k - 1].time && times[i] < log[k].time) {
                expected = log[k].speed;
                break;
            }
        }
        if (times[i] >= log.back().time) {
            continue;  // last partial flight's speed is not in the log
        }
        CHECK(speeds[i] == expected);
    }
}
