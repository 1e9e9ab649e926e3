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

#include "tracer/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "tracer/error.hpp"
#include "tracer/stats.hpp"

namespace tracer {

namespace {

unsigned effective_threads(unsigned requested, std::size_t jobs) {
    unsigned n = requested == 0 ? std::thread::hardware_concurrency() : requested;
    if (n == 0) {
        n = 1;
    }
    return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

// Runs fn(replica) for replica in [0, count) on a deterministic partition.
template <typename Fn>
void parallel_for(std::size_t count, unsigned parallelism, Fn&& fn) {
    const unsigned workers = effective_threads(parallelism, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                fn(i);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
}

} // namespace

SimConfig::SimConfig(const WallParams& p, double t, std::uint64_t s,
                     std::optional<InitialState> init)
    : params(p), horizon(t), seed(s), initial_state(init) {
    if (!(std::isfinite(horizon) && horizon > 0.0)) {
        throw value_error("SimConfig: horizon must be finite and > 0");
    }
    if (initial_state) {
        if (!(initial_state->q0 >= 0.0 && initial_state->q0 <= 1.0) ||
            !std::isfinite(initial_state->q0)) {
            throw value_error("SimConfig: q0 must lie in [0,1]");
        }
        if (!(std::isfinite(initial_state->p0)) || initial_state->p0 == 0.0) {
            throw value_error("SimConfig: p0 must be finite and nonzero");
        }
    }
}

double sample_speed(double beta, double u) {
    if (!(std::isfinite(beta) && beta > 0.0)) {
        throw value_error("sample_speed: beta must be finite and > 0");
    }
    if (!(u > 0.0 && u < 1.0)) {
        throw value_error("sample_speed: u must lie strictly in (0,1), got " +
                          std::to_string(u));
    }
    return std::sqrt(-2.0 * std::log(u) / beta);
}

namespace {

struct TrajectoryState {
    double first_collision;  ///< S_0
    int first_wall;          ///< sigma_0 (wall index hit at S_0)
    double initial_speed;    ///< |p_0|
};

TrajectoryState start_trajectory(const SimConfig& config, CounterRng& rng) {
    double q0 = 0.0;
    double p0;
    if (config.initial_state) {
        q0 = config.initial_state->q0;
        p0 = config.initial_state->p0;
    } else {
        p0 = sample_speed(config.params.beta_left, rng.uniform01());
    }
    const int sigma0 = p0 > 0.0 ? 1 : -1;
    const double sigma0_hat = sigma0 > 0 ? 1.0 : 0.0;
    return {(sigma0_hat - q0) / p0, sigma0, std::abs(p0)};
}

// Core event loop. visit(k, S_k, sigma_k, v_k) is called for every
// collision with S_k <= horizon; flight(speed, from, until) for every
// flight segment inside [0, horizon] when track_flights is set.
template <bool track_flights, typename Visit, typename Flight>
CurrentStats run_events(const SimConfig& config, CounterRng& rng, Visit&& visit,
                        Flight&& flight) {
    const auto st = start_trajectory(config, rng);
    CurrentStats out;
    out.t = config.horizon;

    if constexpr (track_flights) {
        flight(st.initial_speed, 0.0, std::min(st.first_collision, config.horizon));
    }
    if (st.first_collision > config.horizon) {
        return out;
    }

    KahanSum current;
    double time = st.first_collision;
    int wall = st.first_wall;  // sigma_{k-1}: wall the particle sits at
    std::uint64_t k = 0;
    while (true) {
        const double beta =
            wall < 0 ? config.params.beta_left : config.params.beta_right;
        const double v = sample_speed(beta, rng.uniform01());
        const int sign = -wall;  // sigma_k alternates
        const double next_time = time + 1.0 / v;
        ++k;
        if constexpr (track_flights) {
            flight(v, time, std::min(next_time, config.horizon));
        }
        if (next_time > config.horizon) {
            break;
        }
        time = next_time;
        current.add(0.5 * v * v * static_cast<double>(sign));
        ++out.collisions;
        visit(k, time, sign, v);
        wall = sign;
    }
    out.current = current.value();
    return out;
}

} // namespace

CurrentStats simulate(const SimConfig& config) {
    CounterRng rng(config.seed, 0);
    return run_events<false>(
        config, rng, [](std::uint64_t, double, int, double) {},
        [](double, double, double) {});
}

CurrentStats simulate_with_log(const SimConfig& config, std::vector<CollisionRecord>& log,
                               std::size_t max_records) {
    log.clear();
    if (max_records == 0) {
        throw value_error("simulate_with_log: max_records must be positive");
    }
    CounterRng rng(config.seed, 0);
    std::size_t head = 0;
    bool wrapped = false;
    auto visit = [&](std::uint64_t k, double time, int sign, double speed) {
        const CollisionRecord rec{k, time, sign, speed};
        if (log.size() < max_records) {
            log.push_back(rec);
        } else {
            log[head] = rec;
            head = (head + 1) % max_records;
            wrapped = true;
        }
    };
    const auto stats =
        run_events<false>(config, rng, visit, [](double, double, double) {});
    if (wrapped) {
        std::rotate(log.begin(), log.begin() + static_cast<std::ptrdiff_t>(head),
                    log.end());
    }
    return stats;
}

double EnsembleResult::mean_current_rate() const {
    RunningStats s;
    for (const auto& r : replicas) {
        s.push(r.current / r.t);
    }
    return s.mean;
}

double EnsembleResult::var_current_rate() const {
    RunningStats s;
    for (const auto& r : replicas) {
        s.push(r.current / r.t);
    }
    return s.variance();
}

double EnsembleResult::stderr_current_rate() const {
    RunningStats s;
    for (const auto& r : replicas) {
        s.push(r.current / r.t);
    }
    return s.stderr_of_mean();
}

double EnsembleResult::var_current_per_time() const {
    RunningStats s;
    for (const auto& r : replicas) {
        s.push(r.current);
    }
    return s.variance() / horizon;
}

double EnsembleResult::mean_collision_rate() const {
    RunningStats s;
    for (const auto& r : replicas) {
        s.push(static_cast<double>(r.collisions) / r.t);
    }
    return s.mean;
}

double EnsembleResult::var_collision_rate() const {
    RunningStats s;
    for (const auto& r : replicas) {
        s.push(static_cast<double>(r.collisions) / r.t);
    }
    return s.variance();
}

double EnsembleResult::stderr_collision_rate() const {
    RunningStats s;
    for (const auto& r : replicas) {
        s.push(static_cast<double>(r.collisions) / r.t);
    }
    return s.stderr_of_mean();
}

EnsembleResult run_ensemble(const SimConfig& config, std::size_t replicas,
                            unsigned parallelism) {
    if (replicas < 1) {
        throw value_error("run_ensemble: need at least one replica");
    }
    EnsembleResult result;
    result.horizon = config.horizon;
    result.replicas.resize(replicas);
    parallel_for(replicas, parallelism, [&](std::size_t r) {
        CounterRng rng(config.seed, r);
        result.replicas[r] = run_events<false>(
            config, rng, [](std::uint64_t, double, int, double) {},
            [](double, double, double) {});
    });
    return result;
}

RenewalRateReport renewal_rate_check(const EnsembleResult& result, double beta) {
    RenewalRateReport report;
    report.expected_rate = 1.0 / mean_gap(beta);
    report.mean_rate = result.mean_collision_rate();
    report.var_rate = result.var_collision_rate();
    report.stderr_rate = result.stderr_collision_rate();
    const double dev = std::abs(report.mean_rate - report.expected_rate);
    report.deviation_sigmas =
        report.stderr_rate > 0.0 ? dev / report.stderr_rate
                                 : (dev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    report.pass = report.deviation_sigmas <= 4.0;
    return report;
}

std::vector<double> speeds_at_times(const SimConfig& config,
                                    const std::vector<double>& sorted_times,
                                    std::uint64_t stream) {
    CounterRng rng(config.seed, stream);
    std::vector<double> speeds;
    speeds.reserve(sorted_times.size());
    std::size_t next = 0;
    const double horizon = config.horizon;
    auto flight = [&](double speed, double from, double until) {
        // flights are right-open except at the horizon, which belongs to
        // the flight in progress there
        while (next < sorted_times.size() && sorted_times[next] >= from &&
               (sorted_times[next] < until ||
                (until == horizon && sorted_times[next] == horizon))) {
            speeds.push_back(speed);
            ++next;
        }
    };
    run_events<true>(
        config, rng, [](std::uint64_t, double, int, double) {}, flight);
    return speeds;
}

SpeedLawReport stationary_speed_test(const SimConfig& config,
                                     const std::vector<double>& sample_times,
                                     std::size_t replicas, unsigned parallelism) {
    if (config.params.beta_left != config.params.beta_right) {
        throw value_error("stationary_speed_test: requires an equilibrium configuration");
    }
    const double beta = config.params.beta_left;
    const double mu = mean_gap(beta);
    if (sample_times.empty() || replicas < 1) {
        throw value_error("stationary_speed_test: need sample times and replicas");
    }
    for (double s : sample_times) {
        if (!(s >= 10.0 * mu && s <= config.horizon)) {
            throw value_error("stationary_speed_test: sample times must lie in "
                              "[10*mu, horizon] to be well inside stationarity");
        }
    }
    if (sample_times.size() * replicas < 1000) {
        throw value_error("stationary_speed_test: fewer than 1e3 samples would make the "
                          "KS test uninformative; increase replicas or times");
    }

    std::vector<double> times = sample_times;
    std::sort(times.begin(), times.end());
    std::vector<std::vector<double>> per_replica(replicas);
    parallel_for(replicas, parallelism, [&](std::size_t r) {
        per_replica[r] = speeds_at_times(config, times, r);
    });
    std::vector<double> all;
    all.reserve(replicas * times.size());
    for (const auto& v : per_replica) {
        all.insert(all.end(), v.begin(), v.end());
    }

    const auto ks = ks_test(all, [beta](double p) { return std::erf(p * std::sqrt(beta / 2.0)); });
    SpeedLawReport report;
    report.samples = ks.n;
    report.statistic = ks.statistic;
    report.p_value = ks.p_value;
    report.pass = ks.p_value >= 0.01;
    return report;
}

} // namespace tracer
