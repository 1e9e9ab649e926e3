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

#include <cstdint>
#include <optional>
#include <vector>

#include "tracer/params.hpp"
#include "tracer/rng.hpp"

namespace tracer {

/// Initial phase-space point (q0 in [0,1], p0 != 0).
struct InitialState {
    double q0;
    double p0;
};

struct SimConfig {
    WallParams params;
    double horizon;                          ///< t > 0
    std::uint64_t seed = 0;
    /// When unset, q0 = 0 and p0 > 0 is drawn from the left-wall speed law
    /// as the replica's first variate.
    std::optional<InitialState> initial_state{};

    SimConfig(const WallParams& p, double t, std::uint64_t s = 0,
              std::optional<InitialState> init = std::nullopt);
};

/// One wall collision: time S_k, sign sigma_k of the incoming velocity,
/// speed v_k > 0. k starts at 1; the initial flight is not a collision.
struct CollisionRecord {
    std::uint64_t k;
    double time;
    int sign;
    double speed;
};

struct CurrentStats {
    double t = 0.0;            ///< horizon
    double current = 0.0;      ///< J[0,t] = 1/2 sum_{S_k <= t} v_k^2 sigma_k
    std::uint64_t collisions = 0;  ///< N_t
};

/// Inverse-CDF sample of the wall speed law phi_beta(v) = beta v e^{-beta v^2/2}:
/// v = sqrt(-2 ln(u) / beta). Exact, no rejection. u must lie strictly in (0,1).
double sample_speed(double beta, double u);

/// Event-driven simulation of one trajectory up to the horizon. Streaming:
/// O(1) memory in the number of collisions. A collision at exactly t counts.
CurrentStats simulate(const SimConfig& config);

/// Same trajectory, also collecting the collision log. If the log exceeds
/// max_records it behaves as a ring buffer keeping the most recent records.
CurrentStats simulate_with_log(const SimConfig& config, std::vector<CollisionRecord>& log,
                               std::size_t max_records = static_cast<std::size_t>(-1));

/// Per-replica current statistics plus the derived ensemble aggregates.
struct EnsembleResult {
    double horizon = 0.0;
    std::vector<CurrentStats> replicas;

    double mean_current_rate() const;     ///< mean of J/t
    double var_current_rate() const;      ///< sample variance of J/t
    double stderr_current_rate() const;
    double var_current_per_time() const;  ///< Var(J)/t across replicas
    double mean_collision_rate() const;   ///< mean of N_t/t
    double var_collision_rate() const;
    double stderr_collision_rate() const;
};

/// Independent replicas with per-replica substreams (seed, replica index).
/// Bit-identical output for a fixed (seed, replicas) at any parallelism.
EnsembleResult run_ensemble(const SimConfig& config, std::size_t replicas,
                            unsigned parallelism = 0);

struct RenewalRateReport {
    double mean_rate = 0.0;      ///< mean of N_t/t over replicas
    double var_rate = 0.0;
    double stderr_rate = 0.0;
    double expected_rate = 0.0;  ///< 1/mu(beta)
    double deviation_sigmas = 0.0;
    bool pass = false;           ///< |mean - 1/mu| <= 4 standard errors
};

/// Equilibrium check that N_t/t concentrates at 1/mu(beta).
RenewalRateReport renewal_rate_check(const EnsembleResult& result, double beta);

struct SpeedLawReport {
    std::size_t samples = 0;
    double statistic = 0.0;
    double p_value = 0.0;
    bool pass = false;  ///< p >= 0.01
};

/// Samples |p_t| at the given times across replicas and KS-tests against
/// the half-Gaussian density sqrt(2 beta / pi) e^{-beta p^2/2}.
/// Preconditions: equilibrium walls, every sample time >= 10*mu, and at
/// least 1e3 total samples; violations are refused with a diagnostic.
SpeedLawReport stationary_speed_test(const SimConfig& config,
                                     const std::vector<double>& sample_times,
                                     std::size_t replicas, unsigned parallelism = 0);

/// Speeds |p_t| of one replica at the given (sorted) times; exposed for the
/// stationary-law test and its counterexamples.
std::vector<double> speeds_at_times(const SimConfig& config,
                                    const std::vector<double>& sorted_times,
                                    std::uint64_t stream);

} // namespace tracer
