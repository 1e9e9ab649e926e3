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

#include "tracer/tilt.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "tracer/error.hpp"
#include "tracer/quadrature.hpp"
#include "tracer/rate.hpp"
#include "tracer/stats.hpp"

namespace tracer {

namespace {
constexpr double entropy_tolerance = 1e-2;
}

std::string to_string(TiltDirection direction) {
    return direction == TiltDirection::forward ? "forward" : "reversed";
}

std::string to_string(CertificateVerdict verdict) {
    switch (verdict) {
    case CertificateVerdict::pass: return "pass";
    case CertificateVerdict::fail: return "fail";
    case CertificateVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

const std::vector<double>& default_eps_ladder() {
    static const std::vector<double> ladder{0.1, 0.03, 0.01};
    return ladder;
}

const std::vector<double>& default_eta_ladder() {
    static const std::vector<double> ladder{0.3, 0.1, 0.03};
    return ladder;
}

TiltSpec::TiltSpec(double alpha_, double epsilon_, double eta_, TiltDirection direction_,
                   double target_j_)
    : target_j(target_j_), alpha(alpha_), epsilon(epsilon_), eta(eta_),
      direction(direction_) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw value_error("TiltSpec: alpha must lie in [0,1]");
    }
    if (!(std::isfinite(epsilon) && epsilon > 0.0)) {
        throw value_error("TiltSpec: epsilon must be > 0");
    }
    if (!(std::isfinite(eta) && eta > 0.0)) {
        throw value_error("TiltSpec: eta must be > 0");
    }
}

TiltSpec TiltSpec::from_target(double target_j, const WallParams& params, double epsilon,
                               double eta) {
    const double jstar = j_star(params);
    if (jstar == 0.0) {
        if (target_j != 0.0) {
            throw value_error("TiltSpec: equilibrium walls admit only target 0");
        }
        return TiltSpec(0.0, epsilon, eta, TiltDirection::forward, 0.0);
    }
    const double alpha = target_j / jstar;
    if (std::abs(alpha) > 1.0 + 1e-12) {
        throw value_error("TiltSpec: target must lie in [-j*, j*]");
    }
    const TiltDirection dir =
        alpha >= 0.0 ? TiltDirection::forward : TiltDirection::reversed;
    return TiltSpec(std::min(std::abs(alpha), 1.0), epsilon, eta, dir, target_j);
}

TiltedWallLaw::TiltedWallLaw(double beta, double alpha, double epsilon)
    : beta_(beta), alpha_(alpha), epsilon_(epsilon) {
    if (!(std::isfinite(beta) && beta > 0.0)) {
        throw value_error("TiltedWallLaw: beta must be > 0");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw value_error("TiltedWallLaw: alpha must lie in [0,1]");
    }
    mass_phi_inner_ = -std::expm1(-beta * epsilon * epsilon / 2.0);
    mass_gamma_inner_ = std::erf(epsilon * std::sqrt(beta / 2.0));
    if (!(epsilon > 0.0) || mass_phi_inner_ <= 0.0 || mass_gamma_inner_ <= 0.0 ||
        mass_gamma_inner_ >= 1.0) {
        throw value_error("TiltedWallLaw: epsilon renders a truncation component "
                          "massless");
    }
    rho_inner_ = (1.0 - alpha) / mass_gamma_inner_;
    rho_outer_ = alpha / (1.0 - mass_gamma_inner_);
    normalization_ = rho_inner_ * mass_phi_inner_ + rho_outer_ * (1.0 - mass_phi_inner_);
    if (!(normalization_ > 0.0)) {
        throw value_error("TiltedWallLaw: degenerate weights (alpha=0 with massless "
                          "inner piece?)");
    }
    weight_inner_ = rho_inner_ * mass_phi_inner_ / normalization_;
    mean_speed_pi_ = normalization_ / mean_gap(beta);
}

double TiltedWallLaw::sample(CounterRng& rng) const {
    const double pick = rng.uniform01();
    const double u = rng.uniform01();
    double q;  // uniform position inside the Rayleigh CDF
    if (pick < weight_inner_) {
        q = u * mass_phi_inner_;
    } else {
        q = mass_phi_inner_ + u * (1.0 - mass_phi_inner_);
    }
    return std::sqrt(-2.0 * std::log1p(-q) / beta_);
}

double TiltedWallLaw::pdf(double p) const {
    if (p < 0.0) {
        return 0.0;
    }
    const double rho = p <= epsilon_ ? rho_inner_ : rho_outer_;
    const double phi = beta_ * p * std::exp(-beta_ * p * p / 2.0);
    return rho * phi / normalization_;
}

double TiltedWallLaw::pdf_pi(double p) const {
    if (p < 0.0) {
        return 0.0;
    }
    // at p = 0 this is the continuous extension; gamma has positive
    // density at the origin (unlike phi)
    const double rho = p <= epsilon_ ? rho_inner_ : rho_outer_;
    const double gamma = beta_ * std::exp(-beta_ * p * p / 2.0) / mean_gap(beta_);
    return rho * gamma;
}

TiltPair make_tilt_pair(const TiltSpec& spec, const WallParams& params) {
    return {TiltedWallLaw(params.beta_left, spec.alpha, spec.epsilon),
            TiltedWallLaw(params.beta_right, spec.alpha, spec.epsilon)};
}

std::uint64_t switch_index(const TiltSpec& spec, const WallParams& params, double t) {
    if (!(t > 0.0)) {
        throw value_error("switch_index: horizon must be > 0");
    }
    const TiltPair pair = make_tilt_pair(spec, params);
    const double mean_pair =
        pair.plus.mean_flight_time() + pair.minus.mean_flight_time();
    return static_cast<std::uint64_t>(std::floor(2.0 * (1.0 + spec.eta) * t / mean_pair));
}

TiltedRunStats simulate_tilted(const TiltSpec& spec, const WallParams& params, double t,
                               std::uint64_t seed, std::uint64_t stream) {
    if (!(std::isfinite(t) && t > 0.0)) {
        throw value_error("simulate_tilted: horizon must be finite and > 0");
    }
    const TiltPair pair = make_tilt_pair(spec, params);
    const std::uint64_t t_switch = switch_index(spec, params, t);
    const bool reversed = spec.direction == TiltDirection::reversed;

    CounterRng rng(seed, stream);
    TiltedRunStats out;
    out.stats.t = t;

    // sigma_0 = -1 at q_0 = 0: the k-th collision carries sign (-1)^{k+1},
    // so odd collisions are the positive (left-wall-sampled) ones.
    KahanSum current;
    double time = 0.0;
    std::uint64_t i = 0;
    while (true) {
        ++i;
        const bool odd = (i % 2) == 1;
        double v;
        if (i <= t_switch) {
            const bool use_plus = reversed ? !odd : odd;
            v = (use_plus ? pair.plus : pair.minus).sample(rng);
        } else {
            v = sample_speed(odd ? params.beta_left : params.beta_right, rng.uniform01());
        }
        time += 1.0 / v;
        if (time > t) {
            break;
        }
        current.add(0.5 * v * v * (odd ? 1.0 : -1.0));
        ++out.stats.collisions;
    }
    out.stats.current = current.value();
    // S_{T_t} > t iff fewer than t_switch collisions landed inside [0, t]
    out.tilted_phase_covered_horizon = out.stats.collisions < t_switch;
    return out;
}

double relative_entropy(const TiltedWallLaw& tilted, double beta_ref) {
    if (!(std::isfinite(beta_ref) && beta_ref > 0.0)) {
        throw value_error("relative_entropy: reference beta must be > 0");
    }
    auto integrand = [&](double p) {
        const double d = tilted.pdf(p);
        if (d <= 0.0) {
            return 0.0;
        }
        const double log_ref = std::log(beta_ref * p) - beta_ref * p * p / 2.0;
        return d * (std::log(d) - log_ref);
    };
    const double eps = tilted.epsilon();
    const double tail = std::sqrt(160.0 / std::min(tilted.beta(), beta_ref)) + eps;
    // the density jumps at eps; start the outer piece just past it so the
    // quadrature never straddles the discontinuity
    const double eps_out = std::nextafter(eps, tail);
    const double inner = adaptive_simpson(integrand, 0.0, eps, 1e-13);
    const double outer = adaptive_simpson(integrand, eps_out, tail, 1e-12);
    return inner + outer;
}

double entropy_rate(const TiltSpec& spec, const WallParams& params) {
    const TiltPair pair = make_tilt_pair(spec, params);
    const double mean_pair =
        pair.plus.mean_flight_time() + pair.minus.mean_flight_time();
    double kl_sum;
    if (spec.direction == TiltDirection::forward) {
        kl_sum = relative_entropy(pair.plus, params.beta_left) +
                 relative_entropy(pair.minus, params.beta_right);
    } else {
        kl_sum = relative_entropy(pair.minus, params.beta_left) +
                 relative_entropy(pair.plus, params.beta_right);
    }
    return 2.0 * (1.0 + spec.eta) / mean_pair * kl_sum / 2.0;
}

namespace {

// Removes the exact (1+eta) factor and extrapolates the epsilon ladder
// with rate(eps) = c0 + a * eps * log(1/eps), the leading truncation
// correction of the KL integrals, using the two smallest entries.
double extrapolate_entropy(const std::vector<EntropyLimitRow>& table) {
    std::vector<std::pair<double, double>> by_eps;  // (eps, eta-free rate)
    for (const auto& row : table) {
        const double rate0 = row.rate / (1.0 + row.eta);
        bool found = false;
        for (auto& e : by_eps) {
            if (e.first == row.epsilon) {
                found = true;  // identical for every eta after division
                break;
            }
        }
        if (!found) {
            by_eps.emplace_back(row.epsilon, rate0);
        }
    }
    std::sort(by_eps.begin(), by_eps.end());
    if (by_eps.size() == 1) {
        return by_eps.front().second;
    }
    const auto [e1, r1] = by_eps[1];  // second smallest
    const auto [e0, r0] = by_eps[0];  // smallest
    const double g1 = e1 * std::log(1.0 / e1);
    const double g0 = e0 * std::log(1.0 / e0);
    const double slope = (r1 - r0) / (g1 - g0);
    return r0 - slope * g0;
}

} // namespace

EntropyLimit entropy_rate_limit(double target_j, const WallParams& params,
                                const std::vector<double>& eps_ladder,
                                const std::vector<double>& eta_ladder) {
    if (eps_ladder.empty() || eta_ladder.empty()) {
        throw value_error("entropy_rate_limit: ladders must be nonempty");
    }
    EntropyLimit out;
    for (double eps : eps_ladder) {
        for (double eta : eta_ladder) {
            const TiltSpec spec = TiltSpec::from_target(target_j, params, eps, eta);
            out.table.push_back({eps, eta, entropy_rate(spec, params)});
        }
    }
    out.limit_estimate = extrapolate_entropy(out.table);
    return out;
}

Certificate lower_bound_certificate(double target_j, const WallParams& params,
                                    const std::vector<double>& eps_ladder,
                                    const std::vector<double>& eta_ladder, double t,
                                    std::size_t replicas, std::uint64_t seed,
                                    unsigned parallelism) {
    if (replicas < 2) {
        throw value_error("lower_bound_certificate: need at least two replicas");
    }
    Certificate cert;
    cert.target_j = target_j;
    cert.i_target = legendre(target_j, params);

    unsigned workers = parallelism == 0 ? std::thread::hardware_concurrency() : parallelism;
    if (workers == 0) {
        workers = 1;
    }
    workers = static_cast<unsigned>(
        std::min<std::size_t>(workers, replicas));

    std::uint64_t stream_base = 0;
    for (double eps : eps_ladder) {
        for (double eta : eta_ladder) {
            const TiltSpec spec = TiltSpec::from_target(target_j, params, eps, eta);
            std::vector<double> rates(replicas);
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t r = w; r < replicas; r += workers) {
                        const auto run =
                            simulate_tilted(spec, params, t, seed, stream_base + r);
                        rates[r] = run.stats.current / t;
                    }
                });
            }
            for (auto& th : pool) {
                th.join();
            }
            RunningStats stats;
            for (double v : rates) {
                stats.push(v);
            }
            CertificateRow row;
            row.epsilon = eps;
            row.eta = eta;
            row.t = t;
            row.mean_j = stats.mean;
            row.stderr_j = stats.stderr_of_mean();
            row.spread_j = std::sqrt(stats.variance());
            row.entropy_rate = entropy_rate(spec, params);
            row.i_target = cert.i_target;
            const double mean_tol =
                std::max(0.05 * std::abs(target_j), 4.0 * row.stderr_j);
            row.pass = std::abs(row.mean_j - target_j) <= std::max(mean_tol, 1e-3);
            cert.rows.push_back(row);
            stream_base += replicas;
        }
    }

    std::vector<EntropyLimitRow> table;
    for (const auto& row : cert.rows) {
        table.push_back({row.epsilon, row.eta, row.entropy_rate});
    }
    cert.entropy_limit = extrapolate_entropy(table);
    cert.entropy_ok = cert.entropy_limit <= cert.i_target + entropy_tolerance;

    // convergence of the mean is judged on the smallest-epsilon rows
    bool converged = true;
    bool decidable = true;
    const double eps_min = *std::min_element(eps_ladder.begin(), eps_ladder.end());
    for (const auto& row : cert.rows) {
        if (row.epsilon != eps_min) {
            continue;
        }
        const double tol = std::max(0.05 * std::abs(target_j), 1e-3);
        if (2.0 * row.stderr_j > tol) {
            decidable = false;
        }
        if (std::abs(row.mean_j - target_j) > std::max(tol, 4.0 * row.stderr_j)) {
            converged = false;
        }
    }
    cert.mean_converges = converged;
    if (!decidable) {
        cert.verdict = CertificateVerdict::inconclusive;
    } else {
        cert.verdict = (converged && cert.entropy_ok) ? CertificateVerdict::pass
                                                      : CertificateVerdict::fail;
    }
    return cert;
}

} // namespace tracer
