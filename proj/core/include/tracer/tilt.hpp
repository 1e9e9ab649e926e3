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
#include <string>
#include <vector>

#include "tracer/params.hpp"
#include "tracer/rng.hpp"
#include "tracer/sim.hpp"

namespace tracer {

enum class TiltDirection { forward, reversed };

/// Parameters of the truncated tilted measures forcing the empirical
/// current onto a target in [-j*, j*]. alpha = |target|/j*; direction is
/// forward for targets in [0, j*] and reversed for [-j*, 0].
struct TiltSpec {
    double target_j = 0.0;
    double alpha = 0.0;
    double epsilon = 0.0;  ///< truncation threshold > 0
    double eta = 0.0;      ///< horizon-inflation parameter > 0
    TiltDirection direction = TiltDirection::forward;

    TiltSpec(double alpha, double epsilon, double eta, TiltDirection direction,
             double target_j = 0.0);

    static TiltSpec from_target(double target_j, const WallParams& params,
                                double epsilon, double eta);
};

/// The tilted speed law pi-tilde for one wall: the wall law phi_beta
/// reweighted by the two-plateau density rho, i.e. a two-component
/// mixture of phi_beta truncated to (0, eps] and to (eps, inf). Exact
/// inverse-CDF sampling, closed-form moments.
class TiltedWallLaw {
public:
    TiltedWallLaw(double beta, double alpha, double epsilon);

    double sample(CounterRng& rng) const;
    double pdf(double p) const;          ///< density of pi-tilde
    double pdf_pi(double p) const;       ///< density of pi (gamma reweighted by rho)

    double inner_weight() const { return weight_inner_; }
    double normalization() const { return normalization_; }  ///< phi(rho)
    double mean_speed_pi() const { return mean_speed_pi_; }  ///< E_pi(p) = phi(rho)/mu
    /// E_{pi-tilde}(1/p) = 1 / E_pi(p); the per-collision mean flight time.
    double mean_flight_time() const { return 1.0 / mean_speed_pi_; }

    double beta() const { return beta_; }
    double alpha() const { return alpha_; }
    double epsilon() const { return epsilon_; }

private:
    double beta_, alpha_, epsilon_;
    double mass_phi_inner_;   ///< phi_beta((0, eps])
    double mass_gamma_inner_; ///< gamma((0, eps]) = erf(eps sqrt(beta/2))
    double rho_inner_, rho_outer_;
    double normalization_;
    double weight_inner_;
    double mean_speed_pi_;
};

/// The pair (pi-tilde^+, pi-tilde^-): + tilts the left-wall law (positive
/// current contributions), - the right-wall law.
struct TiltPair {
    TiltedWallLaw plus;
    TiltedWallLaw minus;
};
TiltPair make_tilt_pair(const TiltSpec& spec, const WallParams& params);

/// Switch index T_t = floor(2 (1+eta) t / (m+ + m-)) with m the mean
/// flight times under the tilted laws; collisions 1..T_t are tilted.
std::uint64_t switch_index(const TiltSpec& spec, const WallParams& params, double t);

struct TiltedRunStats {
    CurrentStats stats;
    bool tilted_phase_covered_horizon = false;  ///< the event S_{T_t} > t
};

/// Simulates the finite-horizon tilted process: the first T_t collision
/// speeds are drawn from pi-tilde (parity-dependent wall assignment,
/// swapped parity in the reversed direction), later ones from the
/// untilted wall laws.
TiltedRunStats simulate_tilted(const TiltSpec& spec, const WallParams& params, double t,
                               std::uint64_t seed, std::uint64_t stream = 0);

/// H(pi-tilde | phi_{beta_ref}) by numerical integration of the
/// closed-form densities, piecewise over the truncation split.
double relative_entropy(const TiltedWallLaw& tilted, double beta_ref);

/// Per-time relative entropy rate of the tilted path law:
/// (2(1+eta)/(m+ + m-)) * (KL+ + KL-)/2, where the reversed direction
/// pairs pi-tilde^- with phi^+ and pi-tilde^+ with phi^-.
double entropy_rate(const TiltSpec& spec, const WallParams& params);

struct EntropyLimitRow {
    double epsilon;
    double eta;
    double rate;
};

struct EntropyLimit {
    std::vector<EntropyLimitRow> table;
    /// eta removed exactly (the rate is linear in 1+eta), then the
    /// epsilon ladder extrapolated with the c0 + a*eps*log(1/eps)
    /// correction model on its two smallest entries.
    double limit_estimate = 0.0;
};

EntropyLimit entropy_rate_limit(double target_j, const WallParams& params,
                                const std::vector<double>& eps_ladder,
                                const std::vector<double>& eta_ladder);

struct CertificateRow {
    double epsilon = 0.0;
    double eta = 0.0;
    double t = 0.0;
    double mean_j = 0.0;
    double stderr_j = 0.0;
    double spread_j = 0.0;  ///< sample std of J/t across replicas
    double entropy_rate = 0.0;
    double i_target = 0.0;
    bool pass = false;
};

enum class CertificateVerdict { pass, fail, inconclusive };

struct Certificate {
    double target_j = 0.0;
    double i_target = 0.0;
    double entropy_limit = 0.0;
    std::vector<CertificateRow> rows;
    bool mean_converges = false;
    bool entropy_ok = false;  ///< entropy limit <= I(target) + 1e-2
    CertificateVerdict verdict = CertificateVerdict::fail;
};

/// Table over (eps, eta) at fixed t of empirical mean J/t, spread, and
/// entropy rate; passes when the mean approaches the target and the
/// extrapolated entropy rate stays within I(target) + 1e-2. Statistically
/// undecidable rows flag the certificate inconclusive instead of passing.
Certificate lower_bound_certificate(double target_j, const WallParams& params,
                                    const std::vector<double>& eps_ladder,
                                    const std::vector<double>& eta_ladder, double t,
                                    std::size_t replicas, std::uint64_t seed,
                                    unsigned parallelism = 0);

std::string to_string(TiltDirection direction);
std::string to_string(CertificateVerdict verdict);

/// Default ladders for certificates.
const std::vector<double>& default_eps_ladder();
const std::vector<double>& default_eta_ladder();

} // namespace tracer
