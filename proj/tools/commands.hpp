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
#include <string>
#include <vector>

namespace tracer::cli {

/// Wall parametrization: either (beta_left, beta_right) or (T, tau),
/// never both in one invocation.
struct WallFlags {
    std::optional<double> beta_left, beta_right;
    std::optional<double> temp_mean, temp_gap;
};

struct CommonFlags {
    std::uint64_t seed = 20260810;
    std::string out_dir = ".";
    unsigned threads = 0;
};

struct SimulateFlags {
    WallFlags walls;
    CommonFlags common;
    double horizon = 0.0;
    std::size_t replicas = 200;
    std::size_t dump_collisions = 0;  ///< replica-0 log rows to export (0 = off)
};

struct CgfFlags {
    WallFlags walls;
    CommonFlags common;
    double lambda_min = 0.0, lambda_max = 0.0;
    std::size_t points = 101;
};

struct RateFlags {
    WallFlags walls;
    CommonFlags common;
    double j_min = 0.0, j_max = 0.0;
    std::size_t points = 400;
};

struct ScalingFlags {
    CommonFlags common;
    double tau = 1.0, temp = 1.0;
    std::vector<double> epsilons{0.1, 0.05, 0.025};
    double grid_max = 2.0;
    std::size_t points = 41;
    double final_tol = 5e-3;
};

struct TiltFlags {
    WallFlags walls;
    CommonFlags common;
    double target_j = 0.0;
    double epsilon = 1e-2;
    double eta = 0.1;
    double horizon = 1e5;
    std::size_t replicas = 200;
    bool ladder = false;  ///< run the full (eps, eta) certificate ladders
};

struct FiguresFlags {
    CommonFlags common;
    std::size_t points = 600;
};

struct VerifyFlags {
    CommonFlags common;
    bool quick = false;
    std::vector<int> only;
    bool inject_bad_tolerances = false;  ///< negative control; must fail
};

int cmd_simulate(const SimulateFlags& flags);
int cmd_cgf(const CgfFlags& flags);
int cmd_rate(const RateFlags& flags);
int cmd_scaling(const ScalingFlags& flags);
int cmd_tilt(const TiltFlags& flags);
int cmd_figures(const FiguresFlags& flags);
int cmd_verify(const VerifyFlags& flags);

} // namespace tracer::cli
