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

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "tracer/error.hpp"
#include "tracer/version.hpp"

namespace {

using namespace tracer::cli;

void add_common(CLI::App* cmd, CommonFlags& common) {
    if (const char* env = std::getenv("TRACER_SEED")) {
        common.seed = std::strtoull(env, nullptr, 10);
    }
    if (const char* env = std::getenv("TRACER_OUT")) {
        common.out_dir = env;
    }
    cmd->add_option("--seed", common.seed, "Master seed (env TRACER_SEED)");
    cmd->add_option("--out", common.out_dir, "Output directory (env TRACER_OUT)");
    cmd->add_option("--threads", common.threads, "Worker threads (0 = all cores)");
}

void add_walls(CLI::App* cmd, WallFlags& walls) {
    auto* bl = cmd->add_option("--beta-left", walls.beta_left,
                               "Inverse temperature of the left wall");
    auto* br = cmd->add_option("--beta-right", walls.beta_right,
                               "Inverse temperature of the right wall");
    auto* tm = cmd->add_option("--temp-mean", walls.temp_mean,
                               "Mean temperature T (with --temp-gap)");
    auto* tg = cmd->add_option("--temp-gap", walls.temp_gap,
                               "Temperature gap tau (with --temp-mean)");
    bl->needs(br);
    br->needs(bl);
    tm->needs(tg);
    tg->needs(tm);
    bl->excludes(tm);
    bl->excludes(tg);
    br->excludes(tm);
    br->excludes(tg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Confined-tracer current statistics: simulation, CGF/rate solvers, "
                 "scaling limits, tilted measures"};
    app.set_version_flag("--version", std::string(tracer::version));
    app.require_subcommand(1);

    SimulateFlags sim;
    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo ensemble of trajectories");
    add_walls(c_sim, sim.walls);
    add_common(c_sim, sim.common);
    c_sim->add_option("--t", sim.horizon, "Horizon t")->required();
    c_sim->add_option("--replicas", sim.replicas, "Replica count");
    c_sim->add_option("--dump-collisions", sim.dump_collisions,
                      "Export up to N collision records of replica 0");

    CgfFlags cgf;
    auto* c_cgf = app.add_subcommand("cgf", "Cumulant generating function curve");
    add_walls(c_cgf, cgf.walls);
    add_common(c_cgf, cgf.common);
    c_cgf->add_option("--lambda-min", cgf.lambda_min, "Grid start")->required();
    c_cgf->add_option("--lambda-max", cgf.lambda_max, "Grid end")->required();
    c_cgf->add_option("--points", cgf.points, "Grid points");

    RateFlags rate;
    auto* c_rate = app.add_subcommand("rate", "Large-deviations rate function curve");
    add_walls(c_rate, rate.walls);
    add_common(c_rate, rate.common);
    c_rate->add_option("--j-min", rate.j_min, "Grid start")->required();
    c_rate->add_option("--j-max", rate.j_max, "Grid end")->required();
    c_rate->add_option("--points", rate.points, "Grid points");

    ScalingFlags scaling;
    auto* c_scaling =
        app.add_subcommand("scaling", "Convergence of eps^-2 F and eps^-2 I to H, G");
    add_common(c_scaling, scaling.common);
    c_scaling->add_option("--tau", scaling.tau, "Temperature gap");
    c_scaling->add_option("--temp", scaling.temp, "Mean temperature");
    c_scaling->add_option("--epsilons", scaling.epsilons,
                          "Decreasing epsilon ladder")->delimiter(',');
    c_scaling->add_option("--grid-max", scaling.grid_max, "Grid half width");
    c_scaling->add_option("--points", scaling.points, "Grid points");
    c_scaling->add_option("--final-tol", scaling.final_tol,
                          "Pass threshold for the smallest-epsilon gap");

    TiltFlags tilt;
    auto* c_tilt = app.add_subcommand("tilt", "Tilted process runs and certificates");
    add_walls(c_tilt, tilt.walls);
    add_common(c_tilt, tilt.common);
    c_tilt->add_option("--target-j", tilt.target_j, "Target current in [-j*, j*]")
        ->required();
    c_tilt->add_option("--epsilon", tilt.epsilon, "Truncation threshold");
    c_tilt->add_option("--eta", tilt.eta, "Horizon inflation");
    c_tilt->add_option("--t", tilt.horizon, "Horizon t");
    c_tilt->add_option("--replicas", tilt.replicas, "Replica count");
    c_tilt->add_flag("--ladder", tilt.ladder,
                     "Run the full (epsilon, eta) certificate ladders");

    FiguresFlags figures;
    auto* c_fig = app.add_subcommand("figures",
                                     "Emit the G-vs-j and H-vs-lambda figure data");
    add_common(c_fig, figures.common);
    c_fig->add_option("--points", figures.points, "Interior grid points per curve");

    VerifyFlags verify;
    auto* c_verify = app.add_subcommand("verify", "Run the acceptance criteria");
    add_common(c_verify, verify.common);
    c_verify->add_flag("--quick", verify.quick,
                       "10x fewer replicas, 3x wider statistical tolerances");
    c_verify->add_option("--only", verify.only, "Run only these criterion ids")
        ->delimiter(',');
    c_verify
        ->add_flag("--inject-bad-tolerances", verify.inject_bad_tolerances,
                   "Negative control: corrupt tolerances so the suite must fail")
        ->group("");  // test-only, hidden from help

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2
    }

    try {
        if (c_sim->parsed()) return cmd_simulate(sim);
        if (c_cgf->parsed()) return cmd_cgf(cgf);
        if (c_rate->parsed()) return cmd_rate(rate);
        if (c_scaling->parsed()) return cmd_scaling(scaling);
        if (c_tilt->parsed()) return cmd_tilt(tilt);
        if (c_fig->parsed()) return cmd_figures(figures);
        if (c_verify->parsed()) return cmd_verify(verify);
    } catch (const tracer::value_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
