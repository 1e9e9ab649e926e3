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

#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "tracer/acceptance.hpp"
#include "tracer/cgf.hpp"
#include "tracer/csv.hpp"
#include "tracer/error.hpp"
#include "tracer/params.hpp"
#include "tracer/rate.hpp"
#include "tracer/sim.hpp"
#include "tracer/stats.hpp"
#include "tracer/tilt.hpp"
#include "tracer/version.hpp"

namespace tracer::cli {

namespace {

using nlohmann::json;

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Run manifest: parameters, seed, version and outputs of one command.
/// The manifest alone reproduces the run; CSV bodies carry no timestamps.
class Manifest {
public:
    Manifest(const std::string& command, const CommonFlags& common)
        : dir_(common.out_dir), command_(command) {
        std::filesystem::create_directories(dir_);
        doc_["tool"] = "tracer";
        doc_["version"] = tracer::version;
        doc_["command"] = command;
        doc_["seed"] = common.seed;
        doc_["threads"] = common.threads;
        doc_["started_utc"] = iso_now();
        doc_["parameters"] = json::object();
        doc_["outputs"] = json::array();
    }

    template <typename T>
    void param(const std::string& key, const T& value) {
        doc_["parameters"][key] = value;
    }

    void output(const std::string& path) { doc_["outputs"].push_back(path); }

    std::string write() {
        doc_["finished_utc"] = iso_now();
        const std::string path = dir_ + "/" + command_ + "_manifest.json";
        std::ofstream out(path);
        out << doc_.dump(2) << "\n";
        return path;
    }

private:
    std::string dir_;
    std::string command_;
    json doc_;
};

WallParams resolve_walls(const WallFlags& flags, Manifest& manifest) {
    const bool has_beta = flags.beta_left.has_value() || flags.beta_right.has_value();
    const bool has_temp = flags.temp_mean.has_value() || flags.temp_gap.has_value();
    if (has_beta && has_temp) {
        throw value_error("give either --beta-left/--beta-right or "
                          "--temp-mean/--temp-gap, not both");
    }
    if (has_temp) {
        if (!flags.temp_mean || !flags.temp_gap) {
            throw value_error("--temp-mean and --temp-gap must be given together");
        }
        manifest.param("temp_mean", *flags.temp_mean);
        manifest.param("temp_gap", *flags.temp_gap);
        return ScaledParams(*flags.temp_mean, *flags.temp_gap).wall_params();
    }
    if (!flags.beta_left || !flags.beta_right) {
        throw value_error("--beta-left and --beta-right must be given together");
    }
    manifest.param("beta_left", *flags.beta_left);
    manifest.param("beta_right", *flags.beta_right);
    return WallParams(*flags.beta_left, *flags.beta_right);
}

std::string out_path(const CommonFlags& common, const std::string& name) {
    return common.out_dir + "/" + name;
}

} // namespace

int cmd_simulate(const SimulateFlags& flags) {
    Manifest manifest("simulate", flags.common);
    const WallParams walls = resolve_walls(flags.walls, manifest);
    manifest.param("t", flags.horizon);
    manifest.param("replicas", flags.replicas);
    manifest.param("dump_collisions", flags.dump_collisions);

    const SimConfig config(walls, flags.horizon, flags.common.seed);
    const auto ens = run_ensemble(config, flags.replicas, flags.common.threads);

    const std::string csv_path = out_path(flags.common, "ensemble.csv");
    {
        CsvWriter csv(csv_path, "tracer.ensemble.v1", {"replica", "t", "J", "N_t"});
        csv.comment("beta_left", walls.beta_left);
        csv.comment("beta_right", walls.beta_right);
        csv.comment("seed", static_cast<double>(flags.common.seed));
        for (std::size_t r = 0; r < ens.replicas.size(); ++r) {
            const auto& rep = ens.replicas[r];
            csv.row({std::to_string(r), format_sig(rep.t), format_sig(rep.current),
                     std::to_string(rep.collisions)});
        }
    }
    manifest.output(csv_path);

    if (flags.dump_collisions > 0) {
        std::vector<CollisionRecord> log;
        simulate_with_log(config, log, flags.dump_collisions);
        const std::string log_path = out_path(flags.common, "collisions.csv");
        CsvWriter csv(log_path, "tracer.collisions.v1", {"k", "S_k", "sigma_k", "v_k"});
        csv.comment("beta_left", walls.beta_left);
        csv.comment("beta_right", walls.beta_right);
        csv.comment("replica", "0");
        for (const auto& rec : log) {
            csv.row({std::to_string(rec.k), format_sig(rec.time),
                     std::to_string(rec.sign), format_sig(rec.speed)});
        }
        manifest.output(log_path);
    }

    std::cout << "mean J/t = " << format_sig(ens.mean_current_rate()) << " +- "
              << format_sig(ens.stderr_current_rate())
              << "   analytic j* = " << format_sig(j_star(walls)) << "\n"
              << "mean N_t/t = " << format_sig(ens.mean_collision_rate()) << " +- "
              << format_sig(ens.stderr_collision_rate()) << "\n";
    if (walls.beta_left == walls.beta_right) {
        const auto renewal = renewal_rate_check(ens, walls.beta_left);
        std::cout << "renewal check: expected 1/mu = "
                  << format_sig(renewal.expected_rate) << ", deviation "
                  << format_sig(renewal.deviation_sigmas) << " sigma -> "
                  << (renewal.pass ? "ok" : "FLAGGED") << "\n";
    }
    manifest.write();
    return 0;
}

int cmd_cgf(const CgfFlags& flags) {
    Manifest manifest("cgf", flags.common);
    const WallParams walls = resolve_walls(flags.walls, manifest);
    manifest.param("lambda_min", flags.lambda_min);
    manifest.param("lambda_max", flags.lambda_max);
    manifest.param("points", flags.points);
    if (flags.points < 2 || !(flags.lambda_max > flags.lambda_min)) {
        throw value_error("cgf: need points >= 2 and lambda_max > lambda_min");
    }

    std::vector<double> grid;
    for (std::size_t i = 0; i < flags.points; ++i) {
        grid.push_back(flags.lambda_min +
                       (flags.lambda_max - flags.lambda_min) * i / (flags.points - 1));
    }
    const auto curve = cgf_curve(grid, walls);  // rejects out-of-domain grids

    const std::string csv_path = out_path(flags.common, "cgf_curve.csv");
    {
        CsvWriter csv(csv_path, "tracer.cgf.v1",
                      {"lambda", "eta0", "region", "residual", "iterations"});
        csv.comment("beta_left", walls.beta_left);
        csv.comment("beta_right", walls.beta_right);
        for (const auto& pt : curve) {
            csv.row({format_sig(pt.lambda), format_sig(pt.eta0), to_string(pt.region),
                     format_sig(pt.residual), std::to_string(pt.iterations)});
        }
    }
    manifest.output(csv_path);

    // Gallavotti-Cohen symmetry and midpoint convexity over the grid
    double gc_resid = 0.0;
    const double window = walls.beta_left - walls.beta_right;
    for (const auto& pt : curve) {
        const double mirror = window - pt.lambda;
        if (mirror > -walls.beta_right + 2e-6 && mirror < walls.beta_left - 2e-6) {
            gc_resid = std::max(
                gc_resid, std::abs(pt.eta0 - solve_cgf(mirror, walls).value()));
        }
    }
    double convexity_violation = 0.0;
    for (std::size_t i = 2; i < curve.size(); ++i) {
        const double mid =
            curve[i - 1].eta0 - 0.5 * (curve[i].eta0 + curve[i - 2].eta0);
        convexity_violation = std::max(convexity_violation, mid);
    }
    const bool ok = gc_resid <= 1e-8 && convexity_violation <= 1e-8;
    std::cout << "gc symmetry residual = " << format_sig(gc_resid)
              << ", convexity violation = " << format_sig(convexity_violation) << " -> "
              << (ok ? "ok" : "FAIL") << "\n";
    manifest.write();
    return ok ? 0 : 1;
}

int cmd_rate(const RateFlags& flags) {
    Manifest manifest("rate", flags.common);
    const WallParams walls = resolve_walls(flags.walls, manifest);
    manifest.param("j_min", flags.j_min);
    manifest.param("j_max", flags.j_max);
    manifest.param("points", flags.points);
    if (flags.points < 2 || !(flags.j_max > flags.j_min)) {
        throw value_error("rate: need points >= 2 and j_max > j_min");
    }

    std::vector<double> grid;
    for (std::size_t i = 0; i < flags.points; ++i) {
        grid.push_back(flags.j_min +
                       (flags.j_max - flags.j_min) * i / (flags.points - 1));
    }
    const auto curve = rate_curve(grid, walls);

    const std::string csv_path = out_path(flags.common, "rate_curve.csv");
    {
        CsvWriter csv(csv_path, "tracer.rate.v1", {"j", "I", "region"});
        csv.comment("beta_left", walls.beta_left);
        csv.comment("beta_right", walls.beta_right);
        csv.comment("j_star", j_star(walls));
        for (const auto& pt : curve.samples) {
            csv.row({format_sig(pt.x), format_sig(pt.value), to_string(pt.region)});
        }
    }
    manifest.output(csv_path);

    int rc = 0;
    const bool symmetric = std::abs(flags.j_min + flags.j_max) < 1e-12;
    if (symmetric) {
        const auto report = gc_symmetry_check(curve);
        std::cout << "gc symmetry residual = " << format_sig(report.max_residual)
                  << " -> " << (report.pass ? "ok" : "FAIL") << "\n";
        rc = report.pass ? 0 : 1;
    } else {
        std::cout << "gc symmetry check skipped (grid not symmetric about 0)\n";
    }
    const double plateau = plateau_consistency(walls);
    std::cout << "plateau closed-form vs numeric sup: " << format_sig(plateau)
              << (plateau <= 1e-6 ? " -> ok" : " -> FAIL") << "\n";
    if (plateau > 1e-6) {
        rc = 1;
    }
    manifest.write();
    return rc;
}

int cmd_scaling(const ScalingFlags& flags) {
    Manifest manifest("scaling", flags.common);
    manifest.param("tau", flags.tau);
    manifest.param("temp", flags.temp);
    manifest.param("epsilons", flags.epsilons);
    manifest.param("grid_max", flags.grid_max);
    manifest.param("points", flags.points);
    manifest.param("final_tol", flags.final_tol);

    std::vector<double> grid;
    for (std::size_t i = 0; i < flags.points; ++i) {
        grid.push_back(-flags.grid_max +
                       2.0 * flags.grid_max * i / (flags.points - 1));
    }
    const auto report =
        scaling_convergence(grid, grid, flags.tau, flags.temp, flags.epsilons);

    const std::string csv_path = out_path(flags.common, "scaling.csv");
    {
        CsvWriter csv(csv_path, "tracer.scaling.v1",
                      {"epsilon", "gap_cgf", "gap_rate"});
        csv.comment("tau", flags.tau);
        csv.comment("temp", flags.temp);
        csv.comment("grid", "[-" + format_sig(flags.grid_max) + "," +
                                format_sig(flags.grid_max) + "] x " +
                                std::to_string(flags.points));
        for (const auto& row : report.rows) {
            csv.row({format_sig(row.epsilon), format_sig(row.gap_cgf),
                     format_sig(row.gap_rate)});
        }
    }
    manifest.output(csv_path);

    for (const auto& row : report.rows) {
        std::cout << "eps = " << format_sig(row.epsilon)
                  << "  sup|e^-2 F - H| = " << format_sig(row.gap_cgf)
                  << "  sup|e^-2 I - G| = " << format_sig(row.gap_rate) << "\n";
    }
    const bool ok = report.pass(flags.final_tol);
    std::cout << (report.monotone ? "gaps decrease monotonically"
                                  : "gaps NOT monotone")
              << "; final tolerance " << format_sig(flags.final_tol) << " -> "
              << (ok ? "ok" : "FAIL") << "\n";
    manifest.write();
    return ok ? 0 : 1;
}

int cmd_tilt(const TiltFlags& flags) {
    Manifest manifest("tilt", flags.common);
    const WallParams walls = resolve_walls(flags.walls, manifest);
    manifest.param("target_j", flags.target_j);
    manifest.param("epsilon", flags.epsilon);
    manifest.param("eta", flags.eta);
    manifest.param("t", flags.horizon);
    manifest.param("replicas", flags.replicas);
    manifest.param("ladder", flags.ladder);

    int rc = 0;
    if (flags.ladder) {
        const auto cert = lower_bound_certificate(
            flags.target_j, walls, default_eps_ladder(), default_eta_ladder(),
            flags.horizon, flags.replicas, flags.common.seed, flags.common.threads);
        const std::string csv_path = out_path(flags.common, "certificate.csv");
        {
            CsvWriter csv(csv_path, "tracer.certificate.v1",
                          {"epsilon", "eta", "t", "mean_j", "stderr_j", "entropy_rate",
                           "I_target", "pass"});
            csv.comment("beta_left", walls.beta_left);
            csv.comment("beta_right", walls.beta_right);
            csv.comment("target_j", flags.target_j);
            csv.comment("entropy_limit_estimate", cert.entropy_limit);
            for (const auto& row : cert.rows) {
                csv.row({format_sig(row.epsilon), format_sig(row.eta),
                         format_sig(row.t), format_sig(row.mean_j),
                         format_sig(row.stderr_j), format_sig(row.entropy_rate),
                         format_sig(row.i_target), row.pass ? "1" : "0"});
            }
        }
        manifest.output(csv_path);
        std::cout << "certificate: target " << format_sig(cert.target_j)
                  << ", I(target) = " << format_sig(cert.i_target)
                  << ", entropy limit = " << format_sig(cert.entropy_limit) << " -> "
                  << to_string(cert.verdict) << "\n";
        rc = cert.verdict == CertificateVerdict::pass ? 0 : 1;
    } else {
        const TiltSpec spec =
            TiltSpec::from_target(flags.target_j, walls, flags.epsilon, flags.eta);
        RunningStats stats;
        std::size_t covered = 0;
        for (std::size_t r = 0; r < flags.replicas; ++r) {
            const auto run =
                simulate_tilted(spec, walls, flags.horizon, flags.common.seed, r);
            stats.push(run.stats.current / flags.horizon);
            covered += run.tilted_phase_covered_horizon ? 1 : 0;
        }
        const double rate = entropy_rate(spec, walls);
        std::cout << "tilted mean J/t = " << format_sig(stats.mean) << " +- "
                  << format_sig(stats.stderr_of_mean()) << "  target "
                  << format_sig(flags.target_j) << "\n"
                  << "entropy rate = " << format_sig(rate)
                  << ", I(target) = " << format_sig(legendre(flags.target_j, walls))
                  << ", P(S_Tt > t) = "
                  << format_sig(static_cast<double>(covered) / flags.replicas) << "\n";
    }
    manifest.write();
    return rc;
}

int cmd_figures(const FiguresFlags& flags) {
    Manifest manifest("figures", flags.common);
    manifest.param("points", flags.points);
    std::filesystem::create_directories(flags.common.out_dir);
    const auto files =
        write_figure_files(flags.common.out_dir, static_cast<int>(flags.points));
    manifest.output(files.g_csv);
    manifest.output(files.h_csv);
    manifest.output(files.gnuplot);
    std::cout << "wrote " << files.g_csv << "\n      " << files.h_csv << "\n      "
              << files.gnuplot << "\n";
    manifest.write();
    return 0;
}

int cmd_verify(const VerifyFlags& flags) {
    Manifest manifest("verify", flags.common);
    manifest.param("quick", flags.quick);
    manifest.param("only", flags.only);
    manifest.param("inject_bad_tolerances", flags.inject_bad_tolerances);

    VerifyOptions options;
    options.quick = flags.quick;
    options.seed = flags.common.seed;
    options.threads = flags.common.threads;
    options.scratch_dir = flags.common.out_dir;
    if (flags.inject_bad_tolerances) {
        options.tolerance_scale = 1e-2;
    }

    const std::vector<int> ids = flags.only.empty() ? all_criteria() : flags.only;
    const auto results = run_criteria(ids, options);
    const int failures = print_results(std::cout, results);
    manifest.write();
    return failures == 0 ? 0 : 1;
}

} // namespace tracer::cli
