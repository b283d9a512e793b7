#include "visclab/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "visclab/acceptance.hpp"
#include "visclab/csv.hpp"
#include "visclab/entropy.hpp"
#include "visclab/estimates.hpp"
#include "visclab/kernels.hpp"
#include "visclab/reference.hpp"
#include "visclab/solver_fd.hpp"
#include "visclab/solver_galerkin.hpp"
#include "visclab/study.hpp"

namespace visclab {

namespace {

namespace fs = std::filesystem;

int cmd_solve_galerkin(const ProblemSpec& spec, const std::string& out_dir, double eps,
                       std::size_t m) {
    const auto gt = galerkin_solve(spec, eps, m, spec.horizon);
    fs::create_directories(out_dir);
    io::write_coefficient_history(fs::path(out_dir) / "coefficients.csv", gt);
    double c0 = 0.0, cT = 0.0;
    for (double v : gt.coeffs.front()) c0 += v * v;
    for (double v : gt.coeffs.back()) cT += v * v;
    const auto rep = validate_hypotheses(spec);
    std::vector<EstimateVerdict> verdicts;
    verdicts.push_back(make_verdict("energy", 0.5 * c0, 0.5 * cT + eps * rep.r * gt.grad2.back(),
                                    1e-6));
    verdicts.push_back(make_verdict("sqrt_eps_gradient", c0 / (2.0 * rep.r),
                                    eps * gt.grad2.back(), 1e-6));
    io::write_verdicts(fs::path(out_dir) / "verdicts.csv", verdicts);
    bool all = true;
    for (const auto& v : verdicts) {
        std::cout << (v.pass ? "PASS " : "FAIL ") << v.name << " measured " << v.measured_value
                  << " bound " << v.bound_value << '\n';
        all = all && v.pass;
    }
    return all ? 0 : 1;
}

int cmd_solve_godunov(const ProblemSpec& spec, const std::string& out_dir,
                      std::size_t n_cells) {
    const Grid grid = Grid::uniform(spec.domain, n_cells);
    GodunovOptions gopts;
    const auto rep = validate_hypotheses(spec);
    const double steps = spec.horizon * rep.M / (gopts.cfl * grid.h);
    gopts.record_every = std::max<std::size_t>(1, static_cast<std::size_t>(steps) / 160);
    const auto ref = godunov_solve(spec, grid, spec.horizon, gopts);
    fs::create_directories(out_dir);
    io::write_trajectory(out_dir, "reference", ref.trajectory, "godunov");
    io::write_trace(fs::path(out_dir) / "trace.csv",
                    boundary_trace(ref.trajectory, spec.domain));
    const auto bln = bln_ordered_check(boundary_trace(ref.trajectory, spec.domain), spec);
    std::cout << (bln.pass() ? "PASS" : "FAIL") << " bln worst violation "
              << bln.worst_violation << '\n';
    if (!ref.flux_note.empty()) std::cout << "note: " << ref.flux_note << '\n';
    return bln.pass() ? 0 : 1;
}

int cmd_solve(const std::string& config_path, const std::string& out_dir, double eps,
              std::size_t n_cells, const std::string& solver, std::size_t m) {
    const Config cfg = Config::parse_file(config_path);
    const ProblemSpec spec = problem_from_config(cfg);
    if (solver == "galerkin") return cmd_solve_galerkin(spec, out_dir, eps, m);
    if (solver == "godunov") return cmd_solve_godunov(spec, out_dir, n_cells);
    if (solver != "fd") throw ConfigError("unknown solver: " + solver);
    const HypothesisReport rep = validate_hypotheses(spec);
    const Grid grid = Grid::uniform(spec.domain, n_cells);

    SolveOptions opts;
    opts.record_every =
        std::max<std::size_t>(1, planned_steps(spec, rep, grid, eps, opts) / 160);
    const SolveResult res = solve(spec, eps, grid, opts);

    const GridFunction& u0 = res.trajectory.states.front();
    const double u0_linf = kernels::max_abs(u0);
    const double u0_l2 = std::sqrt(kernels::sum_squares_scaled(u0, grid.h));
    const double tv0 = kernels::total_variation(u0);

    std::vector<EstimateVerdict> verdicts;
    verdicts.push_back(check_max_principle(res.diagnostics, u0_linf));
    verdicts.push_back(check_energy(res.diagnostics, eps, rep.r, u0_l2));
    verdicts.push_back(check_sqrt_eps_gradient(res.diagnostics, eps, rep.r, u0_l2));
    verdicts.push_back(check_tv(res.diagnostics, tv0));

    fs::create_directories(out_dir);
    io::write_trajectory(out_dir, "solve", res.trajectory);
    io::write_diagnostics(fs::path(out_dir) / "diagnostics.csv", res.diagnostics);
    io::write_verdicts(fs::path(out_dir) / "verdicts.csv", verdicts);
    io::write_trace(fs::path(out_dir) / "trace.csv",
                    boundary_trace(res.trajectory, spec.domain));

    bool all = true;
    for (const auto& v : verdicts) {
        std::cout << (v.pass ? "PASS " : "FAIL ") << v.name << " measured "
                  << v.measured_value << " bound " << v.bound_value << '\n';
        all = all && v.pass;
    }
    return all ? 0 : 1;
}

int cmd_study(const std::string& config_path, const std::string& out_override, int workers) {
    const Config cfg = Config::parse_file(config_path);
    StudyConfig sc = study_from_config(cfg);
    if (!out_override.empty()) sc.output_dir = out_override;
    if (workers > 0) sc.workers = workers;
    const StudyTable table = run_study(sc);
    write_study_outputs(sc, table);
    bool all = true;
    for (const auto& r : table.rows) {
        all = all && r.ok;
        for (const auto& v : r.verdicts) all = all && v.pass;
    }
    return all ? 0 : 1;
}

int cmd_verify_entropy(const std::string& config_path, const std::string& manifest,
                       double floor, int n_k, int n_phi) {
    const Config cfg = Config::parse_file(config_path);
    const ProblemSpec spec = problem_from_config(cfg);
    Trajectory traj = io::read_trajectory(manifest);
    const double T = traj.times.back();
    const auto probes = probe_family(spec, T, n_k, n_phi);
    const auto residuals = residual_sweep(traj, spec, probes);
    const double min_res = *std::min_element(residuals.begin(), residuals.end());
    io::write_entropy_report(fs::path(manifest).parent_path() / "entropy_report.csv", probes,
                             residuals);
    std::cout << (min_res >= floor ? "PASS" : "FAIL") << " min entropy residual " << min_res
              << " (floor " << floor << ")\n";
    return min_res >= floor ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"quasilinear viscous approximations laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", study_out, manifest, solver = "fd";
    double eps = 1e-2, floor = -1e-3;
    std::size_t n_cells = 256, galerkin_m = 16;
    int workers = 0, n_k = 9, n_phi = 12;
    bool serial = false;
    app.add_flag("--serial", serial, "force serial kernels");

    auto* solve_cmd = app.add_subcommand("solve", "one viscous run with diagnostics");
    solve_cmd->add_option("--config", config_path, "problem config file")->required();
    solve_cmd->add_option("--out", out_dir, "output directory");
    solve_cmd->add_option("--eps", eps, "viscosity");
    solve_cmd->add_option("--n-cells", n_cells, "grid resolution");
    solve_cmd->add_option("--solver", solver, "fd | galerkin | godunov");
    solve_cmd->add_option("--m", galerkin_m, "Galerkin basis size");

    auto* study_cmd = app.add_subcommand("study", "eps sweep with rate fit");
    study_cmd->add_option("--config", config_path, "study config file")->required();
    study_cmd->add_option("--out", study_out, "output directory override");
    study_cmd->add_option("--workers", workers, "concurrent rows");

    auto* verify_cmd = app.add_subcommand("verify-entropy", "residual report for a dump");
    verify_cmd->add_option("--config", config_path, "problem config file")->required();
    verify_cmd->add_option("--traj", manifest, "trajectory manifest CSV")->required();
    verify_cmd->add_option("--floor", floor, "acceptance floor");
    verify_cmd->add_option("--n-k", n_k, "Kruzhkov constants");
    verify_cmd->add_option("--n-phi", n_phi, "test functions");

    auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");
    (void)selftest_cmd;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cout << (e.get_exit_code() == 0 ? app.help() : std::string(e.what()) + "\n");
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    if (serial) kernels::set_default_exec(kernels::Exec::Serial);

    try {
        if (app.got_subcommand("solve"))
            return cmd_solve(config_path, out_dir, eps, n_cells, solver, galerkin_m);
        if (app.got_subcommand("study")) return cmd_study(config_path, study_out, workers);
        if (app.got_subcommand("verify-entropy"))
            return cmd_verify_entropy(config_path, manifest, floor, n_k, n_phi);
        if (app.got_subcommand("selftest")) {
            const auto results = run_acceptance(true);
            for (const auto& r : results)
                if (!r.pass) return 1;
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

int cli_main(const std::vector<const char*>& argv) {
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace visclab
