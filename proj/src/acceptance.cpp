#include "visclab/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include "visclab/entropy.hpp"
#include "visclab/estimates.hpp"
#include "visclab/kernels.hpp"
#include "visclab/reference.hpp"
#include "visclab/solver_fd.hpp"
#include "visclab/solver_galerkin.hpp"
#include "visclab/study.hpp"

namespace visclab {

namespace {

ProblemSpec base_spec() {
    ProblemSpec s;
    s.domain = {0.0, 1.0};
    s.horizon = 0.3;
    s.diffusion = {DiffusionKind::Constant, 1.0, 1.0, 0.0};
    s.initial.kind = InitialKind::CompactBump;
    s.initial.center = 0.4;
    s.initial.width = 0.2;
    s.initial.height = 1.0;
    return s;
}

std::vector<ProblemSpec> config_matrix() {
    std::vector<FluxSpec> fluxes = {
        {FluxKind::Burgers, 0.0, {}},
        {FluxKind::LinearAdvection, 1.0, {}},
        {FluxKind::Polynomial, 0.0, {0.0, 0.0, 0.0, 1.0}},
    };
    std::vector<DiffusionSpec> diffusions = {
        {DiffusionKind::Constant, 1.0, 1.0, 0.0},
        {DiffusionKind::RationalBump, 0.0, 0.5, 1.0},
    };
    std::vector<InitialSpec> initials(2);
    initials[0].kind = InitialKind::CompactBump;
    initials[0].center = 0.4;
    initials[0].width = 0.2;
    initials[0].height = 1.0;
    initials[1].kind = InitialKind::MollifiedRiemann;
    initials[1].left = 1.0;
    initials[1].right = 0.0;
    initials[1].jump_location = 0.5;
    initials[1].smoothing = 0.04;

    std::vector<ProblemSpec> out;
    for (const auto& f : fluxes)
        for (const auto& d : diffusions)
            for (const auto& in : initials) {
                ProblemSpec s = base_spec();
                s.flux = f;
                s.diffusion = d;
                s.initial = in;
                out.push_back(s);
            }
    return out;
}

struct Check {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!ok) detail << (detail.str().empty() ? "" : "; ") << what;
    }
    void note(const std::string& what) {
        detail << (detail.str().empty() ? "" : "; ") << what;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// ---- criterion 1 + 4: matrix runs -----------------------------------------

struct MatrixRun {
    ProblemSpec spec;
    SolveResult res;
    double u0_linf = 0.0;
    double tv0 = 0.0;
};

std::vector<MatrixRun> run_matrix() {
    std::vector<MatrixRun> out;
    for (const auto& spec : config_matrix()) {
        MatrixRun mr;
        mr.spec = spec;
        const Grid grid = Grid::uniform(spec.domain, 128);
        mr.res = solve(spec, 5e-3, grid);
        mr.u0_linf = kernels::max_abs(mr.res.trajectory.states.front());
        mr.tv0 = mr.res.diagnostics.tv.front();
        out.push_back(std::move(mr));
    }
    return out;
}

CriterionResult criterion_max_principle(const std::vector<MatrixRun>& runs) {
    Check c;
    for (const auto& mr : runs) {
        const auto v = check_max_principle(mr.res.diagnostics, mr.u0_linf);
        c.require(v.pass, "matrix config exceeded max principle by " +
                              fmt(v.measured_value - v.bound_value));
        c.require(mr.res.trajectory.clip_count == 0, "state clipping occurred");
    }
    // negative control: spiked series must fail
    DiagnosticsSeries corrupted = runs.front().res.diagnostics;
    corrupted.linf[corrupted.linf.size() / 2] += 2.0;
    c.require(!check_max_principle(corrupted, runs.front().u0_linf).pass,
              "negative control passed");
    c.note("12 configs, worst slack within 1e-10");
    return {1, "maximum principle", c.pass, c.detail.str()};
}

CriterionResult criterion_tv(const std::vector<MatrixRun>& runs) {
    Check c;
    for (const auto& mr : runs) {
        const auto v = check_tv(mr.res.diagnostics, mr.tv0);
        c.require(v.pass, "per-step TV increased, worst ratio " + fmt(v.measured_value));
        const double integral = tv_time_integral(mr.res.diagnostics);
        const double bound = mr.spec.horizon * mr.tv0;
        c.require(integral <= bound * (1.0 + 1e-6),
                  "time-integrated TV " + fmt(integral) + " > " + fmt(bound));
    }
    DiagnosticsSeries corrupted = runs.front().res.diagnostics;
    corrupted.tv[corrupted.tv.size() / 2] += 2.0;
    c.require(!check_tv(corrupted, runs.front().tv0).pass, "negative control passed");
    return {4, "TV control", c.pass, c.detail.str()};
}

// ---- criterion 2: energy ---------------------------------------------------

CriterionResult criterion_energy() {
    Check c;

    // FD inequality on a Burgers run and a RationalBump run
    for (int variant = 0; variant < 2; ++variant) {
        ProblemSpec spec = base_spec();
        if (variant == 1) spec.diffusion = {DiffusionKind::RationalBump, 0.0, 0.5, 1.0};
        const Grid grid = Grid::uniform(spec.domain, 256);
        const auto rep = validate_hypotheses(spec);
        const auto res = solve(spec, 1e-2, grid);
        const double u0_l2 =
            std::sqrt(kernels::sum_squares_scaled(res.trajectory.states.front(), grid.h));
        const auto v = check_energy(res.diagnostics, 1e-2, rep.r, u0_l2);
        c.require(v.pass, "FD energy inequality failed, slack " +
                              fmt(v.measured_value / v.bound_value - 1.0));
    }

    // FD identity for f = 0, B = 1
    {
        ProblemSpec spec = base_spec();
        spec.flux = {FluxKind::LinearAdvection, 0.0, {}};
        spec.initial.kind = InitialKind::SinePocket;
        spec.initial.modes = {1.0};
        spec.horizon = 0.5;
        const double eps = 1e-2;
        const Grid grid = Grid::uniform(spec.domain, 256);
        const auto res = solve(spec, eps, grid);
        const auto& d = res.diagnostics;
        const double lhs = 0.5 * d.l2.back() * d.l2.back() + eps * d.grad_l2_acc.back();
        const double rhs = 0.5 * d.l2.front() * d.l2.front();
        const double rel = std::abs(lhs - rhs) / rhs;
        c.require(rel <= 1e-4, "FD heat identity off by " + fmt(rel));
        c.note("heat identity residual " + fmt(rel));
    }

    // Galerkin: identity in heat mode, inequality for Burgers
    {
        ProblemSpec spec = base_spec();
        spec.flux = {FluxKind::LinearAdvection, 0.0, {}};
        spec.initial.kind = InitialKind::SinePocket;
        spec.initial.modes = {1.0};
        spec.horizon = 0.5;
        const double eps = 1e-2;
        const auto gt = galerkin_solve(spec, eps, 16, spec.horizon);
        double c0 = 0.0, cT = 0.0;
        for (double v : gt.coeffs.front()) c0 += v * v;
        for (double v : gt.coeffs.back()) cT += v * v;
        const double rel = std::abs(0.5 * cT + eps * gt.grad2_b.back() - 0.5 * c0) / (0.5 * c0);
        c.require(rel <= 1e-6, "Galerkin heat identity off by " + fmt(rel));
    }
    {
        ProblemSpec spec = base_spec();
        spec.diffusion = {DiffusionKind::RationalBump, 0.0, 1.0, 0.5};
        spec.horizon = 0.4;
        const double eps = 5e-2;
        const auto rep = validate_hypotheses(spec);
        const auto gt = galerkin_solve(spec, eps, 24, spec.horizon);
        double c0 = 0.0, cT = 0.0;
        for (double v : gt.coeffs.front()) c0 += v * v;
        for (double v : gt.coeffs.back()) cT += v * v;
        const double lhs = 0.5 * cT + eps * rep.r * gt.grad2.back();
        c.require(lhs <= 0.5 * c0 * (1.0 + 1e-6), "Galerkin energy inequality failed");
    }
    return {2, "energy dissipation", c.pass, c.detail.str()};
}

// ---- criterion 3 + 5: Burgers sweeps --------------------------------------

const std::vector<double> kSweep = {2e-2, 1e-2, 5e-3, 2.5e-3};

CriterionResult criterion_sqrt_eps() {
    Check c;
    ProblemSpec spec = base_spec();
    const Grid grid = Grid::uniform(spec.domain, 512);
    const auto rep = validate_hypotheses(spec);
    for (double eps : kSweep) {
        const auto res = solve(spec, eps, grid);
        const double u0_l2 =
            std::sqrt(kernels::sum_squares_scaled(res.trajectory.states.front(), grid.h));
        const auto v = check_sqrt_eps_gradient(res.diagnostics, eps, rep.r, u0_l2);
        c.require(v.pass, "eps=" + fmt(eps) + " bound violated");
        c.note("eps=" + fmt(eps) + " measured " + fmt(v.measured_value) + " bound " +
               fmt(v.bound_value));
    }
    return {3, "sqrt-eps gradient bound", c.pass, c.detail.str()};
}

CriterionResult criterion_ut_l1() {
    Check c;
    ProblemSpec spec = base_spec();
    spec.hypothesis_class = HypothesisClass::B;
    spec.initial.kind = InitialKind::MollifiedRiemann;
    spec.initial.left = 1.0;
    spec.initial.right = 0.0;
    spec.initial.jump_location = 0.5;
    spec.initial.smoothing = 0.03;
    const Grid grid = Grid::uniform(spec.domain, 512);
    const auto rep = validate_hypotheses(spec);
    const Interval supp = initial_support(spec);
    const double dist = std::min(supp.lo - spec.domain.lo, spec.domain.hi - supp.hi);

    for (double eps : kSweep) {
        const double radius = std::min(eps, 0.45 * dist);
        const MollifiedFlux feps = mollify_flux(spec, eps);
        const MollifiedInitial minit = mollify_initial(spec, radius);
        GridFunction u0(grid.n_cells);
        for (std::size_t i = 0; i < grid.n_cells; ++i)
            u0[i] = eval_mollified_initial(spec, radius, grid.centers[i]);
        SolveOptions opts;
        opts.flux_table = &feps;
        opts.initial_override = &u0;
        const auto res = solve(spec, eps, grid, opts);
        const auto v = check_ut_l1(res.diagnostics, spec, rep, minit);
        c.require(v.pass, "eps=" + fmt(eps) + " ut bound violated: measured " +
                              fmt(v.measured_value) + " C1 " + fmt(v.bound_value));
    }
    return {5, "time-derivative L1 bound", c.pass, c.detail.str()};
}

// ---- criterion 6: mollification bounds -------------------------------------

CriterionResult criterion_mollification() {
    Check c;
    ProblemSpec spec = base_spec();
    spec.initial.kind = InitialKind::MollifiedRiemann;
    spec.initial.left = 1.0;
    spec.initial.right = 0.0;
    spec.initial.jump_location = 0.5;
    spec.initial.smoothing = 0.05;
    const double u0_linf = initial_sup_norm(spec);
    const double tv0 = initial_total_variation(spec);

    double sup_ratio = 0.0;
    double eps = 0.02;
    for (int j = 0; j < 6; ++j, eps *= 0.5) {
        const auto m = mollify_initial(spec, eps);
        c.require(m.linf <= u0_linf * (1.0 + 1e-12),
                  "||u0eps||_inf exceeded ||u0||_inf at eps=" + fmt(eps));
        c.require(m.tv <= tv0 * (1.0 + 1e-8), "TV grew under mollification at eps=" + fmt(eps));
        sup_ratio = std::max(sup_ratio, eps * m.l1_laplacian / tv0);
    }
    c.require(std::isfinite(sup_ratio), "laplacian ratio not finite");
    c.note("sup eps*||lap u0eps||_1/TV = " + fmt(sup_ratio));
    return {6, "mollification bounds", c.pass, c.detail.str()};
}

// ---- criterion 7: Galerkin fidelity ----------------------------------------

CriterionResult criterion_galerkin() {
    Check c;

    // growth bound with globally Lipschitz flux
    {
        ProblemSpec spec = base_spec();
        spec.flux = {FluxKind::LinearAdvection, 1.0, {}};
        spec.diffusion = {DiffusionKind::RationalBump, 0.0, 1.0, 0.5};
        const double eps = 5e-2;
        const std::size_t m = 12;
        const double P = galerkin_growth_constant(spec, eps, m, {-6.0, 6.0});
        std::mt19937_64 rng(20240817);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> scale(0.0, 1.0);
        int violations = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            GalerkinState st;
            st.m = m;
            st.coeffs.resize(m);
            double norm2 = 0.0;
            for (auto& v : st.coeffs) {
                v = gauss(rng);
                norm2 += v * v;
            }
            const double target = scale(rng);
            double norm = 0.0;
            for (auto& v : st.coeffs) v *= target / std::sqrt(norm2);
            const auto g = galerkin_rhs(st, eps, spec, 10);
            double g2 = 0.0;
            for (double v : g) g2 += v * v;
            for (double v : st.coeffs) norm += v * v;
            if (std::sqrt(g2) > P * std::sqrt(norm)) ++violations;
        }
        c.require(violations == 0, std::to_string(violations) + " growth-bound violations");
    }

    // heat-mode decay of the first coefficient
    {
        ProblemSpec spec = base_spec();
        spec.flux = {FluxKind::LinearAdvection, 0.0, {}};
        spec.initial.kind = InitialKind::SinePocket;
        spec.initial.modes = {1.0};
        spec.horizon = 0.5;
        const double eps = 0.1;
        const double pi = std::acos(-1.0);
        const auto gt = galerkin_solve(spec, eps, 8, spec.horizon);
        const double expected = gt.coeffs.front()[0] * std::exp(-eps * pi * pi * spec.horizon);
        const double got = gt.coeffs.back()[0];
        const double rel = std::abs(got - expected) / std::abs(expected);
        c.require(rel <= 1e-6, "c1 decay off by " + fmt(rel));
        double others = 0.0;
        for (std::size_t k = 1; k < 8; ++k) others = std::max(others, std::abs(gt.coeffs.back()[k]));
        c.require(others <= 1e-6, "higher modes leaked: " + fmt(others));
    }

    // Galerkin vs FD on the smooth advection-diffusion benchmark
    {
        ProblemSpec spec = base_spec();
        spec.flux = {FluxKind::LinearAdvection, 1.0, {}};
        spec.initial.kind = InitialKind::SinePocket;
        spec.initial.modes = {1.0};
        spec.horizon = 0.4;
        const double eps = 0.1;
        const Grid grid = Grid::uniform(spec.domain, 512);
        const auto fd = solve(spec, eps, grid);
        const auto gt = galerkin_solve(spec, eps, 32, spec.horizon);
        const GridFunction gu =
            reconstruct(gt.state_at(gt.times.size() - 1), grid, spec.domain);
        const double dist =
            l1_distance(fd.trajectory.final_state(), grid, gu, grid, grid);
        c.require(dist <= 5e-3, "Galerkin-FD L1 distance " + fmt(dist));
        c.note("Galerkin-FD L1 " + fmt(dist));
    }
    return {7, "Galerkin fidelity", c.pass, c.detail.str()};
}

// ---- criterion 8: entropy convergence --------------------------------------

CriterionResult criterion_entropy_convergence() {
    Check c;
    StudyConfig sc;
    sc.problem = base_spec();
    sc.problem.initial.height = 0.8;
    sc.problem.initial.center = 0.35;
    sc.problem.horizon = 0.5;
    sc.eps_list = kSweep;
    sc.n_cells = 1024;
    sc.workers = 2;
    const StudyTable table = run_study(sc);

    for (std::size_t i = 0; i < table.rows.size(); ++i)
        c.require(table.rows[i].ok, "row " + fmt(table.rows[i].eps) + " failed: " +
                                        table.rows[i].note);
    if (!c.pass) return {8, "entropy convergence", false, c.detail.str()};

    for (std::size_t i = 1; i < table.rows.size(); ++i)
        c.require(table.rows[i].l1_error < table.rows[i - 1].l1_error,
                  "errors not strictly decreasing at eps=" + fmt(table.rows[i].eps));
    c.require(table.rate.has_value(), "no rate fitted");
    if (table.rate) {
        c.require(*table.rate >= 0.4 && *table.rate <= 1.1,
                  "rate " + fmt(*table.rate) + " outside [0.4, 1.1]");
        c.note("rate " + fmt(*table.rate));
    }

    // residual floor of the inviscid reference
    {
        const Grid ref_grid = Grid::uniform(sc.problem.domain, 4 * sc.n_cells);
        GodunovOptions gopts;
        gopts.record_every = 16;
        const auto ref = godunov_solve(sc.problem, ref_grid, sc.problem.horizon, gopts);
        const auto probes = probe_family(sc.problem, sc.problem.horizon, sc.n_k, sc.n_phi);
        const auto residuals = residual_sweep(ref.trajectory, sc.problem, probes);
        const double floor = *std::min_element(residuals.begin(), residuals.end());
        c.require(floor >= -1e-3, "reference residual floor " + fmt(floor));
        c.note("reference floor " + fmt(floor));
    }

    // viscous floors approach zero as eps decreases (20% tolerance)
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        const double prev = table.rows[i - 1].min_entropy_residual;
        const double cur = table.rows[i].min_entropy_residual;
        c.require(cur >= prev - 0.2 * std::abs(prev),
                  "residual floor regressed at eps=" + fmt(table.rows[i].eps));
    }
    std::ostringstream floors;
    for (const auto& r : table.rows) floors << ' ' << fmt(r.min_entropy_residual);
    c.note("viscous floors" + floors.str());
    return {8, "entropy convergence", c.pass, c.detail.str()};
}

// ---- criterion 9: BLN boundary scenario ------------------------------------

CriterionResult criterion_bln() {
    Check c;
    ProblemSpec spec = base_spec();
    spec.initial.kind = InitialKind::MollifiedRiemann;
    spec.initial.left = 1.0;
    spec.initial.right = 0.0;
    spec.initial.jump_location = 0.45;
    spec.initial.smoothing = 0.04;
    spec.horizon = 1.4;

    const Grid grid = Grid::uniform(spec.domain, 512);
    GodunovOptions gopts;
    gopts.record_every = 8;
    const auto ref = godunov_solve(spec, grid, spec.horizon, gopts);
    const auto trace = boundary_trace(ref.trajectory, spec.domain);
    const auto rep = bln_ordered_check(trace, spec);
    c.require(rep.pass(1e-3), "reference trace violated BLN by " + fmt(rep.worst_violation));
    double max_right = 0.0;
    for (double v : trace.right) max_right = std::max(max_right, v);
    c.require(max_right > 0.5, "shock never reached the right boundary");
    c.note("worst violation " + fmt(rep.worst_violation) + ", peak right trace " +
           fmt(max_right));

    // mirrored inadmissible fixture: upstream state parked at the LEFT wall
    BoundaryTrace bad;
    bad.times = {0.0, 0.1};
    bad.left = {1.0, 1.0};
    bad.right = {0.0, 0.0};
    const auto rep_bad = bln_ordered_check(bad, spec);
    c.require(!rep_bad.pass(1e-3), "inadmissible fixture not flagged");
    return {9, "BLN boundary scenario", c.pass, c.detail.str()};
}

// ---- criterion 10: continuous dependence -----------------------------------

CriterionResult criterion_continuous_dependence() {
    Check c;

    // pure diffusion: max-norm contraction
    {
        ProblemSpec spec = base_spec();
        spec.flux = {FluxKind::LinearAdvection, 0.0, {}};
        spec.horizon = 0.2;
        const Grid grid = Grid::uniform(spec.domain, 128);
        const GridFunction u0 = sample_initial(spec, grid);
        GridFunction v0 = u0;
        ProblemSpec pert = spec;
        pert.initial.height = 1e-2;
        pert.initial.center = 0.55;
        pert.initial.width = 0.15;
        const GridFunction bumped = sample_initial(pert, grid);
        for (std::size_t i = 0; i < v0.size(); ++i) v0[i] += bumped[i];
        const auto res = check_continuous_dependence(spec, 5e-2, u0, v0, grid);
        c.require(res.ratio <= 1.0 + 1e-12, "heat ratio " + fmt(res.ratio) + " > 1");
    }

    // smooth Burgers regime: ratios stable across perturbation sizes
    {
        ProblemSpec spec = base_spec();
        spec.initial.height = 0.5;
        spec.horizon = 0.25;
        const Grid grid = Grid::uniform(spec.domain, 128);
        const GridFunction u0 = sample_initial(spec, grid);
        std::vector<double> ratios;
        for (double delta : {1e-1, 1e-2, 1e-3}) {
            ProblemSpec pert = spec;
            pert.initial.height = delta;
            pert.initial.center = 0.45;
            pert.initial.width = 0.15;
            const GridFunction bumped = sample_initial(pert, grid);
            GridFunction v0 = u0;
            for (std::size_t i = 0; i < v0.size(); ++i) v0[i] += bumped[i];
            const auto res = check_continuous_dependence(spec, 5e-2, u0, v0, grid);
            c.require(std::isfinite(res.ratio), "ratio not finite");
            c.require(res.verdict.pass, "ratio exceeded exp(lambda T)");
            ratios.push_back(res.ratio);
        }
        const double lo = *std::min_element(ratios.begin(), ratios.end());
        const double hi = *std::max_element(ratios.begin(), ratios.end());
        c.require(hi <= 2.0 * lo, "ratio variation " + fmt(hi / lo) + "x exceeds 2x");
        c.note("ratios " + fmt(ratios[0]) + " " + fmt(ratios[1]) + " " + fmt(ratios[2]));
    }
    return {10, "continuous dependence", c.pass, c.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(bool verbose) {
    std::vector<CriterionResult> results;
    const auto matrix = run_matrix();
    results.push_back(criterion_max_principle(matrix));
    results.push_back(criterion_energy());
    results.push_back(criterion_sqrt_eps());
    results.push_back(criterion_tv(matrix));
    results.push_back(criterion_ut_l1());
    results.push_back(criterion_mollification());
    results.push_back(criterion_galerkin());
    results.push_back(criterion_entropy_convergence());
    results.push_back(criterion_bln());
    results.push_back(criterion_continuous_dependence());
    std::sort(results.begin(), results.end(),
              [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
    if (verbose) {
        for (const auto& r : results)
            std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name
                      << ')' << (r.detail.empty() ? "" : ": " + r.detail) << '\n';
    }
    return results;
}

}  // namespace visclab
