#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "visclab/solver_fd.hpp"

using namespace visclab;

namespace {

ProblemSpec burgers_bump() {
    ProblemSpec s;
    s.domain = {0.0, 1.0};
    s.horizon = 0.3;
    s.initial.kind = InitialKind::CompactBump;
    s.initial.center = 0.4;
    s.initial.width = 0.2;
    s.initial.height = 1.0;
    return s;
}

HypothesisReport fake_report(double M, double b_max) {
    HypothesisReport r;
    r.M = M;
    r.r = 1.0;
    r.b_max = b_max;
    r.I = {-1.0, 1.0};
    return r;
}

}  // namespace

TEST_CASE("cfl_dt formulas") {
    Grid g;
    g.n_cells = 100;
    g.h = 0.01;
    CHECK(cfl_dt(fake_report(1.0, 1.0), g, 1e-2, 0.4, 10.0) == doctest::Approx(0.004));
    CHECK(cfl_dt(fake_report(2.0, 1.0), g, 1e-2, 0.4, 10.0) == doctest::Approx(0.002));
    // explicit mode takes the diffusive branch: 0.4*h^2/(2*eps*||B||) = 0.002
    CHECK(cfl_dt(fake_report(1.0, 1.0), g, 0.01, 0.4, 10.0, TimeMode::Explicit) ==
          doctest::Approx(0.002));
    // degenerate dynamics
    CHECK(cfl_dt(fake_report(0.0, 1.0), g, 0.0, 0.4, 10.0) == doctest::Approx(0.04));
    CHECK_THROWS_AS(cfl_dt(fake_report(1.0, 1.0), g, 0.0, 1.5, 1.0), std::invalid_argument);
}

TEST_CASE("local Lax-Friedrichs flux") {
    const ProblemSpec s = burgers_bump();
    CHECK(numerical_flux(0.7, 0.7, s) == doctest::Approx(0.245).epsilon(1e-14));
    // alpha = 1 on [0,1]: 0.5*(0.5+0) - 0.5*1*(0-1) = 0.75
    CHECK(numerical_flux(1.0, 0.0, s) == doctest::Approx(0.75).epsilon(1e-14));

    ProblemSpec adv = burgers_bump();
    adv.flux = {FluxKind::LinearAdvection, 2.0, {}};
    // LLF with alpha = a reduces to upwind
    CHECK(numerical_flux(0.3, -0.8, adv) == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("imex step basics") {
    const ProblemSpec s = burgers_bump();
    const auto rep = validate_hypotheses(s);
    const Grid g = Grid::uniform(s.domain, 64);
    StepWorkspace ws;
    const FluxOracle flux(s);

    SUBCASE("zero state is a fixed point") {
        GridFunction u(64, 0.0);
        step_imex(u, 1e-3, 1e-2, s, flux, rep, g, ws);
        for (double v : u) CHECK(v == 0.0);
    }

    SUBCASE("pure diffusion damps a spike and keeps the mass ledger") {
        ProblemSpec heat = s;
        heat.flux = {FluxKind::LinearAdvection, 0.0, {}};
        const auto hrep = validate_hypotheses(heat);
        GridFunction u(64, 0.0);
        u[32] = 1.0;
        const double mass0 = kernels::sum_scaled(u, g.h);
        const double max0 = kernels::max_abs(u);
        const double dt = 1e-3;
        const auto st = step_imex(u, dt, 0.5, heat, FluxOracle(heat), hrep, g, ws);
        const double mass1 = kernels::sum_scaled(u, g.h);
        CHECK(kernels::max_abs(u) < max0);
        const double ledger = mass1 - mass0 + dt * (st.advective_right - st.advective_left) -
                              dt * (st.diffusive_right - st.diffusive_left);
        CHECK(std::abs(ledger) <= 1e-12);
    }
}

TEST_CASE("eps = 0 path is bit-identical to a plain LLF solver") {
    const ProblemSpec s = burgers_bump();
    const Grid g = Grid::uniform(s.domain, 128);
    SolveOptions opts;
    opts.min_steps = 0;
    opts.record_every = 1;
    const auto res = solve(s, 0.0, g, opts);

    // independent explicit LLF loop
    const auto rep = validate_hypotheses(s);
    GridFunction u = sample_initial(s, g);
    double dt = 0.4 * g.h / std::max(rep.M, 1e-12);
    const auto n_steps = static_cast<std::size_t>(std::ceil(s.horizon / dt - 1e-12));
    dt = s.horizon / static_cast<double>(n_steps);
    const double lambda = dt / g.h;
    for (std::size_t step = 0; step < n_steps; ++step) {
        std::vector<double> faces(u.size() + 1);
        faces[0] = numerical_flux(0.0, u[0], s);
        for (std::size_t i = 1; i < u.size(); ++i) faces[i] = numerical_flux(u[i - 1], u[i], s);
        faces[u.size()] = numerical_flux(u.back(), 0.0, s);
        GridFunction next(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            next[i] = u[i] - lambda * (faces[i + 1] - faces[i]);
        u = next;
    }
    REQUIRE(res.trajectory.final_state().size() == u.size());
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(res.trajectory.final_state()[i] == u[i]);
}

TEST_CASE("horizon zero returns the initial state only") {
    ProblemSpec s = burgers_bump();
    s.horizon = 0.0;
    const Grid g = Grid::uniform(s.domain, 64);
    const auto res = solve(s, 1e-2, g);
    CHECK(res.trajectory.states.size() == 1);
    CHECK(res.trajectory.times == std::vector<double>{0.0});
}

TEST_CASE("heat mode decays at the exact rate") {
    ProblemSpec s = burgers_bump();
    s.flux = {FluxKind::LinearAdvection, 0.0, {}};
    s.initial.kind = InitialKind::SinePocket;
    s.initial.modes = {1.0};
    s.horizon = 0.5;
    const double eps = 0.1;
    const Grid g = Grid::uniform(s.domain, 256);
    const auto res = solve(s, eps, g);
    const double pi = std::acos(-1.0);
    const double expected = std::exp(-eps * pi * pi * s.horizon) * res.diagnostics.l2.front();
    CHECK(res.diagnostics.l2.back() ==
          doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("viscous Burgers shock travels at the Rankine-Hugoniot speed") {
    ProblemSpec s = burgers_bump();
    s.initial.kind = InitialKind::MollifiedRiemann;
    s.initial.left = 1.0;
    s.initial.right = 0.0;
    s.initial.jump_location = 0.4;
    s.initial.smoothing = 0.03;
    s.horizon = 0.4;
    const Grid g = Grid::uniform(s.domain, 512);
    SolveOptions opts;
    opts.record_every = 4;
    const auto res = solve(s, 1e-3, g, opts);

    // midpoint (u = 0.5) crossing position at two times
    auto crossing = [&](const GridFunction& u) {
        for (std::size_t i = g.n_cells - 1; i > 0; --i)
            if (u[i] < 0.5 && u[i - 1] >= 0.5) {
                const double t = (0.5 - u[i - 1]) / (u[i] - u[i - 1]);
                return g.centers[i - 1] + t * g.h;
            }
        return 0.0;
    };
    const std::size_t last = res.trajectory.times.size() - 1;
    std::size_t first = 0;
    while (res.trajectory.times[first] < 0.1) ++first;
    const double dx = crossing(res.trajectory.states[last]) -
                      crossing(res.trajectory.states[first]);
    const double dtw = res.trajectory.times[last] - res.trajectory.times[first];
    CHECK(dx / dtw == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("discrete maximum principle with zero Dirichlet data") {
    for (double eps : {0.0, 1e-3, 5e-2}) {
        const ProblemSpec s = burgers_bump();
        const Grid g = Grid::uniform(s.domain, 128);
        SolveOptions opts;
        opts.record_every = 1;
        const auto res = solve(s, eps, g, opts);
        const auto& u0 = res.trajectory.states.front();
        double lo = 0.0, hi = 0.0;
        for (double v : u0) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        std::size_t violations = 0;
        for (const auto& state : res.trajectory.states)
            for (double v : state)
                if (v < lo - 1e-12 || v > hi + 1e-12) ++violations;
        CHECK(violations == 0);
    }
}

TEST_CASE("diagnostics arrays stay aligned and accumulators nondecreasing") {
    const ProblemSpec s = burgers_bump();
    const Grid g = Grid::uniform(s.domain, 64);
    const auto res = solve(s, 1e-2, g);
    const auto& d = res.diagnostics;
    CHECK(d.linf.size() == d.times.size());
    CHECK(d.l2.size() == d.times.size());
    CHECK(d.tv.size() == d.times.size());
    CHECK(d.grad_l2_acc_b.size() == d.times.size());
    CHECK(d.grad_l2_acc.size() == d.times.size());
    CHECK(d.ut_l1_acc.size() == d.times.size());
    for (std::size_t i = 1; i < d.times.size(); ++i) {
        CHECK(d.grad_l2_acc[i] >= d.grad_l2_acc[i - 1]);
        CHECK(d.grad_l2_acc_b[i] >= d.grad_l2_acc_b[i - 1]);
        CHECK(d.ut_l1_acc[i] >= d.ut_l1_acc[i - 1]);
    }
}

TEST_CASE("NaN detection aborts with the offending step") {
    const ProblemSpec s = burgers_bump();
    const Grid g = Grid::uniform(s.domain, 64);
    GridFunction u0(64, 0.0);
    u0[10] = std::numeric_limits<double>::quiet_NaN();
    SolveOptions opts;
    opts.initial_override = &u0;
    CHECK_THROWS_AS(solve(s, 1e-2, g, opts), StepError);
}

TEST_CASE("per-step conservation ledger at 1e-12") {
    const ProblemSpec s = burgers_bump();
    const auto rep = validate_hypotheses(s);
    const Grid g = Grid::uniform(s.domain, 128);
    GridFunction u = sample_initial(s, g);
    StepWorkspace ws;
    const FluxOracle flux(s);
    const double dt = 5e-4;
    for (int step = 0; step < 50; ++step) {
        const double mass0 = kernels::sum_scaled(u, g.h);
        const auto st = step_imex(u, dt, 1e-2, s, flux, rep, g, ws);
        const double mass1 = kernels::sum_scaled(u, g.h);
        const double ledger = mass1 - mass0 + dt * (st.advective_right - st.advective_left) -
                              dt * (st.diffusive_right - st.diffusive_left);
        CHECK(std::abs(ledger) <= 1e-12);
    }
}
