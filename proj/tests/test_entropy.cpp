#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "visclab/entropy.hpp"
#include "visclab/reference.hpp"

using namespace visclab;

namespace {

ProblemSpec burgers_bump() {
    ProblemSpec s;
    s.domain = {0.0, 1.0};
    s.horizon = 0.4;
    s.initial.kind = InitialKind::CompactBump;
    s.initial.center = 0.35;
    s.initial.width = 0.2;
    s.initial.height = 0.8;
    return s;
}

Trajectory constant_trajectory(double value, std::size_t n, double T) {
    Trajectory traj;
    traj.grid = Grid::uniform({0.0, 1.0}, n);
    traj.times = {0.0, 0.5 * T, T};
    traj.states.assign(3, GridFunction(n, value));
    return traj;
}

}  // namespace

TEST_CASE("sg_n and sg") {
    CHECK(sg_n(0.5, 10) == 1.0);
    CHECK(sg_n(0.05, 10) == doctest::Approx(0.5));
    CHECK(sg_n(-0.2, 4) == doctest::Approx(-0.8));
    CHECK(sg_n(-0.5, 10) == -1.0);
    CHECK(sg(0.0) == 0.0);
    CHECK(sg(3.0) == 1.0);
    CHECK(sg(-0.1) == -1.0);
    CHECK_THROWS_AS(sg_n(0.1, 0), std::invalid_argument);

    for (int n : {1, 3, 10, 100}) {
        for (int i = -50; i <= 50; ++i) {
            const double s = i / 10.0;
            const double gap = std::abs(sg_n(s, n) - sg(s));
            CHECK(gap <= 1.0);
            if (std::abs(s) > 1.0 / n) CHECK(gap == 0.0);
        }
    }
}

TEST_CASE("kruzhkov cutoff properties") {
    const Grid g = Grid::uniform({0.0, 1.0}, 128);
    const Interval dom{0.0, 1.0};
    for (double delta : {0.05, 0.1, 0.2}) {
        const auto rho = kruzhkov_cutoff(delta, g, dom);
        CHECK(rho.values.front() == 1.0);
        CHECK(rho.values.back() == 1.0);
        CHECK(rho.values[g.n_cells / 2] == 0.0);
        for (double v : rho.values) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        CHECK(rho.grad_bound_c <= 2.0);
    }
    CHECK_THROWS_AS(kruzhkov_cutoff(2.0 * g.h, g, dom), std::invalid_argument);
}

TEST_CASE("boundary trace extrapolation") {
    const Interval dom{0.0, 1.0};
    SUBCASE("constant interior") {
        const auto tr = boundary_trace(constant_trajectory(0.7, 64, 1.0), dom);
        for (double v : tr.left) CHECK(v == doctest::Approx(0.7).epsilon(1e-13));
        for (double v : tr.right) CHECK(v == doctest::Approx(0.7).epsilon(1e-13));
    }
    SUBCASE("linear profile is reproduced exactly") {
        Trajectory traj;
        traj.grid = Grid::uniform(dom, 64);
        traj.times = {0.0};
        GridFunction u(64);
        for (std::size_t i = 0; i < 64; ++i) u[i] = traj.grid.centers[i];
        traj.states = {u};
        const auto tr = boundary_trace(traj, dom);
        CHECK(tr.left[0] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(tr.right[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("too few cells") {
        Trajectory traj;
        traj.grid.n_cells = 3;
        traj.grid.h = 1.0 / 3.0;
        traj.grid.centers = {1.0 / 6, 0.5, 5.0 / 6};
        traj.times = {0.0};
        traj.states = {GridFunction(3, 0.0)};
        CHECK_THROWS_AS(boundary_trace(traj, dom), std::invalid_argument);
    }
}

TEST_CASE("entropy residual basics") {
    const ProblemSpec s = burgers_bump();
    const Trajectory traj = constant_trajectory(0.0, 64, 0.4);
    EntropyProbe probe;
    probe.k = 0.0;
    probe.phi = TestFunction{0.5, 0.3, 0.2, 0.15};
    CHECK(entropy_residual(traj, s, probe) == 0.0);

    // phi supported outside the recorded window
    probe.phi.t_center = 10.0;
    probe.phi.t_width = 0.5;
    const Trajectory bumpy = constant_trajectory(0.5, 64, 0.4);
    CHECK(entropy_residual(bumpy, s, probe) == 0.0);
}

TEST_CASE("entropy residual is linear in phi and shift-invariant in f") {
    const ProblemSpec s = burgers_bump();
    const Grid g = Grid::uniform(s.domain, 256);
    GodunovOptions gopts;
    gopts.record_every = 4;
    const auto ref = godunov_solve(s, g, s.horizon, gopts);

    EntropyProbe probe;
    probe.k = 0.3;
    probe.phi = TestFunction{0.45, 0.25, 0.2, 0.12};
    const double r1 = entropy_residual(ref.trajectory, s, probe);
    CHECK(std::isfinite(r1));

    EntropyProbe scaled = probe;
    scaled.phi.amplitude = 2.5;
    const double r_scaled = entropy_residual(ref.trajectory, s, scaled);
    CHECK(r_scaled == doctest::Approx(2.5 * r1).epsilon(1e-12));

    // adding a constant to the flux leaves the residual unchanged
    ProblemSpec shifted = s;
    shifted.flux = {FluxKind::Polynomial, 0.0, {5.0, 0.0, 0.5}};  // 5 + u^2/2
    const double r_shift = entropy_residual(ref.trajectory, shifted, probe);
    ProblemSpec plain = s;
    plain.flux = {FluxKind::Polynomial, 0.0, {0.0, 0.0, 0.5}};
    const double r_plain = entropy_residual(ref.trajectory, plain, probe);
    CHECK(r_shift == doctest::Approx(r_plain).epsilon(1e-12));
}

TEST_CASE("probe family geometry") {
    const ProblemSpec s = burgers_bump();  // I = [-0.8, 0.8]
    SUBCASE("single k sits at the midpoint of the padded interval") {
        const auto probes = probe_family(s, 0.4, 1, 3);
        for (const auto& p : probes) CHECK(p.k == doctest::Approx(0.0));
    }
    SUBCASE("k values span I padded by one") {
        const auto probes = probe_family(s, 0.4, 9, 1);
        double klo = 1e300, khi = -1e300;
        for (const auto& p : probes) {
            klo = std::min(klo, p.k);
            khi = std::max(khi, p.k);
        }
        CHECK(klo == doctest::Approx(-1.8));
        CHECK(khi == doctest::Approx(1.8));
    }
    SUBCASE("bumps cover every cell and hug the boundary") {
        const auto probes = probe_family(s, 0.4, 1, 12);
        const Grid g = Grid::uniform(s.domain, 128);
        for (std::size_t i = 0; i < g.n_cells; ++i) {
            double cover = 0.0;
            for (const auto& p : probes)
                cover += p.phi.phi(g.centers[i], p.phi.t_center);
            CHECK(cover > 0.0);
        }
        bool boundary_bump = false;
        for (const auto& p : probes)
            if (p.phi.phi(s.domain.lo, p.phi.t_center) > 0.0) boundary_bump = true;
        CHECK(boundary_bump);
    }
    CHECK_THROWS_AS(probe_family(s, 0.4, 0, 1), std::invalid_argument);
}

TEST_CASE("reference Burgers field has a nonnegative residual floor") {
    const ProblemSpec s = burgers_bump();
    const Grid g = Grid::uniform(s.domain, 1024);
    GodunovOptions gopts;
    gopts.record_every = 8;
    const auto ref = godunov_solve(s, g, s.horizon, gopts);
    const auto probes = probe_family(s, s.horizon, 5, 6);
    const auto residuals = residual_sweep(ref.trajectory, s, probes);
    CHECK(*std::min_element(residuals.begin(), residuals.end()) >= -1e-3);
}

TEST_CASE("BLN ordered check") {
    ProblemSpec s = burgers_bump();
    SUBCASE("zero trace is vacuous") {
        BoundaryTrace tr;
        tr.times = {0.0};
        tr.left = {0.0};
        tr.right = {0.0};
        CHECK(bln_ordered_check(tr, s).pass());
    }
    SUBCASE("outflow shock at the right boundary is admissible") {
        BoundaryTrace tr;
        tr.times = {0.0};
        tr.left = {0.0};
        tr.right = {1.0};
        const auto rep = bln_ordered_check(tr, s);
        CHECK(rep.pass(1e-12));
    }
    SUBCASE("the mirrored trace at the left boundary is flagged") {
        BoundaryTrace tr;
        tr.times = {0.0};
        tr.left = {1.0};
        tr.right = {0.0};
        const auto rep = bln_ordered_check(tr, s);
        CHECK(!rep.pass(1e-3));
        CHECK(rep.worst_violation == doctest::Approx(-0.5));
        CHECK(rep.left_side);
    }
}
