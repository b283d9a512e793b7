// Timings for the OpenMP kernels against their serial references, plus a
// whole-solve comparison. Build with -DVISCLAB_ENABLE_OPENMP=ON to see any
// speedup; without OpenMP both columns match.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "visclab/kernels.hpp"
#include "visclab/problem.hpp"
#include "visclab/reference.hpp"
#include "visclab/solver_fd.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace visclab;

namespace {

double time_of(const std::function<void()>& fn, int reps) {
    fn();  // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.3f us %10.3f us   x%.2f\n", name, serial * 1e6, parallel * 1e6,
                parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel variants run serially\n");
#endif
    std::printf("%-28s %13s %13s\n", "kernel", "serial", "parallel");

    ProblemSpec spec;
    spec.flux.kind = FluxKind::Burgers;
    spec.domain = {0.0, 1.0};
    spec.horizon = 0.05;
    spec.initial.kind = InitialKind::CompactBump;
    spec.initial.center = 0.4;
    spec.initial.width = 0.2;
    spec.initial.height = 1.0;
    const FluxOracle flux(spec);

    for (std::size_t n : {std::size_t{1} << 14, std::size_t{1} << 17, std::size_t{1} << 20}) {
        std::vector<double> u(n), faces(n + 1), out(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = std::sin(7.0 * static_cast<double>(i) / n);

        char label[64];
        auto flux_fn = [&](double a, double b) { return numerical_flux(a, b, flux); };
        std::snprintf(label, sizeof(label), "face_sweep n=%zu", n);
        report(label,
               time_of([&] { kernels::face_sweep_serial(u, faces, flux_fn); }, 5),
               time_of([&] { kernels::face_sweep_parallel(u, faces, flux_fn); }, 5));

        std::snprintf(label, sizeof(label), "conservative_update n=%zu", n);
        report(label,
               time_of([&] { kernels::conservative_update_serial(u, faces, 0.5, out); }, 20),
               time_of([&] { kernels::conservative_update_parallel(u, faces, 0.5, out); }, 20));

        auto b_fn = [&](double v) { return eval_B(spec, v); };
        std::snprintf(label, sizeof(label), "face_coefficients n=%zu", n);
        report(label,
               time_of([&] { kernels::face_coefficients_serial(u, faces, b_fn); }, 10),
               time_of([&] { kernels::face_coefficients_parallel(u, faces, b_fn); }, 10));
    }

    {
        // whole-solve comparison above the in-solver parallel threshold
        const std::size_t n = 1u << 17;
        const Grid grid = Grid::uniform(spec.domain, n);
        ProblemSpec run = spec;
        run.horizon = 64.0 * 0.4 * grid.h;  // ~64 advective steps
        SolveOptions s_opts;
        s_opts.exec = kernels::Exec::Serial;
        s_opts.min_steps = 0;
        s_opts.record_every = 1 << 30;
        SolveOptions p_opts = s_opts;
        p_opts.exec = kernels::Exec::Parallel;
        report("solve eps=1e-3 n=131072",
               time_of([&] { solve(run, 1e-3, grid, s_opts); }, 2),
               time_of([&] { solve(run, 1e-3, grid, p_opts); }, 2));

        GodunovOptions gs, gp;
        gs.exec = kernels::Exec::Serial;
        gp.exec = kernels::Exec::Parallel;
        gs.record_every = gp.record_every = 1 << 30;
        report("godunov n=131072",
               time_of([&] { godunov_solve(run, grid, run.horizon, gs); }, 2),
               time_of([&] { godunov_solve(run, grid, run.horizon, gp); }, 2));
    }
    return 0;
}
