#include "visclab/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "visclab/solver_fd.hpp"

namespace visclab {

double godunov_flux(double ul, double ur, const ProblemSpec& spec) {
    switch (spec.flux.kind) {
        case FluxKind::Burgers: {
            // Convex-flux Osher form with sonic point 0.
            return std::max(eval_flux(spec, std::max(ul, 0.0)),
                            eval_flux(spec, std::min(ur, 0.0)));
        }
        case FluxKind::LinearAdvection:
            return spec.flux.speed >= 0.0 ? eval_flux(spec, ul) : eval_flux(spec, ur);
        case FluxKind::Polynomial:
            // No convexity certificate: monotone LLF fallback.
            return numerical_flux(ul, ur, spec);
    }
    return 0.0;
}

ReferenceSolution godunov_solve(const ProblemSpec& spec, const Grid& grid, double T,
                                const GodunovOptions& opts) {
    if (!(opts.cfl > 0.0 && opts.cfl <= 0.9))
        throw std::invalid_argument("godunov_solve: CFL must lie in (0, 0.9]");
    const HypothesisReport report = validate_hypotheses(spec);

    ReferenceSolution out;
    out.grid = grid;
    out.provenance = Provenance::Godunov;
    if (spec.flux.kind == FluxKind::Polynomial)
        out.flux_note = "polynomial flux without convexity certificate: LLF fallback";
    out.trajectory.grid = grid;
    out.trajectory.eps = 0.0;
    out.trajectory.scheme = "godunov";

    GridFunction u = sample_initial(spec, grid);
    const double gl = opts.boundary == BoundaryMode::FarField ? u.front() : 0.0;
    const double gr = opts.boundary == BoundaryMode::FarField ? u.back() : 0.0;

    out.trajectory.times.push_back(0.0);
    out.trajectory.states.push_back(u);
    if (T <= 0.0) return out;

    double dt = opts.cfl * grid.h / std::max(report.M, 1e-12);
    dt = std::min(dt, T);
    const auto n_steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-12));
    dt = T / static_cast<double>(n_steps);

    const std::size_t n = u.size();
    std::vector<double> faces(n + 1);
    const double lambda = dt / grid.h;
    const kernels::Exec exec =
        (opts.exec == kernels::Exec::Parallel && n >= 32768) ? kernels::Exec::Parallel
                                                             : kernels::Exec::Serial;
    for (std::size_t step = 1; step <= n_steps; ++step) {
        const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
        if (exec == kernels::Exec::Parallel) {
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t i = 0; i <= nn; ++i) {
                const double a = (i == 0) ? gl : u[static_cast<std::size_t>(i - 1)];
                const double b = (i == nn) ? gr : u[static_cast<std::size_t>(i)];
                faces[static_cast<std::size_t>(i)] = godunov_flux(a, b, spec);
            }
        } else {
            faces[0] = godunov_flux(gl, u[0], spec);
            for (std::size_t i = 1; i < n; ++i) faces[i] = godunov_flux(u[i - 1], u[i], spec);
            faces[n] = godunov_flux(u[n - 1], gr, spec);
        }
        kernels::conservative_update(u, faces, lambda, u, exec);

        if (step % opts.record_every == 0 || step == n_steps) {
            out.trajectory.times.push_back(dt * static_cast<double>(step));
            out.trajectory.states.push_back(u);
        }
    }
    return out;
}

BurgersClosedForm BurgersClosedForm::make(BurgersCase c, double ul, double ur, double x0,
                                          const Interval& domain) {
    BurgersClosedForm f{c, ul, ur, x0, 0.0};
    const double a = domain.lo, b = domain.hi;
    switch (c) {
        case BurgersCase::PureShock: {
            if (!(ul > ur && ur >= 0.0))
                throw std::invalid_argument("pure_shock requires ul > ur >= 0");
            const double s = 0.5 * (ul + ur);
            // shock exit on the right, or the left-boundary wave reaching x0
            const double exit_t = s > 0.0 ? (b - x0) / s : std::numeric_limits<double>::infinity();
            const double contaminate_t = ul > 0.0 ? (x0 - a) / ul : exit_t;
            f.valid_until = std::min(exit_t, contaminate_t);
            break;
        }
        case BurgersCase::PureRarefaction: {
            if (!(ul < ur)) throw std::invalid_argument("pure_rarefaction requires ul < ur");
            const double head = std::max(ur, 0.0);
            const double tail = std::min(ul, 0.0);
            const double right_t =
                head > 0.0 ? (b - x0) / head : std::numeric_limits<double>::infinity();
            const double left_t =
                tail < 0.0 ? (x0 - a) / (-tail) : std::numeric_limits<double>::infinity();
            f.valid_until = std::min(right_t, left_t);
            break;
        }
        case BurgersCase::ParkedShock: {
            // zero-speed shock ul = -ur > 0 parked at x0
            if (!(ul > 0.0) || std::abs(ul + ur) > 1e-12)
                throw std::invalid_argument("parked_shock requires ur = -ul < 0");
            f.valid_until = std::min((x0 - a) / ul, (b - x0) / ul);
            break;
        }
    }
    return f;
}

double BurgersClosedForm::operator()(double x, double t) const {
    if (t < 0.0 || t > valid_until)
        throw OutOfValidity("burgers_closed_form: query outside validity window");
    switch (case_id) {
        case BurgersCase::PureShock: {
            const double s = 0.5 * (ul + ur);
            return x < x0 + s * t ? ul : ur;
        }
        case BurgersCase::PureRarefaction: {
            if (t == 0.0) return x < x0 ? ul : ur;
            return std::clamp((x - x0) / t, ul, ur);
        }
        case BurgersCase::ParkedShock:
            return x < x0 ? ul : ur;
    }
    return 0.0;
}

GridFunction restrict_to(const GridFunction& fine, const Grid& fine_grid, const Grid& coarse) {
    if (fine_grid.n_cells == coarse.n_cells) return fine;
    if (fine_grid.n_cells % coarse.n_cells != 0)
        throw std::invalid_argument("restrict_to: grids are not nested");
    const std::size_t ratio = fine_grid.n_cells / coarse.n_cells;
    GridFunction out(coarse.n_cells, 0.0);
    for (std::size_t i = 0; i < coarse.n_cells; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < ratio; ++j) acc += fine[i * ratio + j];
        out[i] = acc / static_cast<double>(ratio);
    }
    return out;
}

double l1_distance(const GridFunction& a, const Grid& grid_a, const GridFunction& b,
                   const Grid& grid_b, const Grid& common) {
    const GridFunction ra = restrict_to(a, grid_a, common);
    const GridFunction rb = restrict_to(b, grid_b, common);
    double acc = 0.0;
    for (std::size_t i = 0; i < common.n_cells; ++i) acc += std::abs(ra[i] - rb[i]);
    return common.h * acc;
}

}  // namespace visclab
