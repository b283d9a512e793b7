#pragma once

#include <string>

#include "visclab/grid.hpp"
#include "visclab/kernels.hpp"
#include "visclab/problem.hpp"

namespace visclab {

enum class Provenance { Godunov, ClosedForm };

// Ghost-cell policy for the hyperbolic reference runs. BLN enforcement uses
// ghost datum 0 (boundary Riemann problems); FarField carries the initial
// end states, for comparison against Cauchy closed forms.
enum class BoundaryMode { BlnDirichletZero, FarField };

struct ReferenceSolution {
    Grid grid;
    Trajectory trajectory;
    Provenance provenance = Provenance::Godunov;
    std::string flux_note;  // set when a non-convex flux fell back to LLF
};

// Exact Riemann flux for the convex built-ins; Polynomial falls back to
// local Lax-Friedrichs (noted in the solution's flux_note).
double godunov_flux(double ul, double ur, const ProblemSpec& spec);

struct GodunovOptions {
    double cfl = 0.45;
    std::size_t record_every = 1;
    BoundaryMode boundary = BoundaryMode::BlnDirichletZero;
    kernels::Exec exec = kernels::default_exec();
};

ReferenceSolution godunov_solve(const ProblemSpec& spec, const Grid& grid, double T,
                                const GodunovOptions& opts = {});

enum class BurgersCase { PureShock, PureRarefaction, ParkedShock };

struct OutOfValidity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BurgersClosedForm {
    BurgersCase case_id;
    double ul = 1.0;
    double ur = 0.0;
    double x0 = 0.5;
    double valid_until = 0.0;  // first boundary-interaction time; set by make()

    double operator()(double x, double t) const;
    static BurgersClosedForm make(BurgersCase c, double ul, double ur, double x0,
                                  const Interval& domain);
};

// h * sum |a_i - b_i| at matching resolution; a finer field is restricted to
// the common grid by conservative averaging (its cell count must be an
// integer multiple).
double l1_distance(const GridFunction& a, const Grid& grid_a, const GridFunction& b,
                   const Grid& grid_b, const Grid& common);

GridFunction restrict_to(const GridFunction& fine, const Grid& fine_grid, const Grid& coarse);

}  // namespace visclab
