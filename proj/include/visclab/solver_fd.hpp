#pragma once

#include <optional>
#include <stdexcept>

#include "visclab/grid.hpp"
#include "visclab/kernels.hpp"
#include "visclab/mollify.hpp"
#include "visclab/problem.hpp"

namespace visclab {

struct StepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flux seen by the solvers: either the problem's closed form or a tabulated
// regularization f_eps (Hypothesis B/C pipelines).
class FluxOracle {
  public:
    explicit FluxOracle(const ProblemSpec& spec) : spec_(&spec) {}
    FluxOracle(const ProblemSpec& spec, const MollifiedFlux& table)
        : spec_(&spec), table_(&table) {}

    double value(double u) const {
        return table_ ? table_->value(u) : eval_flux(*spec_, u);
    }
    double deriv(double u) const {
        return table_ ? table_->deriv(u) : eval_flux_prime(*spec_, u);
    }
    double max_abs_deriv(double lo, double hi) const {
        return table_ ? table_->max_abs_deriv(lo, hi) : max_abs_flux_prime(*spec_, lo, hi);
    }
    bool mollified() const { return table_ != nullptr; }

  private:
    const ProblemSpec* spec_;
    const MollifiedFlux* table_ = nullptr;
};

enum class TimeMode { Imex, Explicit };

// dt = cfl * h / max(M, 1e-12); the explicit mode additionally respects the
// diffusive bound cfl * h^2 / (2 eps ||B||). M = 0 and eps = 0 degenerates
// to cfl * horizon / 100.
double cfl_dt(const HypothesisReport& report, const Grid& grid, double eps, double cfl,
              double horizon, TimeMode mode = TimeMode::Imex);

// Local Lax-Friedrichs flux; consistent, monotone under the CFL bound.
double numerical_flux(double ul, double ur, const ProblemSpec& spec);
double numerical_flux(double ul, double ur, const FluxOracle& flux);

struct StepWorkspace {
    std::vector<double> faces;     // advective face fluxes, size n+1
    std::vector<double> bface;     // face diffusion coefficients, size n+1
    std::vector<double> lo, diag, up, rhs, scratch;
    void resize(std::size_t n);
};

struct StepStats {
    double advective_left = 0.0;   // F at the left boundary face
    double advective_right = 0.0;  // F at the right boundary face
    double diffusive_left = 0.0;   // eps * B (u_0 - 0)/h at the left face
    double diffusive_right = 0.0;  // eps * B (0 - u_{n-1})/h at the right face
    std::size_t clipped = 0;
};

// One IMEX step: explicit LLF advection, then backward-Euler diffusion with
// face coefficients frozen at the incoming state. M-matrix structure is
// checked; breakdown raises StepError.
StepStats step_imex(GridFunction& state, double dt, double eps, const ProblemSpec& spec,
                    const FluxOracle& flux, const HypothesisReport& report, const Grid& grid,
                    StepWorkspace& ws, kernels::Exec exec = kernels::default_exec());

struct SolveResult {
    Trajectory trajectory;
    DiagnosticsSeries diagnostics;
};

struct SolveOptions {
    double cfl = 0.4;
    std::size_t record_every = 1;
    TimeMode mode = TimeMode::Imex;
    std::size_t min_steps = 200;  // accuracy clamp: dt <= T / min_steps
    kernels::Exec exec = kernels::default_exec();
    const MollifiedFlux* flux_table = nullptr;   // Hypothesis B/C: f_eps
    const GridFunction* initial_override = nullptr;  // e.g. mollified u0
};

SolveResult solve(const ProblemSpec& spec, double eps, const Grid& grid,
                  const SolveOptions& opts = {});

// Number of time steps solve() will take for these options.
std::size_t planned_steps(const ProblemSpec& spec, const HypothesisReport& report,
                          const Grid& grid, double eps, const SolveOptions& opts = {});

}  // namespace visclab
