#pragma once

#include <cstdint>
#include <vector>

#include "visclab/grid.hpp"
#include "visclab/kernels.hpp"
#include "visclab/problem.hpp"

namespace visclab {

// Piecewise-linear signum approximation with slope n on [-1/n, 1/n], and its
// pointwise limit with sg(0) = 0.
double sg_n(double s, int n);
double sg(double s);

// Space-time product of C^inf bumps; nonnegative, compactly supported in
// time within (0, T), need not vanish on the spatial boundary.
struct TestFunction {
    double x_center = 0.0;
    double x_width = 1.0;
    double t_center = 0.0;
    double t_width = 1.0;
    double amplitude = 1.0;

    double phi(double x, double t) const;
    double dphi_dt(double x, double t) const;
    double dphi_dx(double x, double t) const;
};

struct EntropyProbe {
    double k = 0.0;
    TestFunction phi;
    int phi_id = 0;
};

struct BoundaryTrace {
    std::vector<double> times;
    std::vector<double> left;
    std::vector<double> right;
};

struct CutoffFunction {
    double delta = 0.0;
    std::vector<double> values;
    std::vector<double> gradient;
    double grad_bound_c = 0.0;  // measured max |grad| * delta
};

// Kruzhkov boundary cutoff on the grid: 1 at boundary-adjacent cells, 0 at
// distance >= delta, |grad| <= C/delta. Requires delta > 2h.
CutoffFunction kruzhkov_cutoff(double delta, const Grid& grid, const Interval& domain);

// One-sided linear extrapolation to each endpoint from the 2nd and 3rd cells
// off the wall (the first cell sits inside the O(eps) layer).
BoundaryTrace boundary_trace(const Trajectory& traj, const Interval& domain);

// Signed residual of the boundary entropy inequality for one (k, phi) probe:
// interior Kruzhkov terms plus the trace boundary term; entropy solutions
// give >= 0 up to discretization.
double entropy_residual(const Trajectory& traj, const ProblemSpec& spec,
                        const EntropyProbe& probe);

// Finite stand-in for "for all k, all phi": k spans I padded by 1, bumps tile
// the space-time cylinder with overlap, including boundary-hugging bumps.
std::vector<EntropyProbe> probe_family(const ProblemSpec& spec, double T, int n_k, int n_phi,
                                       std::uint64_t seed = 0);

// Residuals for every probe; parallel across probes.
std::vector<double> residual_sweep(const Trajectory& traj, const ProblemSpec& spec,
                                   const std::vector<EntropyProbe>& probes,
                                   kernels::Exec exec = kernels::default_exec());

struct BlnReport {
    double worst_violation = 0.0;  // min over times/boundaries/k of the BLN expression
    double worst_time = 0.0;
    bool left_side = false;
    bool pass(double tol = 1e-3) const { return worst_violation >= -tol; }
};

// BLN ordering check against boundary datum 0: for k between 0 and gamma(u),
// sg(gamma - 0) (f(gamma) - f(k)) sigma >= -tol.
BlnReport bln_ordered_check(const BoundaryTrace& trace, const ProblemSpec& spec,
                            int n_k = 33);

}  // namespace visclab
