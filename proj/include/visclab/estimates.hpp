#pragma once

#include <string>
#include <vector>

#include "visclab/grid.hpp"
#include "visclab/mollify.hpp"
#include "visclab/problem.hpp"

namespace visclab {

struct EstimateVerdict {
    std::string name;
    double bound_value = 0.0;
    double measured_value = 0.0;
    double slack = 0.0;
    bool pass = false;
    std::string note;
};

inline EstimateVerdict make_verdict(std::string name, double bound, double measured,
                                    double slack) {
    EstimateVerdict v{std::move(name), bound, measured, slack, false, {}};
    v.pass = measured <= bound * (1.0 + slack) ||
             (bound == 0.0 && measured <= slack);
    return v;
}

// max_t ||u(t)||_inf <= ||u0||_inf, absolute tolerance 1e-10.
EstimateVerdict check_max_principle(const DiagnosticsSeries& diag, double u0_linf);

// 1/2 ||u(T)||^2 + eps r |grad u|^2_acc <= 1/2 ||u0||^2 (1 + 1e-6),
// valid for f(0) = 0 built-ins.
EstimateVerdict check_energy(const DiagnosticsSeries& diag, double eps, double r,
                             double u0_l2);

// eps * grad_l2_acc <= ||u0||^2 / (2r) (1 + 1e-6).
EstimateVerdict check_sqrt_eps_gradient(const DiagnosticsSeries& diag, double eps, double r,
                                        double u0_l2);

// per-step TV non-increase to 1e-8; measured value is the worst step ratio.
EstimateVerdict check_tv(const DiagnosticsSeries& diag, double tv0);

// sum_n dt * TV(t_n) (left endpoints), for the T*TV(u0) bound.
double tv_time_integral(const DiagnosticsSeries& diag);

// ||u_t||_{L1(Omega_T)} <= C1 * 1.05, with C1 = T * Vol * (||B|| max|u0''| +
// ||B'|| max|u0'|^2 + ||f'|| max|u0'|) assembled from the mollified data.
EstimateVerdict check_ut_l1(const DiagnosticsSeries& diag, const ProblemSpec& spec,
                            const HypothesisReport& report, const MollifiedInitial& u0eps);
double ut_l1_constant(const ProblemSpec& spec, const HypothesisReport& report,
                      const MollifiedInitial& u0eps);

// Runs both initial data at matched resolution and compares sup norms.
struct ContinuousDependenceResult {
    EstimateVerdict verdict;
    double ratio = 0.0;        // ||u - v||_inf / ||u0 - v0||_inf
    double lambda = 0.0;       // ||f''||_inf * max measured |du/dx|
};
ContinuousDependenceResult check_continuous_dependence(const ProblemSpec& spec, double eps,
                                                       const GridFunction& u0,
                                                       const GridFunction& v0,
                                                       const Grid& grid);

}  // namespace visclab
