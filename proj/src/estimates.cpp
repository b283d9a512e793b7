#include "visclab/estimates.hpp"

#include <algorithm>
#include <cmath>

#include "visclab/kernels.hpp"
#include "visclab/solver_fd.hpp"

namespace visclab {

EstimateVerdict check_max_principle(const DiagnosticsSeries& diag, double u0_linf) {
    double measured = 0.0;
    for (double v : diag.linf) measured = std::max(measured, v);
    EstimateVerdict v;
    v.name = "max_principle";
    v.bound_value = u0_linf;
    v.measured_value = measured;
    v.slack = 1e-10;
    v.pass = measured <= u0_linf + 1e-10;
    return v;
}

EstimateVerdict check_energy(const DiagnosticsSeries& diag, double eps, double r,
                             double u0_l2) {
    const double lhs = 0.5 * diag.l2.back() * diag.l2.back() + eps * r * diag.grad_l2_acc.back();
    const double rhs = 0.5 * u0_l2 * u0_l2;
    return make_verdict("energy", rhs, lhs, 1e-6);
}

EstimateVerdict check_sqrt_eps_gradient(const DiagnosticsSeries& diag, double eps, double r,
                                        double u0_l2) {
    const double measured = eps * diag.grad_l2_acc.back();
    const double bound = u0_l2 * u0_l2 / (2.0 * r);
    return make_verdict("sqrt_eps_gradient", bound, measured, 1e-6);
}

EstimateVerdict check_tv(const DiagnosticsSeries& diag, double tv0) {
    double worst_ratio = 0.0;
    double worst_rate = 0.0;
    for (std::size_t i = 1; i < diag.tv.size(); ++i) {
        const double prev = diag.tv[i - 1];
        if (prev > 0.0) worst_ratio = std::max(worst_ratio, diag.tv[i] / prev);
        const double dt = diag.times[i] - diag.times[i - 1];
        if (dt > 0.0) worst_rate = std::max(worst_rate, (diag.tv[i] - prev) / dt);
    }
    EstimateVerdict v;
    v.name = "tv_nonincrease";
    v.bound_value = 1.0;
    v.measured_value = worst_ratio;
    v.slack = 1e-8;
    v.pass = worst_ratio <= 1.0 + 1e-8 &&
             (diag.tv.empty() || diag.tv.back() <= std::max(tv0, diag.tv.front()) * (1.0 + 1e-8));
    v.note = "max dTV/dt = " + std::to_string(worst_rate);
    return v;
}

double tv_time_integral(const DiagnosticsSeries& diag) {
    double acc = 0.0;
    for (std::size_t i = 1; i < diag.times.size(); ++i)
        acc += (diag.times[i] - diag.times[i - 1]) * diag.tv[i - 1];
    return acc;
}

double ut_l1_constant(const ProblemSpec& spec, const HypothesisReport& report,
                      const MollifiedInitial& u0eps) {
    const double vol = spec.domain.length();
    double bprime = 0.0;
    const int samples = 256;
    for (int i = 0; i <= samples; ++i) {
        const double u = report.I.lo + report.I.length() * i / samples;
        bprime = std::max(bprime, std::abs(eval_B_prime(spec, u)));
    }
    const double core = report.b_max * u0eps.max_abs_lap +
                        bprime * u0eps.max_abs_grad * u0eps.max_abs_grad +
                        report.M * u0eps.max_abs_grad;
    return spec.horizon * 1.0 * vol * core;  // d = 1
}

EstimateVerdict check_ut_l1(const DiagnosticsSeries& diag, const ProblemSpec& spec,
                            const HypothesisReport& report, const MollifiedInitial& u0eps) {
    const double c1 = ut_l1_constant(spec, report, u0eps);
    EstimateVerdict v = make_verdict("ut_l1", c1, diag.ut_l1_acc.back(), 0.05);
    return v;
}

ContinuousDependenceResult check_continuous_dependence(const ProblemSpec& spec, double eps,
                                                       const GridFunction& u0,
                                                       const GridFunction& v0,
                                                       const Grid& grid) {
    const HypothesisReport report = validate_hypotheses(spec);
    SolveOptions opts;
    opts.record_every = 1;

    ProblemSpec s = spec;
    SolveOptions ou = opts;
    ou.initial_override = &u0;
    const SolveResult ru = solve(s, eps, grid, ou);
    SolveOptions ov = opts;
    ov.initial_override = &v0;
    const SolveResult rv = solve(s, eps, grid, ov);

    double d0 = 0.0;
    for (std::size_t i = 0; i < u0.size(); ++i) d0 = std::max(d0, std::abs(u0[i] - v0[i]));
    double dmax = 0.0;
    for (std::size_t k = 0; k < ru.trajectory.states.size(); ++k) {
        const auto& a = ru.trajectory.states[k];
        const auto& b = rv.trajectory.states[k];
        for (std::size_t i = 0; i < a.size(); ++i) dmax = std::max(dmax, std::abs(a[i] - b[i]));
    }

    double max_grad = 0.0;
    for (const auto& state : ru.trajectory.states) {
        double prev = 0.0;
        for (double val : state) {
            max_grad = std::max(max_grad, std::abs(val - prev) / grid.h);
            prev = val;
        }
        max_grad = std::max(max_grad, std::abs(prev) / grid.h);
    }
    const double lambda = max_abs_flux_second(spec, report.I.lo, report.I.hi) * max_grad;

    ContinuousDependenceResult out;
    out.lambda = lambda;
    EstimateVerdict v;
    v.name = "continuous_dependence";
    v.slack = 1e-12;
    if (d0 == 0.0) {
        out.ratio = 0.0;
        v.bound_value = 1.0;
        v.measured_value = dmax;
        v.pass = dmax == 0.0;
        v.note = "identical initial data";
    } else {
        out.ratio = dmax / d0;
        v.bound_value = std::exp(lambda * spec.horizon);
        v.measured_value = out.ratio;
        v.pass = out.ratio <= v.bound_value * (1.0 + 1e-12);
        v.note = "ratio " + std::to_string(out.ratio);
    }
    out.verdict = v;
    return out;
}

}  // namespace visclab
