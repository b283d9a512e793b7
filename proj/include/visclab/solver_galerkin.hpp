#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "visclab/grid.hpp"
#include "visclab/problem.hpp"

namespace visclab {

struct StiffnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GalerkinState {
    std::size_t m = 0;
    std::vector<double> coeffs;
    double time = 0.0;
};

// Orthonormal sine basis: w_k(x) = sqrt(2/L) sin(k pi (x-a)/L), k >= 1.
double basis_eval(std::size_t k, double x, const Interval& domain);
double basis_deriv(std::size_t k, double x, const Interval& domain);

// Composite Gauss quadrature scaled with the basis size: quad_order nodes
// per half-wave of the highest mode.
struct GalerkinQuadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
    // basis values/derivatives at nodes, row k-1
    std::vector<std::vector<double>> w;
    std::vector<std::vector<double>> dw;

    GalerkinQuadrature(std::size_t m, int quad_order, const Interval& domain);
};

// g_i(c) = -eps (B(u_m) u_m', w_i') - (f'(u_m) u_m', w_i) by quadrature.
std::vector<double> galerkin_rhs(const GalerkinState& state, double eps,
                                 const ProblemSpec& spec, int quad_order);

// Growth-bound constant P = sqrt(sum_i M_{g_i}^2) with
// M_{g_i} = eps ||B|| ||w_i'|| S + M S, S = (sum_k ||w_k'||^2)^{1/2},
// using closed-form basis norms and sups of B, |f'| over u_range.
double galerkin_growth_constant(const ProblemSpec& spec, double eps, std::size_t m,
                                const Interval& u_range);

struct GalerkinTrajectory {
    std::size_t m = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> coeffs;
    // int_0^t (B(u_m) du_m, du_m) and int_0^t (du_m, du_m), integrated by the
    // same RK4 stages as the state (no eps factor).
    std::vector<double> grad2_b;
    std::vector<double> grad2;

    GalerkinState state_at(std::size_t idx) const {
        return {m, coeffs[idx], times[idx]};
    }
};

struct GalerkinOptions {
    int quad_order = 10;
    // stability margin for the RK4 step; small enough that the discrete
    // energy identity holds to 1e-6 relative across the supported m range
    double safety = 0.15;
    double max_increment = 0.25;  // per-step ||dc||/(||c||+1) before halving
};

// RK4 integration of c' = g(c) from the L2 projection of u0, with dt halving
// on oversized coefficient increments. Underflow raises StiffnessError.
GalerkinTrajectory galerkin_solve(const ProblemSpec& spec, double eps, std::size_t m,
                                  double T, const GalerkinOptions& opts = {});

GridFunction reconstruct(const GalerkinState& state, const Grid& grid, const Interval& domain);

}  // namespace visclab
