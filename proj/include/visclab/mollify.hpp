#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "visclab/grid.hpp"
#include "visclab/problem.hpp"

namespace visclab {

struct SupportViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Standard compactly supported bump rho_eps(x) = (k/eps) exp(-1/(1-(x/eps)^2))
// on [-eps, eps], normalized to unit mass.
struct Mollifier {
    double eps = 0.0;
    double normalization = 0.0;  // k of the unit-radius bump

    double operator()(double x) const;
};

Mollifier make_mollifier(double eps);

// Composite 16-point Gauss-Legendre quadrature of fn over [lo, hi].
double quadrature(double lo, double hi, int panels, const std::function<double(double)>& fn);

// Tabulated regularized flux f_eps = f * rho_eps with its derivative,
// sampled densely over I padded by the mollification radius.
class MollifiedFlux {
  public:
    MollifiedFlux(const ProblemSpec& spec, double eps, const Interval& I);

    double eps() const { return eps_; }
    double value(double u) const;
    double deriv(double u) const;
    double max_abs_deriv(double lo, double hi) const;
    const Interval& range() const { return range_; }

  private:
    double interp(const std::vector<double>& table, double u) const;

    double eps_ = 0.0;
    Interval range_;
    double du_ = 0.0;
    std::vector<double> f_;
    std::vector<double> fp_;
};

MollifiedFlux mollify_flux(const ProblemSpec& spec, double eps);

struct MollifiedInitial {
    double eps = 0.0;
    Grid grid;
    GridFunction values;
    double l1_laplacian = 0.0;   // sum |u_{i+1}-2u_i+u_{i-1}|/h, zero ghosts
    double linf = 0.0;
    double tv = 0.0;
    double max_abs_grad = 0.0;   // max face |du|/h
    double max_abs_lap = 0.0;    // max |second difference|/h^2
};

// u0_eps = u0 * rho_eps on an internal fine grid, with certified bounds.
// Requires hypothesis class A/B data and eps < dist(supp u0, boundary).
MollifiedInitial mollify_initial(const ProblemSpec& spec, double eps,
                                 std::size_t n_cells = 4096);

// Pointwise convolution value at x (same kernel as mollify_initial).
double eval_mollified_initial(const ProblemSpec& spec, double eps, double x);

// Boundary-adapted mollification for endpoint-vanishing data: boundary
// pieces are recentred by an inward shift of 2*eps and glued to the plain
// mollification of the interior piece by a fixed partition of unity.
// Output vanishes identically within eps of each endpoint.
GridFunction shifted_mollify(const GridFunction& v, const Grid& grid,
                             const Interval& domain, double eps);

}  // namespace visclab
