#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace visclab {

// Closed interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
    bool contains(double u) const { return u >= lo && u <= hi; }
};

enum class FluxKind { Burgers, LinearAdvection, Polynomial };
enum class DiffusionKind { Constant, RationalBump };
enum class InitialKind { CompactBump, MollifiedRiemann, SinePocket };
enum class HypothesisClass { A, B, C };

struct FluxSpec {
    FluxKind kind = FluxKind::Burgers;
    double speed = 0.0;                // LinearAdvection
    std::vector<double> coefficients;  // Polynomial: f(u) = sum c_j u^j
};

struct DiffusionSpec {
    DiffusionKind kind = DiffusionKind::Constant;
    double value = 1.0;      // Constant
    double base = 1.0;       // RationalBump: B(u) = base + amplitude/(1+u^2)
    double amplitude = 0.0;
};

struct InitialSpec {
    InitialKind kind = InitialKind::CompactBump;
    // CompactBump
    double center = 0.5;
    double width = 0.25;
    double height = 1.0;
    // MollifiedRiemann
    double left = 1.0;
    double right = 0.0;
    double jump_location = 0.5;
    double smoothing = 0.05;
    // SinePocket: amplitudes[k-1] multiplies sin(k pi (x-a)/L)
    std::vector<double> modes;
};

struct ProblemSpec {
    FluxSpec flux;
    DiffusionSpec diffusion;
    InitialSpec initial;
    Interval domain{0.0, 1.0};
    double horizon = 1.0;
    HypothesisClass hypothesis_class = HypothesisClass::A;
};

struct HypothesisReport {
    double r = 0.0;      // certified lower bound of B on I
    double M = 0.0;      // certified bound of |f'| on I
    double b_max = 0.0;  // certified upper bound of B on I
    Interval I;
    bool class_a = false;
    bool class_b = false;
    bool class_c = false;
};

struct HypothesisViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pointwise closed-form evaluation of f, f', f'', B, B', u0.
double eval_flux(const ProblemSpec& spec, double u);
double eval_flux_prime(const ProblemSpec& spec, double u);
double eval_flux_second(const ProblemSpec& spec, double u);
double eval_B(const ProblemSpec& spec, double u);
double eval_B_prime(const ProblemSpec& spec, double u);
double eval_initial(const ProblemSpec& spec, double x);

// max |f'| over [lo, hi]; exact for Burgers/LinearAdvection, dense sampling
// with endpoints for Polynomial.
double max_abs_flux_prime(const ProblemSpec& spec, double lo, double hi);
double max_abs_flux_second(const ProblemSpec& spec, double lo, double hi);

// I = [-||u0||_inf, ||u0||_inf], peak from the built-in closed form plus
// dense sampling.
Interval invariant_interval(const ProblemSpec& spec);
double initial_sup_norm(const ProblemSpec& spec);

// Support of the built-in initial datum as a subinterval of the domain;
// SinePocket reports the full open domain.
Interval initial_support(const ProblemSpec& spec);

// Total variation of u0 over the domain, including jumps to the boundary
// datum 0. Closed form for the monotone-piece built-ins, dense sampling
// for SinePocket.
double initial_total_variation(const ProblemSpec& spec);

HypothesisReport validate_hypotheses(const ProblemSpec& spec);

// Basic well-formedness (a<b, T>0, built-in parameters sane). Throws
// std::invalid_argument on violation.
void validate_shape(const ProblemSpec& spec);

}  // namespace visclab
