#include "visclab/problem.hpp"

#include <algorithm>
#include <cmath>

namespace visclab {

namespace {

// C^inf bump profile with peak 1 at s=0 and support |s|<1.
double bump(double s) {
    const double s2 = s * s;
    if (s2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s2));
}

// C^inf transition, 0 for t<=0, 1 for t>=1, strictly monotone between.
double smooth_ramp(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double g0 = std::exp(-1.0 / t);
    const double g1 = std::exp(-1.0 / (1.0 - t));
    return g0 / (g0 + g1);
}

// MollifiedRiemann window geometry: ramp 0->left over [a+m, a+2m],
// plateau, jump left->right over jump_location +- smoothing, plateau,
// ramp right->0 over [b-2m, b-m], with margin m tied to the smoothing width.
struct RiemannWindow {
    double m;  // edge margin width
};

RiemannWindow riemann_window(const ProblemSpec& spec) {
    const double L = spec.domain.length();
    double m = std::min(0.08 * L, 2.0 * spec.initial.smoothing);
    m = std::max(m, 0.02 * L);
    return {m};
}

double eval_mollified_riemann(const ProblemSpec& spec, double x) {
    const auto& in = spec.initial;
    const double a = spec.domain.lo;
    const double b = spec.domain.hi;
    const double m = riemann_window(spec).m;
    const double up = smooth_ramp((x - (a + m)) / m);
    const double down = smooth_ramp(((b - m) - x) / m);
    const double s = in.smoothing > 0.0 ? in.smoothing : 1e-12;
    const double mid = in.left + (in.right - in.left) *
                                     smooth_ramp((x - (in.jump_location - s)) / (2.0 * s));
    return up * down * mid;
}

}  // namespace

double eval_flux(const ProblemSpec& spec, double u) {
    switch (spec.flux.kind) {
        case FluxKind::Burgers:
            return 0.5 * u * u;
        case FluxKind::LinearAdvection:
            return spec.flux.speed * u;
        case FluxKind::Polynomial: {
            double acc = 0.0;
            for (auto it = spec.flux.coefficients.rbegin(); it != spec.flux.coefficients.rend(); ++it)
                acc = acc * u + *it;
            return acc;
        }
    }
    return 0.0;
}

double eval_flux_prime(const ProblemSpec& spec, double u) {
    switch (spec.flux.kind) {
        case FluxKind::Burgers:
            return u;
        case FluxKind::LinearAdvection:
            return spec.flux.speed;
        case FluxKind::Polynomial: {
            const auto& c = spec.flux.coefficients;
            double acc = 0.0;
            for (std::size_t j = c.size(); j-- > 1;)
                acc = acc * u + static_cast<double>(j) * c[j];
            return acc;
        }
    }
    return 0.0;
}

double eval_flux_second(const ProblemSpec& spec, double u) {
    switch (spec.flux.kind) {
        case FluxKind::Burgers:
            return 1.0;
        case FluxKind::LinearAdvection:
            return 0.0;
        case FluxKind::Polynomial: {
            const auto& c = spec.flux.coefficients;
            double acc = 0.0;
            for (std::size_t j = c.size(); j-- > 2;)
                acc = acc * u + static_cast<double>(j) * static_cast<double>(j - 1) * c[j];
            return acc;
        }
    }
    return 0.0;
}

double eval_B(const ProblemSpec& spec, double u) {
    switch (spec.diffusion.kind) {
        case DiffusionKind::Constant:
            return spec.diffusion.value;
        case DiffusionKind::RationalBump:
            return spec.diffusion.base + spec.diffusion.amplitude / (1.0 + u * u);
    }
    return 0.0;
}

double eval_B_prime(const ProblemSpec& spec, double u) {
    switch (spec.diffusion.kind) {
        case DiffusionKind::Constant:
            return 0.0;
        case DiffusionKind::RationalBump: {
            const double d = 1.0 + u * u;
            return -2.0 * u * spec.diffusion.amplitude / (d * d);
        }
    }
    return 0.0;
}

double eval_initial(const ProblemSpec& spec, double x) {
    const auto& in = spec.initial;
    switch (in.kind) {
        case InitialKind::CompactBump:
            return in.height * bump((x - in.center) / in.width);
        case InitialKind::MollifiedRiemann:
            return eval_mollified_riemann(spec, x);
        case InitialKind::SinePocket: {
            const double a = spec.domain.lo;
            const double L = spec.domain.length();
            const double pi = std::acos(-1.0);
            double acc = 0.0;
            for (std::size_t k = 0; k < in.modes.size(); ++k)
                acc += in.modes[k] * std::sin(static_cast<double>(k + 1) * pi * (x - a) / L);
            return acc;
        }
    }
    return 0.0;
}

double max_abs_flux_prime(const ProblemSpec& spec, double lo, double hi) {
    if (lo > hi) std::swap(lo, hi);
    switch (spec.flux.kind) {
        case FluxKind::Burgers:
            return std::max(std::abs(lo), std::abs(hi));
        case FluxKind::LinearAdvection:
            return std::abs(spec.flux.speed);
        case FluxKind::Polynomial: {
            const int n = 64;
            double best = 0.0;
            for (int i = 0; i <= n; ++i) {
                const double u = lo + (hi - lo) * static_cast<double>(i) / n;
                best = std::max(best, std::abs(eval_flux_prime(spec, u)));
            }
            return best;
        }
    }
    return 0.0;
}

double max_abs_flux_second(const ProblemSpec& spec, double lo, double hi) {
    if (lo > hi) std::swap(lo, hi);
    switch (spec.flux.kind) {
        case FluxKind::Burgers:
            return 1.0;
        case FluxKind::LinearAdvection:
            return 0.0;
        case FluxKind::Polynomial: {
            const int n = 64;
            double best = 0.0;
            for (int i = 0; i <= n; ++i) {
                const double u = lo + (hi - lo) * static_cast<double>(i) / n;
                best = std::max(best, std::abs(eval_flux_second(spec, u)));
            }
            return best;
        }
    }
    return 0.0;
}

double initial_sup_norm(const ProblemSpec& spec) {
    const auto& in = spec.initial;
    double peak = 0.0;
    switch (in.kind) {
        case InitialKind::CompactBump:
            peak = std::abs(in.height);
            break;
        case InitialKind::MollifiedRiemann:
            peak = std::max(std::abs(in.left), std::abs(in.right));
            break;
        case InitialKind::SinePocket:
            break;
    }
    const int n = 8192;
    double sampled = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = spec.domain.lo + spec.domain.length() * static_cast<double>(i) / n;
        sampled = std::max(sampled, std::abs(eval_initial(spec, x)));
    }
    // Monotone-piece built-ins never exceed their analytic peak; for
    // SinePocket the dense sample is the certificate.
    return std::max(peak, sampled);
}

Interval invariant_interval(const ProblemSpec& spec) {
    const double s = initial_sup_norm(spec);
    if (!std::isfinite(s))
        throw std::invalid_argument("invariant_interval: unbounded initial datum");
    return {-s, s};
}

Interval initial_support(const ProblemSpec& spec) {
    const auto& in = spec.initial;
    switch (in.kind) {
        case InitialKind::CompactBump:
            return {in.center - in.width, in.center + in.width};
        case InitialKind::MollifiedRiemann: {
            const double m = riemann_window(spec).m;
            return {spec.domain.lo + m, spec.domain.hi - m};
        }
        case InitialKind::SinePocket:
            return spec.domain;
    }
    return spec.domain;
}

double initial_total_variation(const ProblemSpec& spec) {
    const auto& in = spec.initial;
    switch (in.kind) {
        case InitialKind::CompactBump:
            return 2.0 * std::abs(in.height);
        case InitialKind::MollifiedRiemann:
            // Monotone pieces 0 -> left -> right -> 0.
            return std::abs(in.left) + std::abs(in.right - in.left) + std::abs(in.right);
        case InitialKind::SinePocket: {
            const int n = 32768;
            double tv = 0.0;
            double prev = 0.0;  // boundary datum
            for (int i = 0; i <= n; ++i) {
                const double x = spec.domain.lo + spec.domain.length() * static_cast<double>(i) / n;
                const double v = eval_initial(spec, x);
                tv += std::abs(v - prev);
                prev = v;
            }
            tv += std::abs(prev);
            return tv;
        }
    }
    return 0.0;
}

void validate_shape(const ProblemSpec& spec) {
    if (!(spec.domain.length() > 0.0))
        throw std::invalid_argument("domain must satisfy a < b");
    if (!(spec.horizon >= 0.0))
        throw std::invalid_argument("horizon must be nonnegative");
    if (spec.initial.kind == InitialKind::CompactBump && !(spec.initial.width > 0.0))
        throw std::invalid_argument("CompactBump width must be positive");
    if (spec.initial.kind == InitialKind::MollifiedRiemann && !(spec.initial.smoothing > 0.0))
        throw std::invalid_argument("MollifiedRiemann smoothing must be positive");
    if (spec.diffusion.kind == DiffusionKind::RationalBump && spec.diffusion.amplitude < 0.0)
        throw std::invalid_argument("RationalBump amplitude must be nonnegative");
}

HypothesisReport validate_hypotheses(const ProblemSpec& spec) {
    validate_shape(spec);
    HypothesisReport rep;
    rep.I = invariant_interval(spec);
    const double s = rep.I.hi;

    switch (spec.diffusion.kind) {
        case DiffusionKind::Constant:
            rep.r = spec.diffusion.value;
            rep.b_max = spec.diffusion.value;
            break;
        case DiffusionKind::RationalBump:
            // amplitude >= 0: B decreases with |u|, minimum at the ends of I.
            rep.r = spec.diffusion.base + spec.diffusion.amplitude / (1.0 + s * s);
            rep.b_max = spec.diffusion.base + spec.diffusion.amplitude;
            break;
    }
    if (!(rep.r > 0.0))
        throw HypothesisViolation("diffusion not bounded below by a positive r on I");

    rep.M = max_abs_flux_prime(spec, rep.I.lo, rep.I.hi);
    if (!std::isfinite(rep.M))
        throw HypothesisViolation("f' unbounded on I");

    const Interval supp = initial_support(spec);
    const bool compact = supp.lo > spec.domain.lo && supp.hi < spec.domain.hi;
    const bool smooth = spec.initial.kind == InitialKind::CompactBump ||
                        spec.initial.kind == InitialKind::MollifiedRiemann;
    const bool lipschitz = smooth;  // built-in compactly supported data are C^inf
    const double ua = eval_initial(spec, spec.domain.lo);
    const double ub = eval_initial(spec, spec.domain.hi);
    const bool endpoint_zero = std::abs(ua) < 1e-12 && std::abs(ub) < 1e-12;

    rep.class_a = compact && smooth;
    rep.class_b = compact && lipschitz;
    rep.class_c = endpoint_zero;
    return rep;
}

}  // namespace visclab
