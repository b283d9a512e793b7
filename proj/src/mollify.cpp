#include "visclab/mollify.hpp"

#include <algorithm>
#include <cmath>

namespace visclab {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr int kGL = 16;
constexpr double kGLx[kGL] = {
    -0.9894009349916499325961542, -0.9445750230732325760779884,
    -0.8656312023878317438804679, -0.7554044083550030338951012,
    -0.6178762444026437484466718, -0.4580167776572273863424194,
    -0.2816035507792589132304605, -0.0950125098376374401853193,
    0.0950125098376374401853193,  0.2816035507792589132304605,
    0.4580167776572273863424194,  0.6178762444026437484466718,
    0.7554044083550030338951012,  0.8656312023878317438804679,
    0.9445750230732325760779884,  0.9894009349916499325961542};
constexpr double kGLw[kGL] = {
    0.0271524594117540948517806, 0.0622535239386478928628438,
    0.0951585116824927848099251, 0.1246289712555338720524763,
    0.1495959888165767320815017, 0.1691565193950025381893121,
    0.1826034150449235888667637, 0.1894506104550684962853967,
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

double unit_bump(double s) {
    const double s2 = s * s;
    if (s2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s2));
}

double unit_bump_mass() {
    // integral of exp(-1/(1-x^2)) over [-1,1]; cached after first call.
    static const double mass = [] {
        double acc = 0.0;
        const int panels = 64;
        for (int p = 0; p < panels; ++p) {
            const double lo = -1.0 + 2.0 * p / panels;
            const double hi = -1.0 + 2.0 * (p + 1) / panels;
            const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
            for (int q = 0; q < kGL; ++q) acc += r * kGLw[q] * unit_bump(c + r * kGLx[q]);
        }
        return acc;
    }();
    return mass;
}

// Clamped cubic smoothstep: 0 for t<=0, 1 for t>=1.
double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * (3.0 - 2.0 * t);
}

// Convolution nodes/weights over [-eps, eps]; weights sum to exactly one so
// kernel averages are convex combinations of the integrand samples.
struct DiscreteKernel {
    std::vector<double> offsets;
    std::vector<double> weights;
};

DiscreteKernel make_kernel(double eps, int panels = 8) {
    DiscreteKernel k;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = -eps + 2.0 * eps * p / panels;
        const double hi = -eps + 2.0 * eps * (p + 1) / panels;
        const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
        for (int q = 0; q < kGL; ++q) {
            const double y = c + r * kGLx[q];
            const double w = r * kGLw[q] * unit_bump(y / eps);
            k.offsets.push_back(y);
            k.weights.push_back(w);
            total += w;
        }
    }
    for (double& w : k.weights) w /= total;
    return k;
}

}  // namespace

double quadrature(double lo, double hi, int panels, const std::function<double(double)>& fn) {
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double plo = lo + (hi - lo) * p / panels;
        const double phi = lo + (hi - lo) * (p + 1) / panels;
        const double c = 0.5 * (plo + phi), r = 0.5 * (phi - plo);
        for (int q = 0; q < kGL; ++q) acc += r * kGLw[q] * fn(c + r * kGLx[q]);
    }
    return acc;
}

double Mollifier::operator()(double x) const {
    return normalization / eps * unit_bump(x / eps);
}

Mollifier make_mollifier(double eps) {
    if (!(eps > 0.0)) throw std::domain_error("make_mollifier: eps must be positive");
    return {eps, 1.0 / unit_bump_mass()};
}

MollifiedFlux::MollifiedFlux(const ProblemSpec& spec, double eps, const Interval& I)
    : eps_(eps) {
    if (!(eps > 0.0)) throw std::domain_error("mollify_flux: eps must be positive");
    const DiscreteKernel kern = make_kernel(eps);
    const double pad = 2.0 * eps + 1e-3 * (I.length() + 1.0);
    range_ = {I.lo - pad, I.hi + pad};
    const std::size_t n = 2048;
    du_ = range_.length() / static_cast<double>(n);
    f_.resize(n + 1);
    fp_.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double u = range_.lo + du_ * static_cast<double>(i);
        double fv = 0.0, fpv = 0.0;
        for (std::size_t q = 0; q < kern.offsets.size(); ++q) {
            fv += kern.weights[q] * eval_flux(spec, u - kern.offsets[q]);
            fpv += kern.weights[q] * eval_flux_prime(spec, u - kern.offsets[q]);
        }
        f_[i] = fv;
        fp_[i] = fpv;
    }
    for (double v : f_)
        if (!std::isfinite(v)) throw std::runtime_error("mollify_flux: quadrature failure");
}

double MollifiedFlux::interp(const std::vector<double>& table, double u) const {
    const double s = (u - range_.lo) / du_;
    const auto n = static_cast<std::ptrdiff_t>(table.size() - 1);
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(std::floor(s)) - 1;
    j = std::clamp<std::ptrdiff_t>(j, 0, n - 3);
    // 4-point Lagrange on the uniform table.
    const double t = s - static_cast<double>(j);
    const double t0 = t, t1 = t - 1.0, t2 = t - 2.0, t3 = t - 3.0;
    const double c0 = -t1 * t2 * t3 / 6.0;
    const double c1 = t0 * t2 * t3 / 2.0;
    const double c2 = -t0 * t1 * t3 / 2.0;
    const double c3 = t0 * t1 * t2 / 6.0;
    const std::size_t k = static_cast<std::size_t>(j);
    return c0 * table[k] + c1 * table[k + 1] + c2 * table[k + 2] + c3 * table[k + 3];
}

double MollifiedFlux::value(double u) const { return interp(f_, u); }
double MollifiedFlux::deriv(double u) const { return interp(fp_, u); }

double MollifiedFlux::max_abs_deriv(double lo, double hi) const {
    if (lo > hi) std::swap(lo, hi);
    const auto n = static_cast<std::ptrdiff_t>(fp_.size() - 1);
    auto idx = [&](double u) {
        const double s = (u - range_.lo) / du_;
        return std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::floor(s)), 0, n);
    };
    const std::ptrdiff_t j0 = idx(lo);
    const std::ptrdiff_t j1 = std::min<std::ptrdiff_t>(idx(hi) + 1, n);
    double best = 0.0;
    for (std::ptrdiff_t j = j0; j <= j1; ++j)
        best = std::max(best, std::abs(fp_[static_cast<std::size_t>(j)]));
    return best * (1.0 + 1e-9);
}

MollifiedFlux mollify_flux(const ProblemSpec& spec, double eps) {
    return MollifiedFlux(spec, eps, invariant_interval(spec));
}

double eval_mollified_initial(const ProblemSpec& spec, double eps, double x) {
    const DiscreteKernel kern = make_kernel(eps);
    double acc = 0.0;
    for (std::size_t q = 0; q < kern.offsets.size(); ++q)
        acc += kern.weights[q] * eval_initial(spec, x - kern.offsets[q]);
    return acc;
}

MollifiedInitial mollify_initial(const ProblemSpec& spec, double eps, std::size_t n_cells) {
    if (!(eps > 0.0)) throw std::domain_error("mollify_initial: eps must be positive");
    const Interval supp = initial_support(spec);
    const double dist = std::min(supp.lo - spec.domain.lo, spec.domain.hi - supp.hi);
    if (!(dist > 0.0) || eps >= dist)
        throw SupportViolation("mollify_initial: support would touch the boundary");

    MollifiedInitial out;
    out.eps = eps;
    out.grid = Grid::uniform(spec.domain, n_cells);
    out.values.resize(n_cells);
    const DiscreteKernel kern = make_kernel(eps);
    for (std::size_t i = 0; i < n_cells; ++i) {
        const double x = out.grid.centers[i];
        double acc = 0.0;
        for (std::size_t q = 0; q < kern.offsets.size(); ++q)
            acc += kern.weights[q] * eval_initial(spec, x - kern.offsets[q]);
        out.values[i] = acc;
    }
    const double h = out.grid.h;
    double l1lap = 0.0, maxlap = 0.0, maxgrad = 0.0, linf = 0.0, tv = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < n_cells; ++i) {
        const double um = i > 0 ? out.values[i - 1] : 0.0;
        const double up = i + 1 < n_cells ? out.values[i + 1] : 0.0;
        const double lap = (up - 2.0 * out.values[i] + um) / (h * h);
        l1lap += std::abs(lap) * h;
        maxlap = std::max(maxlap, std::abs(lap));
        linf = std::max(linf, std::abs(out.values[i]));
        tv += std::abs(out.values[i] - prev);
        maxgrad = std::max(maxgrad, std::abs(out.values[i] - prev) / h);
        prev = out.values[i];
    }
    tv += std::abs(prev);
    maxgrad = std::max(maxgrad, std::abs(prev) / h);
    out.l1_laplacian = l1lap;
    out.max_abs_lap = maxlap;
    out.max_abs_grad = maxgrad;
    out.linf = linf;
    out.tv = tv;
    return out;
}

GridFunction shifted_mollify(const GridFunction& v, const Grid& grid,
                             const Interval& domain, double eps) {
    const double a = domain.lo, b = domain.hi, L = domain.length();
    if (!(eps > 0.0)) throw std::domain_error("shifted_mollify: eps must be positive");
    if (!(3.0 * eps < 0.5 * L) || !(eps < L / 16.0))
        throw SupportViolation("shifted_mollify: eps too large for the boundary charts");

    // Fixed partition of unity: boundary charts of width L/4 with smoothstep
    // transitions over [a+W, a+2W] and mirrored on the right, W = L/8.
    const double W = L / 8.0;
    auto eta_left = [&](double x) { return 1.0 - smoothstep((x - (a + W)) / W); };
    auto eta_right = [&](double x) { return 1.0 - smoothstep(((b - W) - x) / W); };
    auto eta_mid = [&](double x) { return 1.0 - eta_left(x) - eta_right(x); };

    // Piecewise-linear interpolant through (a,0), the cell centers, (b,0),
    // extended by zero outside the domain.
    auto v_at = [&](double x) -> double {
        if (x <= a || x >= b) return 0.0;
        const double x0 = grid.centers.front();
        const double xn = grid.centers.back();
        if (x <= x0) return v.front() * (x - a) / (x0 - a);
        if (x >= xn) return v.back() * (b - x) / (b - xn);
        const double s = (x - x0) / grid.h;
        const auto j = static_cast<std::size_t>(std::floor(s));
        const double t = s - static_cast<double>(j);
        return v[j] * (1.0 - t) + v[j + 1] * t;
    };

    const Mollifier rho = make_mollifier(eps);
    GridFunction out(grid.n_cells, 0.0);
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        const double x = grid.centers[i];
        if (x - a < eps || b - x < eps) {
            out[i] = 0.0;  // kernel support lies entirely in the zero extension
            continue;
        }
        double acc = 0.0;
        // left chart shifted inward by +2*eps
        acc += quadrature(x - 3.0 * eps, x - eps, 6, [&](double z) {
            return rho(x - z - 2.0 * eps) * eta_left(z) * v_at(z);
        });
        // interior chart, plain mollification
        acc += quadrature(x - eps, x + eps, 6,
                          [&](double z) { return rho(x - z) * eta_mid(z) * v_at(z); });
        // right chart shifted inward by -2*eps
        acc += quadrature(x + eps, x + 3.0 * eps, 6, [&](double z) {
            return rho(x - z + 2.0 * eps) * eta_right(z) * v_at(z);
        });
        out[i] = acc;
    }
    return out;
}

GridFunction sample_initial(const ProblemSpec& spec, const Grid& grid) {
    GridFunction u(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) u[i] = eval_initial(spec, grid.centers[i]);
    return u;
}

}  // namespace visclab
