#include "visclab/solver_galerkin.hpp"

#include <algorithm>
#include <cmath>

#include "visclab/mollify.hpp"

namespace visclab {

namespace {
const double kPi = std::acos(-1.0);
}

double basis_eval(std::size_t k, double x, const Interval& domain) {
    const double L = domain.length();
    return std::sqrt(2.0 / L) * std::sin(static_cast<double>(k) * kPi * (x - domain.lo) / L);
}

double basis_deriv(std::size_t k, double x, const Interval& domain) {
    const double L = domain.length();
    const double kk = static_cast<double>(k) * kPi / L;
    return std::sqrt(2.0 / L) * kk * std::cos(static_cast<double>(k) * kPi * (x - domain.lo) / L);
}

GalerkinQuadrature::GalerkinQuadrature(std::size_t m, int quad_order, const Interval& domain) {
    if (quad_order < 2) throw std::invalid_argument("galerkin quadrature order must be >= 2");
    // Gauss-Legendre nodes per panel via Newton on Legendre polynomials.
    const int q = quad_order;
    std::vector<double> gx(static_cast<std::size_t>(q)), gw(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (q + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= q; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = q * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= q; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        const double dp = q * (x * p1 - p0) / (x * x - 1.0);
        gx[static_cast<std::size_t>(q - 1 - i)] = x;
        gw[static_cast<std::size_t>(q - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }

    const std::size_t panels = std::max<std::size_t>(m, 1);
    const double L = domain.length();
    const double pw = L / static_cast<double>(panels);
    nodes.reserve(panels * static_cast<std::size_t>(q));
    weights.reserve(panels * static_cast<std::size_t>(q));
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = domain.lo + pw * static_cast<double>(p);
        const double c = lo + 0.5 * pw, r = 0.5 * pw;
        for (int i = 0; i < q; ++i) {
            nodes.push_back(c + r * gx[static_cast<std::size_t>(i)]);
            weights.push_back(r * gw[static_cast<std::size_t>(i)]);
        }
    }

    w.assign(m, std::vector<double>(nodes.size()));
    dw.assign(m, std::vector<double>(nodes.size()));
    for (std::size_t k = 1; k <= m; ++k)
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            w[k - 1][j] = basis_eval(k, nodes[j], domain);
            dw[k - 1][j] = basis_deriv(k, nodes[j], domain);
        }
}

namespace {

std::vector<double> rhs_with_quadrature(const std::vector<double>& c, double eps,
                                        const ProblemSpec& spec, const GalerkinQuadrature& quad,
                                        double* grad2_b_rate, double* grad2_rate = nullptr) {
    const std::size_t m = c.size();
    const std::size_t nq = quad.nodes.size();
    std::vector<double> um(nq, 0.0), dum(nq, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        if (c[k] == 0.0) continue;
        const auto& wk = quad.w[k];
        const auto& dwk = quad.dw[k];
        for (std::size_t j = 0; j < nq; ++j) {
            um[j] += c[k] * wk[j];
            dum[j] += c[k] * dwk[j];
        }
    }
    std::vector<double> bj(nq), fj(nq);
    double diss_b = 0.0, diss = 0.0;
    for (std::size_t j = 0; j < nq; ++j) {
        bj[j] = eval_B(spec, um[j]) * dum[j];
        fj[j] = eval_flux_prime(spec, um[j]) * dum[j];
        diss_b += quad.weights[j] * bj[j] * dum[j];
        diss += quad.weights[j] * dum[j] * dum[j];
    }
    if (grad2_b_rate) *grad2_b_rate = diss_b;
    if (grad2_rate) *grad2_rate = diss;

    std::vector<double> g(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double acc_b = 0.0, acc_f = 0.0;
        const auto& wi = quad.w[i];
        const auto& dwi = quad.dw[i];
        for (std::size_t j = 0; j < nq; ++j) {
            acc_b += quad.weights[j] * bj[j] * dwi[j];
            acc_f += quad.weights[j] * fj[j] * wi[j];
        }
        g[i] = -eps * acc_b - acc_f;
    }
    return g;
}

}  // namespace

std::vector<double> galerkin_rhs(const GalerkinState& state, double eps,
                                 const ProblemSpec& spec, int quad_order) {
    GalerkinQuadrature quad(state.m, quad_order, spec.domain);
    return rhs_with_quadrature(state.coeffs, eps, spec, quad, nullptr);
}

double galerkin_growth_constant(const ProblemSpec& spec, double eps, std::size_t m,
                                const Interval& u_range) {
    const double L = spec.domain.length();
    double b_sup = 0.0, m_sup = 0.0;
    const int samples = 512;
    for (int i = 0; i <= samples; ++i) {
        const double u = u_range.lo + u_range.length() * i / samples;
        b_sup = std::max(b_sup, std::abs(eval_B(spec, u)));
        m_sup = std::max(m_sup, std::abs(eval_flux_prime(spec, u)));
    }
    double s2 = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
        const double nk = static_cast<double>(k) * kPi / L;
        s2 += nk * nk;  // ||w_k'||_{L2}^2
    }
    const double S = std::sqrt(s2);
    double p2 = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        const double ni = static_cast<double>(i) * kPi / L;  // ||w_i'||, ||w_i|| = 1
        const double mg = eps * b_sup * ni * S + m_sup * S;
        p2 += mg * mg;
    }
    return std::sqrt(p2);
}

GalerkinTrajectory galerkin_solve(const ProblemSpec& spec, double eps, std::size_t m,
                                  double T, const GalerkinOptions& opts) {
    validate_shape(spec);
    const GalerkinQuadrature quad(m, opts.quad_order, spec.domain);

    // c_k(0) = (u0, w_k)
    std::vector<double> c(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < quad.nodes.size(); ++j)
            acc += quad.weights[j] * eval_initial(spec, quad.nodes[j]) * quad.w[k][j];
        c[k] = acc;
    }

    GalerkinTrajectory out;
    out.m = m;
    out.times.push_back(0.0);
    out.coeffs.push_back(c);
    out.grad2_b.push_back(0.0);
    out.grad2.push_back(0.0);
    if (T <= 0.0) return out;

    // stability-guided step from the linearized spectrum of mode m
    const double L = spec.domain.length();
    const double km = static_cast<double>(m) * kPi / L;
    const Interval I = invariant_interval(spec);
    double b_sup = 1e-12, m_sup = 0.0;
    for (int i = 0; i <= 128; ++i) {
        const double u = I.lo + I.length() * i / 128.0;
        b_sup = std::max(b_sup, std::abs(eval_B(spec, u)));
        m_sup = std::max(m_sup, std::abs(eval_flux_prime(spec, u)));
    }
    const double lam = eps * b_sup * km * km + m_sup * km + 1e-12;
    double dt = opts.safety * 2.5 / lam;
    dt = std::min(dt, T);

    double t = 0.0;
    double Eb = 0.0, Ep = 0.0;  // running dissipation integrals
    const double dt_min = T * 1e-9;
    std::vector<double> k1, k2, k3, k4, tmp(m);
    while (t < T - 1e-14 * T) {
        const double step = std::min(dt, T - t);
        double b1 = 0.0, b2 = 0.0, b3 = 0.0, b4 = 0.0;
        double p1 = 0.0, p2 = 0.0, p3 = 0.0, p4 = 0.0;
        k1 = rhs_with_quadrature(c, eps, spec, quad, &b1, &p1);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = c[i] + 0.5 * step * k1[i];
        k2 = rhs_with_quadrature(tmp, eps, spec, quad, &b2, &p2);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = c[i] + 0.5 * step * k2[i];
        k3 = rhs_with_quadrature(tmp, eps, spec, quad, &b3, &p3);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = c[i] + step * k3[i];
        k4 = rhs_with_quadrature(tmp, eps, spec, quad, &b4, &p4);

        double inc2 = 0.0, norm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double dc = step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            tmp[i] = c[i] + dc;
            inc2 += dc * dc;
            norm2 += c[i] * c[i];
        }
        const double inc = std::sqrt(inc2);
        if (!std::isfinite(inc) || inc > opts.max_increment * (std::sqrt(norm2) + 1.0)) {
            dt *= 0.5;
            if (dt < dt_min)
                throw StiffnessError(
                    "galerkin_solve: step-size underflow; reduce m or use the FD solver");
            continue;
        }
        c = tmp;
        Eb += step / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
        Ep += step / 6.0 * (p1 + 2.0 * p2 + 2.0 * p3 + p4);
        t += step;
        out.times.push_back(t);
        out.coeffs.push_back(c);
        out.grad2_b.push_back(Eb);
        out.grad2.push_back(Ep);
    }
    return out;
}

GridFunction reconstruct(const GalerkinState& state, const Grid& grid, const Interval& domain) {
    GridFunction u(grid.n_cells, 0.0);
    for (std::size_t k = 1; k <= state.m; ++k) {
        const double ck = state.coeffs[k - 1];
        if (ck == 0.0) continue;
        for (std::size_t i = 0; i < grid.n_cells; ++i)
            u[i] += ck * basis_eval(k, grid.centers[i], domain);
    }
    return u;
}

}  // namespace visclab
