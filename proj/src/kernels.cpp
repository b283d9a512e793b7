#include "visclab/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace visclab::kernels {

namespace {
Exec g_default =
#ifdef _OPENMP
    Exec::Parallel;
#else
    Exec::Serial;
#endif
}  // namespace

Exec default_exec() { return g_default; }
void set_default_exec(Exec e) { g_default = e; }

void conservative_update_serial(std::span<const double> u, std::span<const double> faces,
                                double lambda, std::span<double> out) {
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) out[i] = u[i] - lambda * (faces[i + 1] - faces[i]);
}

void conservative_update_parallel(std::span<const double> u, std::span<const double> faces,
                                  double lambda, std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        out[k] = u[k] - lambda * (faces[k + 1] - faces[k]);
    }
}

void conservative_update(std::span<const double> u, std::span<const double> faces,
                         double lambda, std::span<double> out, Exec e) {
    if (e == Exec::Parallel)
        conservative_update_parallel(u, faces, lambda, out);
    else
        conservative_update_serial(u, faces, lambda, out);
}

bool thomas_solve(std::span<const double> lo, std::span<const double> diag,
                  std::span<const double> up, std::span<const double> rhs,
                  std::span<double> x, std::span<double> scratch) {
    const std::size_t n = diag.size();
    // scratch holds the modified upper diagonal.
    double piv = diag[0];
    if (!(piv > 0.0)) return false;
    scratch[0] = -up[0] / piv;
    x[0] = rhs[0] / piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = diag[i] + lo[i] * scratch[i - 1];
        if (!(piv > 0.0)) return false;
        scratch[i] = -up[i] / piv;
        x[i] = (rhs[i] + lo[i] * x[i - 1]) / piv;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= scratch[i] * x[i + 1];
    return true;
}

double sum_abs_scaled(std::span<const double> u, double h) {
    double acc = 0.0;
    for (double v : u) acc += std::abs(v);
    return h * acc;
}

double sum_scaled(std::span<const double> u, double h) {
    double acc = 0.0;
    for (double v : u) acc += v;
    return h * acc;
}

double sum_squares_scaled(std::span<const double> u, double h) {
    double acc = 0.0;
    for (double v : u) acc += v * v;
    return h * acc;
}

double max_abs(std::span<const double> u) {
    double acc = 0.0;
    for (double v : u) acc = std::max(acc, std::abs(v));
    return acc;
}

double total_variation(std::span<const double> u) {
    const std::size_t n = u.size();
    if (n == 0) return 0.0;
    double tv = std::abs(u[0]);
    for (std::size_t i = 1; i < n; ++i) tv += std::abs(u[i] - u[i - 1]);
    tv += std::abs(u[n - 1]);
    return tv;
}

double weighted_jump_square_sum(std::span<const double> u, std::span<const double> w, double h,
                                double boundary_weight) {
    const std::size_t n = u.size();
    if (n == 0) return 0.0;
    double acc = boundary_weight * w[0] * u[0] * u[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double d = u[i] - u[i - 1];
        acc += w[i] * d * d;
    }
    acc += boundary_weight * w[n] * u[n - 1] * u[n - 1];
    return acc / h;
}

}  // namespace visclab::kernels
