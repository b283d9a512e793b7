#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Data-parallel inner loops shared by the solvers and the entropy checker.
// Each kernel has a serial reference and an OpenMP variant; both write each
// output element independently, so they agree bitwise for any thread count.

namespace visclab::kernels {

enum class Exec { Serial, Parallel };

// Process-wide default used when callers do not pick a policy.
Exec default_exec();
void set_default_exec(Exec e);

// Two-point numerical flux over all faces of a zero-ghost cell array:
// faces[0] = F(0, u[0]), faces[i] = F(u[i-1], u[i]), faces[n] = F(u[n-1], 0).
// The callable must be safe to invoke concurrently.
template <class Flux>
void face_sweep_serial(std::span<const double> u, std::span<double> faces, Flux&& flux) {
    const std::size_t n = u.size();
    faces[0] = flux(0.0, u[0]);
    for (std::size_t i = 1; i < n; ++i) faces[i] = flux(u[i - 1], u[i]);
    faces[n] = flux(u[n - 1], 0.0);
}

template <class Flux>
void face_sweep_parallel(std::span<const double> u, std::span<double> faces, Flux&& flux) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i <= n; ++i) {
        const double ul = (i == 0) ? 0.0 : u[static_cast<std::size_t>(i - 1)];
        const double ur = (i == n) ? 0.0 : u[static_cast<std::size_t>(i)];
        faces[static_cast<std::size_t>(i)] = flux(ul, ur);
    }
}

template <class Flux>
void face_sweep(std::span<const double> u, std::span<double> faces, Flux&& flux, Exec e) {
    if (e == Exec::Parallel)
        face_sweep_parallel(u, faces, flux);
    else
        face_sweep_serial(u, faces, flux);
}

// out[i] = u[i] - lambda * (faces[i+1] - faces[i]).
void conservative_update(std::span<const double> u, std::span<const double> faces,
                         double lambda, std::span<double> out, Exec e);
void conservative_update_serial(std::span<const double> u, std::span<const double> faces,
                                double lambda, std::span<double> out);
void conservative_update_parallel(std::span<const double> u, std::span<const double> faces,
                                  double lambda, std::span<double> out);

// Face diffusion coefficients from cell values with zero ghosts:
// bf[i] = B((u[i-1]+u[i])/2), ghost value 0 at both ends. The callable is
// invoked concurrently in the parallel variant.
template <class BFn>
void face_coefficients_serial(std::span<const double> u, std::span<double> bf, BFn&& B) {
    const std::size_t n = u.size();
    bf[0] = B(0.5 * u[0]);
    for (std::size_t i = 1; i < n; ++i) bf[i] = B(0.5 * (u[i - 1] + u[i]));
    bf[n] = B(0.5 * u[n - 1]);
}

template <class BFn>
void face_coefficients_parallel(std::span<const double> u, std::span<double> bf, BFn&& B) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i <= n; ++i) {
        const double ul = (i == 0) ? 0.0 : u[static_cast<std::size_t>(i - 1)];
        const double ur = (i == n) ? 0.0 : u[static_cast<std::size_t>(i)];
        bf[static_cast<std::size_t>(i)] = B(0.5 * (ul + ur));
    }
}

template <class BFn>
void face_coefficients(std::span<const double> u, std::span<double> bf, BFn&& B, Exec e) {
    if (e == Exec::Parallel)
        face_coefficients_parallel(u, bf, B);
    else
        face_coefficients_serial(u, bf, B);
}

// Thomas solve of the tridiagonal system
//   -lo[i] x[i-1] + diag[i] x[i] - up[i] x[i+1] = rhs[i]
// written with the off-diagonal magnitudes lo, up >= 0 of an M-matrix.
// Sequential by nature; kept as the single implementation. Returns false on
// loss of diagonal dominance (pivot <= 0).
bool thomas_solve(std::span<const double> lo, std::span<const double> diag,
                  std::span<const double> up, std::span<const double> rhs,
                  std::span<double> x, std::span<double> scratch);

// Serial reductions over cell arrays. O(n) and run once per step, so they
// stay serial to keep summation order (and hence output bytes) fixed.
double sum_abs_scaled(std::span<const double> u, double h);     // h * sum |u_i|
double sum_scaled(std::span<const double> u, double h);         // h * sum u_i
double sum_squares_scaled(std::span<const double> u, double h); // h * sum u_i^2
double max_abs(std::span<const double> u);
// sum over faces of |u_i - u_{i-1}| with zero ghosts (discrete TV incl.
// boundary jumps).
double total_variation(std::span<const double> u);
// sum over faces of w[i] * (jump_i)^2 / h with zero ghosts; the wall faces
// carry an extra factor (the Dirichlet value sits half a cell from the first
// center, so the one-sided gradient doubles).
double weighted_jump_square_sum(std::span<const double> u, std::span<const double> w, double h,
                                double boundary_weight = 1.0);

}  // namespace visclab::kernels
