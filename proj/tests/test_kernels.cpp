#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "visclab/kernels.hpp"

using namespace visclab;

namespace {

std::vector<double> random_field(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> u(n);
    for (auto& v : u) v = uni(rng);
    return u;
}

}  // namespace

TEST_CASE("parallel kernels agree bitwise with the serial reference") {
    for (std::size_t n : {8u, 127u, 1024u}) {
        const auto u = random_field(n, 42 + n);
        std::vector<double> fs(n + 1), fp(n + 1);
        auto flux = [](double a, double b) { return 0.5 * (a * a + b * b) - 0.7 * (b - a); };
        kernels::face_sweep_serial(u, fs, flux);
        kernels::face_sweep_parallel(u, fp, flux);
        CHECK(fs == fp);

        std::vector<double> os(n), op(n);
        kernels::conservative_update_serial(u, fs, 0.37, os);
        kernels::conservative_update_parallel(u, fp, 0.37, op);
        CHECK(os == op);

        auto bfn = [](double v) { return 1.0 + 0.5 / (1.0 + v * v); };
        kernels::face_coefficients_serial(u, fs, bfn);
        kernels::face_coefficients_parallel(u, fp, bfn);
        CHECK(fs == fp);
    }
}

TEST_CASE("thomas solve against a dense elimination oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.1, 1.0);
    const std::size_t n = 12;
    std::vector<double> lo(n), up(n), diag(n), rhs(n), x(n), scratch(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = i > 0 ? uni(rng) : 0.0;
        up[i] = i + 1 < n ? uni(rng) : 0.0;
        diag[i] = 1.0 + lo[i] + up[i];  // strict dominance
        rhs[i] = uni(rng) - 0.5;
    }
    REQUIRE(kernels::thomas_solve(lo, diag, up, rhs, x, scratch));

    // oracle: dense Gaussian elimination
    std::vector<std::vector<double>> A(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        A[i][i] = diag[i];
        if (i > 0) A[i][i - 1] = -lo[i];
        if (i + 1 < n) A[i][i + 1] = -up[i];
        A[i][n] = rhs[i];
    }
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = A[row][col] / A[col][col];
            for (std::size_t k = col; k <= n; ++k) A[row][k] -= f * A[col][k];
        }
    std::vector<double> y(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = A[i][n];
        for (std::size_t k = i + 1; k < n; ++k) acc -= A[i][k] * y[k];
        y[i] = acc / A[i][i];
    }
    for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(y[i]).epsilon(1e-12));
}

TEST_CASE("thomas solve reports dominance loss") {
    std::vector<double> lo{0.0, 2.0}, up{2.0, 0.0}, diag{1.0, -5.0}, rhs{1.0, 1.0};
    std::vector<double> x(2), scratch(2);
    CHECK(!kernels::thomas_solve(lo, diag, up, rhs, x, scratch));
}

TEST_CASE("reductions") {
    const std::vector<double> u{1.0, -2.0, 0.5};
    CHECK(kernels::sum_abs_scaled(u, 0.5) == doctest::Approx(1.75));
    CHECK(kernels::sum_scaled(u, 2.0) == doctest::Approx(-1.0));
    CHECK(kernels::sum_squares_scaled(u, 1.0) == doctest::Approx(5.25));
    CHECK(kernels::max_abs(u) == 2.0);
    // TV includes the jumps to the zero boundary datum
    CHECK(kernels::total_variation(u) == doctest::Approx(1.0 + 3.0 + 2.5 + 0.5));

    const std::vector<double> w(u.size() + 1, 2.0);
    const double expected = 2.0 * (1.0 + 9.0 + 6.25 + 0.25) / 0.1;
    CHECK(kernels::weighted_jump_square_sum(u, w, 0.1) == doctest::Approx(expected));
}
