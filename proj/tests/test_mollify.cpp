#include <doctest.h>

#include <cmath>
#include <vector>

#include "visclab/mollify.hpp"

using namespace visclab;

namespace {

ProblemSpec riemann_spec() {
    ProblemSpec s;
    s.domain = {0.0, 1.0};
    s.horizon = 0.3;
    s.hypothesis_class = HypothesisClass::B;
    s.initial.kind = InitialKind::MollifiedRiemann;
    s.initial.left = 1.0;
    s.initial.right = 0.0;
    s.initial.jump_location = 0.5;
    s.initial.smoothing = 0.05;
    return s;
}

ProblemSpec bump_spec() {
    ProblemSpec s;
    s.domain = {0.0, 1.0};
    s.horizon = 0.3;
    s.initial.kind = InitialKind::CompactBump;
    s.initial.center = 0.5;
    s.initial.width = 0.2;
    s.initial.height = 1.0;
    return s;
}

}  // namespace

TEST_CASE("mollifier normalization and support") {
    for (double eps : {1.0, 0.3, 0.05}) {
        const Mollifier rho = make_mollifier(eps);
        const double mass =
            quadrature(-eps, eps, 48, [&](double x) { return rho(x); });
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(rho(eps) == 0.0);
        CHECK(rho(-eps) == 0.0);
        CHECK(rho(1.0001 * eps) == 0.0);
    }
    // scaling identity rho_eps(x) = rho_1(x/eps)/eps
    const Mollifier r1 = make_mollifier(1.0);
    const Mollifier r2 = make_mollifier(0.2);
    CHECK(r2(0.0) * 0.2 == doctest::Approx(r1(0.0)).epsilon(1e-13));
    CHECK_THROWS_AS(make_mollifier(0.0), std::domain_error);
}

TEST_CASE("mollified flux reproduces linear flux exactly") {
    ProblemSpec s = bump_spec();
    s.flux = {FluxKind::LinearAdvection, 1.7, {}};
    const MollifiedFlux f = mollify_flux(s, 0.05);
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double u = -1.0 + 2.0 * i / 400.0;
        worst = std::max(worst, std::abs(f.value(u) - eval_flux(s, u)));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("mollified Burgers flux converges at second order") {
    const ProblemSpec s = bump_spec();
    std::vector<double> epss{0.2, 0.1, 0.05, 0.025}, errs;
    for (double eps : epss) {
        const MollifiedFlux f = mollify_flux(s, eps);
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double u = -1.0 + 2.0 * i / 200.0;
            worst = std::max(worst, std::abs(f.value(u) - eval_flux(s, u)));
        }
        errs.push_back(worst);
    }
    // log-log slope oracle
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < epss.size(); ++i) {
        const double lx = std::log(epss[i]), ly = std::log(errs[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(epss.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope >= 1.9);
}

TEST_CASE("zero flux mollifies to zero") {
    ProblemSpec s = bump_spec();
    s.flux = {FluxKind::Polynomial, 0.0, {}};
    const MollifiedFlux f = mollify_flux(s, 0.1);
    for (int i = 0; i <= 50; ++i) CHECK(f.value(-1.0 + i / 25.0) == doctest::Approx(0.0));
}

TEST_CASE("mollified flux derivative stays within the padded Lipschitz bound") {
    const ProblemSpec s = bump_spec();  // Burgers
    const double eps = 0.1;
    const MollifiedFlux f = mollify_flux(s, eps);
    const Interval I = invariant_interval(s);
    const double bound = max_abs_flux_prime(s, I.lo - 2.0 * eps - 1e-2, I.hi + 2.0 * eps + 1e-2);
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double u = I.lo + I.length() * i / 400.0;
        worst = std::max(worst, std::abs(f.deriv(u)));
    }
    CHECK(worst <= bound * (1.0 + 1e-9));
}

TEST_CASE("mollified initial data bounds") {
    const ProblemSpec s = bump_spec();
    const double u0_linf = initial_sup_norm(s);
    const double tv0 = initial_total_variation(s);
    double eps = 0.1;
    for (int j = 0; j < 10; ++j, eps *= 0.75) {
        const auto m = mollify_initial(s, eps, 2048);
        CHECK(m.linf <= u0_linf * (1.0 + 1e-12));
        CHECK(m.tv <= tv0 * (1.0 + 1e-8));
    }
}

TEST_CASE("zero data mollifies to zero") {
    ProblemSpec s = bump_spec();
    s.initial.height = 0.0;
    const auto m = mollify_initial(s, 0.05, 1024);
    CHECK(m.linf == 0.0);
    CHECK(m.tv == 0.0);
    CHECK(m.l1_laplacian == 0.0);
}

TEST_CASE("laplacian L1 stays order 1/eps over a halving sweep") {
    const ProblemSpec s = riemann_spec();
    const double tv0 = initial_total_variation(s);
    double eps = 0.02, sup = 0.0;
    for (int j = 0; j < 6; ++j, eps *= 0.5) {
        const auto m = mollify_initial(s, eps);
        sup = std::max(sup, eps * m.l1_laplacian / tv0);
    }
    CHECK(std::isfinite(sup));
    CHECK(sup < 50.0);
    MESSAGE("sup eps*||lap||/TV = ", sup);
}

TEST_CASE("mollification preserves mass away from the boundary") {
    const ProblemSpec s = bump_spec();
    const Grid g = Grid::uniform(s.domain, 4096);
    const auto m = mollify_initial(s, 0.05, 4096);
    double mass0 = 0.0, mass1 = 0.0;
    for (std::size_t i = 0; i < g.n_cells; ++i) {
        mass0 += eval_initial(s, g.centers[i]);
        mass1 += m.values[i];
    }
    CHECK(std::abs(mass1 - mass0) * g.h <= 1e-9);
}

TEST_CASE("support violation when the radius reaches the boundary") {
    const ProblemSpec s = bump_spec();  // support [0.3, 0.7]
    CHECK_THROWS_AS(mollify_initial(s, 0.35), SupportViolation);
}

TEST_CASE("shifted mollifier vanishes near the endpoints") {
    ProblemSpec s = bump_spec();
    s.initial.kind = InitialKind::SinePocket;
    s.initial.modes = {1.0};
    const Grid g = Grid::uniform(s.domain, 1024);
    const GridFunction v = sample_initial(s, g);
    const double eps = 0.02;
    const GridFunction w = shifted_mollify(v, g, s.domain, eps);
    for (std::size_t i = 0; i < g.n_cells; ++i) {
        const double dist = std::min(g.centers[i], 1.0 - g.centers[i]);
        if (dist < eps) CHECK(w[i] == 0.0);
    }
    // extended by zero, the discrete H1_0 condition is exact at the padding
    CHECK(w.front() == 0.0);
    CHECK(w.back() == 0.0);

    const GridFunction zero(g.n_cells, 0.0);
    const GridFunction wz = shifted_mollify(zero, g, s.domain, eps);
    for (double val : wz) CHECK(val == 0.0);

    CHECK_THROWS_AS(shifted_mollify(v, g, s.domain, 0.2), SupportViolation);
}

TEST_CASE("shifted mollifier converges in the discrete H1 norm") {
    ProblemSpec s = bump_spec();
    s.initial.kind = InitialKind::SinePocket;
    s.initial.modes = {1.0};
    const Grid g = Grid::uniform(s.domain, 2048);
    const GridFunction v = sample_initial(s, g);

    auto h1_err = [&](const GridFunction& w) {
        double acc = 0.0;
        double prev_d = 0.0;
        for (std::size_t i = 0; i < g.n_cells; ++i) {
            const double d = w[i] - v[i];
            acc += d * d * g.h;
            const double dd = (d - prev_d) / g.h;
            acc += dd * dd * g.h;
            prev_d = d;
        }
        acc += (0.0 - prev_d) * (0.0 - prev_d) / g.h;
        return std::sqrt(acc);
    };

    std::vector<double> errs;
    for (double eps : {2e-4, 1e-4, 5e-5, 2.5e-5, 1.25e-5})
        errs.push_back(h1_err(shifted_mollify(v, g, s.domain, eps)));
    for (std::size_t i = 1; i < errs.size(); ++i) CHECK(errs[i] < errs[i - 1]);
    CHECK(errs.back() < 1e-2);
}
