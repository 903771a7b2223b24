#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hjlab/hopf_lax.hpp"
#include "hjlab/prior.hpp"
#include "hjlab/viscosity_pde.hpp"

using namespace hjlab;

namespace {

PsiCurve rademacher_curve(double h_max, int n = 801, int order = 61)
{
    return tabulate_psi(make_prior("rademacher"), h_max, n, order);
}

PsiCurve constant_curve(double c, double h_max = 4.0, int n = 41)
{
    std::vector<double> h(n), v(n, c), d(n, 0.0);
    for (int i = 0; i < n; ++i) h[i] = h_max * i / static_cast<double>(n - 1);
    return PsiCurve::from_samples(h, v, d, 1.0, "constant");
}

PsiCurve scaled_curve(const PsiCurve& base, double factor)
{
    std::vector<double> v = base.values(), d = base.prime_values();
    for (auto& x : v) x *= factor;
    for (auto& x : d) x *= factor;
    return PsiCurve::from_samples(base.grid(), v, d, factor * base.lipschitz(), "scaled");
}

double sup_error_vs_hopf_lax(const HJGrid& g, const PsiCurve& curve)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < g.t_grid.size(); ++i)
        for (std::size_t j = 0; j < g.h_grid.size(); ++j)
            worst = std::max(worst, std::fabs(g.values[i][j] -
                                              hopf_lax_eval(curve, g.t_grid[i], g.h_grid[j]).value));
    return worst;
}

} // namespace

TEST_CASE("p=1 is linear transport: f(t,h) = psi(h+t)")
{
    const PsiCurve c = rademacher_curve(6.0);
    const HJGrid g = solve_hj(c, 1, 2.0, 2.0, 1e-3, 0.5, 11);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.t_grid.size(); ++i)
        for (std::size_t j = 0; j < g.h_grid.size(); ++j)
            worst = std::max(worst,
                             std::fabs(g.values[i][j] - c.value(g.h_grid[j] + g.t_grid[i])));
    CHECK(worst <= 5e-3);
}

TEST_CASE("constant data is a stationary solution to machine precision")
{
    const PsiCurve c = constant_curve(0.37);
    const HJGrid g = solve_hj(c, 2, 1.0, 2.0, 0.01, 0.5, 5);
    for (const auto& row : g.values)
        for (double v : row) CHECK(std::fabs(v - 0.37) <= 1e-14);
}

TEST_CASE("p=2 against the Hopf-Lax oracle, coarse grid")
{
    // the acceptance suite runs the dh=1e-3 version over [0,2]^2
    const PsiCurve c = rademacher_curve(8.0, 1601);
    const HJGrid g = solve_hj(c, 2, 1.0, 1.0, 4e-3, 0.5, 11);
    CHECK(sup_error_vs_hopf_lax(g, c) <= 2e-2);
}

TEST_CASE("produced grids satisfy the scheme invariants")
{
    const PsiCurve c = rademacher_curve(8.0, 1601);
    const HJGrid g = solve_hj(c, 2, 1.0, 2.0, 4e-3, 0.5, 11);

    for (std::size_t j = 0; j < g.h_grid.size(); ++j)
        CHECK(g.values[0][j] == c.value(g.h_grid[j])); // slice 0 is the data

    for (std::size_t i = 0; i < g.t_grid.size(); ++i)
        for (std::size_t j = 0; j < g.h_grid.size(); ++j) {
            if (j > 0) CHECK(g.values[i][j] - g.values[i][j - 1] >= -1e-8);
            if (i > 0) CHECK(g.values[i][j] - g.values[i - 1][j] >= -1e-10);
        }
}

TEST_CASE("comparison principle for ordered data")
{
    const PsiCurve c1 = rademacher_curve(8.0);
    const PsiCurve c2 = scaled_curve(c1, 1.2); // psi1 <= psi2 pointwise
    const HJGrid u = solve_hj(c1, 2, 1.0, 2.0, 4e-3, 0.5, 6);
    const HJGrid v = solve_hj(c2, 2, 1.0, 2.0, 4e-3, 0.5, 6);
    const auto [lhs, rhs] = comparison_check(u, v);
    CHECK(lhs <= rhs + 1e-3);
    CHECK(lhs <= 1e-3);

    const auto [l0, r0] = comparison_check(u, u);
    CHECK(l0 == 0.0);
    CHECK(r0 == 0.0);
}

TEST_CASE("solution stays below the quadratic supersolution barrier")
{
    const PsiCurve c = rademacher_curve(8.0, 1601);
    // C with psi(h) <= C h^2 on the padded window; sup psi/h^2 = 1/4 at h->0
    const double C = 0.2505;
    for (int i = 0; i < c.size(); ++i) {
        const double h = c.grid()[i];
        if (h > 0.0) CHECK(c.values()[i] <= C * h * h + 1e-12);
    }
    const double t_hi = 0.9 / (8.0 * C);
    const HJGrid u = solve_hj(c, 2, t_hi, 2.0, 2e-3, 0.5, 11);
    const HJGrid b = make_barrier_grid(C, u.t_grid, u.h_grid);
    const auto [lhs, rhs] = comparison_check(u, b);
    CHECK(lhs <= rhs + 1e-3);

    // boundary flatness below the barrier blow-up time; second-order
    // one-sided difference so the quadratic profile itself drops out
    for (std::size_t i = 0; i < u.t_grid.size(); ++i) {
        const double slope0 = (-3.0 * u.values[i][0] + 4.0 * u.values[i][1] - u.values[i][2]) /
                              (2.0 * u.dh);
        CHECK(slope0 <= 1e-3);
    }
}

TEST_CASE("grid mismatch is rejected")
{
    const PsiCurve c = rademacher_curve(6.0);
    const HJGrid a = solve_hj(c, 2, 0.5, 1.0, 0.01, 0.5, 5);
    const HJGrid b = solve_hj(c, 2, 0.5, 1.0, 0.02, 0.5, 5);
    CHECK_THROWS_AS(comparison_check(a, b), std::invalid_argument);
}

TEST_CASE("runtime CFL guard triggers on an understated gradient bound")
{
    // claim Lipschitz 0.05 for data with true slope up to ~1
    const PsiCurve honest = rademacher_curve(6.0, 601);
    const PsiCurve lying = PsiCurve::from_samples(honest.grid(), honest.values(),
                                                  honest.prime_values(), 0.05, "understated");
    CHECK_THROWS_AS(solve_hj(lying, 2, 1.0, 2.0, 0.01, 0.5, 5), std::runtime_error);
}

TEST_CASE("parameter validation")
{
    const PsiCurve c = constant_curve(0.0);
    CHECK_THROWS_AS(solve_hj(c, 0, 1.0, 1.0, 0.01, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(solve_hj(c, 2, 1.0, 1.0, -0.01, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(solve_hj(c, 2, 1.0, 1.0, 0.01, 0.95), std::invalid_argument);
    CHECK_THROWS_AS(make_barrier_grid(0.25, {0.0, 0.6}, {0.0, 1.0}), std::domain_error);
}

TEST_CASE("bilinear readback matches grid nodes")
{
    const PsiCurve c = rademacher_curve(6.0);
    const HJGrid g = solve_hj(c, 2, 1.0, 1.0, 0.01, 0.5, 6);
    CHECK(hj_value(g, g.t_grid[3], g.h_grid[40]) == doctest::Approx(g.values[3][40]).epsilon(1e-14));
    CHECK_THROWS_AS(hj_value(g, 2.0, 0.5), std::domain_error);
}
