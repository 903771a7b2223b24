#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hjlab/hopf_lax.hpp"
#include "hjlab/prior.hpp"

using namespace hjlab;

namespace {

PsiCurve rademacher_curve(double h_max = 12.0, int n = 1201, int order = 61)
{
    return tabulate_psi(make_prior("rademacher"), h_max, n, order);
}

PsiCurve quadratic_curve(double C, double h_max = 6.0, int n = 601)
{
    std::vector<double> h(n), v(n), d(n);
    for (int i = 0; i < n; ++i) {
        h[i] = h_max * i / static_cast<double>(n - 1);
        v[i] = C * h[i] * h[i];
        d[i] = 2.0 * C * h[i];
    }
    return PsiCurve::from_samples(h, v, d, 2.0 * C * h_max, "synthetic quadratic");
}

// brute-force maximum over a dense equispaced grid in the same bracket
double dense_oracle(const PsiCurve& c, double t, double h, long n = 1000000)
{
    const double L = c.lipschitz();
    const double lo = std::max(0.0, h - 4.0 * t * L);
    const double hi = h + 4.0 * t * L;
    double best = -HUGE_VAL;
    for (long i = 0; i <= n; ++i) {
        const double hp = lo + (hi - lo) * static_cast<double>(i) / n;
        best = std::max(best, c.value(hp) - (h - hp) * (h - hp) / (8.0 * t));
    }
    return best;
}

} // namespace

TEST_CASE("t=0 returns the initial condition")
{
    const PsiCurve c = rademacher_curve(4.0, 401);
    for (double h : {0.0, 0.7, 3.2}) {
        const HopfLaxResult r = hopf_lax_eval(c, 0.0, h);
        CHECK(r.value == c.value(h));
        CHECK(r.maximizer == h);
    }
}

TEST_CASE("synthetic quadratic data reproduces C h^2/(1-8Ct)")
{
    const double C = 0.05;
    const PsiCurve c = quadratic_curve(C);
    for (auto [t, h] : std::vector<std::pair<double, double>>{{1.0, 1.0}, {2.0, 0.5}, {0.3, 1.5}}) {
        const double expect = C * h * h / (1.0 - 8.0 * C * t);
        const HopfLaxResult r = hopf_lax_eval(c, t, h);
        CHECK(std::fabs(r.value - expect) <= 1e-9);
        CHECK(std::fabs(r.maximizer - h / (1.0 - 8.0 * C * t)) <= 1e-6);
    }
}

TEST_CASE("dense-grid oracle at (0.1, 1)")
{
    const PsiCurve c = rademacher_curve();
    const HopfLaxResult r = hopf_lax_eval(c, 0.1, 1.0);
    CHECK(std::fabs(r.value - dense_oracle(c, 0.1, 1.0)) <= 1e-8);
}

TEST_CASE("dense-grid oracle at 100 random points")
{
    const PsiCurve c = rademacher_curve();
    std::mt19937_64 eng(42);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double t = 0.02 + 1.98 * U(eng);
        const double h = 2.0 * U(eng);
        const HopfLaxResult r = hopf_lax_eval(c, t, h);
        CHECK(std::fabs(r.value - dense_oracle(c, t, h, 200000)) <= 1e-8);
        CHECK(r.maximizer >= r.bracket_lo);
        CHECK(r.maximizer <= r.bracket_hi);
    }
}

TEST_CASE("structural invariants on a sweep grid")
{
    const PsiCurve c = rademacher_curve();
    const double L = c.lipschitz();
    std::vector<double> ts = {0.0, 0.25, 0.5, 1.0, 2.0};
    std::vector<double> hs;
    for (int i = 0; i <= 40; ++i) hs.push_back(2.0 * i / 40.0);

    std::vector<std::vector<double>> f(ts.size(), std::vector<double>(hs.size()));
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = 0; j < hs.size(); ++j)
            f[i][j] = hopf_lax_eval(c, ts[i], hs[j]).value;

    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = 0; j < hs.size(); ++j) {
            // admissible choices h' = h and h' = 0
            CHECK(f[i][j] >= c.value(hs[j]) - 1e-12);
            if (ts[i] > 0.0)
                CHECK(f[i][j] >= c.value(0.0) - hs[j] * hs[j] / (8.0 * ts[i]) - 1e-12);
            if (i > 0) CHECK(f[i][j] >= f[i - 1][j] - 1e-12); // monotone in t
            if (j > 0) {
                CHECK(f[i][j] >= f[i][j - 1] - 1e-8);                           // d_h f >= 0
                CHECK(f[i][j] - f[i][j - 1] <= L * (hs[j] - hs[j - 1]) + 1e-8); // h-Lipschitz
            }
        }
}

TEST_CASE("dynamic programming principle")
{
    const PsiCurve c = rademacher_curve();
    CHECK(dpp_check(c, 0.5, 0.5, 1.0) <= 5e-6);
    CHECK(dpp_check(c, 0.7, 1e-6, 0.8) <= 1e-4); // s -> 0 continuity

    const PsiCurve q = quadratic_curve(0.05);
    CHECK(dpp_check(q, 0.8, 0.7, 1.2) <= 1e-9); // closed forms on both sides
}

TEST_CASE("variational forms agree with the Hopf-Lax value")
{
    const PsiCurve c = rademacher_curve();
    {
        const auto [f1, f2] = variational_forms(c, 0.3, 0.7);
        const double f = hopf_lax_eval(c, 0.3, 0.7).value;
        CHECK(std::fabs(f1 - f) <= 1e-9);
        CHECK(std::fabs(f2 - f) <= 1e-9);
    }
    {
        const double C = 0.05;
        const PsiCurve q = quadratic_curve(C);
        const auto [f1, f2] = variational_forms(q, 1.0, 1.0);
        const double expect = C / (1.0 - 8.0 * C);
        CHECK(std::fabs(f1 - expect) <= 1e-9);
        CHECK(std::fabs(f2 - expect) <= 1e-9);
    }
    {
        // h = 0: both reduce to sup(psi(h') - h'^2/8)
        const auto [f1, f2] = variational_forms(c, 1.0, 0.0);
        const double f = hopf_lax_eval(c, 1.0, 0.0).value;
        CHECK(std::fabs(f1 - f) <= 1e-9);
        CHECK(std::fabs(f2 - f) <= 1e-9);
    }
    CHECK_THROWS_AS(variational_forms(c, 0.0, 1.0), std::domain_error);
}

TEST_CASE("domain errors and extrapolation flag")
{
    const PsiCurve c = rademacher_curve(2.0, 201);
    CHECK_THROWS_AS(hopf_lax_eval(c, -0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(hopf_lax_eval(c, 0.1, -1.0), std::domain_error);
    CHECK(hopf_lax_eval(c, 1.0, 1.0).extrapolated); // bracket reaches h=5
    CHECK(!hopf_lax_eval(c, 0.1, 0.5).extrapolated);
}
