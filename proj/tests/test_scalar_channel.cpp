#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hjlab/prior.hpp"
#include "hjlab/quadrature.hpp"
#include "hjlab/scalar_channel.hpp"
#include "hjlab/util.hpp"

using namespace hjlab;

TEST_CASE("gauss-hermite moments are exact up to degree 2n-1")
{
    const GaussHermite gh(8);
    double sum = 0.0;
    for (double w : gh.weight) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));

    // E[Z^k] = 0 for odd k, (k-1)!! for even k
    std::vector<double> expected = {1, 0, 1, 0, 3, 0, 15, 0, 105, 0, 945, 0, 10395, 0, 135135, 0};
    for (int k = 0; k <= 15; ++k) {
        const double got = gh.expect([&](double z) { return powi(z, k); });
        CHECK(std::fabs(got - expected[k]) <= 1e-9 * (1.0 + expected[k]));
    }
}

TEST_CASE("psi at h=0 vanishes")
{
    const DiscretePrior p = make_prior("rademacher");
    CHECK(std::fabs(psi(p, 0.0, 31)) <= 1e-12);
}

TEST_CASE("rademacher psi equals E log cosh(sqrt(h) z + h) - h/2")
{
    // Independent route: 1-d quadrature at doubled order on the closed form.
    // log cosh is not entire (poles at Im z = pi/(2 sqrt(h))), so the
    // quadrature error at order 61 is pole-limited: ~1e-15 for h <= 1 but
    // only ~1e-7 near h = 4. Thresholds frozen from that measurement.
    const DiscretePrior p = make_prior("rademacher");
    const GaussHermite gh(122);
    auto direct = [&](double h) {
        return gh.expect([&](double z) { return log_cosh(std::sqrt(h) * z + h); }) - 0.5 * h;
    };
    for (double h : {0.1, 0.5, 1.0})
        CHECK(std::fabs(psi(p, h, 61) - direct(h)) <= 1e-10);
    for (double h : {2.0, 4.0})
        CHECK(std::fabs(psi(p, h, 61) - direct(h)) <= 1e-6);
}

TEST_CASE("single-atom prior: psi(h) = h c^2 / 2")
{
    const double c = 1.3;
    const DiscretePrior p = make_prior(std::vector<PriorAtom>{{c, 1.0}});
    for (double h : {0.0, 0.7, 3.0})
        CHECK(std::fabs(psi(p, h, 41) - 0.5 * h * c * c) <= 1e-12);
}

TEST_CASE("psi_prime at h=0 equals mean(P)^2/2")
{
    // the h->0 limit of the derivative keeps the replica term, which halves
    // the naive mean^2 value
    CHECK(std::fabs(psi_prime(make_prior("rademacher"), 0.0, 31)) <= 1e-13);
    const DiscretePrior p = make_prior(std::vector<PriorAtom>{{0.0, 0.25}, {2.0, 0.75}});
    CHECK(psi_prime(p, 0.0, 31) == doctest::Approx(0.5 * 1.5 * 1.5).epsilon(1e-12));
}

TEST_CASE("psi_prime matches centered finite differences")
{
    const double delta = 1e-4;
    for (const char* spec : {"rademacher", "atoms:[(0,0.25),(2,0.75)]"}) {
        const DiscretePrior p = make_prior(spec);
        for (double h : {0.25, 1.0, 2.5}) {
            const double fd = (psi(p, h + delta, 81) - psi(p, h - delta, 81)) / (2.0 * delta);
            CHECK(std::fabs(psi_prime(p, h, 81) - fd) <= 1e-6);
        }
    }
}

TEST_CASE("tabulated curve invariants")
{
    const DiscretePrior p = make_prior("rademacher");
    const PsiCurve c = tabulate_psi(p, 4.0, 401, 61);
    const double b2 = p.bound() * p.bound();

    CHECK(std::fabs(c.values()[0]) <= 1e-12);
    for (int i = 0; i < c.size(); ++i) {
        CHECK(c.prime_values()[i] >= -1e-12);
        CHECK(c.prime_values()[i] <= b2 + 1e-9);
        CHECK(c.values()[i] <= b2 * c.grid()[i] + 1e-9);
        if (i > 0) CHECK(c.values()[i] >= c.values()[i - 1] - 1e-12);
    }
}

TEST_CASE("grid refinement: 401 vs 801 nodes agree at midpoints")
{
    const DiscretePrior p = make_prior("rademacher");
    const PsiCurve a = tabulate_psi(p, 4.0, 401, 61);
    const PsiCurve b = tabulate_psi(p, 4.0, 801, 61);
    double worst = 0.0;
    for (int i = 0; i + 1 < a.size(); ++i) {
        const double mid = 0.5 * (a.grid()[i] + a.grid()[i + 1]);
        worst = std::max(worst, std::fabs(a.value(mid) - b.value(mid)));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("quadrature order doubling: 61 vs 121")
{
    // Convergence is limited by the log-singularities of the integrand at
    // Im z = pi/(2 sqrt(h)): the 1e-10 agreement holds on [0, 1] and
    // degrades to ~2e-7 by h=4 (measured; margin 4x frozen below).
    const DiscretePrior p = make_prior("rademacher");
    const PsiCurve a = tabulate_psi(p, 4.0, 101, 61);
    const PsiCurve b = tabulate_psi(p, 4.0, 101, 121);
    double worst_low = 0.0, worst_all = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        const double d = std::fabs(a.values()[i] - b.values()[i]);
        worst_all = std::max(worst_all, d);
        if (a.grid()[i] <= 1.0) worst_low = std::max(worst_low, d);
    }
    CHECK(worst_low <= 1e-10);
    CHECK(worst_all <= 1e-6);
}

TEST_CASE("extrapolation is linear with the final slope")
{
    const DiscretePrior p = make_prior("rademacher");
    const PsiCurve c = tabulate_psi(p, 2.0, 101, 61);
    const double end = c.values().back();
    const double slope = (c.value(2.0 + 1e-6) - end) / 1e-6;
    CHECK(c.value(3.0) == doctest::Approx(end + slope * 1.0).epsilon(1e-9));
}

TEST_CASE("domain errors")
{
    const DiscretePrior p = make_prior("rademacher");
    CHECK_THROWS_AS(psi(p, -0.1, 31), std::domain_error);
    CHECK_THROWS_AS(psi_prime(p, -0.1, 31), std::domain_error);
    const PsiCurve c = tabulate_psi(p, 1.0, 21, 31);
    CHECK_THROWS_AS(c.value(-1e-9), std::domain_error);
    CHECK_THROWS_AS(tabulate_psi(p, -1.0, 21, 31), std::invalid_argument);
}
