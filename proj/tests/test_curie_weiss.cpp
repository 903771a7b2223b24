#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hjlab/curie_weiss.hpp"
#include "hjlab/util.hpp"

using namespace hjlab;

TEST_CASE("t=0 gives independent spins: F = log cosh h")
{
    for (int N : {1, 7, 50})
        for (double h : {0.0, 0.3, 1.5})
            CHECK(std::fabs(cw_free_energy(N, 0.0, h).F - log_cosh(h)) <= 1e-13);
}

TEST_CASE("single spin: F = t + log cosh h")
{
    CHECK(std::fabs(cw_free_energy(1, 0.7, 0.0).F - 0.7) <= 1e-14);
    CHECK(std::fabs(cw_free_energy(1, 0.4, 0.9).F - (0.4 + log_cosh(0.9))) <= 1e-14);
}

TEST_CASE("N=20 matches brute force over all 2^20 configurations")
{
    const int N = 20;
    const double t = 0.3, h = 0.2;
    // independent route: direct sum over spin configurations
    double mx = -HUGE_VAL;
    std::vector<double> ex(N + 1);
    for (int k = 0; k <= N; ++k) {
        const double m = 2.0 * k - N;
        ex[k] = t * m * m / N + h * m;
        mx = std::max(mx, ex[k]);
    }
    double z = 0.0;
    for (long cfg = 0; cfg < (1L << N); ++cfg)
        z += std::exp(ex[__builtin_popcountll(cfg)] - mx);
    const double brute = (mx + std::log(z) - N * M_LN2) / N;
    CHECK(std::fabs(cw_free_energy(N, t, h).F - brute) <= 1e-12);
}

TEST_CASE("exact HJ identity with viscosity 1/N")
{
    {
        const auto [re, rf] = cw_identity_check(100, 0.5, 0.3, 1e-4);
        CHECK(re <= 1e-12);
        CHECK(rf <= 1e-6);
    }
    {
        const auto [re, rf] = cw_identity_check(1, 0.9, 0.2, 1e-4);
        CHECK(re <= 1e-14);
    }
    {
        const auto [re, rf] = cw_identity_check(2000, 0.8, 0.1, 1e-4);
        CHECK(re <= 1e-11);
        CHECK(rf <= 1e-5);
    }
}

TEST_CASE("spin-flip symmetry F(t,h) = F(t,-h)")
{
    for (double h : {0.1, 0.7, 2.0})
        CHECK(cw_free_energy(64, 0.6, h).F == cw_free_energy(64, 0.6, -h).F);
}

TEST_CASE("limit value")
{
    // below the transition at h=0 the maximizer stays at the origin
    for (double t : {0.1, 0.3, 0.5})
        CHECK(std::fabs(cw_limit_eval(t, 0.0)) <= 1e-12);
    CHECK(cw_limit_eval(0.0, 1.0) == log_cosh(1.0));
    // above it the sup is strictly positive
    CHECK(cw_limit_eval(0.8, 0.0) > 1e-3);

    for (double t : {0.2, 0.6, 1.2})
        for (double h : {0.0, 0.4, 1.0}) {
            CHECK(cw_limit_eval(t, h) >= log_cosh(h) - 1e-12);
            CHECK(cw_limit_eval(t + 0.2, h) >= cw_limit_eval(t, h) - 1e-12);
        }
}

TEST_CASE("finite-N free energy approaches the limit")
{
    const double t = 0.8, h = 0.4;
    const double f = cw_limit_eval(t, h);
    double prev = HUGE_VAL;
    for (int N : {50, 200, 800}) {
        const double err = std::fabs(cw_free_energy(N, t, h).F - f);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("argument validation")
{
    CHECK_THROWS_AS(cw_free_energy(0, 0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(cw_free_energy(10, -0.1, 0.1), std::domain_error);
    CHECK_THROWS_AS(cw_identity_check(10, 0.5, 0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cw_identity_check(10, 1e-6, 0.1, 1e-4), std::invalid_argument);
    CHECK_THROWS_AS(cw_limit_eval(-0.2, 0.0), std::domain_error);
}
