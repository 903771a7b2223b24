#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "hjlab/prior.hpp"
#include "hjlab/rng.hpp"

using namespace hjlab;

TEST_CASE("built-in rademacher")
{
    const DiscretePrior p = make_prior("rademacher");
    REQUIRE(p.size() == 2);
    CHECK(p.value(0) == -1.0);
    CHECK(p.value(1) == 1.0);
    CHECK(p.weight(0) == 0.5);
    CHECK(p.weight(1) == 0.5);
    CHECK(p.bound() == 1.0);

    const auto [mean, second] = prior_moments(p);
    CHECK(mean == 0.0);
    CHECK(second == 1.0);
}

TEST_CASE("explicit atom list keeps normalized weights")
{
    const DiscretePrior p = make_prior(std::vector<PriorAtom>{{0.0, 0.25}, {2.0, 0.75}});
    CHECK(p.weight(0) == 0.25);
    CHECK(p.weight(1) == 0.75);
    CHECK(p.bound() == 2.0);
    const auto [mean, second] = prior_moments(p);
    CHECK(mean == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(second == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("unnormalized weights are rescaled")
{
    const DiscretePrior p = make_prior(std::vector<PriorAtom>{{-1.0, 1.0}, {1.0, 3.0}});
    CHECK(p.weight(0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.weight(1) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("single atom moments")
{
    const double c = -1.7;
    const DiscretePrior p = make_prior(std::vector<PriorAtom>{{c, 1.0}});
    const auto [mean, second] = prior_moments(p);
    CHECK(mean == c);
    CHECK(second == doctest::Approx(c * c).epsilon(1e-15));
}

TEST_CASE("rejections")
{
    CHECK_THROWS_AS(make_prior(std::vector<PriorAtom>{}), std::invalid_argument);
    CHECK_THROWS_AS(make_prior(std::vector<PriorAtom>{{1.0, -0.5}, {0.0, 1.5}}), std::invalid_argument);
    CHECK_THROWS_AS(make_prior(std::vector<PriorAtom>{{std::nan(""), 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_prior(std::vector<PriorAtom>{{1.0, std::nan("")}}), std::invalid_argument);
    CHECK_THROWS_AS(make_prior("no-such-prior"), std::invalid_argument);
    CHECK_THROWS_AS(make_prior("binary:1.5"), std::invalid_argument);
}

TEST_CASE("spec string grammar")
{
    const DiscretePrior u = make_prior("uniform:-1,0,1");
    REQUIRE(u.size() == 3);
    CHECK(u.weight(1) == doctest::Approx(1.0 / 3).epsilon(1e-15));

    const DiscretePrior b = make_prior("binary:0.3");
    CHECK(b.mean() == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(b.bound() == 1.0);

    const DiscretePrior a = make_prior("atoms:[(0,0.25),(2,0.75)]");
    CHECK(a.mean() == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("sampling frequencies pass a chi-square check at n=1e5")
{
    // critical value for alpha=1e-3: 10.83 (1 dof), 16.27 (3 dof)
    const int n = 100000;
    for (const char* spec : {"rademacher", "binary:0.3"}) {
        const DiscretePrior p = make_prior(spec);
        Rng rng(1234567);
        std::map<double, int> counts;
        for (int i = 0; i < n; ++i) counts[p.sample(rng)]++;
        double chi2 = 0.0;
        for (int a = 0; a < p.size(); ++a) {
            const double expect = n * p.weight(a);
            const double obs = counts.count(p.value(a)) ? counts[p.value(a)] : 0.0;
            chi2 += (obs - expect) * (obs - expect) / expect;
        }
        CHECK(chi2 < 10.83);
    }
}

TEST_CASE("quantile quantizer, uniform in quantile")
{
    // uniform on [-1,1]: quantile(u) = 2u - 1
    const DiscretePrior q = quantize_prior([](double u) { return 2.0 * u - 1.0; }, 4);
    REQUIRE(q.size() == 4);
    CHECK(q.value(0) == doctest::Approx(-0.75).epsilon(1e-15));
    CHECK(q.value(3) == doctest::Approx(0.75).epsilon(1e-15));
    for (int a = 0; a < 4; ++a) CHECK(q.weight(a) == doctest::Approx(0.25).epsilon(1e-15));
}
