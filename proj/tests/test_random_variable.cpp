#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include <probstir/probabilistic.hpp>
#include <probstir/random_variable.hpp>

using namespace probstir;

namespace
{

const std::vector<std::string> named{
    "bernoulli:p=1/3",      "binomial:m=3,p=1/2",   "poisson:alpha=2",          "exponential:alpha=3/2",
    "gamma:alpha=3/2,beta=2", "geometric:p=1/3",    "normal:mu=1,sigma2=2",     "negbinomial:r=2,p=1/2",
    "uniform",              "pointmass:c=-5/2",
};

} // namespace

TEST_CASE("parsing and describing random variables")
{
    for (const std::string &text : named) {
        CAPTURE(text);
        CHECK(describe(parse_random_variable(text)) == text);
    }
    const RandomVariable c = parse_random_variable("custom:moments=1/2,1,-3");
    REQUIRE(std::holds_alternative<Custom>(c));
    CHECK(std::get<Custom>(c).moments == std::vector<Rational>{Rational(1), Rational(1, 2), Rational(1), Rational(-3)});
    CHECK(describe(c) == "custom:moments=1/2,1,-3");

    CHECK_THROWS_AS(parse_random_variable("cauchy:x=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_random_variable("poisson"), std::invalid_argument);
    CHECK_THROWS_AS(parse_random_variable("poisson:alpha=2,alpha=3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_random_variable("poisson:alpha=two"), std::invalid_argument);
    CHECK_THROWS_AS(parse_random_variable("poisson:alpha=2,beta=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_random_variable("poisson:alpha"), std::invalid_argument);
    CHECK_THROWS_AS(parse_random_variable("custom:1,2"), std::invalid_argument);

    CHECK_THROWS_AS(parse_random_variable("poisson:alpha=0"), std::domain_error);
    CHECK_THROWS_AS(parse_random_variable("bernoulli:p=3/2"), std::domain_error);
    CHECK_NOTHROW(parse_random_variable("bernoulli:p=1"));
    CHECK_THROWS_AS(parse_random_variable("geometric:p=1"), std::domain_error);
    CHECK_THROWS_AS(parse_random_variable("binomial:m=3/2,p=1/2"), std::domain_error);
    CHECK_THROWS_AS(parse_random_variable("negbinomial:r=0,p=1/2"), std::domain_error);
    CHECK_THROWS_AS(parse_random_variable("normal:mu=0,sigma2=1"), std::domain_error);
    CHECK_THROWS_AS(parse_random_variable("normal:mu=1,sigma2=-1"), std::domain_error);
    CHECK_THROWS_AS(parse_random_variable("gamma:alpha=1,beta=0"), std::domain_error);
    CHECK_THROWS_AS(validate(Custom{{Rational(2), Rational(1)}}), std::domain_error);
}

TEST_CASE("moment formulas agree with the generating functions")
{
    for (const std::string &text : named) {
        CAPTURE(text);
        const RandomVariable rv = parse_random_variable(text);
        CHECK(moment(rv, 1) == mean(rv));
        for (std::size_t n = 0; n <= 9; ++n) {
            CAPTURE(n);
            CHECK(moment(rv, n) == raw_moment(rv, n));
        }
    }
}

TEST_CASE("moment spot values")
{
    CHECK(mean(Bernoulli{Rational(2, 7)}) == Rational(2, 7));
    // Poisson(1) moments are the Bell numbers
    const std::vector<long> bell{1, 1, 2, 5, 15, 52, 203, 877};
    for (std::size_t n = 0; n < bell.size(); ++n) {
        CHECK(raw_moment(Poisson{Rational(1)}, n) == Rational(bell[n]));
    }
    for (std::size_t n = 0; n <= 8; ++n) {
        CHECK(moment(Uniform01{}, n) == Rational(1, static_cast<long>(n) + 1));
        CHECK(moment(PointMass{Rational(-2, 3)}, n) == Rational(-2, 3).pow(static_cast<long>(n)));
    }
    // geometric on {1, 2, ...}: E[Y^2] = (2 - p)/p^2
    CHECK(raw_moment(Geometric{Rational(1, 4)}, 2) == Rational(7, 4) * Rational(16));
    // negative binomial counting failures: Var = r(1-p)/p^2
    const NegBinomial nb{3, Rational(2, 5)};
    CHECK(raw_moment(nb, 2) - mean(nb) * mean(nb) == Rational(3) * Rational(3, 5) / Rational(4, 25));
    CHECK(raw_moment(Normal{Rational(1), Rational(2)}, 4) == Rational(1 + 6 * 2 + 3 * 4));
    CHECK_THROWS_AS(raw_moment(Custom{{Rational(1), Rational(1)}}, 2), std::invalid_argument);
    CHECK(is_samplable(Poisson{Rational(1)}));
    CHECK_FALSE(is_samplable(Custom{{Rational(1), Rational(1)}}));
}
