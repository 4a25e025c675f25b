#include <doctest.h>

#include <random>
#include <stdexcept>

#include <probstir/series.hpp>

#include "generators.hpp"

using namespace probstir;

namespace
{

Series one_minus_t_inverse(std::size_t order)
{
    return Series::constant(order, Rational(1)) / (Series::constant(order, Rational(1)) - Series::variable(order));
}

Series exp_minus_one(std::size_t order)
{
    return exp(Series::variable(order)) - Rational(1);
}

} // namespace

TEST_CASE("ring operations")
{
    const Series one_plus_t(4, {Rational(1), Rational(1)});
    CHECK(one_plus_t * one_plus_t == Series(4, {Rational(1), Rational(2), Rational(1)}));

    const Series geom = one_minus_t_inverse(9);
    for (std::size_t n = 0; n <= 9; ++n) {
        CHECK(geom[n] == Rational(1));
    }

    std::mt19937_64 rng(3);
    const Series f = testing::random_series(rng, 8);
    CHECK(f + Series(8) == f);
    CHECK(f - f == Series(8));
    CHECK(Rational(3) * f == f + f + f);
}

TEST_CASE("order mismatch is a hard error")
{
    CHECK_THROWS_AS(Series(3) + Series(4), order_mismatch);
    CHECK_THROWS_AS(Series(3) * Series(4), order_mismatch);
    CHECK_THROWS_AS(compose(Series(3), Series::variable(4)), order_mismatch);
    CHECK_THROWS_AS(Series(3, std::vector<Rational>(5, Rational(1))), std::invalid_argument);
}

TEST_CASE("division by a series with zero constant term is rejected")
{
    CHECK_THROWS_AS(Series::constant(4, Rational(1)) / Series::variable(4), std::domain_error);
}

TEST_CASE("composition")
{
    const std::size_t order = 6;
    const Series t = Series::variable(order);
    const Series t2 = t * t;
    CHECK(compose(t2, t + t2) == Series(order, {Rational(0), Rational(0), Rational(1), Rational(2), Rational(1)}));
    std::mt19937_64 rng(5);
    const Series f = testing::random_series(rng, order);
    CHECK(compose(f, t) == f);
    CHECK(compose(log1p(t), exp_minus_one(order)) == t);
    CHECK_THROWS_AS(compose(f, t + Rational(1)), std::domain_error);
}

TEST_CASE("reversion of t/(1-t) is t/(1+t)")
{
    const std::size_t order = 16;
    const Series t = Series::variable(order);
    const Series f = t * one_minus_t_inverse(order);
    const Series expected = t / (Series::constant(order, Rational(1)) + t);
    const DeltaSeries r = revert(DeltaSeries(f));
    CHECK(r.series() == expected);
    // independent confirmation: both compositions collapse to t
    CHECK(compose(f, expected) == t);
    CHECK(compose(expected, f) == t);
    CHECK(revert(DeltaSeries(t)).series() == t);
}

TEST_CASE("delta series construction is checked")
{
    CHECK_THROWS_AS(DeltaSeries(Series::constant(4, Rational(1))), std::domain_error);
    CHECK_THROWS_AS(DeltaSeries(Series::monomial(4, Rational(1), 2)), std::domain_error);
}

TEST_CASE("property: reversion is a two-sided inverse")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t order = 1 + static_cast<std::size_t>(trial) % 16;
        const Series f = testing::random_delta(rng, order);
        const Series r = revert(DeltaSeries(f)).series();
        const Series t = Series::variable(order);
        CHECK(compose(f, r) == t);
        CHECK(compose(r, f) == t);
    }
}

TEST_CASE("property: Lagrange formulas match reversion")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 4; ++trial) {
        const std::size_t order = 9;
        const Series f = testing::random_delta(rng, order);
        const DeltaSeries fd(f);
        const Series r = revert(fd).series();
        const Series g = testing::random_series(rng, order);
        const Series g_of_r = compose(g, r);
        Series power = Series::constant(order, Rational(1));
        for (std::size_t k = 1; k <= order; ++k) {
            power *= r;
            for (std::size_t n = k; n <= order; ++n) {
                CHECK(lagrange_extract(g, fd, n, k, LagrangeFormula::B) == power[n]);
            }
        }
        for (std::size_t n = 0; n <= order; ++n) {
            CHECK(lagrange_extract(g, fd, n, 0, LagrangeFormula::A) == g_of_r[n]);
            if (n >= 1) {
                CHECK(lagrange_extract(g, fd, n, 0, LagrangeFormula::C) == r[n]);
            }
        }
    }
    const Series t = Series::variable(5);
    const Series g(5, {Rational(2), Rational(-1), Rational(3, 2), Rational(7)});
    for (std::size_t n = 0; n <= 5; ++n) {
        CHECK(lagrange_extract(g, DeltaSeries(t), n, 0, LagrangeFormula::A) == g[n]);
    }
    CHECK_THROWS_AS(lagrange_extract(g, DeltaSeries(t), 2, 3, LagrangeFormula::B), std::invalid_argument);
    CHECK_THROWS_AS(lagrange_extract(g, DeltaSeries(t), 0, 0, LagrangeFormula::C), std::invalid_argument);
    CHECK_THROWS_AS(lagrange_extract(g, DeltaSeries(t), 6, 1, LagrangeFormula::C), std::invalid_argument);
}

TEST_CASE("transcendental operations")
{
    const std::size_t order = 16;
    const Series t = Series::variable(order);
    const Series l = log1p(t);
    CHECK(coeff_egf(l, 4) == Rational(-6));
    for (std::size_t n = 1; n <= order; ++n) {
        CHECK(l.egf(n) == (n % 2 == 1 ? Rational(1) : Rational(-1)) * factorial(static_cast<long>(n) - 1));
    }
    const Series e = exp(t);
    for (std::size_t n = 0; n <= order; ++n) {
        CHECK(coeff_egf(e, n) == Rational(1));
        CHECK(coeff_egf(Series(order), n) == Rational(0));
    }
    CHECK(log1p(exp_minus_one(order)) == t);

    const Series one_plus_t = t + Rational(1);
    const Series root = pow(one_plus_t, Rational(1, 2));
    CHECK(root * root == one_plus_t);
    CHECK(pow(one_plus_t, Rational(-1)) == Series::constant(order, Rational(1)) / one_plus_t);
    CHECK(pow(Rational(2) * one_plus_t, Rational(-3)) * pow(Rational(2) * one_plus_t, Rational(3))
          == Series::constant(order, Rational(1)));
    CHECK(pow(t, Rational(2)) == t * t);

    CHECK_THROWS_AS(exp(one_plus_t), std::domain_error);
    CHECK_THROWS_AS(log1p(one_plus_t), std::domain_error);
    CHECK_THROWS_AS(pow(Rational(2) * one_plus_t, Rational(1, 2)), std::domain_error);
    CHECK_THROWS_AS(pow(t, Rational(-1)), std::domain_error);
    CHECK_THROWS_AS(coeff_egf(t, order + 1), std::out_of_range);
}

TEST_CASE("property: exp and log1p are mutually inverse")
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t order = 2 + static_cast<std::size_t>(trial);
        const Series f = testing::random_delta(rng, order);
        CHECK(log1p(exp(f) - Rational(1)) == f);
        CHECK(exp(log1p(f)) - Rational(1) == f);
    }
}

TEST_CASE("property: rational powers add")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t order = 7;
        Series f = testing::random_delta(rng, order) + Rational(1);
        const Rational g1 = testing::random_rational(rng);
        const Rational g2 = testing::random_rational(rng);
        CHECK(pow(f, g1) * pow(f, g2) == pow(f, g1 + g2));
    }
}

TEST_CASE("property: multiplication is commutative and associative, division inverts it")
{
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t order = 6;
        const Series a = testing::random_series(rng, order);
        const Series b = testing::random_series(rng, order);
        const Series c = testing::random_series(rng, order) + Rational(1, 3) * Rational(trial + 1);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        if (!c[0].is_zero()) {
            CHECK((a / c) * c == a);
        }
    }
}

TEST_CASE("argument scaling and derivatives")
{
    const Series e = exp(Series::variable(5));
    const Series r = e.reflected();
    CHECK(r * e == Series::constant(5, Rational(1)));
    CHECK(e.derivative() == e.truncated(4));
    CHECK(e.scaled_argument(Rational(2)) == e * e);
}
