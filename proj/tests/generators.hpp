// Hand-rolled generators for property-style tests.
#ifndef PROBSTIR_TESTS_GENERATORS_HPP
#define PROBSTIR_TESTS_GENERATORS_HPP

#include <cstddef>
#include <random>

#include <probstir/random_variable.hpp>
#include <probstir/rational.hpp>
#include <probstir/series.hpp>

namespace probstir::testing
{

inline Rational random_rational(std::mt19937_64 &rng, long max_num = 9, long max_den = 7)
{
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rational(num(rng), den(rng));
}

inline Rational random_nonzero_rational(std::mt19937_64 &rng)
{
    Rational r;
    do {
        r = random_rational(rng);
    } while (r.is_zero());
    return r;
}

inline Series random_series(std::mt19937_64 &rng, std::size_t order)
{
    Series s(order);
    std::vector<Rational> c(order + 1);
    for (auto &v : c) {
        v = random_rational(rng);
    }
    return Series(order, std::move(c));
}

inline Series random_delta(std::mt19937_64 &rng, std::size_t order)
{
    std::vector<Rational> c(order + 1);
    c[0] = Rational(0);
    c[1] = random_nonzero_rational(rng);
    for (std::size_t i = 2; i <= order; ++i) {
        c[i] = random_rational(rng);
    }
    return Series(order, std::move(c));
}

// Moment sequence E[Y^0..Y^count] with E[Y] != 0. The identities under test are
// formal, so the sequence need not come from an actual distribution.
inline Custom random_custom(std::mt19937_64 &rng, std::size_t count)
{
    Custom c;
    c.moments.emplace_back(1);
    c.moments.push_back(random_nonzero_rational(rng));
    for (std::size_t i = 2; i <= count; ++i) {
        c.moments.push_back(random_rational(rng));
    }
    return c;
}

} // namespace probstir::testing

#endif
