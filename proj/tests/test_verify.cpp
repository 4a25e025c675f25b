#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include <probstir/probabilistic.hpp>
#include <probstir/verify.hpp>

#include "generators.hpp"

using namespace probstir;
using namespace probstir::testing;

namespace
{

const IdentityRecord *find(const VerificationReport &r, const std::string &id)
{
    for (const auto &rec : r.records) {
        if (rec.identity == id) {
            return &rec;
        }
    }
    return nullptr;
}

} // namespace

TEST_CASE("orthogonality of the classical degenerate pair")
{
    const Rational lambda(1, 3);
    const Triangle t2 = triangle(Family::s2_deg, lambda, 10);
    const Triangle t1 = triangle(Family::s1_deg, lambda, 10);
    const VerificationReport r = check_orthogonality(t2, t1);
    CHECK(r.passed());
    CHECK(r.records.size() == 4);
    for (const auto &rec : r.records) {
        CHECK(rec.checks > 0);
        CHECK_FALSE(rec.first_failure.has_value());
    }
}

TEST_CASE("orthogonality of probabilistic pairs")
{
    for (const Rational &lambda : {Rational(0), Rational(1, 2), Rational(-1, 3)}) {
        const VerificationReport r = probabilistic_orthogonality(Poisson{Rational(2)}, lambda, 10);
        CHECK(r.passed());
        CHECK(r.records.size() == 8);
    }
}

TEST_CASE("a corrupted entry always fails orthogonality")
{
    std::mt19937_64 rng(11);
    const std::size_t N = 8;
    const Triangle t2 = prob_triangle(Geometric{Rational(1, 3)}, Rational(1, 2), Family::prob_s2, N);
    const Triangle t1 = prob_triangle(Geometric{Rational(1, 3)}, Rational(1, 2), Family::prob_s1, N);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = rng() % (N + 1);
        const std::size_t k = rng() % (n + 1);
        const bool first = rng() % 2 == 0;
        Triangle a = t2, b = t1;
        Triangle &target = first ? b : a;
        target.set(n, k, target(n, k) + random_nonzero_rational(rng));
        const VerificationReport r = check_orthogonality(a, b);
        CAPTURE(n);
        CAPTURE(k);
        REQUIRE_FALSE(r.passed());
        const IdentityRecord &rec = r.records[0];
        REQUIRE(rec.status == Status::fail);
        REQUIRE(rec.first_failure.has_value());
        CHECK((*rec.first_failure)[0] >= static_cast<long>(k));
        CHECK(rec.lhs != rec.rhs);
    }
}

TEST_CASE("corrupted entry reports the first failing position")
{
    Triangle t2 = triangle(Family::s2, Rational(0), 6);
    const Triangle t1 = triangle(Family::s1, Rational(0), 6);
    t2.set(4, 2, Rational(8));
    const VerificationReport r = check_orthogonality(t2, t1);
    const IdentityRecord &rec = r.records[0];
    REQUIRE(rec.status == Status::fail);
    CHECK((*rec.first_failure)[0] == 4);
    CHECK((*rec.first_failure)[1] == 1);
    CHECK(rec.rhs == "0");
}

TEST_CASE("orthogonality argument checks")
{
    const Triangle a = triangle(Family::s2, Rational(0), 5);
    const Triangle b = triangle(Family::s1, Rational(0), 6);
    CHECK_THROWS_AS(check_orthogonality(a, b), std::invalid_argument);
    CHECK_THROWS_AS(check_orthogonality(triangle(Family::s1, Rational(0), 5), a), std::invalid_argument);
    CHECK_THROWS_AS(check_orthogonality(a, triangle(Family::lah, Rational(0), 5)), std::invalid_argument);
}

TEST_CASE("identity suite passes for a Bernoulli variable")
{
    const VerificationReport r = identity_suite(Bernoulli{Rational(1, 2)}, Rational(1, 3), 10);
    for (const auto &rec : r.records) {
        CAPTURE(rec.identity);
        CHECK(rec.status == Status::pass);
        CHECK(rec.checks > 0);
        CHECK(rec.rv == "bernoulli:p=1/2");
        CHECK(rec.lambda == Rational(1, 3));
    }
    std::set<std::string> ids;
    for (const auto &rec : r.records) {
        ids.insert(rec.identity);
    }
    CHECK(ids.size() == r.records.size());
    for (const char *id : {"s2-three-way", "h-four-way", "s1-three-way", "g-multi-way", "bell-of-moments",
                           "bernoulli-from-moments", "bernoulli-from-s2", "schlomilch-s1", "schlomilch-g",
                           "log-from-s2", "daehee-from-s1", "cauchy-from-s1", "daehee-from-bernoulli",
                           "cauchy-from-bernoulli", "lagrange-inversion", "deg-s1-from-bernoulli",
                           "connection-from-order-numbers", "heterogeneous-connection", "binomial-sums",
                           "closed-form-s2", "closed-form-s1", "closed-form-log"}) {
        CAPTURE(id);
        CHECK(find(r, id) != nullptr);
    }
}

TEST_CASE("unit point mass reduces to deterministic families")
{
    const VerificationReport r = identity_suite(PointMass{Rational(1)}, Rational(0), 8);
    CHECK(r.passed());
    const IdentityRecord *rec = find(r, "point-mass-reduction");
    REQUIRE(rec != nullptr);
    CHECK(rec->status == Status::pass);
    REQUIRE(find(r, "classical-limit") != nullptr);
    CHECK(find(identity_suite(PointMass{Rational(2)}, Rational(0), 4), "point-mass-reduction") == nullptr);
}

TEST_CASE("uniform variable formulas")
{
    for (const Rational &lambda : {Rational(0), Rational(1, 2)}) {
        const VerificationReport r = identity_suite(Uniform01{}, lambda, 8);
        CHECK(r.passed());
        for (const char *id : {"uniform-s1-pade", "uniform-log-pade", "uniform-lagrange"}) {
            CAPTURE(id);
            CHECK(find(r, id) != nullptr);
        }
        CHECK((find(r, "uniform-s1-classical") != nullptr) == lambda.is_zero());
    }
}

TEST_CASE("random custom variables satisfy every identity")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 4; ++trial) {
        const Custom rv = random_custom(rng, 14);
        const Rational lambda = random_rational(rng, 3, 3);
        const VerificationReport r = identity_suite(rv, lambda, 6);
        for (const auto &rec : r.records) {
            CAPTURE(rec.identity);
            CHECK(rec.status == Status::pass);
        }
    }
}

TEST_CASE("a perturbed moment always fails the suite")
{
    for (const RandomVariable &rv :
         {RandomVariable{Poisson{Rational(2)}}, RandomVariable{Normal{Rational(1), Rational(2)}},
          RandomVariable{Uniform01{}}, RandomVariable{PointMass{Rational(1)}}}) {
        for (std::size_t index = 1; index <= 4; ++index) {
            SuiteOptions options;
            options.perturb_moment = std::pair{index, Rational(static_cast<long>(index), 7)};
            const VerificationReport r = identity_suite(rv, Rational(1, 2), 6, options);
            CAPTURE(describe(rv));
            CAPTURE(index);
            CHECK_FALSE(r.passed());
            const IdentityRecord *rec = find(r, "mgf-moment-expansion");
            REQUIRE(rec != nullptr);
            CHECK(rec->status == Status::fail);
            CHECK((*rec->first_failure)[0] == static_cast<long>(index));
        }
    }
    SuiteOptions bad;
    bad.perturb_moment = std::pair{std::size_t{0}, Rational(1)};
    CHECK_THROWS_AS(identity_suite(Poisson{Rational(2)}, Rational(0), 4, bad), std::invalid_argument);
}

TEST_CASE("suite preconditions")
{
    CHECK_THROWS_AS(identity_suite(Custom{{Rational(1), Rational(0), Rational(1), Rational(0), Rational(3)}},
                                   Rational(0), 1),
                    std::domain_error);
    CHECK_THROWS_AS(identity_suite(Custom{{Rational(1), Rational(2), Rational(5)}}, Rational(0), 4),
                    std::domain_error);
    CHECK_THROWS_AS(identity_suite(Normal{Rational(0), Rational(1)}, Rational(0), 4), std::domain_error);
}

TEST_CASE("shallow depth gives inconclusive, not fail")
{
    SuiteOptions options;
    options.depth = 40;
    const VerificationReport r = identity_suite(NegBinomial{2, Rational(1, 2)}, Rational(1, 2), 8, options);
    CHECK(r.count(Status::fail) == 0);
    CHECK(r.count(Status::inconclusive) > 0);
    CHECK_FALSE(r.passed());
    const IdentityRecord *rec = find(r, "closed-form-s1-series");
    REQUIRE(rec != nullptr);
    CHECK(rec->status == Status::inconclusive);
    CHECK(rec->first_failure.has_value());
}

TEST_CASE("limit suite")
{
    const VerificationReport r = limit_suite(12);
    CHECK(r.passed());
    for (const char *id : {"s2-deg-at-zero", "s1-deg-at-zero", "h-at-zero", "g-at-zero", "h-at-one",
                           "deg-factorial-at-one", "deg-factorial-at-zero", "deg-exp-at-zero", "bernoulli-at-zero"}) {
        CAPTURE(id);
        CHECK(find(r, id) != nullptr);
    }
}

TEST_CASE("report aggregation")
{
    VerificationReport a{"x", {}}, b{"y", {}};
    IdentityRecord p, f;
    f.status = Status::fail;
    a.records.push_back(p);
    CHECK(a.passed());
    b.records.push_back(f);
    a.append(b);
    CHECK_FALSE(a.passed());
    CHECK(a.count(Status::pass) == 1);
    CHECK(a.count(Status::fail) == 1);
    CHECK(status_name(Status::inconclusive) == "inconclusive");
    CHECK(VerificationReport{}.passed());
}
