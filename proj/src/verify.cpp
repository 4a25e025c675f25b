// Copyright 2026 The probstir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <probstir/verify.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include <probstir/closed_forms.hpp>
#include <probstir/probabilistic.hpp>

namespace probstir
{

std::string_view status_name(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

bool VerificationReport::passed() const
{
    return std::ranges::all_of(records, [](const IdentityRecord &r) { return r.status == Status::pass; });
}

std::size_t VerificationReport::count(Status s) const
{
    return static_cast<std::size_t>(
        std::ranges::count_if(records, [s](const IdentityRecord &r) { return r.status == s; }));
}

void VerificationReport::append(const VerificationReport &other)
{
    records.insert(records.end(), other.records.begin(), other.records.end());
}

namespace
{

const HighPrecision numeric_tolerance("1e-9");

// Accumulates comparisons for one identity.
class Check
{
public:
    Check(std::string identity, std::string rv, const Rational &lambda, std::size_t nmax)
    {
        m_record.identity = std::move(identity);
        m_record.rv = std::move(rv);
        m_record.lambda = lambda;
        m_record.nmax = nmax;
    }

    void equal(const Rational &lhs, const Rational &rhs, long n, long k, long j = -1)
    {
        ++m_record.checks;
        if (lhs != rhs)
            mark(Status::fail, lhs.str(), rhs.str(), n, k, j);
    }

    void numeric(const ClosedFormValue &lhs, const Rational &rhs, long n, long k)
    {
        if (lhs.exact) {
            equal(lhs.value, rhs, n, k);
            return;
        }
        ++m_record.checks;
        if (!lhs.stabilized)
            mark(Status::inconclusive, lhs.str(), rhs.str(), n, k, -1);
        else if (!close_relative(lhs.numeric, rhs.to_high_precision(), numeric_tolerance))
            mark(Status::fail, lhs.str(), rhs.str(), n, k, -1);
    }

    IdentityRecord finish() &&
    {
        return std::move(m_record);
    }

private:
    void mark(Status s, std::string lhs, std::string rhs, long n, long k, long j)
    {
        const bool take = s == Status::fail ? m_record.status != Status::fail : m_record.status == Status::pass;
        if (!take)
            return;
        m_record.status = s;
        m_record.first_failure = std::array<long, 3>{n, k, j};
        m_record.lhs = std::move(lhs);
        m_record.rhs = std::move(rhs);
    }

    IdentityRecord m_record;
};

long as_long(std::size_t n)
{
    return static_cast<long>(n);
}

// C(n-1, k-1) with the convention C(-1, -1) = 1.
Rational shifted_binomial(long n, long k)
{
    if (n == 0 && k == 0)
        return Rational(1);
    return binomial(n - 1, k - 1);
}

Series moment_expansion(const std::vector<Rational> &moments, const Rational &lambda, std::size_t order,
                        FactorialKind kind = FactorialKind::falling)
{
    std::vector<Rational> values;
    values.reserve(order + 1);
    for (std::size_t n = 0; n <= order; ++n)
        values.push_back(expected_deg_factorial(moments, lambda, n, kind));
    return Series::from_egf(order, values);
}

std::vector<Rational> negated(std::vector<Rational> moments)
{
    for (std::size_t i = 1; i < moments.size(); i += 2)
        moments[i] = -moments[i];
    return moments;
}

bool is_unit_point_mass(const RandomVariable &rv)
{
    const auto *pm = std::get_if<PointMass>(&rv);
    return pm != nullptr && pm->c == Rational(1);
}

// Everything shared by the checks at one (rv, lambda).
class SuiteContext
{
public:
    SuiteContext(const RandomVariable &rv, const Rational &lambda, std::size_t nmax, const SuiteOptions &options)
        : rv(rv), rv_text(describe(rv)), lambda(lambda), nmax(nmax), options(options),
          order(std::max<std::size_t>(2 * nmax + 1, 2)),
          lagrange_order(std::min(std::max(nmax, options.lagrange_nmax), available_moments(rv))),
          moments(raw_moments(rv, std::max(order + 1, lagrange_order))), engine_moments(perturbed(moments)),
          plus(rv, lambda, engine_mgf(lambda, order + 1)), minus(rv, -lambda, engine_mgf(-lambda, order + 1)),
          reflected(Custom{negated(moments)}, lambda, moment_expansion(negated(moments), lambda, order + 1)),
          s2(plus.s2(order - 1)), s1(plus.s1(nmax)), h(minus.s2(order - 1)), g(minus.s1(nmax)),
          s2_reflected(reflected.s2(nmax)), s1_reflected(reflected.s1(nmax))
    {
    }

    Check check(std::string identity) const
    {
        return Check(std::move(identity), rv_text, lambda, nmax);
    }

    Series engine_mgf(const Rational &l, std::size_t n) const
    {
        if (!options.perturb_moment)
            return mgf_deg(rv, l, n);
        return mgf_deg(Custom{std::vector<Rational>(engine_moments.begin(), engine_moments.begin() + n + 1)}, l, n);
    }

    // beta_{n,lambda}^{(gamma,Y)} series from one of the three bundles.
    const Series &bernoulli(const ProbSeriesBundle &b, long gamma)
    {
        auto &cache = m_bernoulli[&b];
        auto it = cache.find(gamma);
        if (it == cache.end())
            it = cache.emplace(gamma, b.bernoulli(Rational(gamma))).first;
        return it->second;
    }

    const RandomVariable &rv;
    std::string rv_text;
    Rational lambda;
    std::size_t nmax;
    const SuiteOptions &options;
    std::size_t order;
    std::size_t lagrange_order;
    std::vector<Rational> moments;
    std::vector<Rational> engine_moments;
    ProbSeriesBundle plus;       // Y at lambda
    ProbSeriesBundle minus;      // Y at -lambda
    ProbSeriesBundle reflected;  // -Y at lambda, from the moment expansion
    Triangle s2, s1, h, g, s2_reflected, s1_reflected;

private:
    std::vector<Rational> perturbed(std::vector<Rational> m) const
    {
        if (const auto &p = options.perturb_moment) {
            if (p->first == 0 || p->first >= m.size())
                throw std::invalid_argument("perturbed moment index out of range");
            m[p->first] += p->second;
        }
        return m;
    }

    std::map<const ProbSeriesBundle *, std::map<long, Series>> m_bernoulli;
};

using Records = std::vector<IdentityRecord>;

void check_generating_function(SuiteContext &c, Records &out)
{
    auto direct = c.check("mgf-moment-expansion");
    auto neg = c.check("reflected-moment-expansion");
    const Series &mgf = c.plus.mgf();
    const Series neg_engine = c.minus.mgf().reflected();
    for (std::size_t n = 0; n <= c.nmax; ++n) {
        direct.equal(mgf.egf(n), expected_deg_factorial(c.moments, c.lambda, n, FactorialKind::falling),
                     as_long(n), -1);
        neg.equal(neg_engine.egf(n), c.reflected.mgf().egf(n), as_long(n), -1);
    }
    out.push_back(std::move(direct).finish());
    out.push_back(std::move(neg).finish());
}

// Inclusion-exclusion and partial Bell forms of S2 and H.
void check_second_kind_paths(SuiteContext &c, Records &out)
{
    const std::size_t N = c.nmax;
    const std::vector<Rational> head(c.moments.begin(), c.moments.begin() + N + 1);
    std::vector<Rational> falling_moments, rising_moments;
    for (std::size_t m = 1; m <= N; ++m) {
        falling_moments.push_back(expected_deg_factorial(head, c.lambda, m, FactorialKind::falling));
        rising_moments.push_back(expected_deg_factorial(head, c.lambda, m, FactorialKind::rising));
    }
    const Triangle bell_falling = partial_bell_triangle(falling_moments, N);
    const Triangle bell_rising = partial_bell_triangle(rising_moments, N);

    // sums[j][n] = E[(S_j)_{n,lambda}], sums_rising[j][n] = E[<S_j>_{n,lambda}].
    std::vector<std::vector<Rational>> engine_sums(N + 1), sums(N + 1), sums_rising(N + 1);
    Series power = Series::constant(c.order, Rational(1));
    for (std::size_t j = 0; j <= N; ++j) {
        const std::vector<Rational> sm = sum_raw_moments(head, j);
        for (std::size_t n = 0; n <= N; ++n) {
            engine_sums[j].push_back(power.egf(n));
            sums[j].push_back(expected_deg_factorial(sm, c.lambda, n, FactorialKind::falling));
            sums_rising[j].push_back(expected_deg_factorial(sm, c.lambda, n, FactorialKind::rising));
        }
        power *= c.plus.mgf().truncated(c.order);
    }

    auto inclusion_exclusion = [&](const std::vector<std::vector<Rational>> &s, std::size_t n, std::size_t k) {
        Rational total;
        for (std::size_t j = 0; j <= k; ++j) {
            Rational term = binomial(as_long(k), as_long(j)) * s[j][n];
            total += (k - j) % 2 == 0 ? term : -term;
        }
        return total / factorial(as_long(k));
    };

    auto s2 = c.check("s2-three-way");
    auto h = c.check("h-four-way");
    for (std::size_t n = 0; n <= N; ++n)
        for (std::size_t k = 0; k <= n; ++k) {
            const long nl = as_long(n), kl = as_long(k);
            s2.equal(c.s2(n, k), inclusion_exclusion(engine_sums, n, k), nl, kl, 1);
            s2.equal(c.s2(n, k), inclusion_exclusion(sums, n, k), nl, kl, 2);
            s2.equal(c.s2(n, k), bell_falling(n, k), nl, kl, 3);
            const Rational sign = n % 2 == 0 ? Rational(1) : Rational(-1);
            h.equal(c.h(n, k), sign * c.s2_reflected(n, k), nl, kl, 1);
            h.equal(c.h(n, k), inclusion_exclusion(sums_rising, n, k), nl, kl, 2);
            h.equal(c.h(n, k), bell_rising(n, k), nl, kl, 3);
        }
    out.push_back(std::move(s2).finish());
    out.push_back(std::move(h).finish());
}

// S1 and G through Bernoulli numbers of order n and through partial Bell polynomials.
void check_first_kind_paths(SuiteContext &c, Records &out)
{
    const std::size_t N = c.nmax;
    std::vector<Rational> x_plus, x_minus, x_reflected;
    for (std::size_t m = 1; m <= N; ++m) {
        x_plus.push_back(c.bernoulli(c.plus, as_long(m)).egf(m - 1));
        x_minus.push_back(c.bernoulli(c.minus, as_long(m)).egf(m - 1));
        x_reflected.push_back(-c.bernoulli(c.reflected, as_long(m)).egf(m - 1));
    }
    const Triangle bell_plus = partial_bell_triangle(x_plus, N);
    const Triangle bell_minus = partial_bell_triangle(x_minus, N);
    const Triangle bell_reflected = partial_bell_triangle(x_reflected, N);

    auto s1 = c.check("s1-three-way");
    auto g = c.check("g-multi-way");
    for (std::size_t n = 0; n <= N; ++n)
        for (std::size_t k = 0; k <= n; ++k) {
            const long nl = as_long(n), kl = as_long(k);
            const Rational cnk = shifted_binomial(nl, kl);
            const Rational sign = k % 2 == 0 ? Rational(1) : Rational(-1);
            s1.equal(c.s1(n, k), cnk * c.bernoulli(c.plus, nl).egf(n - k), nl, kl, 1);
            s1.equal(c.s1(n, k), bell_plus(n, k), nl, kl, 2);
            g.equal(c.g(n, k), bell_reflected(n, k), nl, kl, 1);
            g.equal(c.g(n, k), bell_minus(n, k), nl, kl, 2);
            g.equal(c.g(n, k), sign * cnk * c.bernoulli(c.reflected, nl).egf(n - k), nl, kl, 3);
            g.equal(c.g(n, k), sign * c.s1_reflected(n, k), nl, kl, 4);
            g.equal(c.g(n, k), cnk * c.bernoulli(c.minus, nl).egf(n - k), nl, kl, 5);
        }
    out.push_back(std::move(s1).finish());
    out.push_back(std::move(g).finish());
}

// Bernoulli numbers of order gamma against moments and against S2.
void check_bernoulli_expansions(SuiteContext &c, Records &out)
{
    const std::size_t N = c.nmax;
    const Rational &mu = c.plus.mean();
    // z_m = E[(Y)_{m+1,lambda}]/(m+1), m >= 1.
    std::vector<Rational> z;
    for (std::size_t m = 1; m <= N + 1; ++m)
        z.push_back(expected_deg_factorial(c.moments, c.lambda, m + 1, FactorialKind::falling) / Rational(m + 1));
    const Triangle bell = partial_bell_triangle(z, N);

    auto bell_check = c.check("bell-of-moments");
    for (std::size_t n = 0; n <= N; ++n)
        for (std::size_t k = 0; k <= n; ++k) {
            const long nl = as_long(n), kl = as_long(k);
            Rational rhs;
            for (long j = 0; j <= kl; ++j)
                rhs += binomial(nl + kl, kl - j) * factorial(nl) / factorial(nl + kl) * (-mu).pow(kl - j)
                       * c.s2(n + j, j);
            bell_check.equal(bell(n, k), rhs, nl, kl);
        }
    out.push_back(std::move(bell_check).finish());

    auto by_moments = c.check("bernoulli-from-moments");
    auto by_stirling = c.check("bernoulli-from-s2");
    for (long gamma : c.options.gammas) {
        const Series &beta = c.bernoulli(c.plus, gamma);
        for (std::size_t n = 0; n <= N; ++n) {
            const long nl = as_long(n);
            Rational moments_side, stirling_side;
            for (long k = 0; k <= nl; ++k) {
                moments_side += falling(Rational(-gamma), k) * mu.pow(-gamma - k) * bell(n, k);
                for (long j = 0; j <= k; ++j) {
                    Rational term = binomial(gamma + k - 1, k) * binomial(k, j) / binomial(nl + j, j)
                                    * mu.pow(-gamma - j) * c.s2(n + j, j);
                    stirling_side += j % 2 == 0 ? term : -term;
                }
            }
            by_moments.equal(beta.egf(n), moments_side, nl, -1, gamma);
            by_stirling.equal(beta.egf(n), stirling_side, nl, -1, gamma);
        }
    }
    out.push_back(std::move(by_moments).finish());
    out.push_back(std::move(by_stirling).finish());
}

void check_schlomilch(SuiteContext &c, Records &out)
{
    auto s1 = c.check("schlomilch-s1");
    auto g = c.check("schlomilch-g");
    const Rational &mu = c.plus.mean();
    for (std::size_t n = 0; n <= c.nmax; ++n)
        for (std::size_t k = 0; k <= n; ++k) {
            s1.equal(schlomilch(c.s2, mu, n, k), c.s1(n, k), as_long(n), as_long(k));
            g.equal(schlomilch(c.h, mu, n, k), c.g(n, k), as_long(n), as_long(k));
        }
    out.push_back(std::move(s1).finish());
    out.push_back(std::move(g).finish());
}

// The logarithm and the Daehee/Cauchy numbers against S2, S1 and Bernoulli numbers.
void check_log_family(SuiteContext &c, Records &out)
{
    const std::size_t N = c.nmax;
    const Rational &mu = c.plus.mean();
    const Series &log_series = c.plus.reverted();

    auto log_check = c.check("log-from-s2");
    for (std::size_t n = 1; n <= N; ++n) {
        const long nl = as_long(n);
        Rational rhs;
        for (long j = 0; j < nl; ++j) {
            Rational term = binomial(2 * nl - 1, nl - 1 - j) * mu.pow(-nl - j) * c.s2(n - 1 + j, j);
            rhs += j % 2 == 0 ? term : -term;
        }
        log_check.equal(log_series.egf(n), rhs, nl, -1);
    }
    out.push_back(std::move(log_check).finish());

    auto daehee = c.check("daehee-from-s1");
    auto cauchy = c.check("cauchy-from-s1");
    auto daehee_shift = c.check("daehee-from-bernoulli");
    auto cauchy_shift = c.check("cauchy-from-bernoulli");
    for (long gamma : c.options.gammas) {
        const Series d = c.plus.daehee(Rational(gamma));
        const Series ca = c.plus.cauchy(Rational(gamma));
        const Series &beta = c.bernoulli(c.plus, gamma);
        const Series &beta_neg = c.bernoulli(c.plus, -gamma);
        for (std::size_t n = 0; n <= N; ++n) {
            const long nl = as_long(n);
            Rational d_sum, c_sum;
            for (std::size_t k = 0; k <= n; ++k) {
                d_sum += beta.egf(k) * c.s1(n, k);
                c_sum += beta_neg.egf(k) * c.s1(n, k);
            }
            daehee.equal(d.egf(n), d_sum, nl, -1, gamma);
            cauchy.equal(ca.egf(n), c_sum, nl, -1, gamma);
            if (gamma + nl != 0)
                daehee_shift.equal(d.egf(n),
                                   Rational(gamma, gamma + nl) * c.bernoulli(c.plus, nl + gamma).egf(n), nl, -1,
                                   gamma);
            if (gamma - nl != 0)
                cauchy_shift.equal(ca.egf(n),
                                   Rational(gamma, gamma - nl) * c.bernoulli(c.plus, nl - gamma).egf(n), nl, -1,
                                   gamma);
        }
    }
    out.push_back(std::move(daehee).finish());
    out.push_back(std::move(cauchy).finish());
    out.push_back(std::move(daehee_shift).finish());
    out.push_back(std::move(cauchy_shift).finish());
}

// Reversion against the three Lagrange read-outs on e_{Y,lambda}(t).
void check_lagrange(SuiteContext &c, Records &out)
{
    const std::size_t L = c.lagrange_order;
    Check rec("lagrange-inversion", c.rv_text, c.lambda, L);
    if (L >= 1) {
        const DeltaSeries f(c.engine_mgf(c.lambda, L) - Rational(1));
        const Series fbar = revert(f).series();
        const Series g = deg_exp(c.lambda, Rational(1), L);
        const Series g_of_fbar = compose(g, fbar);
        Series power = Series::constant(L, Rational(1));
        for (std::size_t k = 1; k <= L; ++k) {
            power *= fbar;
            for (std::size_t n = k; n <= L; ++n)
                rec.equal(power[n], lagrange_extract(g, f, n, k, LagrangeFormula::B), as_long(n), as_long(k), 2);
        }
        for (std::size_t n = 1; n <= L; ++n) {
            rec.equal(fbar[n], lagrange_extract(g, f, n, 1, LagrangeFormula::C), as_long(n), 1, 3);
            rec.equal(g_of_fbar[n], lagrange_extract(g, f, n, 1, LagrangeFormula::A), as_long(n), -1, 1);
        }
    }
    out.push_back(std::move(rec).finish());
}

// Identities among the deterministic families at lambda.
void check_deterministic(SuiteContext &c, Records &out)
{
    const std::size_t N = c.nmax;
    const Rational &l = c.lambda;
    const Triangle s1_deg = triangle(Family::s1_deg, l, N);
    const Triangle s2_deg = triangle(Family::s2_deg, l, N);
    const Triangle hetero2 = triangle(Family::hetero2, l, N);
    const Triangle hetero1 = triangle(Family::hetero1, l, N);
    const Triangle s1 = triangle_by_recurrence(Family::s1, Rational(0), N);
    const Triangle s2 = triangle_by_recurrence(Family::s2, Rational(0), N);
    const Triangle lah = triangle_by_recurrence(Family::lah, Rational(0), N);

    auto order_check = c.check("deg-s1-from-bernoulli");
    auto connection = c.check("connection-from-order-numbers");
    auto hetero = c.check("heterogeneous-connection");
    auto expansions = c.check("heterogeneous-factorial-expansion");
    const Rational x(7, 2);
    for (std::size_t n = 0; n <= N; ++n) {
        const long nl = as_long(n);
        const Rational nr(nl);
        const Series beta = order_numbers(l, nr, Rational(0), NumberFamily::bernoulli, N);
        const Series beta_minus = order_numbers(-l, nr, Rational(0), NumberFamily::bernoulli, N);
        const Series cauchy = order_numbers(l, nr, Rational(0), NumberFamily::cauchy, N);
        const Series cauchy_minus = order_numbers(-l, nr, Rational(0), NumberFamily::cauchy, N);
        Rational rising_sum, falling_sum;
        for (std::size_t k = 0; k <= n; ++k) {
            const long kl = as_long(k);
            const Rational cnk = shifted_binomial(nl, kl);
            order_check.equal(s1_deg(n, k), cnk * beta.egf(n - k), nl, kl);
            connection.equal(s2_deg(n, k), cnk * cauchy.egf(n - k), nl, kl, 1);
            connection.equal(hetero2(n, k), cnk * cauchy_minus.egf(n - k), nl, kl, 2);
            connection.equal(hetero1(n, k), cnk * beta_minus.egf(n - k), nl, kl, 3);
            Rational h_sum, lah_sum;
            for (std::size_t m = k; m <= n; ++m) {
                const Rational sign = (n - m) % 2 == 0 ? Rational(1) : Rational(-1);
                h_sum += sign * s2(m, k) * s1(n, m) * l.pow(as_long(n - m));
                lah_sum += sign * s1_deg(n, m) * hetero2(m, k);
            }
            hetero.equal(hetero2(n, k), h_sum, nl, kl, 1);
            hetero.equal(lah(n, k), lah_sum, nl, kl, 2);
            rising_sum += hetero2(n, k) * falling(x, kl);
            falling_sum += hetero1(n, k) * deg_factorial(x, kl, l, FactorialKind::rising);
        }
        expansions.equal(deg_factorial(x, nl, l, FactorialKind::rising), rising_sum, nl, -1, 1);
        expansions.equal(falling(x, nl), falling_sum, nl, -1, 2);
    }
    out.push_back(std::move(order_check).finish());
    out.push_back(std::move(connection).finish());
    out.push_back(std::move(hetero).finish());
    out.push_back(std::move(expansions).finish());
}

void check_binomial_sums(SuiteContext &c, Records &out)
{
    const long L = as_long(std::max(c.nmax, c.options.lagrange_nmax));
    Check rec("binomial-sums", c.rv_text, c.lambda, static_cast<std::size_t>(L));
    for (long n = 1; n <= L; ++n)
        for (long k = 0; k <= n; ++k)
            for (long j = 0; j <= n - k; ++j) {
                Rational sum;
                for (long i = j; i <= n - k; ++i)
                    sum += binomial(n + i - 1, i) * binomial(i, j);
                const Rational shared = Rational(n, n + j) * binomial(2 * n - k, n) * binomial(n - k, j);
                rec.equal(sum, shared, n, k, j);
                rec.equal(binomial(n - 1, k - 1) * shared / binomial(n - k + j, j),
                          binomial(n + j - 1, n + j - k) * binomial(2 * n - k, n - k - j), n, k, j);
            }
    out.push_back(std::move(rec).finish());
}

void check_closed_forms(SuiteContext &c, Records &out)
{
    const std::size_t N = c.nmax;
    if (std::holds_alternative<Custom>(c.rv) || std::holds_alternative<PointMass>(c.rv))
        return;
    auto mean_check = c.check("closed-form-mean");
    mean_check.equal(mean(c.rv), c.plus.mean(), 1, -1);
    out.push_back(std::move(mean_check).finish());

    const struct {
        ClosedFormKind kind;
        const char *id;
    } kinds[] = {{ClosedFormKind::s2, "closed-form-s2"},
                 {ClosedFormKind::s1, "closed-form-s1"},
                 {ClosedFormKind::log, "closed-form-log"}};
    for (const auto &[kind, id] : kinds) {
        if (!has_closed_form(c.rv, kind))
            continue;
        auto rec = c.check(id);
        const auto table = closed_form_table(c.rv, c.lambda, kind, N, c.options.depth);
        for (std::size_t n = 0; n <= N; ++n) {
            if (kind == ClosedFormKind::log) {
                rec.numeric(table[n][0], c.plus.reverted().egf(n), as_long(n), -1);
                continue;
            }
            const Triangle &engine = kind == ClosedFormKind::s2 ? c.s2 : c.s1;
            for (std::size_t k = 0; k <= n; ++k)
                rec.numeric(table[n][k], engine(n, k), as_long(n), as_long(k));
        }
        out.push_back(std::move(rec).finish());
    }

    if (const auto *nb = std::get_if<NegBinomial>(&c.rv)) {
        for (const auto &[kind, id] : {std::pair{ClosedFormKind::s2, "closed-form-s2-series"},
                                       std::pair{ClosedFormKind::s1, "closed-form-s1-series"}}) {
            auto rec = c.check(id);
            const auto table = negbinomial_series_table(*nb, c.lambda, kind, N, c.options.depth);
            const Triangle &engine = kind == ClosedFormKind::s2 ? c.s2 : c.s1;
            for (std::size_t n = 0; n <= N; ++n)
                for (std::size_t k = 0; k <= n; ++k)
                    rec.numeric(table[n][k], engine(n, k), as_long(n), as_long(k));
            out.push_back(std::move(rec).finish());
        }
    }

    if (!std::holds_alternative<Normal>(c.rv) && !std::holds_alternative<Uniform01>(c.rv)) {
        auto rec = c.check("closed-form-log-series");
        const Series log_series = closed_form_log_series(c.rv, c.lambda, N);
        for (std::size_t n = 0; n <= N; ++n)
            rec.equal(log_series.egf(n), c.plus.reverted().egf(n), as_long(n), -1);
        out.push_back(std::move(rec).finish());
    }

    if (std::holds_alternative<Uniform01>(c.rv)) {
        auto s1 = c.check("uniform-s1-pade");
        auto log_check = c.check("uniform-log-pade");
        auto lagrange = c.check("uniform-lagrange");
        std::vector<Series> powers;  // (1/k!) log^k
        Series power = Series::constant(N, Rational(1));
        for (std::size_t k = 0; k <= N; ++k) {
            powers.push_back(power * factorial(as_long(k)).inverse());
            power *= c.plus.reverted().truncated(N);
        }
        for (std::size_t n = 0; n <= N; ++n) {
            log_check.equal(uniform_log_coefficient(c.lambda, n), c.plus.reverted().egf(n), as_long(n), -1);
            for (std::size_t k = 0; k <= n; ++k) {
                s1.equal(uniform_s1(c.lambda, n, k), c.s1(n, k), as_long(n), as_long(k));
                if (n >= k + 1)
                    lagrange.equal(uniform_lagrange_coefficient(c.lambda, n, k), powers[k][n], as_long(n),
                                   as_long(k));
            }
        }
        out.push_back(std::move(s1).finish());
        out.push_back(std::move(log_check).finish());
        out.push_back(std::move(lagrange).finish());
        if (c.lambda.is_zero()) {
            auto classical = c.check("uniform-s1-classical");
            for (std::size_t n = 0; n <= N; ++n)
                for (std::size_t k = 0; k <= n; ++k)
                    classical.equal(uniform_s1_classical(n, k), c.s1(n, k), as_long(n), as_long(k));
            out.push_back(std::move(classical).finish());
        }
    }
}

void check_reductions(SuiteContext &c, Records &out)
{
    const std::size_t N = c.nmax;
    if (c.lambda.is_zero()) {
        // Classical probabilistic Stirling numbers from E[e^{Yt}].
        auto rec = c.check("classical-limit");
        const Series classical = Series::from_egf(N, std::vector<Rational>(c.moments.begin(), c.moments.begin() + N + 1))
                                 - Rational(1);
        const Triangle s2 = triangle_from_base(Family::prob_s2, Rational(0), classical, N);
        const Triangle s1 =
            triangle_from_base(Family::prob_s1, Rational(0), revert(DeltaSeries(classical)).series(), N);
        for (std::size_t n = 0; n <= N; ++n)
            for (std::size_t k = 0; k <= n; ++k) {
                const long nl = as_long(n), kl = as_long(k);
                rec.equal(c.s2(n, k), s2(n, k), nl, kl, 1);
                rec.equal(c.s1(n, k), s1(n, k), nl, kl, 2);
                rec.equal(c.h(n, k), s2(n, k), nl, kl, 3);
                rec.equal(c.g(n, k), s1(n, k), nl, kl, 4);
            }
        out.push_back(std::move(rec).finish());
    }
    if (is_unit_point_mass(c.rv)) {
        auto rec = c.check("point-mass-reduction");
        const Triangle pairs[4][2] = {{c.s2, triangle(Family::s2_deg, c.lambda, N)},
                                      {c.s1, triangle(Family::s1_deg, c.lambda, N)},
                                      {c.h, triangle(Family::hetero2, c.lambda, N)},
                                      {c.g, triangle(Family::hetero1, c.lambda, N)}};
        for (long which = 0; which < 4; ++which)
            for (std::size_t n = 0; n <= N; ++n)
                for (std::size_t k = 0; k <= n; ++k)
                    rec.equal(pairs[which][0](n, k), pairs[which][1](n, k), as_long(n), as_long(k), which + 1);
        for (long gamma : c.options.gammas) {
            const Rational g(gamma);
            const Series bern = order_numbers(c.lambda, g, Rational(0), NumberFamily::bernoulli, N);
            const Series dae = order_numbers(c.lambda, g, Rational(0), NumberFamily::daehee, N);
            const Series cau = order_numbers(c.lambda, g, Rational(0), NumberFamily::cauchy, N);
            const Series d = c.plus.daehee(g), ca = c.plus.cauchy(g);
            for (std::size_t n = 0; n <= N; ++n) {
                rec.equal(c.bernoulli(c.plus, gamma).egf(n), bern.egf(n), as_long(n), -1, gamma);
                rec.equal(d.egf(n), dae.egf(n), as_long(n), -1, gamma);
                rec.equal(ca.egf(n), cau.egf(n), as_long(n), -1, gamma);
            }
        }
        const Series log_det = deg_log(c.lambda, N);
        for (std::size_t n = 0; n <= N; ++n)
            rec.equal(c.plus.reverted().egf(n), log_det.egf(n), as_long(n), -1);
        out.push_back(std::move(rec).finish());
    }
}

Rational random_rational(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
    return Rational(num(rng), den(rng));
}

bool is_first_kind(Family f)
{
    return f == Family::s1 || f == Family::s1_deg || f == Family::hetero1 || f == Family::prob_s1
           || f == Family::prob_g;
}

bool is_second_kind(Family f)
{
    return f == Family::s2 || f == Family::s2_deg || f == Family::hetero2 || f == Family::prob_s2
           || f == Family::prob_h;
}

} // namespace

VerificationReport check_orthogonality(const Triangle &t2, const Triangle &t1, std::uint64_t seed)
{
    if (t2.nmax() != t1.nmax())
        throw std::invalid_argument("orthogonality: triangles have different nmax");
    if (!is_second_kind(t2.family()) || !is_first_kind(t1.family()))
        throw std::invalid_argument("orthogonality: expected a second-kind table and a first-kind table");
    const std::size_t N = t2.nmax();
    const std::string rv = t2.rv;
    VerificationReport report{"orthogonality", {}};

    Check forward("orthogonality-second-first", rv, t2.lambda(), N);
    Check backward("orthogonality-first-second", rv, t2.lambda(), N);
    for (std::size_t n = 0; n <= N; ++n)
        for (std::size_t l = 0; l <= n; ++l) {
            Rational a, b;
            for (std::size_t k = l; k <= n; ++k) {
                a += t2(n, k) * t1(k, l);
                b += t1(n, k) * t2(k, l);
            }
            const Rational delta(n == l ? 1 : 0);
            forward.equal(a, delta, as_long(n), as_long(l));
            backward.equal(b, delta, as_long(n), as_long(l));
        }
    report.records.push_back(std::move(forward).finish());
    report.records.push_back(std::move(backward).finish());

    std::mt19937_64 rng(seed);
    std::vector<Rational> b(N + 1);
    for (auto &v : b)
        v = random_rational(rng);

    // a_n = sum_{k<=n} t2(n,k) b_k  <=>  b_n = sum_{k<=n} t1(n,k) a_k, in both directions.
    Check rows("inverse-pair-rows", rv, t2.lambda(), N);
    for (int dir = 0; dir < 2; ++dir) {
        const Triangle &first = dir == 0 ? t2 : t1;
        const Triangle &second = dir == 0 ? t1 : t2;
        std::vector<Rational> a(N + 1);
        for (std::size_t n = 0; n <= N; ++n)
            for (std::size_t k = 0; k <= n; ++k)
                a[n] += first(n, k) * b[k];
        for (std::size_t n = 0; n <= N; ++n) {
            Rational back;
            for (std::size_t k = 0; k <= n; ++k)
                back += second(n, k) * a[k];
            rows.equal(back, b[n], as_long(n), -1, dir + 1);
        }
    }
    report.records.push_back(std::move(rows).finish());

    // a_n = sum_{k=n}^{N} t2(k,n) b_k  <=>  b_n = sum_{k=n}^{N} t1(k,n) a_k.
    Check columns("inverse-pair-columns", rv, t2.lambda(), N);
    for (int dir = 0; dir < 2; ++dir) {
        const Triangle &first = dir == 0 ? t2 : t1;
        const Triangle &second = dir == 0 ? t1 : t2;
        std::vector<Rational> a(N + 1);
        for (std::size_t n = 0; n <= N; ++n)
            for (std::size_t k = n; k <= N; ++k)
                a[n] += first(k, n) * b[k];
        for (std::size_t n = 0; n <= N; ++n) {
            Rational back;
            for (std::size_t k = n; k <= N; ++k)
                back += second(k, n) * a[k];
            columns.equal(back, b[n], as_long(n), -1, dir + 1);
        }
    }
    report.records.push_back(std::move(columns).finish());
    return report;
}

VerificationReport identity_suite(const RandomVariable &rv, const Rational &lambda, std::size_t nmax,
                                  const SuiteOptions &options)
{
    validate(rv);
    if (raw_moment(rv, 1).is_zero())
        throw std::domain_error("identity suite: E[Y] must be nonzero");
    if (available_moments(rv) < 2 * nmax + 2)
        throw std::domain_error("identity suite: custom rv needs at least 2 nmax + 2 moments");

    SuiteContext c(rv, lambda, nmax, options);
    VerificationReport report{"identities", {}};
    Records &out = report.records;
    check_generating_function(c, out);
    check_second_kind_paths(c, out);
    check_first_kind_paths(c, out);
    check_bernoulli_expansions(c, out);
    check_schlomilch(c, out);
    check_log_family(c, out);
    check_lagrange(c, out);
    check_deterministic(c, out);
    check_binomial_sums(c, out);
    check_closed_forms(c, out);
    check_reductions(c, out);
    return report;
}

VerificationReport identity_suite(const RandomVariable &rv, const Rational &lambda, std::size_t nmax,
                                  const std::vector<long> &gammas, std::size_t depth)
{
    SuiteOptions options;
    options.gammas = gammas;
    options.depth = depth;
    return identity_suite(rv, lambda, nmax, options);
}

VerificationReport limit_suite(std::size_t nmax)
{
    const std::size_t N = nmax;
    VerificationReport report{"limits", {}};
    const Rational zero(0), one(1);
    const Triangle s1 = triangle_by_recurrence(Family::s1, zero, N);
    const Triangle s2 = triangle_by_recurrence(Family::s2, zero, N);
    const Triangle lah = triangle_by_recurrence(Family::lah, zero, N);

    auto compare = [&](const char *id, const Rational &l, const Triangle &a, const Triangle &b) {
        Check rec(id, "none", l, N);
        for (std::size_t n = 0; n <= N; ++n)
            for (std::size_t k = 0; k <= n; ++k)
                rec.equal(a(n, k), b(n, k), as_long(n), as_long(k));
        report.records.push_back(std::move(rec).finish());
    };
    compare("s2-deg-at-zero", zero, triangle(Family::s2_deg, zero, N), s2);
    compare("s1-deg-at-zero", zero, triangle(Family::s1_deg, zero, N), s1);
    compare("h-at-zero", zero, triangle(Family::hetero2, zero, N), s2);
    compare("g-at-zero", zero, triangle(Family::hetero1, zero, N), s1);
    compare("h-at-one", one, triangle(Family::hetero2, one, N), lah);

    const Rational x(7, 2);
    Check factorials("deg-factorial-at-one", "none", one, N);
    Check powers("deg-factorial-at-zero", "none", zero, N);
    for (std::size_t n = 0; n <= N; ++n) {
        const long nl = as_long(n);
        factorials.equal(deg_factorial(x, nl, one, FactorialKind::falling), falling(x, nl), nl, -1, 1);
        factorials.equal(deg_factorial(x, nl, one, FactorialKind::rising), rising(x, nl), nl, -1, 2);
        powers.equal(deg_factorial(x, nl, zero, FactorialKind::falling), x.pow(nl), nl, -1, 1);
        powers.equal(deg_factorial(x, nl, zero, FactorialKind::rising), x.pow(nl), nl, -1, 2);
    }
    report.records.push_back(std::move(factorials).finish());
    report.records.push_back(std::move(powers).finish());

    Check exp_check("deg-exp-at-zero", "none", zero, N);
    const Series e = deg_exp(zero, x, N);
    const Series lg = deg_log(zero, N);
    const Series log_reference = log1p(Series::variable(std::max<std::size_t>(N, 1))).truncated(N);
    for (std::size_t n = 0; n <= N; ++n) {
        exp_check.equal(e.egf(n), x.pow(as_long(n)), as_long(n), -1, 1);
        exp_check.equal(lg[n], log_reference[n], as_long(n), -1, 2);
    }
    report.records.push_back(std::move(exp_check).finish());

    Check bernoulli("bernoulli-at-zero", "none", zero, N);
    for (std::size_t n = 1; n <= N; ++n) {
        const long nl = as_long(n);
        const Series b = order_numbers(zero, Rational(nl), zero, NumberFamily::bernoulli, N);
        const Rational sign = (n - 1) % 2 == 0 ? Rational(1) : Rational(-1);
        bernoulli.equal(b.egf(n - 1), sign * factorial(nl - 1), nl, -1);
        for (std::size_t k = 0; k <= n; ++k)
            bernoulli.equal(s1(n, k), binomial(nl - 1, as_long(k) - 1) * b.egf(n - k), nl, as_long(k));
    }
    report.records.push_back(std::move(bernoulli).finish());
    return report;
}

VerificationReport probabilistic_orthogonality(const RandomVariable &rv, const Rational &lambda, std::size_t nmax)
{
    VerificationReport report{"orthogonality", {}};
    for (const auto &[second, first] :
         {std::pair{Family::prob_s2, Family::prob_s1}, std::pair{Family::prob_h, Family::prob_g}}) {
        const Triangle t2 = prob_triangle(rv, lambda, second, nmax);
        const Triangle t1 = prob_triangle(rv, lambda, first, nmax);
        VerificationReport part = check_orthogonality(t2, t1);
        for (auto &r : part.records) {
            r.identity = std::string(family_name(second)) + "/" + std::string(family_name(first)) + ":" + r.identity;
            r.rv = describe(rv);
        }
        report.append(part);
    }
    return report;
}

std::vector<RandomVariable> builtin_random_variables()
{
    return {Bernoulli{Rational(1, 2)},
            Binomial{3, Rational(1, 2)},
            Poisson{Rational(2)},
            Exponential{Rational(3, 2)},
            Gamma{Rational(3, 2), Rational(2)},
            Geometric{Rational(1, 3)},
            Normal{Rational(1), Rational(2)},
            NegBinomial{2, Rational(1, 2)},
            Uniform01{},
            PointMass{Rational(1)}};
}

std::vector<Rational> builtin_lambdas()
{
    return {Rational(0), Rational(1), Rational(1, 2), Rational(-1, 3), Rational(2)};
}

} // namespace probstir
