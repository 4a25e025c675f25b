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


#include <probstir/probabilistic.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace probstir
{

namespace
{

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Series one(std::size_t order)
{
    return Series::constant(order, Rational(1));
}

void tag(Triangle &t, const RandomVariable &rv)
{
    t.rv = rv_name(rv);
    t.params = rv_params(rv);
}

} // namespace

Series mgf_deg(const RandomVariable &rv, const Rational &lambda, std::size_t order)
{
    validate(rv);
    const auto e = [&] { return deg_exp(lambda, Rational(1), order); };
    const auto lg = [&] { return log_deg_exp(lambda, order); };
    return std::visit(
        overloaded{
            [&](const Bernoulli &d) { return (e() - Rational(1)) * d.p + Rational(1); },
            [&](const Binomial &d) { return pow((e() - Rational(1)) * d.p + Rational(1), Rational(d.m)); },
            [&](const Poisson &d) { return exp((e() - Rational(1)) * d.alpha); },
            [&](const Exponential &d) { return one(order) / (one(order) - lg() * d.alpha.inverse()); },
            [&](const Gamma &d) { return pow(one(order) / (one(order) - lg() * d.beta.inverse()), d.alpha); },
            [&](const Geometric &d) {
                const Series ex = e();
                return ex * d.p / (one(order) - ex * (Rational(1) - d.p));
            },
            [&](const Normal &d) {
                const Series l = lg();
                return exp(l * d.mu + l * l * (d.sigma2 / Rational(2)));
            },
            [&](const NegBinomial &d) {
                const Series denom = one(order) - e() * (Rational(1) - d.p);
                return pow(Series::constant(order, d.p) / denom, Rational(d.r));
            },
            [&](const Uniform01 &) {
                // (e_lambda(t) - 1)/log e_lambda(t): both vanish at 0, so divide by t first.
                const Series num = deg_exp(lambda, Rational(1), order + 1) - Rational(1);
                const Series den = log_deg_exp(lambda, order + 1);
                return num.divided_by_t() / den.divided_by_t();
            },
            [&](const PointMass &d) { return deg_exp(lambda, d.c, order); },
            [&](const Custom &d) {
                if (d.moments.size() <= order) {
                    throw std::domain_error("custom random variable needs moments through E[Y^" + std::to_string(order)
                                            + "], got " + std::to_string(d.moments.size() - 1));
                }
                std::vector<Rational> egf(order + 1);
                for (std::size_t n = 0; n <= order; ++n) {
                    egf[n] = expected_deg_factorial(d.moments, lambda, n, FactorialKind::falling);
                }
                return Series::from_egf(order, egf);
            },
        },
        rv);
}

Rational moment(const RandomVariable &rv, std::size_t n)
{
    return coeff_egf(mgf_deg(rv, Rational(0), n), n);
}

Series neg(const RandomVariable &rv, const Rational &lambda, std::size_t order)
{
    return mgf_deg(rv, -lambda, order).reflected();
}

Rational sj_moment(const RandomVariable &rv, const Rational &lambda, std::size_t j, std::size_t n)
{
    const Series m = mgf_deg(rv, lambda, n);
    return coeff_egf(pow(m, Rational(static_cast<long>(j))), n);
}

Rational expected_deg_factorial(const std::vector<Rational> &raw_moments, const Rational &lambda, std::size_t n,
                                FactorialKind kind)
{
    if (raw_moments.size() <= n) {
        throw std::invalid_argument("expected_deg_factorial needs moments through index " + std::to_string(n));
    }
    // coefficients of prod_{i<n} (x -/+ i lambda) in powers of x
    std::vector<Rational> poly{Rational(1)};
    for (std::size_t i = 0; i < n; ++i) {
        const Rational shift = kind == FactorialKind::falling ? -(Rational(static_cast<long>(i)) * lambda)
                                                              : Rational(static_cast<long>(i)) * lambda;
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        for (std::size_t d = 0; d < poly.size(); ++d) {
            next[d + 1] += poly[d];
            next[d] += poly[d] * shift;
        }
        poly = std::move(next);
    }
    Rational total(0);
    for (std::size_t d = 0; d < poly.size(); ++d) {
        total += poly[d] * raw_moments[d];
    }
    return total;
}

std::vector<Rational> sum_raw_moments(const std::vector<Rational> &raw_moments, std::size_t j)
{
    if (raw_moments.empty()) {
        return {};
    }
    const std::size_t order = raw_moments.size() - 1;
    const Series m = Series::from_egf(order, raw_moments);
    Series acc = one(order);
    for (std::size_t i = 0; i < j; ++i) {
        acc *= m;
    }
    std::vector<Rational> out(order + 1);
    for (std::size_t n = 0; n <= order; ++n) {
        out[n] = acc.egf(n);
    }
    return out;
}

ProbSeriesBundle::ProbSeriesBundle(RandomVariable rv, Rational lambda, std::size_t order)
    : ProbSeriesBundle(rv, lambda, mgf_deg(rv, lambda, order + 1))
{
}

ProbSeriesBundle::ProbSeriesBundle(RandomVariable rv, Rational lambda, const Series &mgf_plus_one)
    : m_rv(std::move(rv)), m_lambda(std::move(lambda)), m_order(0), m_mgf(0), m_delta(0), m_quotient(0)
{
    if (mgf_plus_one.order() < 1) {
        throw std::invalid_argument("bundle generating function needs order >= 1");
    }
    if (mgf_plus_one[0] != Rational(1)) {
        throw std::domain_error("generating function must have constant term 1, got " + mgf_plus_one[0].str());
    }
    m_order = mgf_plus_one.order() - 1;
    m_mean = mgf_plus_one[1];
    m_mgf = mgf_plus_one.truncated(m_order);
    m_delta = m_mgf - Rational(1);
    const Series delta_plus = mgf_plus_one - Rational(1);
    m_quotient = delta_plus.divided_by_t();
    if (!m_mean.is_zero()) {
        const Series rev = revert(DeltaSeries(delta_plus)).series();
        m_reverted = rev.truncated(m_order);
        m_reverted_quotient = rev.divided_by_t();
    }
}

void ProbSeriesBundle::require_inverse() const
{
    if (!m_reverted) {
        throw std::domain_error("E[Y] = 0: e_{Y,lambda}(t) has no compositional inverse");
    }
}

void ProbSeriesBundle::check_gamma(const Rational &gamma) const
{
    if (m_mean.is_zero()) {
        throw std::domain_error("order-gamma numbers need E[Y] != 0");
    }
    if (!gamma.is_integer() && m_mean != Rational(1)) {
        throw std::domain_error("non-integer order " + gamma.str() + " needs E[Y] = 1, got E[Y] = " + m_mean.str());
    }
}

const Series &ProbSeriesBundle::reverted() const
{
    require_inverse();
    return *m_reverted;
}

Triangle ProbSeriesBundle::s2(std::size_t nmax) const
{
    Triangle t = triangle_from_base(Family::prob_s2, m_lambda, m_delta, nmax);
    tag(t, m_rv);
    return t;
}

Triangle ProbSeriesBundle::s1(std::size_t nmax) const
{
    Triangle t = triangle_from_base(Family::prob_s1, m_lambda, reverted(), nmax);
    tag(t, m_rv);
    return t;
}

Series ProbSeriesBundle::bernoulli(const Rational &gamma, const Rational &x) const
{
    check_gamma(gamma);
    Series out = pow(m_quotient, -gamma);
    if (!x.is_zero()) {
        out *= pow(m_mgf, x);
    }
    return out;
}

Series ProbSeriesBundle::daehee(const Rational &gamma) const
{
    check_gamma(gamma);
    require_inverse();
    return pow(*m_reverted_quotient, gamma);
}

Series ProbSeriesBundle::cauchy(const Rational &gamma) const
{
    check_gamma(gamma);
    require_inverse();
    return pow(*m_reverted_quotient, -gamma);
}

Triangle prob_triangle(const RandomVariable &rv, const Rational &lambda, Family family, std::size_t nmax)
{
    const Rational lam = family == Family::prob_h || family == Family::prob_g ? -lambda : lambda;
    const std::size_t order = std::max<std::size_t>(nmax, 1);
    const Series delta = mgf_deg(rv, lam, order) - Rational(1);
    Series base(order);
    switch (family) {
        case Family::prob_s2:
        case Family::prob_h:
            base = delta;
            break;
        case Family::prob_s1:
        case Family::prob_g:
            if (delta[1].is_zero()) {
                throw std::domain_error("E[Y] = 0: first-kind numbers are undefined");
            }
            base = revert(DeltaSeries(delta)).series();
            break;
        default:
            throw std::invalid_argument("'" + std::string(family_name(family)) + "' is not a probabilistic family");
    }
    Triangle t = triangle_from_base(family, lambda, base, nmax);
    tag(t, rv);
    return t;
}

Series prob_order_numbers(const RandomVariable &rv, const Rational &lambda, const Rational &gamma,
                          const Rational &x, NumberFamily family, std::size_t order)
{
    const ProbSeriesBundle b(rv, lambda, order);
    switch (family) {
        case NumberFamily::bernoulli:
            return b.bernoulli(gamma, x);
        case NumberFamily::daehee:
            return b.daehee(gamma);
        case NumberFamily::cauchy:
            return b.cauchy(gamma);
    }
    throw std::invalid_argument("unknown number family");
}

Series prob_log(const RandomVariable &rv, const Rational &lambda, std::size_t order)
{
    const Series delta = mgf_deg(rv, lambda, std::max<std::size_t>(order, 1)) - Rational(1);
    if (delta[1].is_zero()) {
        throw std::domain_error("E[Y] = 0: the probabilistic logarithm is undefined");
    }
    return revert(DeltaSeries(delta)).series().truncated(order);
}

Rational schlomilch(const Triangle &second_kind, const Rational &mean, std::size_t n, std::size_t k)
{
    if (k > n) {
        throw std::invalid_argument("schlomilch needs k <= n");
    }
    if (mean.is_zero()) {
        throw std::domain_error("schlomilch needs E[Y] != 0");
    }
    if (second_kind.nmax() < 2 * (n - k)) {
        throw std::invalid_argument("schlomilch(" + std::to_string(n) + "," + std::to_string(k)
                                    + ") needs a second-kind table through row " + std::to_string(2 * (n - k)));
    }
    const long nl = static_cast<long>(n);
    const long kl = static_cast<long>(k);
    const Rational inv = mean.inverse();
    Rational total(0);
    for (long j = 0; j <= nl - kl; ++j) {
        const Rational &t = second_kind(static_cast<std::size_t>(nl - kl + j), static_cast<std::size_t>(j));
        if (t.is_zero()) {
            continue;
        }
        const Rational sign = j % 2 == 0 ? Rational(1) : Rational(-1);
        total += binomial(nl + j - 1, nl + j - kl) * binomial(2 * nl - kl, nl - kl - j) * sign * inv.pow(nl + j) * t;
    }
    return total;
}

Rational schlomilch_s1(const RandomVariable &rv, const Rational &lambda, std::size_t n, std::size_t k)
{
    if (k > n) {
        throw std::invalid_argument("schlomilch needs k <= n");
    }
    const std::size_t rows = 2 * (n - k);
    const Series m = mgf_deg(rv, lambda, std::max<std::size_t>(rows, 1));
    const Triangle s2 = triangle_from_base(Family::prob_s2, lambda, m - Rational(1), rows);
    return schlomilch(s2, m[1], n, k);
}

} // namespace probstir
