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

#include <probstir/special_numbers.hpp>

#include <algorithm>
#include <array>
#include <stdexcept>

namespace probstir
{

namespace
{

constexpr std::array<std::pair<Family, std::string_view>, 11> family_names{{
    {Family::s1, "s1"},
    {Family::s2, "s2"},
    {Family::s1_deg, "deg-s1"},
    {Family::s2_deg, "deg-s2"},
    {Family::lah, "lah"},
    {Family::hetero2, "h"},
    {Family::hetero1, "g"},
    {Family::prob_s2, "prob-s2"},
    {Family::prob_s1, "prob-s1"},
    {Family::prob_h, "prob-h"},
    {Family::prob_g, "prob-g"},
}};

const Rational zero_entry(0);

} // namespace

Rational deg_factorial(const Rational &x, long n, const Rational &lambda, FactorialKind kind)
{
    if (n < 0) {
        throw std::invalid_argument("degenerate factorial of negative length");
    }
    const Rational step = kind == FactorialKind::falling ? -lambda : lambda;
    Rational r(1);
    Rational factor = x;
    for (long i = 0; i < n; ++i) {
        r *= factor;
        factor += step;
    }
    return r;
}

Series deg_exp(const Rational &lambda, const Rational &x, std::size_t order)
{
    std::vector<Rational> a(order + 1);
    Rational value(1);
    Rational factor = x;
    for (std::size_t n = 0; n <= order; ++n) {
        a[n] = value;
        value *= factor;
        factor -= lambda;
    }
    return Series::from_egf(order, a);
}

Series deg_log(const Rational &lambda, std::size_t order)
{
    const Series one_plus_t = Series::variable(order) + Rational(1);
    if (lambda.is_zero()) {
        return log1p(Series::variable(order));
    }
    return (pow(one_plus_t, lambda) - Rational(1)) * lambda.inverse();
}

Series deg_log_of(const Series &u, const Rational &lambda)
{
    if (u[0] != Rational(1)) {
        throw std::domain_error("degenerate logarithm of a series with constant term " + u[0].str());
    }
    if (lambda.is_zero()) {
        return log1p(u - Rational(1));
    }
    return (pow(u, lambda) - Rational(1)) * lambda.inverse();
}

Series log_deg_exp(const Rational &lambda, std::size_t order)
{
    if (lambda.is_zero()) {
        return Series::variable(order);
    }
    return log1p(Series::monomial(order, lambda, 1)) * lambda.inverse();
}

Series deg_exp_log(const Rational &lambda, const Rational &x, DegKind kind, std::size_t order)
{
    return kind == DegKind::exp ? deg_exp(lambda, x, order) : deg_log(lambda, order);
}

std::string_view family_name(Family f)
{
    for (const auto &[fam, name] : family_names) {
        if (fam == f) {
            return name;
        }
    }
    throw std::logic_error("unnamed family");
}

Family parse_family(std::string_view name)
{
    for (const auto &[fam, n] : family_names) {
        if (n == name) {
            return fam;
        }
    }
    throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

bool is_probabilistic(Family f)
{
    return f == Family::prob_s2 || f == Family::prob_s1 || f == Family::prob_h || f == Family::prob_g;
}

Triangle::Triangle(Family family, Rational lambda, std::size_t nmax)
    : m_family(family), m_lambda(std::move(lambda)), m_nmax(nmax),
      m_entries((nmax + 1) * (nmax + 2) / 2, Rational(0))
{
}

const Rational &Triangle::operator()(std::size_t n, std::size_t k) const
{
    if (k > n || n > m_nmax) {
        return zero_entry;
    }
    return m_entries[index(n, k)];
}

void Triangle::set(std::size_t n, std::size_t k, Rational value)
{
    if (k > n || n > m_nmax) {
        throw std::out_of_range("triangle entry (" + std::to_string(n) + "," + std::to_string(k)
                                + ") outside nmax " + std::to_string(m_nmax));
    }
    m_entries[index(n, k)] = std::move(value);
}

Triangle triangle_from_base(Family family, const Rational &lambda, const Series &base, std::size_t nmax)
{
    if (base.order() < nmax) {
        throw std::invalid_argument("base series order below nmax");
    }
    if (!base[0].is_zero()) {
        throw std::domain_error("triangle base series must have zero constant term");
    }
    const Series b = base.truncated(nmax);
    Triangle tri(family, lambda, nmax);
    Series power = Series::constant(nmax, Rational(1));
    Rational k_fact(1);
    for (std::size_t k = 0; k <= nmax; ++k) {
        if (k > 0) {
            power *= b;
            k_fact *= Rational(k);
        }
        // n! c_n / k!, with n! accumulated alongside
        Rational n_fact = factorial(static_cast<long>(k));
        for (std::size_t n = k; n <= nmax; ++n) {
            if (n > k) {
                n_fact *= Rational(n);
            }
            tri.set(n, k, n_fact * power[n] / k_fact);
        }
    }
    return tri;
}

Triangle triangle(Family family, const Rational &lambda, std::size_t nmax)
{
    const std::size_t order = nmax;
    const Series t = Series::variable(order);
    switch (family) {
        case Family::s2:
            return triangle_from_base(family, Rational(0), exp(t) - Rational(1), nmax);
        case Family::s1:
            return triangle_from_base(family, Rational(0), log1p(t), nmax);
        case Family::s2_deg:
            return triangle_from_base(family, lambda, deg_exp(lambda, Rational(1), order) - Rational(1), nmax);
        case Family::s1_deg:
            return triangle_from_base(family, lambda, deg_log(lambda, order), nmax);
        case Family::lah:
            return triangle_from_base(family, Rational(0), t / (Series::constant(order, Rational(1)) - t), nmax);
        case Family::hetero2:
            return triangle_from_base(family, lambda, deg_exp(-lambda, Rational(1), order) - Rational(1), nmax);
        case Family::hetero1:
            return triangle_from_base(family, lambda, deg_log(-lambda, order), nmax);
        default:
            throw std::invalid_argument("family '" + std::string(family_name(family))
                                        + "' needs a random variable");
    }
}

Triangle triangle_by_recurrence(Family family, const Rational &lambda, std::size_t nmax, std::size_t kmax)
{
    kmax = std::min(kmax, nmax);
    Triangle tri(family, lambda, nmax);
    if (family == Family::lah) {
        for (std::size_t n = 0; n <= nmax; ++n) {
            for (std::size_t k = 0; k <= std::min(n, kmax); ++k) {
                const long nl = static_cast<long>(n);
                const long kl = static_cast<long>(k);
                tri.set(n, k, n == 0 ? Rational(1) : factorial(nl) / factorial(kl) * binomial(nl - 1, kl - 1));
            }
        }
        return tri;
    }
    // Per-row multiplier on T(n,k) in T(n+1,k) = T(n,k-1) + w(n,k) T(n,k).
    auto weight = [&](std::size_t n, std::size_t k) -> Rational {
        const Rational nr(n), kr(k);
        switch (family) {
            case Family::s1:
                return -nr;
            case Family::s2:
                return kr;
            case Family::s1_deg:
                return kr * lambda - nr;
            case Family::s2_deg:
                return kr - nr * lambda;
            default:
                throw std::invalid_argument("no recurrence for family '" + std::string(family_name(family)) + "'");
        }
    };
    tri.set(0, 0, Rational(1));
    for (std::size_t n = 0; n < nmax; ++n) {
        for (std::size_t k = 0; k <= std::min(n + 1, kmax); ++k) {
            Rational v = k > 0 ? tri(n, k - 1) : Rational(0);
            if (k <= n && !tri(n, k).is_zero()) {
                v += weight(n, k) * tri(n, k);
            }
            tri.set(n + 1, k, std::move(v));
        }
    }
    return tri;
}

Rational partial_bell(std::span<const Rational> x, std::size_t n, std::size_t k)
{
    if (k > n) {
        throw std::invalid_argument("partial Bell polynomial needs k <= n");
    }
    if (k == 0) {
        return n == 0 ? Rational(1) : Rational(0);
    }
    const std::size_t needed = n - k + 1;
    if (x.size() < needed) {
        throw std::invalid_argument("partial Bell polynomial B_{" + std::to_string(n) + "," + std::to_string(k)
                                    + "} needs " + std::to_string(needed) + " inputs, got "
                                    + std::to_string(x.size()));
    }
    std::vector<Rational> egf(needed + 1, Rational(0));
    for (std::size_t m = 1; m <= needed; ++m) {
        egf[m] = x[m - 1];
    }
    const Series base = Series::from_egf(n, egf);
    return pow(base, Rational(k)).egf(n) / factorial(static_cast<long>(k));
}

Triangle partial_bell_triangle(std::span<const Rational> x, std::size_t nmax)
{
    if (x.size() < nmax) {
        throw std::invalid_argument("partial Bell triangle needs nmax inputs");
    }
    std::vector<Rational> egf(nmax + 1, Rational(0));
    for (std::size_t m = 1; m <= nmax; ++m) {
        egf[m] = x[m - 1];
    }
    return triangle_from_base(Family::s2, Rational(0), Series::from_egf(nmax, egf), nmax);
}

Series order_numbers(const Rational &lambda, const Rational &gamma, const Rational &x, NumberFamily family,
                     std::size_t order)
{
    switch (family) {
        case NumberFamily::bernoulli: {
            const Series ratio = (deg_exp(lambda, Rational(1), order + 1) - Rational(1)).divided_by_t();
            Series out = pow(ratio, -gamma);
            if (!x.is_zero()) {
                out *= deg_exp(lambda, x, order);
            }
            return out;
        }
        case NumberFamily::daehee:
            return pow(deg_log(lambda, order + 1).divided_by_t(), gamma);
        case NumberFamily::cauchy:
            return pow(deg_log(lambda, order + 1).divided_by_t(), -gamma);
    }
    throw std::logic_error("unknown number family");
}

Series bernoulli_pade_a2(std::size_t order)
{
    const Series t = Series::variable(order + 2);
    const Series tail = (exp(t) - Rational(1) - t).divided_by_t().divided_by_t();
    return Series::constant(order, Rational(1, 2)) / tail;
}

Series frobenius_euler(const Rational &lambda, long r, const Rational &u, std::size_t order)
{
    if (u == Rational(1)) {
        throw std::domain_error("Frobenius-Euler numbers need u != 1");
    }
    const Series base = Series::constant(order, Rational(1) - u) / (deg_exp(lambda, Rational(1), order) - u);
    return pow(base, Rational(r));
}

Rational lah_bell(const Rational &x, std::size_t n)
{
    const Triangle lah = triangle(Family::lah, Rational(0), n);
    Rational sum(0);
    for (std::size_t k = 0; k <= n; ++k) {
        sum += lah(n, k) * x.pow(static_cast<long>(k));
    }
    return sum;
}

Rational hetero_bell(const Rational &lambda, const Rational &x, std::size_t n)
{
    const Triangle h = triangle(Family::hetero2, lambda, n);
    Rational sum(0);
    for (std::size_t k = 0; k <= n; ++k) {
        sum += h(n, k) * x.pow(static_cast<long>(k));
    }
    return sum;
}

} // namespace probstir
