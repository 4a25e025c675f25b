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

#include <probstir/series.hpp>

#include <sstream>
#include <utility>

namespace probstir
{

namespace
{

// Truncated Cauchy product of two equal-length coefficient vectors.
std::vector<Rational> cauchy_product(const std::vector<Rational> &a, const std::vector<Rational> &b)
{
    const std::size_t len = a.size();
    std::vector<mpq_class> acc(len, mpq_class(0));
    mpq_class tmp;
    for (std::size_t i = 0; i < len; ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        const mpq_class &ai = a[i].raw();
        for (std::size_t j = 0; i + j < len; ++j) {
            if (b[j].is_zero()) {
                continue;
            }
            tmp = ai * b[j].raw();
            acc[i + j] += tmp;
        }
    }
    std::vector<Rational> out;
    out.reserve(len);
    for (auto &v : acc) {
        out.emplace_back(std::move(v));
    }
    return out;
}

} // namespace

Series::Series(std::size_t order) : m_coeffs(order + 1, Rational(0))
{
}

Series::Series(std::size_t order, std::vector<Rational> coeffs) : m_coeffs(std::move(coeffs))
{
    if (m_coeffs.size() > order + 1) {
        throw std::invalid_argument("more coefficients than the truncation order allows");
    }
    m_coeffs.resize(order + 1, Rational(0));
}

Series Series::constant(std::size_t order, const Rational &c)
{
    Series s(order);
    s.m_coeffs[0] = c;
    return s;
}

Series Series::variable(std::size_t order)
{
    return monomial(order, Rational(1), 1);
}

Series Series::monomial(std::size_t order, const Rational &c, std::size_t degree)
{
    Series s(order);
    if (degree <= order) {
        s.m_coeffs[degree] = c;
    }
    return s;
}

Series Series::from_egf(std::size_t order, const std::vector<Rational> &egf_values)
{
    if (egf_values.size() > order + 1) {
        throw std::invalid_argument("more EGF values than the truncation order allows");
    }
    Series s(order);
    Rational fact(1);
    for (std::size_t n = 0; n < egf_values.size(); ++n) {
        if (n > 0) {
            fact *= Rational(n);
        }
        s.m_coeffs[n] = egf_values[n] / fact;
    }
    return s;
}

const Rational &Series::operator[](std::size_t n) const
{
    if (n >= m_coeffs.size()) {
        throw std::out_of_range("coefficient index " + std::to_string(n) + " beyond truncation order "
                                + std::to_string(order()));
    }
    return m_coeffs[n];
}

Rational Series::egf(std::size_t n) const
{
    return factorial(static_cast<long>(n)) * (*this)[n];
}

Series Series::truncated(std::size_t new_order) const
{
    if (new_order > order()) {
        throw std::invalid_argument("cannot truncate to a higher order");
    }
    return Series(new_order, std::vector<Rational>(m_coeffs.begin(), m_coeffs.begin() + new_order + 1));
}

Series Series::divided_by_t() const
{
    if (!m_coeffs[0].is_zero()) {
        throw std::domain_error("division by t of a series with nonzero constant term");
    }
    if (order() == 0) {
        throw std::invalid_argument("division by t of an order-0 series");
    }
    return Series(order() - 1, std::vector<Rational>(m_coeffs.begin() + 1, m_coeffs.end()));
}

Series Series::derivative() const
{
    if (order() == 0) {
        throw std::invalid_argument("derivative of an order-0 series");
    }
    std::vector<Rational> d(order());
    for (std::size_t n = 1; n <= order(); ++n) {
        d[n - 1] = Rational(n) * m_coeffs[n];
    }
    return Series(order() - 1, std::move(d));
}

Series Series::scaled_argument(const Rational &c) const
{
    Series s(*this);
    Rational p(1);
    for (std::size_t n = 1; n < s.m_coeffs.size(); ++n) {
        p *= c;
        s.m_coeffs[n] *= p;
    }
    return s;
}

void Series::check_same_order(const Series &o, const char *op) const
{
    if (o.order() != order()) {
        throw order_mismatch(std::string("series ") + op + " with orders " + std::to_string(order()) + " and "
                             + std::to_string(o.order()));
    }
}

Series Series::operator-() const
{
    Series s(*this);
    for (auto &c : s.m_coeffs) {
        c = -c;
    }
    return s;
}

Series &Series::operator+=(const Series &o)
{
    check_same_order(o, "addition");
    for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
        m_coeffs[i] += o.m_coeffs[i];
    }
    return *this;
}

Series &Series::operator-=(const Series &o)
{
    check_same_order(o, "subtraction");
    for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
        m_coeffs[i] -= o.m_coeffs[i];
    }
    return *this;
}

Series &Series::operator*=(const Series &o)
{
    check_same_order(o, "multiplication");
    m_coeffs = cauchy_product(m_coeffs, o.m_coeffs);
    return *this;
}

Series &Series::operator/=(const Series &o)
{
    check_same_order(o, "division");
    if (o.m_coeffs[0].is_zero()) {
        throw std::domain_error("division by a series with zero constant term");
    }
    const mpq_class inv0 = 1 / o.m_coeffs[0].raw();
    std::vector<mpq_class> q(m_coeffs.size());
    for (std::size_t n = 0; n < m_coeffs.size(); ++n) {
        mpq_class acc = m_coeffs[n].raw();
        for (std::size_t k = 1; k <= n; ++k) {
            if (!o.m_coeffs[k].is_zero()) {
                acc -= o.m_coeffs[k].raw() * q[n - k];
            }
        }
        q[n] = acc * inv0;
    }
    for (std::size_t n = 0; n < m_coeffs.size(); ++n) {
        m_coeffs[n] = Rational(std::move(q[n]));
    }
    return *this;
}

Series &Series::operator*=(const Rational &c)
{
    for (auto &v : m_coeffs) {
        v *= c;
    }
    return *this;
}

Series &Series::operator+=(const Rational &c)
{
    m_coeffs[0] += c;
    return *this;
}

Series &Series::operator-=(const Rational &c)
{
    m_coeffs[0] -= c;
    return *this;
}

std::string Series::str() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t n = 0; n < m_coeffs.size(); ++n) {
        if (m_coeffs[n].is_zero()) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << m_coeffs[n] << ")";
        if (n > 0) {
            os << "*t^" << n;
        }
    }
    if (first) {
        os << "0";
    }
    os << " + O(t^" << order() + 1 << ")";
    return os.str();
}

DeltaSeries::DeltaSeries(Series s) : m_series(std::move(s))
{
    if (m_series.order() < 1) {
        throw std::domain_error("a delta series needs truncation order >= 1");
    }
    if (!m_series[0].is_zero()) {
        throw std::domain_error("delta series with nonzero constant term");
    }
    if (m_series[1].is_zero()) {
        throw std::domain_error("delta series with zero linear term");
    }
}

Series compose(const Series &outer, const Series &inner)
{
    if (outer.order() != inner.order()) {
        throw order_mismatch("compose with orders " + std::to_string(outer.order()) + " and "
                             + std::to_string(inner.order()));
    }
    if (!inner[0].is_zero()) {
        throw std::domain_error("composition with an inner series of nonzero constant term");
    }
    const std::size_t order = outer.order();
    Series r = Series::constant(order, outer[order]);
    for (std::size_t i = order; i-- > 0;) {
        r *= inner;
        r += outer[i];
    }
    return r;
}

DeltaSeries revert(const DeltaSeries &fd)
{
    const Series &f = fd.series();
    const std::size_t order = f.order();
    const Series t = Series::variable(order);
    // Derivative is known one order lower; the missing top coefficient never
    // reaches the Newton correction because f(h) - t is O(t^2) from the start.
    const Series df = f.derivative();
    Series h = Series::monomial(order, f[1].inverse(), 1);
    for (std::size_t precision = 1;; precision *= 2) {
        const Series residual = compose(f, h) - t;
        if (residual == Series(order)) {
            break;
        }
        if (precision > 2 * (order + 1)) {
            throw std::logic_error("series reversion failed to converge");
        }
        const Series slope(order, compose(df, h.truncated(order - 1)).coeffs());
        h -= residual / slope;
    }
    return DeltaSeries(std::move(h));
}

Series exp(const Series &f)
{
    if (!f[0].is_zero()) {
        throw std::domain_error("exp of a series with nonzero constant term");
    }
    const std::size_t len = f.order() + 1;
    std::vector<mpq_class> g(len, mpq_class(0));
    g[0] = 1;
    for (std::size_t n = 1; n < len; ++n) {
        mpq_class acc(0);
        for (std::size_t k = 1; k <= n; ++k) {
            if (!f[k].is_zero()) {
                acc += mpq_class(static_cast<unsigned long>(k)) * f[k].raw() * g[n - k];
            }
        }
        g[n] = acc / static_cast<unsigned long>(n);
    }
    std::vector<Rational> out;
    out.reserve(len);
    for (auto &v : g) {
        out.emplace_back(std::move(v));
    }
    return Series(f.order(), std::move(out));
}

Series log1p(const Series &f)
{
    if (!f[0].is_zero()) {
        throw std::domain_error("log1p of a series with nonzero constant term");
    }
    const std::size_t len = f.order() + 1;
    std::vector<mpq_class> h(len, mpq_class(0));
    for (std::size_t n = 1; n < len; ++n) {
        mpq_class acc = mpq_class(static_cast<unsigned long>(n)) * f[n].raw();
        for (std::size_t k = 1; k < n; ++k) {
            if (!f[n - k].is_zero()) {
                acc -= mpq_class(static_cast<unsigned long>(k)) * h[k] * f[n - k].raw();
            }
        }
        h[n] = acc / static_cast<unsigned long>(n);
    }
    std::vector<Rational> out;
    out.reserve(len);
    for (auto &v : h) {
        out.emplace_back(std::move(v));
    }
    return Series(f.order(), std::move(out));
}

Series pow(const Series &f, const Rational &gamma)
{
    const std::size_t order = f.order();
    const bool integral = gamma.is_integer();
    if (f[0].is_zero()) {
        if (!integral || gamma.sign() < 0) {
            throw std::domain_error("power " + gamma.str() + " of a series with zero constant term");
        }
        // Binary exponentiation; the constant term vanishes so the recurrence below does not apply.
        long e = gamma.to_long();
        Series result = Series::constant(order, Rational(1));
        Series base = f;
        while (e > 0) {
            if ((e & 1) != 0) {
                result *= base;
            }
            e >>= 1;
            if (e > 0) {
                base *= base;
            }
        }
        return result;
    }
    if (!integral && f[0] != Rational(1)) {
        throw std::domain_error("non-integer power " + gamma.str() + " of a series with constant term "
                                + f[0].str() + " is not rational");
    }
    // J.C.P. Miller recurrence from f g' = gamma f' g.
    const std::size_t len = order + 1;
    std::vector<mpq_class> g(len);
    g[0] = integral ? f[0].pow(gamma.to_long()).raw() : mpq_class(1);
    const mpq_class inv0 = 1 / f[0].raw();
    const mpq_class gp1 = gamma.raw() + 1;
    for (std::size_t n = 1; n < len; ++n) {
        mpq_class acc(0);
        for (std::size_t k = 1; k <= n; ++k) {
            if (f[k].is_zero()) {
                continue;
            }
            const mpq_class w = gp1 * static_cast<unsigned long>(k) - static_cast<unsigned long>(n);
            acc += w * f[k].raw() * g[n - k];
        }
        g[n] = acc * inv0 / static_cast<unsigned long>(n);
    }
    std::vector<Rational> out;
    out.reserve(len);
    for (auto &v : g) {
        out.emplace_back(std::move(v));
    }
    return Series(order, std::move(out));
}

Rational coeff_egf(const Series &f, std::size_t n)
{
    return f.egf(n);
}

Rational lagrange_extract(const Series &g, const DeltaSeries &fd, std::size_t n, std::size_t k,
                          LagrangeFormula formula)
{
    const Series &f = fd.series();
    if (n > f.order()) {
        throw std::invalid_argument("Lagrange read-out index " + std::to_string(n) + " beyond order "
                                    + std::to_string(f.order()));
    }
    if (formula == LagrangeFormula::A && g.order() != f.order()) {
        throw order_mismatch("Lagrange formula A with mismatched orders");
    }
    switch (formula) {
        case LagrangeFormula::A:
            if (n == 0) {
                return g[0];
            }
            break;
        case LagrangeFormula::B:
            if (k < 1 || n < k) {
                throw std::invalid_argument("Lagrange formula B needs 1 <= k <= n");
            }
            break;
        case LagrangeFormula::C:
            if (n < 1) {
                throw std::invalid_argument("Lagrange formula C needs n >= 1");
            }
            break;
    }
    // t/f(t) is known to order N-1, which covers every read-out index below.
    const Series ratio = Series::constant(f.order() - 1, Rational(1)) / f.divided_by_t();
    const Series ratio_n = pow(ratio, Rational(n));
    const Rational inv_n = Rational(1) / Rational(n);
    switch (formula) {
        case LagrangeFormula::A: {
            const Series integrand = g.derivative() * ratio_n;
            return inv_n * integrand[n - 1];
        }
        case LagrangeFormula::B:
            return Rational(k) * inv_n * ratio_n[n - k];
        case LagrangeFormula::C:
            return inv_n * ratio_n[n - 1];
    }
    throw std::logic_error("unknown Lagrange formula");
}

} // namespace probstir
