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

#ifndef PROBSTIR_SERIES_HPP
#define PROBSTIR_SERIES_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <probstir/rational.hpp>

namespace probstir
{

// Thrown when two series of different truncation orders are combined.
class order_mismatch : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Truncated formal power series c_0 + c_1 t + ... + c_N t^N, known modulo
// t^{N+1}. The truncation order N is fixed at construction and every binary
// operation requires both operands to carry the same N.
//
// Coefficients are stored raw; the exponential generating function view
// a_n = n! c_n is available through egf().
class Series
{
public:
    explicit Series(std::size_t order);
    // Shorter coefficient vectors are padded with zeros; longer ones are rejected.
    Series(std::size_t order, std::vector<Rational> coeffs);

    static Series constant(std::size_t order, const Rational &c);
    // The formal variable t. order >= 1 keeps the linear coefficient.
    static Series variable(std::size_t order);
    static Series monomial(std::size_t order, const Rational &c, std::size_t degree);
    // Builds sum a_n t^n / n! from EGF values a_0..a_M (M <= order).
    static Series from_egf(std::size_t order, const std::vector<Rational> &egf_values);

    std::size_t order() const noexcept
    {
        return m_coeffs.size() - 1;
    }
    const std::vector<Rational> &coeffs() const noexcept
    {
        return m_coeffs;
    }
    // Raw coefficient c_n; throws std::out_of_range for n > order().
    const Rational &operator[](std::size_t n) const;
    // EGF value n! c_n; throws std::out_of_range for n > order().
    Rational egf(std::size_t n) const;

    bool is_delta() const
    {
        return m_coeffs.size() > 1 && m_coeffs[0].is_zero() && !m_coeffs[1].is_zero();
    }

    // Drops every coefficient above new_order (new_order <= order()).
    Series truncated(std::size_t new_order) const;
    // (f - c_0)/t when c_0 == 0; the result is known to order N-1.
    Series divided_by_t() const;
    // Formal derivative, known to order N-1.
    Series derivative() const;
    // f(c t).
    Series scaled_argument(const Rational &c) const;
    // f(-t).
    Series reflected() const
    {
        return scaled_argument(Rational(-1));
    }

    Series operator-() const;
    Series &operator+=(const Series &o);
    Series &operator-=(const Series &o);
    Series &operator*=(const Series &o);
    // Exact truncated quotient; the divisor needs a nonzero constant term.
    Series &operator/=(const Series &o);
    Series &operator*=(const Rational &c);
    Series &operator+=(const Rational &c);
    Series &operator-=(const Rational &c);

    friend Series operator+(Series a, const Series &b)
    {
        return a += b;
    }
    friend Series operator-(Series a, const Series &b)
    {
        return a -= b;
    }
    friend Series operator*(Series a, const Series &b)
    {
        return a *= b;
    }
    friend Series operator/(Series a, const Series &b)
    {
        return a /= b;
    }
    friend Series operator*(Series a, const Rational &c)
    {
        return a *= c;
    }
    friend Series operator*(const Rational &c, Series a)
    {
        return a *= c;
    }
    friend Series operator+(Series a, const Rational &c)
    {
        return a += c;
    }
    friend Series operator-(Series a, const Rational &c)
    {
        return a -= c;
    }

    friend bool operator==(const Series &, const Series &) = default;

    std::string str() const;

private:
    void check_same_order(const Series &o, const char *op) const;

    std::vector<Rational> m_coeffs;
};

// A series with c_0 == 0 and c_1 != 0; checked on construction
// (std::domain_error otherwise).
class DeltaSeries
{
public:
    explicit DeltaSeries(Series s);

    const Series &series() const noexcept
    {
        return m_series;
    }
    std::size_t order() const noexcept
    {
        return m_series.order();
    }
    operator const Series &() const noexcept
    {
        return m_series;
    }

private:
    Series m_series;
};

// f(g(t)) mod t^{N+1}; g must have a zero constant term.
Series compose(const Series &outer, const Series &inner);

// Compositional inverse, obtained by Newton iteration on f(h) = t.
DeltaSeries revert(const DeltaSeries &f);

// exp(f); requires f[0] == 0.
Series exp(const Series &f);
// log(1 + f); requires f[0] == 0.
Series log1p(const Series &f);
// f^gamma. Non-integer gamma requires f[0] == 1, negative integer gamma
// requires f[0] != 0; non-negative integer gamma is unrestricted.
Series pow(const Series &f, const Rational &gamma);

// n! [t^n] f.
Rational coeff_egf(const Series &f, std::size_t n);

enum class LagrangeFormula { A, B, C };

// Lagrange inversion read-outs for the compositional inverse fbar of f,
// computed from powers of t/f(t) only:
//   A: [t^n] g(fbar(t)) = (1/n) [t^{n-1}] g'(t) (t/f(t))^n
//   B: [t^n] fbar(t)^k  = (k/n) [t^{n-k}] (t/f(t))^n        (1 <= k <= n)
//   C: [t^n] fbar(t)    = (1/n) [t^{n-1}] (t/f(t))^n         (n >= 1)
// g is only read for formula A; k only for formula B. Needs n <= order.
Rational lagrange_extract(const Series &g, const DeltaSeries &f, std::size_t n, std::size_t k,
                          LagrangeFormula formula);

} // namespace probstir

#endif
