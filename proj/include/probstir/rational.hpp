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

#ifndef PROBSTIR_RATIONAL_HPP
#define PROBSTIR_RATIONAL_HPP

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace probstir
{

// Floating type used where a printed formula is not finitely rational.
using HighPrecision = boost::multiprecision::cpp_bin_float_100;

// Exact rational number, always kept in lowest terms with a positive
// denominator. Thin value wrapper over mpq_class so that no expression
// templates leak into user code.
class Rational
{
public:
    Rational() = default;

    template <std::signed_integral I>
    Rational(I v) : m_value(static_cast<long>(v))
    {
    }

    template <std::unsigned_integral I>
    Rational(I v) : m_value(static_cast<unsigned long>(v))
    {
    }

    Rational(long num, long den);

    explicit Rational(mpq_class v);
    explicit Rational(const mpz_class &v);

    // Accepts "a", "-a", "a/b" with optional surrounding whitespace.
    // Throws std::invalid_argument on anything else (including b == 0).
    static Rational parse(std::string_view text);

    // "num/den", or "num" when the denominator is 1.
    std::string str() const;
    double to_double() const;
    HighPrecision to_high_precision() const;
    // Decimal rendering with the given number of significant digits.
    std::string decimal(int significant_digits) const;

    const mpq_class &raw() const noexcept
    {
        return m_value;
    }
    mpz_class numerator() const
    {
        return m_value.get_num();
    }
    mpz_class denominator() const
    {
        return m_value.get_den();
    }

    bool is_zero() const noexcept
    {
        return sgn(m_value) == 0;
    }
    bool is_integer() const
    {
        return m_value.get_den() == 1;
    }
    int sign() const noexcept
    {
        return sgn(m_value);
    }
    // Requires is_integer() and a value that fits in a long.
    long to_long() const;

    Rational abs() const;
    // Throws std::domain_error on zero.
    Rational inverse() const;
    // Integer power; negative exponents require a nonzero base. 0^0 == 1.
    Rational pow(long e) const;

    Rational operator-() const;
    Rational &operator+=(const Rational &o);
    Rational &operator-=(const Rational &o);
    Rational &operator*=(const Rational &o);
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b)
    {
        return a += b;
    }
    friend Rational operator-(Rational a, const Rational &b)
    {
        return a -= b;
    }
    friend Rational operator*(Rational a, const Rational &b)
    {
        return a *= b;
    }
    friend Rational operator/(Rational a, const Rational &b)
    {
        return a /= b;
    }

    friend bool operator==(const Rational &a, const Rational &b)
    {
        return a.m_value == b.m_value;
    }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        const int c = cmp(a.m_value, b.m_value);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r)
    {
        return os << r.str();
    }

private:
    mpq_class m_value{0};
};

// n! as an exact rational. n >= 0.
Rational factorial(long n);

// Generalized binomial coefficient (top)_k / k!, zero for k < 0.
Rational binomial(const Rational &top, long k);

// Ordinary binomial with the conventions used throughout: zero for k < 0;
// negative tops use the generalized definition (so binomial(-1, 0) == 1).
Rational binomial(long n, long k);

// Falling factorial (x)_n = x(x-1)...(x-n+1), (x)_0 = 1.
Rational falling(const Rational &x, long n);

// Rising factorial <x>_n = x(x+1)...(x+n-1), <x>_0 = 1.
Rational rising(const Rational &x, long n);

// Converts an exact rational to high precision (division performed in floating point).
HighPrecision to_high_precision(const Rational &r);

// Relative closeness test: |a - b| <= tol * max(|a|, |b|), with an
// absolute fallback of tol when both are zero-ish.
bool close_relative(const HighPrecision &a, const HighPrecision &b, const HighPrecision &tol);

} // namespace probstir

#endif
