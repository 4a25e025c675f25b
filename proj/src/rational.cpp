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

#include <probstir/rational.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace probstir
{

namespace
{

bool is_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) {
        s.remove_suffix(1);
    }
    return s;
}

mpz_class parse_integer(std::string_view s)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!is_digits(s)) {
        throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    }
    mpz_class v(std::string(s), 10);
    return negative ? mpz_class(-v) : v;
}

} // namespace

Rational::Rational(long num, long den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    m_value = mpq_class(num, 1);
    m_value /= mpq_class(den, 1);
    m_value.canonicalize();
}

Rational::Rational(mpq_class v) : m_value(std::move(v))
{
    m_value.canonicalize();
}

Rational::Rational(const mpz_class &v) : m_value(v)
{
}

Rational Rational::parse(std::string_view text)
{
    text = trim(text);
    if (text.empty()) {
        throw std::invalid_argument("empty rational");
    }
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text));
    }
    const mpz_class num = parse_integer(trim(text.substr(0, slash)));
    const auto den_text = trim(text.substr(slash + 1));
    if (!is_digits(den_text)) {
        throw std::invalid_argument("malformed denominator in '" + std::string(text) + "'");
    }
    const mpz_class den(std::string(den_text), 10);
    if (den == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    mpq_class q(num, den);
    return Rational(std::move(q));
}

std::string Rational::str() const
{
    if (is_integer()) {
        return m_value.get_num().get_str();
    }
    return m_value.get_num().get_str() + "/" + m_value.get_den().get_str();
}

double Rational::to_double() const
{
    return m_value.get_d();
}

HighPrecision Rational::to_high_precision() const
{
    HighPrecision num(m_value.get_num().get_str());
    HighPrecision den(m_value.get_den().get_str());
    return num / den;
}

std::string Rational::decimal(int significant_digits) const
{
    std::ostringstream os;
    os.precision(significant_digits);
    os << to_high_precision();
    return os.str();
}

long Rational::to_long() const
{
    if (!is_integer() || !m_value.get_num().fits_slong_p()) {
        throw std::domain_error("rational " + str() + " is not a machine integer");
    }
    return m_value.get_num().get_si();
}

Rational Rational::abs() const
{
    return Rational(mpq_class(::abs(m_value)));
}

Rational Rational::inverse() const
{
    if (is_zero()) {
        throw std::domain_error("inverse of zero");
    }
    return Rational(mpq_class(1 / m_value));
}

Rational Rational::pow(long e) const
{
    if (e < 0) {
        return inverse().pow(-e);
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), m_value.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), m_value.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(mpq_class(num, den));
}

Rational Rational::operator-() const
{
    return Rational(mpq_class(-m_value));
}

Rational &Rational::operator+=(const Rational &o)
{
    m_value += o.m_value;
    return *this;
}

Rational &Rational::operator-=(const Rational &o)
{
    m_value -= o.m_value;
    return *this;
}

Rational &Rational::operator*=(const Rational &o)
{
    m_value *= o.m_value;
    return *this;
}

Rational &Rational::operator/=(const Rational &o)
{
    if (o.is_zero()) {
        throw std::domain_error("division by zero");
    }
    m_value /= o.m_value;
    return *this;
}

Rational factorial(long n)
{
    if (n < 0) {
        throw std::invalid_argument("factorial of a negative number");
    }
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

Rational binomial(const Rational &top, long k)
{
    if (k < 0) {
        return Rational(0);
    }
    return falling(top, k) / factorial(k);
}

Rational binomial(long n, long k)
{
    if (k < 0) {
        return Rational(0);
    }
    if (n >= 0) {
        if (k > n) {
            return Rational(0);
        }
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return Rational(b);
    }
    return binomial(Rational(n), k);
}

Rational falling(const Rational &x, long n)
{
    Rational r(1);
    for (long i = 0; i < n; ++i) {
        r *= x - Rational(i);
    }
    return r;
}

Rational rising(const Rational &x, long n)
{
    Rational r(1);
    for (long i = 0; i < n; ++i) {
        r *= x + Rational(i);
    }
    return r;
}

HighPrecision to_high_precision(const Rational &r)
{
    return r.to_high_precision();
}

bool close_relative(const HighPrecision &a, const HighPrecision &b, const HighPrecision &tol)
{
    using boost::multiprecision::abs;
    const HighPrecision scale = std::max(abs(a), abs(b));
    if (scale == 0) {
        return true;
    }
    const HighPrecision diff = abs(a - b);
    return diff <= tol * scale || diff <= tol * tol;
}

} // namespace probstir
