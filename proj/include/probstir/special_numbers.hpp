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

#ifndef PROBSTIR_SPECIAL_NUMBERS_HPP
#define PROBSTIR_SPECIAL_NUMBERS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <probstir/rational.hpp>
#include <probstir/series.hpp>

namespace probstir
{

enum class FactorialKind { falling, rising };

// (x)_{n,lambda} = x(x - lambda)...(x - (n-1)lambda) or
// <x>_{n,lambda} = x(x + lambda)...(x + (n-1)lambda), both equal to 1 for n = 0.
Rational deg_factorial(const Rational &x, long n, const Rational &lambda, FactorialKind kind);

// e_lambda^x(t) = sum (x)_{n,lambda} t^n/n!; e^{xt} when lambda == 0.
Series deg_exp(const Rational &lambda, const Rational &x, std::size_t order);
// log_lambda(1+t) = ((1+t)^lambda - 1)/lambda; log(1+t) when lambda == 0.
Series deg_log(const Rational &lambda, std::size_t order);
// log_lambda(u) for a series u with unit constant term.
Series deg_log_of(const Series &u, const Rational &lambda);
// log e_lambda(t) = log(1 + lambda t)/lambda; t when lambda == 0.
Series log_deg_exp(const Rational &lambda, std::size_t order);

enum class DegKind { exp, log };
Series deg_exp_log(const Rational &lambda, const Rational &x, DegKind kind, std::size_t order);

// Triangle families. The prob_* tags are produced by the probabilistic layer.
enum class Family { s1, s2, s1_deg, s2_deg, lah, hetero2, hetero1, prob_s2, prob_s1, prob_h, prob_g };

std::string_view family_name(Family f);
// Inverse of family_name; throws std::invalid_argument on an unknown tag.
Family parse_family(std::string_view name);
bool is_probabilistic(Family f);

// Dense lower-triangular table T(n, k), 0 <= k <= n <= nmax. Reads outside
// that range return zero.
class Triangle
{
public:
    Triangle(Family family, Rational lambda, std::size_t nmax);

    Family family() const noexcept
    {
        return m_family;
    }
    const Rational &lambda() const noexcept
    {
        return m_lambda;
    }
    std::size_t nmax() const noexcept
    {
        return m_nmax;
    }

    const Rational &operator()(std::size_t n, std::size_t k) const;
    void set(std::size_t n, std::size_t k, Rational value);

    // Free-form metadata carried into serialized output.
    std::string rv = "none";
    std::vector<std::pair<std::string, std::string>> params;

    friend bool operator==(const Triangle &a, const Triangle &b)
    {
        return a.m_family == b.m_family && a.m_lambda == b.m_lambda && a.m_nmax == b.m_nmax
               && a.m_entries == b.m_entries;
    }

    // Entry-wise comparison, ignoring family tags and metadata.
    bool same_entries(const Triangle &o) const
    {
        return m_nmax == o.m_nmax && m_entries == o.m_entries;
    }

private:
    static std::size_t index(std::size_t n, std::size_t k)
    {
        return n * (n + 1) / 2 + k;
    }

    Family m_family;
    Rational m_lambda;
    std::size_t m_nmax;
    std::vector<Rational> m_entries;
};

// T(n, k) = n! [t^n] base(t)^k / k!, for a base series with zero constant term.
// The base must carry truncation order >= nmax.
Triangle triangle_from_base(Family family, const Rational &lambda, const Series &base, std::size_t nmax);

// Deterministic Stirling-type triangles from their generating functions:
//   s2: e^t - 1               s1: log(1+t)
//   s2_deg: e_lambda(t) - 1   s1_deg: log_lambda(1+t)
//   lah: t/(1-t)
//   hetero2 (H_lambda): e_{-lambda}(t) - 1
//   hetero1 (G_lambda): log_{-lambda}(1+t)
// Probabilistic tags are rejected with std::invalid_argument.
Triangle triangle(Family family, const Rational &lambda, std::size_t nmax);

// The same classical tables from the triangular recurrences, used where large
// indices are needed and as an independent path:
//   S1(n+1,k) = S1(n,k-1) - n S1(n,k)
//   S2(n+1,k) = S2(n,k-1) + k S2(n,k)
//   S1_l(n+1,k) = S1_l(n,k-1) + (k l - n) S1_l(n,k)
//   S2_l(n+1,k) = S2_l(n,k-1) + (k - n l) S2_l(n,k)
//   L(n,k) = n!/k! C(n-1,k-1)
// Only columns k <= kmax are filled (kmax defaults to nmax).
Triangle triangle_by_recurrence(Family family, const Rational &lambda, std::size_t nmax,
                                std::size_t kmax = static_cast<std::size_t>(-1));

// Partial Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1}); x[0] holds x_1.
Rational partial_bell(std::span<const Rational> x, std::size_t n, std::size_t k);
// Every B_{n,k} with 0 <= k <= n <= nmax at once; x needs nmax entries.
Triangle partial_bell_triangle(std::span<const Rational> x, std::size_t nmax);

enum class NumberFamily { bernoulli, daehee, cauchy };

// EGF series of the order-gamma numbers:
//   bernoulli: (t/(e_lambda(t) - 1))^gamma e_lambda^x(t)
//   daehee:    (log_lambda(1+t)/t)^gamma
//   cauchy:    (t/log_lambda(1+t))^gamma
// x is only used by bernoulli.
Series order_numbers(const Rational &lambda, const Rational &gamma, const Rational &x, NumberFamily family,
                     std::size_t order);

// (t^2/2!)/(e^t - 1 - t), whose EGF coefficients are A_{2,n}.
Series bernoulli_pade_a2(std::size_t order);
// ((1-u)/(e_lambda(t) - u))^r, whose EGF coefficients are h_{n,lambda}^{(r)}(u). u != 1.
Series frobenius_euler(const Rational &lambda, long r, const Rational &u, std::size_t order);

// LB_n(x) = sum_k L(n,k) x^k.
Rational lah_bell(const Rational &x, std::size_t n);
// H_{n,lambda}(x) = sum_k H_lambda(n,k) x^k.
Rational hetero_bell(const Rational &lambda, const Rational &x, std::size_t n);

} // namespace probstir

#endif
