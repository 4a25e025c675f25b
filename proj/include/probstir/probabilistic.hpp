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


#ifndef PROBSTIR_PROBABILISTIC_HPP
#define PROBSTIR_PROBABILISTIC_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <probstir/random_variable.hpp>
#include <probstir/rational.hpp>
#include <probstir/series.hpp>
#include <probstir/special_numbers.hpp>

namespace probstir
{

// E[e_lambda^Y(t)] mod t^{order+1}, with EGF coefficients E[(Y)_{n,lambda}].
// Built as a series pipeline over e_lambda(t) and log e_lambda(t) for the named
// distributions, and from the moment list for Custom (which then needs moments
// through index `order`).
Series mgf_deg(const RandomVariable &rv, const Rational &lambda, std::size_t order);

// E[Y^n] read off the lambda = 0 generating function.
Rational moment(const RandomVariable &rv, std::size_t n);

// E[e_lambda^{-Y}(t)] = mgf_deg(rv, -lambda)(-t).
Series neg(const RandomVariable &rv, const Rational &lambda, std::size_t order);

// E[(S_j)_{n,lambda}] for S_j = Y_1 + ... + Y_j (S_0 = 0), via mgf_deg^j.
Rational sj_moment(const RandomVariable &rv, const Rational &lambda, std::size_t j, std::size_t n);

// E[(Y)_{n,lambda}] or E[<Y>_{n,lambda}] from raw moments, expanding the degenerate
// factorial as a polynomial in Y. raw_moments[i] = E[Y^i], i <= n.
Rational expected_deg_factorial(const std::vector<Rational> &raw_moments, const Rational &lambda, std::size_t n,
                                FactorialKind kind);
// Raw moments of S_j given those of Y (binomial convolution), indices 0..size-1.
std::vector<Rational> sum_raw_moments(const std::vector<Rational> &raw_moments, std::size_t j);

// Generating data shared by every probabilistic family at one (rv, lambda).
class ProbSeriesBundle
{
public:
    ProbSeriesBundle(RandomVariable rv, Rational lambda, std::size_t order);
    // Uses the given generating function (of truncation order `order + 1`)
    // in place of mgf_deg. The bundle order is one less than mgf.order().
    ProbSeriesBundle(RandomVariable rv, Rational lambda, const Series &mgf_plus_one);

    const RandomVariable &rv() const noexcept
    {
        return m_rv;
    }
    const Rational &lambda() const noexcept
    {
        return m_lambda;
    }
    std::size_t order() const noexcept
    {
        return m_order;
    }
    // E[Y] as the first EGF coefficient of the generating function.
    const Rational &mean() const noexcept
    {
        return m_mean;
    }
    const Series &mgf() const noexcept
    {
        return m_mgf;
    }
    // e_{Y,lambda}(t) = mgf - 1.
    const Series &delta() const noexcept
    {
        return m_delta;
    }
    bool has_inverse() const noexcept
    {
        return m_reverted.has_value();
    }
    // log_lambda^Y(1+t), the compositional inverse of delta(). Needs E[Y] != 0.
    const Series &reverted() const;

    // S_{2,lambda}^Y and S_{1,lambda}^Y for n <= nmax <= order.
    Triangle s2(std::size_t nmax) const;
    Triangle s1(std::size_t nmax) const;

    // (t/(mgf - 1))^gamma mgf^x, coefficients beta_{n,lambda}^{(gamma,Y)}(x).
    Series bernoulli(const Rational &gamma, const Rational &x = Rational(0)) const;
    // (log_lambda^Y(1+t)/t)^gamma and (t/log_lambda^Y(1+t))^gamma.
    Series daehee(const Rational &gamma) const;
    Series cauchy(const Rational &gamma) const;

private:
    void require_inverse() const;
    void check_gamma(const Rational &gamma) const;

    RandomVariable m_rv;
    Rational m_lambda;
    std::size_t m_order;
    Rational m_mean;
    Series m_mgf;
    Series m_delta;
    Series m_quotient;  // (mgf - 1)/t
    std::optional<Series> m_reverted;
    std::optional<Series> m_reverted_quotient;  // log_lambda^Y(1+t)/t
};

// prob_s2, prob_s1, prob_h (= S2 at -lambda) or prob_g (= S1 at -lambda).
// First-kind families throw std::domain_error when E[Y] == 0.
Triangle prob_triangle(const RandomVariable &rv, const Rational &lambda, Family family, std::size_t nmax);

Series prob_order_numbers(const RandomVariable &rv, const Rational &lambda, const Rational &gamma,
                          const Rational &x, NumberFamily family, std::size_t order);

Series prob_log(const RandomVariable &rv, const Rational &lambda, std::size_t order);

// sum_{j=0}^{n-k} C(n+j-1, n+j-k) C(2n-k, n-k-j) (-1)^j mean^{-n-j} T(n-k+j, j),
// evaluated from a second-kind table T with nmax >= 2(n-k).
Rational schlomilch(const Triangle &second_kind, const Rational &mean, std::size_t n, std::size_t k);
// The same sum over S_{2,lambda}^Y, giving S_{1,lambda}^Y(n,k) without reversion.
Rational schlomilch_s1(const RandomVariable &rv, const Rational &lambda, std::size_t n, std::size_t k);

} // namespace probstir

#endif
