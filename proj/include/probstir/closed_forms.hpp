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


#ifndef PROBSTIR_CLOSED_FORMS_HPP
#define PROBSTIR_CLOSED_FORMS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <probstir/random_variable.hpp>
#include <probstir/rational.hpp>
#include <probstir/series.hpp>

namespace probstir
{

// Explicit per-distribution formulas for S_{2,lambda}^Y, S_{1,lambda}^Y and the
// EGF coefficients of log_lambda^Y(1+t), written as sums over classical and
// degenerate Stirling numbers, Lah numbers, Frobenius-Euler numbers and
// Bernoulli-Pade numbers. They never touch the generating-function engine.
enum class ClosedFormKind { s2, s1, log };

struct ClosedFormValue {
    // Exact values carry `value`; numeric ones carry only `numeric`.
    bool exact = true;
    Rational value;
    HighPrecision numeric = 0;
    // Number of terms kept in an unbounded sum (0 for finite formulas).
    std::size_t depth = 0;
    // False when the partial sums still moved between 3/4 depth and full depth.
    bool stabilized = true;

    std::string str() const;
};

std::string format_decimal(const HighPrecision &x, int significant_digits);

bool has_closed_form(const RandomVariable &rv, ClosedFormKind kind);

// Rows n = 0..nmax, each holding k = 0..n. For kind == log, row n holds a single
// entry: the n-th EGF coefficient (S_{1,lambda}^Y(n,1) for n >= 1, zero for n = 0).
// Sums over an unbounded index are cut at `depth` terms.
std::vector<std::vector<ClosedFormValue>> closed_form_table(const RandomVariable &rv, const Rational &lambda,
                                                            ClosedFormKind kind, std::size_t nmax,
                                                            std::size_t depth = 200);

// Single entry of closed_form_table; k is ignored for kind == log.
ClosedFormValue closed_form(const RandomVariable &rv, const Rational &lambda, ClosedFormKind kind, std::size_t n,
                            std::size_t k, std::size_t depth = 200);

// Negative binomial only: the unbounded sums over (j, m, l) for S2 and over (l, m)
// for S1, whose S1 weights A^{lambda l} (log_lambda A)^{k-l}, A = 1/(1-p), are not
// rational. Evaluated to `depth` terms in high precision. The finite forms used by
// closed_form_table regroup the same generating functions around e_lambda(t) = 1.
std::vector<std::vector<ClosedFormValue>> negbinomial_series_table(const NegBinomial &rv, const Rational &lambda,
                                                                   ClosedFormKind kind, std::size_t nmax,
                                                                   std::size_t depth = 200);

// log_lambda^Y(1+t) as an explicit composition, where one exists (all named
// distributions except Normal and Uniform01).
Series closed_form_log_series(const RandomVariable &rv, const Rational &lambda, std::size_t order);

// Uniform01 only. S_{1,lambda}^Y(n,k) through sums of products of A_{2,j}
// numbers (general lambda), its lambda = 0 specialization, and the n-th EGF
// coefficient of log_lambda^Y(1+t).
Rational uniform_s1(const Rational &lambda, std::size_t n, std::size_t k);
Rational uniform_s1_classical(std::size_t n, std::size_t k);
Rational uniform_log_coefficient(const Rational &lambda, std::size_t n);
// [t^n] (1/k!) e_bar(t)^k for Uniform01 through Lagrange inversion over
// log_lambda(e^t), for n >= k + 1.
Rational uniform_lagrange_coefficient(const Rational &lambda, std::size_t n, std::size_t k);

} // namespace probstir

#endif
