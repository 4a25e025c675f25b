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


#ifndef PROBSTIR_RANDOM_VARIABLE_HPP
#define PROBSTIR_RANDOM_VARIABLE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <probstir/rational.hpp>

namespace probstir
{

struct Bernoulli {
    Rational p;
};
struct Binomial {
    long m;
    Rational p;
};
struct Poisson {
    Rational alpha;
};
// Density alpha e^{-alpha y}; E[Y] = 1/alpha.
struct Exponential {
    Rational alpha;
};
// Shape alpha, rate beta; E[Y] = alpha/beta.
struct Gamma {
    Rational alpha;
    Rational beta;
};
// Number of trials up to and including the first success, so Y >= 1 and E[Y] = 1/p.
struct Geometric {
    Rational p;
};
struct Normal {
    Rational mu;
    Rational sigma2;
};
// Number of failures before the r-th success; E[Y] = r(1-p)/p.
struct NegBinomial {
    long r;
    Rational p;
};
struct Uniform01 {
};
struct PointMass {
    Rational c;
};
// moments[n] = E[Y^n]; moments[0] must be 1.
struct Custom {
    std::vector<Rational> moments;
};

using RandomVariable = std::variant<Bernoulli, Binomial, Poisson, Exponential, Gamma, Geometric, Normal, NegBinomial,
                                    Uniform01, PointMass, Custom>;

// Throws std::domain_error when a parameter is outside its range.
void validate(const RandomVariable &rv);

// Parses "name" or "name:key=value,key=value". Values are rationals ("3", "-1/2").
// Custom takes "custom:moments=m1,m2,..." where the list starts at E[Y] (E[Y^0] = 1 is implied).
// Syntax errors throw std::invalid_argument; out-of-range values throw std::domain_error.
RandomVariable parse_random_variable(std::string_view text);

std::string rv_name(const RandomVariable &rv);
std::vector<std::pair<std::string, std::string>> rv_params(const RandomVariable &rv);
// Round-trips through parse_random_variable.
std::string describe(const RandomVariable &rv);

bool is_samplable(const RandomVariable &rv);

// E[Y] from the distribution's standard formula.
Rational mean(const RandomVariable &rv);

// E[Y^n] from per-distribution moment formulas (Touchard polynomials, factorial
// moments, Gaussian moments, ...). Does not go through any generating function.
// Custom throws std::invalid_argument if moments[n] is missing.
Rational raw_moment(const RandomVariable &rv, std::size_t n);
std::vector<Rational> raw_moments(const RandomVariable &rv, std::size_t nmax);

// Number of moments a Custom rv carries beyond E[Y^0]; unbounded for the others.
std::size_t available_moments(const RandomVariable &rv);

} // namespace probstir

#endif
