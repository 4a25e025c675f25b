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


#ifndef PROBSTIR_MONTE_CARLO_HPP
#define PROBSTIR_MONTE_CARLO_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include <probstir/random_variable.hpp>
#include <probstir/rational.hpp>

namespace probstir
{

// Monte Carlo estimate of E[(S_j)_{n,lambda}] against its exact value.
struct MCEstimate {
    std::string target;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double estimate = 0;
    // Zero only for a degenerate sample (every draw identical).
    double standard_error = 0;
    Rational exact;
    // (estimate - exact)/standard_error. With a zero standard error, 0 when the
    // estimate matches to 1e-12 relative and +-infinity otherwise.
    double z = 0;

    bool within_band(double band = 5.0) const;
};

// Draws one realization of Y. Throws std::domain_error for Custom.
class Sampler
{
public:
    explicit Sampler(const RandomVariable &rv);
    double operator()(std::mt19937_64 &rng);

private:
    double gamma_variate(std::mt19937_64 &rng, double shape);
    double normal_variate(std::mt19937_64 &rng);

    RandomVariable m_rv;
    double m_a = 0;
    double m_b = 0;
    bool m_has_spare = false;
    double m_spare = 0;
};

// Uniform on [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64 &rng);

// Averages (S_j)_{n,lambda} over `samples` draws of S_j = Y_1 + ... + Y_j.
// The draws are split into fixed-size chunks, chunk c seeded from (seed, c), and
// chunk statistics are merged in chunk order, so the result does not depend on
// `workers`. Needs samples >= 1000 (std::invalid_argument) and a samplable rv
// (std::domain_error).
MCEstimate mc_check(const RandomVariable &rv, const Rational &lambda, std::size_t n, std::size_t j,
                    std::size_t samples, std::uint64_t seed, unsigned workers = 1);

} // namespace probstir

#endif
