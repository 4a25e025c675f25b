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


#ifndef PROBSTIR_VERIFY_HPP
#define PROBSTIR_VERIFY_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <probstir/random_variable.hpp>
#include <probstir/rational.hpp>
#include <probstir/special_numbers.hpp>

namespace probstir
{

enum class Status { pass, fail, inconclusive };

std::string_view status_name(Status s);

// Outcome of one identity over a whole (rv, lambda, nmax) grid.
struct IdentityRecord {
    std::string identity;
    std::string rv;
    Rational lambda;
    std::size_t nmax = 0;
    Status status = Status::pass;
    std::size_t checks = 0;
    // (n, k, j) of the first failing (or first inconclusive) comparison. j is the
    // order gamma or the index of the alternative computation, -1 when unused.
    std::optional<std::array<long, 3>> first_failure;
    std::string lhs;
    std::string rhs;
};

struct VerificationReport {
    std::string suite;
    std::vector<IdentityRecord> records;

    bool passed() const;
    std::size_t count(Status s) const;
    void append(const VerificationReport &other);
};

// Both orthogonality relations for a second-kind table t2 and its first-kind
// inverse t1, plus the two inverse-pair transforms applied to a random rational
// sequence drawn from `seed`. Throws std::invalid_argument on nmax mismatch.
VerificationReport check_orthogonality(const Triangle &t2, const Triangle &t1, std::uint64_t seed = 1);

struct SuiteOptions {
    std::vector<long> gammas{-3, -2, -1, 0, 1, 2, 3, 4};
    // Truncation depth for explicit formulas with unbounded sums.
    std::size_t depth = 200;
    // Largest n for the reversion-vs-Lagrange and binomial-sum checks.
    std::size_t lagrange_nmax = 14;
    // Negative control: add `second` to E[Y^first] inside the generating-function
    // engine only, leaving the moment-expansion and explicit-formula paths intact.
    std::optional<std::pair<std::size_t, Rational>> perturb_moment;
};

// Every identity between the probabilistic families at one (rv, lambda), for
// 0 <= k <= n <= nmax, each computed along independent paths and compared exactly
// (or to 1e-9 relative for numeric explicit formulas). Throws std::domain_error if
// E[Y] == 0 or a Custom rv carries fewer than 2 nmax + 2 moments.
VerificationReport identity_suite(const RandomVariable &rv, const Rational &lambda, std::size_t nmax,
                                  const SuiteOptions &options = {});
VerificationReport identity_suite(const RandomVariable &rv, const Rational &lambda, std::size_t nmax,
                                  const std::vector<long> &gammas, std::size_t depth);

// lambda -> 0 and lambda -> 1 limits of the deterministic families.
VerificationReport limit_suite(std::size_t nmax);

// Orthogonality of the probabilistic pairs (S2, S1) and (H, G) at one (rv, lambda).
VerificationReport probabilistic_orthogonality(const RandomVariable &rv, const Rational &lambda, std::size_t nmax);

// Default verification grid.
std::vector<RandomVariable> builtin_random_variables();
std::vector<Rational> builtin_lambdas();

} // namespace probstir

#endif
