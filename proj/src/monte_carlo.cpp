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


#include <probstir/monte_carlo.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include <probstir/probabilistic.hpp>

namespace probstir
{

namespace
{

constexpr std::size_t chunk_size = 1 << 16;

struct Moments {
    std::size_t count = 0;
    double mean = 0;
    double m2 = 0;

    void add(double x)
    {
        ++count;
        const double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }

    void merge(const Moments &o)
    {
        if (o.count == 0)
            return;
        const double n = static_cast<double>(count), m = static_cast<double>(o.count);
        const double d = o.mean - mean;
        mean += d * m / (n + m);
        m2 += o.m2 + d * d * n * m / (n + m);
        count += o.count;
    }
};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

} // namespace

double uniform01(std::mt19937_64 &rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool MCEstimate::within_band(double band) const
{
    return std::abs(z) <= band;
}

Sampler::Sampler(const RandomVariable &rv) : m_rv(rv)
{
    validate(rv);
    if (!is_samplable(rv))
        throw std::domain_error("monte carlo: " + rv_name(rv) + " cannot be sampled");
    std::visit(overloaded{[&](const Bernoulli &d) { m_a = d.p.to_double(); },
                          [&](const Binomial &d) { m_a = d.p.to_double(); },
                          [&](const Poisson &d) { m_a = d.alpha.to_double(); },
                          [&](const Exponential &d) { m_a = d.alpha.to_double(); },
                          [&](const Gamma &d) {
                              m_a = d.alpha.to_double();
                              m_b = d.beta.to_double();
                          },
                          [&](const Geometric &d) { m_a = std::log1p(-d.p.to_double()); },
                          [&](const Normal &d) {
                              m_a = d.mu.to_double();
                              m_b = std::sqrt(d.sigma2.to_double());
                          },
                          [&](const NegBinomial &d) { m_a = std::log1p(-d.p.to_double()); },
                          [&](const Uniform01 &) {}, [&](const PointMass &d) { m_a = d.c.to_double(); },
                          [&](const Custom &) {}},
               rv);
}

double Sampler::normal_variate(std::mt19937_64 &rng)
{
    if (m_has_spare) {
        m_has_spare = false;
        return m_spare;
    }
    const double u = 1.0 - uniform01(rng);
    const double v = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u));
    m_spare = r * std::sin(2.0 * std::numbers::pi * v);
    m_has_spare = true;
    return r * std::cos(2.0 * std::numbers::pi * v);
}

// Marsaglia-Tsang, with the shape-boost U^{1/a} for a < 1.
double Sampler::gamma_variate(std::mt19937_64 &rng, double shape)
{
    if (shape < 1.0) {
        const double g = gamma_variate(rng, shape + 1.0);
        return g * std::pow(1.0 - uniform01(rng), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal_variate(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = 1.0 - uniform01(rng);
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v))
            return d * v;
    }
}

double Sampler::operator()(std::mt19937_64 &rng)
{
    // Failures before the first success, by inversion; log_q = log(1 - p).
    auto failures = [&](double log_q) {
        if (log_q == -std::numeric_limits<double>::infinity())
            return 0.0;
        return std::floor(std::log(1.0 - uniform01(rng)) / log_q);
    };
    return std::visit(
        overloaded{[&](const Bernoulli &) { return uniform01(rng) < m_a ? 1.0 : 0.0; },
                   [&](const Binomial &d) {
                       double s = 0;
                       for (long i = 0; i < d.m; ++i)
                           s += uniform01(rng) < m_a ? 1.0 : 0.0;
                       return s;
                   },
                   [&](const Poisson &) {
                       // Knuth's product method on pieces of rate at most 10.
                       double count = 0;
                       for (double remaining = m_a; remaining > 0; remaining -= 10.0) {
                           const double limit = std::exp(-std::min(remaining, 10.0));
                           double prod = 1.0 - uniform01(rng);
                           while (prod > limit) {
                               count += 1;
                               prod *= 1.0 - uniform01(rng);
                           }
                       }
                       return count;
                   },
                   [&](const Exponential &) { return -std::log(1.0 - uniform01(rng)) / m_a; },
                   [&](const Gamma &) { return gamma_variate(rng, m_a) / m_b; },
                   [&](const Geometric &) { return 1.0 + failures(m_a); },
                   [&](const Normal &) { return m_a + m_b * normal_variate(rng); },
                   [&](const NegBinomial &d) {
                       double s = 0;
                       for (long i = 0; i < d.r; ++i)
                           s += failures(m_a);
                       return s;
                   },
                   [&](const Uniform01 &) { return uniform01(rng); }, [&](const PointMass &) { return m_a; },
                   [&](const Custom &) -> double { throw std::domain_error("monte carlo: custom cannot be sampled"); }},
        m_rv);
}

MCEstimate mc_check(const RandomVariable &rv, const Rational &lambda, std::size_t n, std::size_t j,
                    std::size_t samples, std::uint64_t seed, unsigned workers)
{
    if (samples < 1000)
        throw std::invalid_argument("monte carlo: need at least 1000 samples");
    const Sampler prototype(rv);
    const double l = lambda.to_double();

    const std::size_t chunks = (samples + chunk_size - 1) / chunk_size;
    std::vector<Moments> stats(chunks);
    auto run_chunk = [&](std::size_t c) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(c)};
        std::mt19937_64 rng(seq);
        Sampler sampler = prototype;
        const std::size_t count = std::min(chunk_size, samples - c * chunk_size);
        Moments m;
        for (std::size_t s = 0; s < count; ++s) {
            double sum = 0;
            for (std::size_t i = 0; i < j; ++i)
                sum += sampler(rng);
            double value = 1;
            for (std::size_t i = 0; i < n; ++i)
                value *= sum - static_cast<double>(i) * l;
            m.add(value);
        }
        stats[c] = m;
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(chunks)));
    if (workers == 1) {
        for (std::size_t c = 0; c < chunks; ++c)
            run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t c = w; c < chunks; c += workers)
                    run_chunk(c);
            });
        for (auto &t : pool)
            t.join();
    }
    Moments total;
    for (const auto &m : stats)
        total.merge(m);

    MCEstimate out;
    out.target = "E[(S_" + std::to_string(j) + ")_{" + std::to_string(n) + ",lambda}], " + describe(rv)
                 + ", lambda=" + lambda.str();
    out.samples = samples;
    out.seed = seed;
    out.estimate = total.mean;
    out.standard_error = std::sqrt(total.m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
    out.exact = sj_moment(rv, lambda, j, n);
    const double exact = out.exact.to_double();
    const double diff = out.estimate - exact;
    if (out.standard_error > 0)
        out.z = diff / out.standard_error;
    else if (std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(exact)))
        out.z = 0;
    else
        out.z = std::copysign(std::numeric_limits<double>::infinity(), diff);
    return out;
}

} // namespace probstir
