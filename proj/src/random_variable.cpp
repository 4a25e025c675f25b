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


#include <probstir/random_variable.hpp>

#include <limits>
#include <map>
#include <stdexcept>

#include <probstir/special_numbers.hpp>

namespace probstir
{

namespace
{

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string &message)
{
    if (!ok) {
        throw std::domain_error(message);
    }
}

bool in_unit_interval_closed(const Rational &p)
{
    return p.sign() > 0 && p <= Rational(1);
}

bool in_unit_interval_open(const Rational &p)
{
    return p.sign() > 0 && p < Rational(1);
}

// sum_k S2(n,k) f_k, converting factorial moments f_k = E[(Y)_k] into E[Y^n].
template <class F>
Rational from_factorial_moments(std::size_t n, F factorial_moment)
{
    const Triangle s2 = triangle_by_recurrence(Family::s2, Rational(0), n);
    Rational total(0);
    for (std::size_t k = 0; k <= n; ++k) {
        if (!s2(n, k).is_zero()) {
            total += s2(n, k) * factorial_moment(static_cast<long>(k));
        }
    }
    return total;
}

Rational double_factorial_odd(long i)
{
    // (2i-1)!! with (-1)!! = 1
    Rational r(1);
    for (long j = 1; j <= 2 * i - 1; j += 2) {
        r *= Rational(j);
    }
    return r;
}

Rational parse_value(const std::string &key, const std::string &text)
{
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument &) {
        throw std::invalid_argument("parameter '" + key + "': '" + text + "' is not a rational number");
    }
}

long integer_param(const std::string &key, const Rational &v)
{
    require(v.is_integer() && v.sign() > 0, key + " must be a positive integer, got " + v.str());
    return v.to_long();
}

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

} // namespace

void validate(const RandomVariable &rv)
{
    std::visit(overloaded{
                   [](const Bernoulli &d) { require(in_unit_interval_closed(d.p), "bernoulli needs 0 < p <= 1"); },
                   [](const Binomial &d) {
                       require(d.m > 0, "binomial needs a positive integer m");
                       require(in_unit_interval_closed(d.p), "binomial needs 0 < p <= 1");
                   },
                   [](const Poisson &d) { require(d.alpha.sign() > 0, "poisson needs alpha > 0"); },
                   [](const Exponential &d) { require(d.alpha.sign() > 0, "exponential needs alpha > 0"); },
                   [](const Gamma &d) {
                       require(d.alpha.sign() > 0, "gamma needs alpha > 0");
                       require(d.beta.sign() > 0, "gamma needs beta > 0");
                   },
                   [](const Geometric &d) { require(in_unit_interval_open(d.p), "geometric needs 0 < p < 1"); },
                   [](const Normal &d) {
                       require(!d.mu.is_zero(), "normal needs mu != 0");
                       require(d.sigma2.sign() > 0, "normal needs sigma2 > 0");
                   },
                   [](const NegBinomial &d) {
                       require(d.r > 0, "negbinomial needs a positive integer r");
                       require(in_unit_interval_open(d.p), "negbinomial needs 0 < p < 1");
                   },
                   [](const Uniform01 &) {},
                   [](const PointMass &) {},
                   [](const Custom &d) {
                       require(d.moments.size() >= 2, "custom needs at least E[Y]");
                       require(d.moments[0] == Rational(1), "custom needs E[Y^0] = 1");
                   },
               },
               rv);
}

RandomVariable parse_random_variable(std::string_view text)
{
    const std::size_t colon = text.find(':');
    const std::string name(text.substr(0, colon));
    const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

    if (name == "custom") {
        constexpr std::string_view prefix = "moments=";
        if (!rest.starts_with(prefix) || rest.size() == prefix.size()) {
            throw std::invalid_argument("custom expects 'custom:moments=m1,m2,...'");
        }
        Custom c;
        c.moments.emplace_back(1);
        for (const std::string &item : split(rest.substr(prefix.size()), ',')) {
            c.moments.push_back(parse_value("moments", item));
        }
        validate(c);
        return c;
    }

    std::map<std::string, Rational> kv;
    if (!rest.empty()) {
        for (const std::string &item : split(rest, ',')) {
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw std::invalid_argument("expected key=value, got '" + item + "'");
            }
            const std::string key = item.substr(0, eq);
            if (kv.contains(key)) {
                throw std::invalid_argument("duplicate parameter '" + key + "'");
            }
            kv.emplace(key, parse_value(key, item.substr(eq + 1)));
        }
    }
    auto take = [&](const std::string &key) {
        const auto it = kv.find(key);
        if (it == kv.end()) {
            throw std::invalid_argument(name + " needs parameter '" + key + "'");
        }
        Rational v = it->second;
        kv.erase(it);
        return v;
    };

    RandomVariable rv;
    if (name == "bernoulli") {
        rv = Bernoulli{take("p")};
    } else if (name == "binomial") {
        const Rational m = take("m");
        rv = Binomial{integer_param("m", m), take("p")};
    } else if (name == "poisson") {
        rv = Poisson{take("alpha")};
    } else if (name == "exponential") {
        rv = Exponential{take("alpha")};
    } else if (name == "gamma") {
        const Rational a = take("alpha");
        rv = Gamma{a, take("beta")};
    } else if (name == "geometric") {
        rv = Geometric{take("p")};
    } else if (name == "normal") {
        const Rational mu = take("mu");
        rv = Normal{mu, take("sigma2")};
    } else if (name == "negbinomial") {
        const Rational r = take("r");
        rv = NegBinomial{integer_param("r", r), take("p")};
    } else if (name == "uniform") {
        rv = Uniform01{};
    } else if (name == "pointmass") {
        rv = PointMass{take("c")};
    } else {
        throw std::invalid_argument("unknown random variable '" + name + "'");
    }
    if (!kv.empty()) {
        throw std::invalid_argument(name + " does not take parameter '" + kv.begin()->first + "'");
    }
    validate(rv);
    return rv;
}

std::string rv_name(const RandomVariable &rv)
{
    static const char *const names[] = {"bernoulli",   "binomial", "poisson", "exponential", "gamma", "geometric",
                                        "normal",      "negbinomial", "uniform", "pointmass", "custom"};
    return names[rv.index()];
}

std::vector<std::pair<std::string, std::string>> rv_params(const RandomVariable &rv)
{
    using P = std::vector<std::pair<std::string, std::string>>;
    return std::visit(
        overloaded{
            [](const Bernoulli &d) { return P{{"p", d.p.str()}}; },
            [](const Binomial &d) { return P{{"m", std::to_string(d.m)}, {"p", d.p.str()}}; },
            [](const Poisson &d) { return P{{"alpha", d.alpha.str()}}; },
            [](const Exponential &d) { return P{{"alpha", d.alpha.str()}}; },
            [](const Gamma &d) { return P{{"alpha", d.alpha.str()}, {"beta", d.beta.str()}}; },
            [](const Geometric &d) { return P{{"p", d.p.str()}}; },
            [](const Normal &d) { return P{{"mu", d.mu.str()}, {"sigma2", d.sigma2.str()}}; },
            [](const NegBinomial &d) { return P{{"r", std::to_string(d.r)}, {"p", d.p.str()}}; },
            [](const Uniform01 &) { return P{}; },
            [](const PointMass &d) { return P{{"c", d.c.str()}}; },
            [](const Custom &d) {
                std::string list;
                for (std::size_t i = 1; i < d.moments.size(); ++i) {
                    list += (i > 1 ? "," : "") + d.moments[i].str();
                }
                return P{{"moments", list}};
            },
        },
        rv);
}

std::string describe(const RandomVariable &rv)
{
    std::string out = rv_name(rv);
    const auto params = rv_params(rv);
    for (std::size_t i = 0; i < params.size(); ++i) {
        out += (i == 0 ? ":" : ",") + params[i].first + "=" + params[i].second;
    }
    return out;
}

bool is_samplable(const RandomVariable &rv)
{
    return !std::holds_alternative<Custom>(rv);
}

Rational mean(const RandomVariable &rv)
{
    return std::visit(overloaded{
                          [](const Bernoulli &d) { return d.p; },
                          [](const Binomial &d) { return Rational(d.m) * d.p; },
                          [](const Poisson &d) { return d.alpha; },
                          [](const Exponential &d) { return d.alpha.inverse(); },
                          [](const Gamma &d) { return d.alpha / d.beta; },
                          [](const Geometric &d) { return d.p.inverse(); },
                          [](const Normal &d) { return d.mu; },
                          [](const NegBinomial &d) { return Rational(d.r) * (Rational(1) - d.p) / d.p; },
                          [](const Uniform01 &) { return Rational(1, 2); },
                          [](const PointMass &d) { return d.c; },
                          [](const Custom &d) { return d.moments.at(1); },
                      },
                      rv);
}

Rational raw_moment(const RandomVariable &rv, std::size_t n)
{
    if (n == 0) {
        return Rational(1);
    }
    const long nl = static_cast<long>(n);
    return std::visit(
        overloaded{
            [](const Bernoulli &d) { return d.p; },
            [&](const Binomial &d) {
                return from_factorial_moments(n, [&](long k) { return falling(Rational(d.m), k) * d.p.pow(k); });
            },
            [&](const Poisson &d) { return from_factorial_moments(n, [&](long k) { return d.alpha.pow(k); }); },
            [&](const Exponential &d) { return factorial(nl) / d.alpha.pow(nl); },
            [&](const Gamma &d) { return rising(d.alpha, nl) / d.beta.pow(nl); },
            [&](const Geometric &d) {
                const Rational q = Rational(1) - d.p;
                return from_factorial_moments(
                    n, [&](long k) { return k == 0 ? Rational(1) : factorial(k) * q.pow(k - 1) / d.p.pow(k); });
            },
            [&](const Normal &d) {
                Rational total(0);
                for (long i = 0; 2 * i <= nl; ++i) {
                    total += binomial(nl, 2 * i) * d.mu.pow(nl - 2 * i) * d.sigma2.pow(i) * double_factorial_odd(i);
                }
                return total;
            },
            [&](const NegBinomial &d) {
                const Rational ratio = (Rational(1) - d.p) / d.p;
                return from_factorial_moments(n, [&](long k) { return rising(Rational(d.r), k) * ratio.pow(k); });
            },
            [&](const Uniform01 &) { return Rational(1, nl + 1); },
            [&](const PointMass &d) { return d.c.pow(nl); },
            [&](const Custom &d) {
                if (n >= d.moments.size()) {
                    throw std::invalid_argument("custom random variable has no moment E[Y^" + std::to_string(n) + "]");
                }
                return d.moments[n];
            },
        },
        rv);
}

std::vector<Rational> raw_moments(const RandomVariable &rv, std::size_t nmax)
{
    std::vector<Rational> out;
    out.reserve(nmax + 1);
    for (std::size_t n = 0; n <= nmax; ++n) {
        out.push_back(raw_moment(rv, n));
    }
    return out;
}

std::size_t available_moments(const RandomVariable &rv)
{
    if (const auto *c = std::get_if<Custom>(&rv)) {
        return c->moments.size() - 1;
    }
    return std::numeric_limits<std::size_t>::max();
}

} // namespace probstir
