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


#include <probstir/closed_forms.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <probstir/special_numbers.hpp>

namespace probstir
{

namespace
{

using Table = std::vector<std::vector<ClosedFormValue>>;

const HighPrecision stabilization_tolerance("1e-12");

Rational sign(long e)
{
    return e % 2 == 0 ? Rational(1) : Rational(-1);
}

ClosedFormValue exact_value(Rational v)
{
    ClosedFormValue out;
    out.exact = true;
    out.numeric = v.to_high_precision();
    out.value = std::move(v);
    return out;
}

template <class F>
Table make_table(std::size_t nmax, F entry)
{
    Table t(nmax + 1);
    for (std::size_t n = 0; n <= nmax; ++n) {
        for (std::size_t k = 0; k <= n; ++k) {
            t[n].push_back(entry(static_cast<long>(n), static_cast<long>(k)));
        }
    }
    return t;
}

// Classical and degenerate tables built by recurrence, rows 0..rows.
struct Tables {
    Tables(const Rational &lambda, std::size_t rows)
        : s1(triangle_by_recurrence(Family::s1, Rational(0), rows)),
          s2(triangle_by_recurrence(Family::s2, Rational(0), rows)),
          s1l(triangle_by_recurrence(Family::s1_deg, lambda, rows)),
          s2l(triangle_by_recurrence(Family::s2_deg, lambda, rows)),
          lah(triangle_by_recurrence(Family::lah, Rational(0), rows))
    {
    }
    Triangle s1, s2, s1l, s2l, lah;
};

Rational at(const Triangle &t, long n, long k)
{
    return t(static_cast<std::size_t>(n), static_cast<std::size_t>(k));
}

std::vector<std::vector<Rational>> pascal(std::size_t rows)
{
    std::vector<std::vector<Rational>> c(rows + 1);
    for (std::size_t n = 0; n <= rows; ++n) {
        c[n].resize(n + 1, Rational(1));
        for (std::size_t k = 1; k < n; ++k) {
            c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
        }
    }
    return c;
}

// Partial sums of a series kept at depth and at 3/4 depth.
struct PartialSum {
    explicit PartialSum(std::size_t depth) : depth(depth), checkpoint(depth * 3 / 4)
    {
    }
    void add(std::size_t index, const Rational &term)
    {
        total += term;
        if (index <= checkpoint) {
            early += term;
        }
    }
    std::size_t depth;
    std::size_t checkpoint;
    Rational total{0};
    Rational early{0};
};

// A sum whose terms vanish identically past `exact_from`; exact when the depth reaches it.
ClosedFormValue finish(const PartialSum &s, std::size_t exact_from)
{
    ClosedFormValue out;
    out.depth = s.depth;
    out.stabilized = s.total == s.early;
    out.numeric = s.total.to_high_precision();
    if (s.depth >= exact_from) {
        out.exact = true;
        out.value = s.total;
    } else {
        out.exact = false;
    }
    return out;
}

ClosedFormValue finish_numeric(const HighPrecision &total, const HighPrecision &early, std::size_t depth)
{
    ClosedFormValue out;
    out.exact = false;
    out.depth = depth;
    out.numeric = total;
    out.stabilized = close_relative(total, early, stabilization_tolerance);
    return out;
}

// ---- second kind ----

Table s2_table(const RandomVariable &rv, const Rational &lambda, std::size_t nmax, std::size_t depth);
Table s1_table(const RandomVariable &rv, const Rational &lambda, std::size_t nmax, std::size_t depth);

Table gamma_s1(const Gamma &d, const Rational &lambda, std::size_t nmax, std::size_t depth)
{
    // sum_{l>=k} sum_{j<=l} (-1)^j/l! C(l,j) (-j/alpha)_n beta^l lambda^{l-k} S2(l,k)
    const auto c = pascal(depth);
    const Triangle s2 = triangle_by_recurrence(Family::s2, Rational(0), depth, nmax);
    // inner[l][n] = sum_j (-1)^j C(l,j) (-j/alpha)_n
    std::vector<std::vector<Rational>> inner(depth + 1, std::vector<Rational>(nmax + 1, Rational(0)));
    for (std::size_t j = 0; j <= depth; ++j) {
        std::vector<Rational> f(nmax + 1);
        for (std::size_t n = 0; n <= nmax; ++n) {
            f[n] = falling(-Rational(static_cast<long>(j)) / d.alpha, static_cast<long>(n));
        }
        for (std::size_t l = j; l <= depth; ++l) {
            const Rational w = sign(static_cast<long>(j)) * c[l][j];
            for (std::size_t n = 0; n <= nmax; ++n) {
                inner[l][n] += w * f[n];
            }
        }
    }
    return make_table(nmax, [&](long n, long k) {
        PartialSum s(depth);
        for (long l = k; l <= static_cast<long>(depth); ++l) {
            const Rational &st = at(s2, l, k);
            const Rational &in = inner[static_cast<std::size_t>(l)][static_cast<std::size_t>(n)];
            if (st.is_zero() || in.is_zero()) {
                continue;
            }
            s.add(static_cast<std::size_t>(l), in / factorial(l) * d.beta.pow(l) * lambda.pow(l - k) * st);
        }
        return finish(s, static_cast<std::size_t>(n));
    });
}

// J[j][m] = sum_{l=lo}^{j} (-1)^{j+l} C(j,l) (l/2)_m
std::vector<std::vector<Rational>> normal_inner(std::size_t depth, std::size_t nmax, long lo)
{
    const auto c = pascal(depth);
    std::vector<std::vector<Rational>> f(depth + 1, std::vector<Rational>(nmax + 1));
    for (std::size_t l = 0; l <= depth; ++l) {
        for (std::size_t m = 0; m <= nmax; ++m) {
            f[l][m] = falling(Rational(static_cast<long>(l), 2), static_cast<long>(m));
        }
    }
    std::vector<std::vector<Rational>> out(depth + 1, std::vector<Rational>(nmax + 1, Rational(0)));
    for (std::size_t j = 0; j <= depth; ++j) {
        for (std::size_t l = static_cast<std::size_t>(lo); l <= j; ++l) {
            const Rational w = sign(static_cast<long>(j + l)) * c[j][l];
            for (std::size_t m = 0; m <= nmax; ++m) {
                out[j][m] += w * f[l][m];
            }
        }
    }
    return out;
}

Table normal_s1(const Normal &d, const Rational &lambda, std::size_t nmax, std::size_t depth)
{
    const auto inner = normal_inner(depth, nmax, 0);
    const Triangle s1 = triangle_by_recurrence(Family::s1, Rational(0), nmax);
    const Triangle s2 = triangle_by_recurrence(Family::s2, Rational(0), depth, nmax);
    const Rational ratio = d.sigma2 / (d.mu * d.mu);
    const Rational scale = d.mu / d.sigma2;
    return make_table(nmax, [&](long n, long k) {
        PartialSum s(depth);
        for (long m = 0; m <= n; ++m) {
            const Rational &outer = at(s1, n, m);
            if (outer.is_zero()) {
                continue;
            }
            const Rational w = outer * Rational(2).pow(m) * ratio.pow(m);
            for (long j = k; j <= static_cast<long>(depth); ++j) {
                const Rational &in = inner[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
                if (in.is_zero() || at(s2, j, k).is_zero()) {
                    continue;
                }
                s.add(static_cast<std::size_t>(j),
                      w * lambda.pow(j - k) * scale.pow(j) * at(s2, j, k) * in / factorial(j));
            }
        }
        return finish(s, static_cast<std::size_t>(n));
    });
}

std::vector<ClosedFormValue> normal_log(const Normal &d, const Rational &lambda, std::size_t nmax, std::size_t depth)
{
    const auto inner = normal_inner(depth, nmax, 1);
    const Triangle s1 = triangle_by_recurrence(Family::s1, Rational(0), nmax);
    const Rational ratio = d.sigma2 / (d.mu * d.mu);
    const Rational scale = d.mu / d.sigma2;
    std::vector<ClosedFormValue> out{exact_value(Rational(0))};
    for (long n = 1; n <= static_cast<long>(nmax); ++n) {
        PartialSum s(depth);
        for (long m = 0; m <= n; ++m) {
            const Rational &outer = at(s1, n, m);
            if (outer.is_zero()) {
                continue;
            }
            const Rational w = outer * Rational(2).pow(m) * ratio.pow(m);
            for (long j = 1; j <= static_cast<long>(depth); ++j) {
                const Rational &in = inner[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
                if (in.is_zero()) {
                    continue;
                }
                s.add(static_cast<std::size_t>(j), w * lambda.pow(j - 1) * scale.pow(j) * in / factorial(j));
            }
        }
        out.push_back(finish(s, static_cast<std::size_t>(n)));
    }
    return out;
}

// sum_{m=k}^{n} ((1-p)/p)^m B_{m,k}(<r>_1, <r>_2, ...) S2_lambda(n,m)
Table negbinomial_s2_finite(const NegBinomial &d, const Rational &lambda, std::size_t nmax)
{
    const Triangle s2l = triangle_by_recurrence(Family::s2_deg, lambda, nmax);
    std::vector<Rational> rising_r;
    for (long i = 1; i <= static_cast<long>(nmax); ++i) {
        rising_r.push_back(rising(Rational(d.r), i));
    }
    const Triangle bell = partial_bell_triangle(rising_r, nmax);
    const Rational a = (Rational(1) - d.p) / d.p;
    return make_table(nmax, [&](long n, long k) {
        Rational total(0);
        for (long m = k; m <= n; ++m) {
            total += a.pow(m) * at(bell, m, k) * at(s2l, n, m);
        }
        return exact_value(total);
    });
}

// B_{n,k}(l_1, l_2, ...) with l_n the EGF coefficients of
// log_lambda(1 + a(1 - (1+t)^{-1/r})), a = p/(1-p):
//   l_n = sum_{i=1}^{n} (lambda-1)_{i-1}/i! a^i sum_{j<=i} C(i,j) (-1)^j (-j/r)_n
Table negbinomial_s1_finite(const NegBinomial &d, const Rational &lambda, std::size_t nmax)
{
    const Rational a = d.p / (Rational(1) - d.p);
    std::vector<Rational> coeffs;
    for (long n = 1; n <= static_cast<long>(nmax); ++n) {
        Rational total(0);
        for (long i = 1; i <= n; ++i) {
            Rational inner(0);
            for (long j = 0; j <= i; ++j) {
                inner += sign(j) * binomial(i, j) * falling(Rational(-j, d.r), n);
            }
            total += falling(lambda - Rational(1), i - 1) / factorial(i) * a.pow(i) * inner;
        }
        coeffs.push_back(total);
    }
    const Triangle bell = partial_bell_triangle(coeffs, nmax);
    return make_table(nmax, [&](long n, long k) { return exact_value(at(bell, n, k)); });
}

Table negbinomial_s2(const NegBinomial &d, const Rational &lambda, std::size_t nmax, std::size_t depth)
{
    // sum_j (p-1)^j (j)_{n,lambda}/j! sum_m (-r)^m S1(j,m) sum_{l<=k} S2(m,l) (p^r-1)^{k-l} p^{rl}/(k-l)!
    const Triangle s1 = triangle_by_recurrence(Family::s1, Rational(0), depth);
    const Triangle s2 = triangle_by_recurrence(Family::s2, Rational(0), depth, nmax);
    const Rational pr = d.p.pow(d.r);
    const Rational minus_r(-d.r);
    std::vector<std::vector<Rational>> v(nmax + 1, std::vector<Rational>(depth + 1, Rational(0)));
    for (long k = 0; k <= static_cast<long>(nmax); ++k) {
        for (long m = 0; m <= static_cast<long>(depth); ++m) {
            Rational acc(0);
            for (long l = 0; l <= std::min(m, k); ++l) {
                if (!at(s2, m, l).is_zero()) {
                    acc += at(s2, m, l) * (pr - Rational(1)).pow(k - l) * pr.pow(l) / factorial(k - l);
                }
            }
            v[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)] = acc * minus_r.pow(m);
        }
    }
    std::vector<std::vector<Rational>> w(nmax + 1, std::vector<Rational>(depth + 1, Rational(0)));
    for (std::size_t k = 0; k <= nmax; ++k) {
        for (long j = 0; j <= static_cast<long>(depth); ++j) {
            Rational acc(0);
            for (long m = 0; m <= j; ++m) {
                const Rational &vk = v[k][static_cast<std::size_t>(m)];
                if (!vk.is_zero()) {
                    acc += at(s1, j, m) * vk;
                }
            }
            w[k][static_cast<std::size_t>(j)] = acc;
        }
    }
    const Rational q = d.p - Rational(1);
    return make_table(nmax, [&](long n, long k) {
        PartialSum s(depth);
        for (long j = 0; j <= static_cast<long>(depth); ++j) {
            const Rational &wk = w[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            if (wk.is_zero()) {
                continue;
            }
            s.add(static_cast<std::size_t>(j),
                  q.pow(j) * deg_factorial(Rational(j), n, lambda, FactorialKind::falling) / factorial(j) * wk);
        }
        ClosedFormValue out =
            finish_numeric(s.total.to_high_precision(), s.early.to_high_precision(), depth);
        return out;
    });
}

Table negbinomial_s1(const NegBinomial &d, const Rational &lambda, std::size_t nmax, std::size_t depth)
{
    // sum_{l<=k} c_l/(k-l)! A^{lambda l} (log_lambda A)^{k-l}, A = 1/(1-p),
    // c_l = sum_{m>=l} (-p)^m (-m/r)_n S1_lambda(m,l)/m!
    const Triangle s1l = triangle_by_recurrence(Family::s1_deg, lambda, depth, nmax);
    const Rational a = (Rational(1) - d.p).inverse();
    const HighPrecision log_a = boost::multiprecision::log(a.to_high_precision());
    const HighPrecision lam = lambda.to_high_precision();
    const HighPrecision a_lambda = boost::multiprecision::exp(lam * log_a);
    const HighPrecision log_lambda_a = lambda.is_zero() ? log_a : (a_lambda - 1) / lam;
    const Rational minus_p = -d.p;
    return make_table(nmax, [&](long n, long k) {
        HighPrecision total = 0;
        HighPrecision early = 0;
        for (long l = 0; l <= k; ++l) {
            PartialSum c(depth);
            for (long m = l; m <= static_cast<long>(depth); ++m) {
                const Rational &s = at(s1l, m, l);
                if (s.is_zero()) {
                    continue;
                }
                c.add(static_cast<std::size_t>(m),
                      minus_p.pow(m) * falling(Rational(-m, d.r), n) * s / factorial(m));
            }
            const HighPrecision weight = boost::multiprecision::pow(a_lambda, l)
                                         * boost::multiprecision::pow(log_lambda_a, k - l)
                                         / factorial(k - l).to_high_precision();
            total += c.total.to_high_precision() * weight;
            early += c.early.to_high_precision() * weight;
        }
        return finish_numeric(total, early, depth);
    });
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void unsupported(const RandomVariable &rv, const char *what)
{
    throw std::invalid_argument(std::string("no closed form for ") + what + " of " + rv_name(rv));
}

Table s2_table(const RandomVariable &rv, const Rational &lambda, std::size_t nmax, std::size_t)
{
    const auto finite = [&](std::size_t rows, auto entry) {
        const Tables t(lambda, rows);
        return make_table(nmax, [&](long n, long k) { return exact_value(entry(t, n, k)); });
    };
    return std::visit(
        overloaded{
            [&](const Bernoulli &d) {
                return finite(nmax, [&](const Tables &t, long n, long k) { return d.p.pow(k) * at(t.s2l, n, k); });
            },
            [&](const Binomial &d) {
                const Rational m(d.m);
                return finite(nmax, [&](const Tables &t, long n, long k) {
                    Rational total(0);
                    for (long j = k; j <= n; ++j) {
                        for (long i = j; i <= n; ++i) {
                            total += m.pow(j) * d.p.pow(i) * at(t.s2, j, k) * at(t.s1, i, j) * at(t.s2l, n, i);
                        }
                    }
                    return total;
                });
            },
            [&](const Poisson &d) {
                return finite(nmax, [&](const Tables &t, long n, long k) {
                    Rational total(0);
                    for (long j = k; j <= n; ++j) {
                        total += d.alpha.pow(j) * at(t.s2, j, k) * at(t.s2l, n, j);
                    }
                    return total;
                });
            },
            [&](const Exponential &d) {
                return finite(nmax, [&](const Tables &t, long n, long k) {
                    Rational total(0);
                    for (long j = k; j <= n; ++j) {
                        total += binomial(j, k) * falling(Rational(j - 1), j - k) * d.alpha.pow(-j)
                                 * lambda.pow(n - j) * at(t.s1, n, j);
                    }
                    return total;
                });
            },
            [&](const Gamma &d) {
                return finite(nmax, [&](const Tables &t, long n, long k) {
                    Rational total(0);
                    for (long l = 0; l <= n; ++l) {
                        for (long j = 0; j <= k; ++j) {
                            total += sign(k - j) / factorial(k) * binomial(k, j)
                                     * falling(d.alpha * Rational(j) + Rational(l - 1), l) * d.beta.pow(-l)
                                     * lambda.pow(n - l) * at(t.s1, n, l);
                        }
                    }
                    return total;
                });
            },
            [&](const Geometric &d) {
                const Rational u = (Rational(1) - d.p).inverse();
                std::vector<Series> h;
                for (long j = 0; j <= static_cast<long>(nmax); ++j) {
                    h.push_back(frobenius_euler(lambda, j, u, nmax));
                }
                return make_table(nmax, [&](long n, long k) {
                    Rational total(0);
                    for (long j = 0; j <= k; ++j) {
                        total += binomial(k, j) * sign(j) * h[static_cast<std::size_t>(j)].egf(static_cast<std::size_t>(n));
                    }
                    return exact_value(total * (d.p - Rational(1)).pow(-k) / factorial(k));
                });
            },
            [&](const Normal &d) {
                const Rational half_var = d.sigma2 / Rational(2);
                return finite(nmax, [&](const Tables &t, long n, long k) {
                    Rational total(0);
                    for (long m = k; m <= n; ++m) {
                        for (long j = k; j <= m; ++j) {
                            const Rational c = binomial(j, m - j);
                            if (c.is_zero()) {
                                continue;
                            }
                            total += factorial(m) / factorial(j) * c * d.mu.pow(2 * j - m) * half_var.pow(m - j)
                                     * lambda.pow(n - m) * at(t.s2, j, k) * at(t.s1, n, m);
                        }
                    }
                    return total;
                });
            },
            [&](const NegBinomial &d) { return negbinomial_s2_finite(d, lambda, nmax); },
            [&](const Uniform01 &) {
                return finite(2 * nmax, [&](const Tables &t, long n, long k) {
                    Rational total(0);
                    for (long m = 0; m <= n; ++m) {
                        for (long j = 0; j <= k; ++j) {
                            total += binomial(k, j) / binomial(m + j, j) * sign(k - j) * lambda.pow(n - m)
                                     * at(t.s2, m + j, j) * at(t.s1, n, m);
                        }
                    }
                    return total / factorial(k);
                });
            },
            [&](const PointMass &) -> Table { unsupported(rv, "S2"); },
            [&](const Custom &) -> Table { unsupported(rv, "S2"); },
        },
        rv);
}

Table s1_table(const RandomVariable &rv, const Rational &lambda, std::size_t nmax, std::size_t depth)
{
    const auto finite = [&](auto entry) {
        const Tables t(lambda, nmax);
        return make_table(nmax, [&](long n, long k) { return exact_value(entry(t, n, k)); });
    };
    return std::visit(
        overloaded{
            [&](const Bernoulli &d) {
                return finite([&](const Tables &t, long n, long k) { return d.p.pow(-n) * at(t.s1l, n, k); });
            },
            [&](const Binomial &d) {
                const Rational m(d.m);
                return finite([&](const Tables &t, long n, long k) {
                    Rational total(0);
                    for (long j = k; j <= n; ++j) {
                        for (long i = j; i <= n; ++i) {
                            total += d.p.pow(-j) * m.pow(-i) * at(t.s2, i, j) * at(t.s1, n, i) * at(t.s1l, j, k);
                        }
                    }
                    return total;
                });
            },
            [&](const Poisson &d) {
                return finite([&](const Tables &t, long n, long k) {
                    Rational total(0);
                    for (long j = k; j <= n; ++j) {
                        total += d.alpha.pow(-j) * at(t.s1l, j, k) * at(t.s1, n, j);
                    }
                    return total;
                });
            },
            [&](const Exponential &d) {
                return finite([&](const Tables &t, long n, long k) {
                    Rational total(0);
                    for (long j = k; j <= n; ++j) {
                        total += sign(n - j) * at(t.lah, n, j) * d.alpha.pow(j) * lambda.pow(j - k) * at(t.s2, j, k);
                    }
                    return total;
                });
            },
            [&](const Gamma &d) { return gamma_s1(d, lambda, nmax, depth); },
            [&](const Geometric &d) {
                return finite([&](const Tables &t, long n, long k) {
                    Rational total(0);
                    for (long j = k; j <= n; ++j) {
                        total += at(t.lah, n, j) * d.p.pow(j) * (d.p - Rational(1)).pow(n - j) * at(t.s1l, j, k);
                    }
                    return total;
                });
            },
            [&](const Normal &d) { return normal_s1(d, lambda, nmax, depth); },
            [&](const NegBinomial &d) { return negbinomial_s1_finite(d, lambda, nmax); },
            [&](const Uniform01 &) {
                return make_table(nmax, [&](long n, long k) {
                    return exact_value(uniform_s1(lambda, static_cast<std::size_t>(n), static_cast<std::size_t>(k)));
                });
            },
            [&](const PointMass &) -> Table { unsupported(rv, "S1"); },
            [&](const Custom &) -> Table { unsupported(rv, "S1"); },
        },
        rv);
}

std::vector<ClosedFormValue> log_row(const RandomVariable &rv, const Rational &lambda, std::size_t nmax,
                                     std::size_t depth)
{
    if (const auto *d = std::get_if<Normal>(&rv)) {
        return normal_log(*d, lambda, nmax, depth);
    }
    std::vector<ClosedFormValue> out;
    if (std::holds_alternative<Uniform01>(rv)) {
        for (std::size_t n = 0; n <= nmax; ++n) {
            out.push_back(exact_value(uniform_log_coefficient(lambda, n)));
        }
        return out;
    }
    const Series s = closed_form_log_series(rv, lambda, nmax);
    for (std::size_t n = 0; n <= nmax; ++n) {
        out.push_back(exact_value(s.egf(n)));
    }
    return out;
}

// EGF coefficients of A_2(t)^n and ((e^t - 1)/t)^k: the multinomial sums over
// products of A_{2,j} and of 1/(l+1).
Series a2_power(std::size_t n, std::size_t order)
{
    return pow(bernoulli_pade_a2(order), Rational(static_cast<long>(n)));
}

Series divided_difference_power(std::size_t k, std::size_t order)
{
    const Series e = exp(Series::variable(order + 1)) - Rational(1);
    return pow(e.divided_by_t(), Rational(static_cast<long>(k)));
}

} // namespace

std::string format_decimal(const HighPrecision &x, int significant_digits)
{
    std::ostringstream os;
    os.precision(significant_digits);
    os << x;
    return os.str();
}

std::string ClosedFormValue::str() const
{
    return exact ? value.str() : format_decimal(numeric, 30);
}

bool has_closed_form(const RandomVariable &rv, ClosedFormKind kind)
{
    (void)kind;
    return !std::holds_alternative<PointMass>(rv) && !std::holds_alternative<Custom>(rv);
}

std::vector<std::vector<ClosedFormValue>> closed_form_table(const RandomVariable &rv, const Rational &lambda,
                                                            ClosedFormKind kind, std::size_t nmax, std::size_t depth)
{
    validate(rv);
    if (!has_closed_form(rv, kind)) {
        unsupported(rv, kind == ClosedFormKind::log ? "log" : kind == ClosedFormKind::s1 ? "S1" : "S2");
    }
    if (depth < 4) {
        throw std::invalid_argument("truncation depth must be at least 4");
    }
    switch (kind) {
        case ClosedFormKind::s2:
            return s2_table(rv, lambda, nmax, depth);
        case ClosedFormKind::s1:
            return s1_table(rv, lambda, nmax, depth);
        case ClosedFormKind::log: {
            Table t;
            for (ClosedFormValue &v : log_row(rv, lambda, nmax, depth)) {
                t.push_back({std::move(v)});
            }
            return t;
        }
    }
    throw std::invalid_argument("unknown closed-form kind");
}

ClosedFormValue closed_form(const RandomVariable &rv, const Rational &lambda, ClosedFormKind kind, std::size_t n,
                            std::size_t k, std::size_t depth)
{
    if (kind != ClosedFormKind::log && k > n) {
        return exact_value(Rational(0));
    }
    const Table t = closed_form_table(rv, lambda, kind, n, depth);
    return kind == ClosedFormKind::log ? t[n][0] : t[n][k];
}

std::vector<std::vector<ClosedFormValue>> negbinomial_series_table(const NegBinomial &rv, const Rational &lambda,
                                                                   ClosedFormKind kind, std::size_t nmax,
                                                                   std::size_t depth)
{
    validate(rv);
    if (depth < 4) {
        throw std::invalid_argument("closed form depth must be at least 4");
    }
    switch (kind) {
    case ClosedFormKind::s2:
        return negbinomial_s2(rv, lambda, nmax, depth);
    case ClosedFormKind::s1:
        return negbinomial_s1(rv, lambda, nmax, depth);
    case ClosedFormKind::log:
        break;
    }
    throw std::invalid_argument("negbinomial_series_table covers s2 and s1 only");
}

Series closed_form_log_series(const RandomVariable &rv, const Rational &lambda, std::size_t order)
{
    validate(rv);
    const Series t = Series::variable(order);
    const Series one = Series::constant(order, Rational(1));
    const Series u = std::visit(
        overloaded{
            [&](const Bernoulli &d) { return one + t * d.p.inverse(); },
            [&](const Binomial &d) {
                return one + (pow(one + t, Rational(1, d.m)) - Rational(1)) * d.p.inverse();
            },
            [&](const Poisson &d) { return one + log1p(t) * d.alpha.inverse(); },
            [&](const Exponential &d) { return exp(t / (one + t) * d.alpha); },
            [&](const Gamma &d) { return exp((one - pow(one + t, -d.alpha.inverse())) * d.beta); },
            [&](const Geometric &d) { return (one + t) / (one + t * (Rational(1) - d.p)); },
            [&](const NegBinomial &d) {
                return (one - pow(one + t, Rational(-1, d.r)) * d.p) * (Rational(1) - d.p).inverse();
            },
            [&](const auto &) -> Series { unsupported(rv, "an explicit logarithm"); },
        },
        rv);
    return deg_log_of(u, lambda);
}

Rational uniform_s1(const Rational &lambda, std::size_t n, std::size_t k)
{
    if (k > n) {
        return Rational(0);
    }
    if (k == 0) {
        return n == 0 ? Rational(1) : Rational(0);
    }
    const long nl = static_cast<long>(n);
    const long kl = static_cast<long>(k);
    const Series a = a2_power(n, n);
    const Series q = divided_difference_power(k, n);
    Rational total(0);
    for (long m = 0; m <= nl - kl; ++m) {
        total += Rational(nl - m) * binomial(nl - kl, m) * a.egf(static_cast<std::size_t>(m))
                 * q.egf(static_cast<std::size_t>(nl - kl - m)) * lambda.pow(nl - kl - m);
    }
    return total * Rational(2).pow(nl) / Rational(nl) * binomial(nl, kl);
}

Rational uniform_s1_classical(std::size_t n, std::size_t k)
{
    if (k > n) {
        return Rational(0);
    }
    if (k == 0) {
        return n == 0 ? Rational(1) : Rational(0);
    }
    const long nl = static_cast<long>(n);
    const long kl = static_cast<long>(k);
    return Rational(kl) * Rational(2).pow(nl) / Rational(nl) * binomial(nl, kl)
           * a2_power(n, n).egf(n - k);
}

Rational uniform_log_coefficient(const Rational &lambda, std::size_t n)
{
    if (n == 0) {
        return Rational(0);
    }
    const long nl = static_cast<long>(n);
    const Series a = a2_power(n, n);
    Rational total(0);
    for (long m = 0; m <= nl - 1; ++m) {
        total += binomial(nl - 1, m) * a.egf(static_cast<std::size_t>(m)) * lambda.pow(nl - m - 1);
    }
    return total * Rational(2).pow(nl);
}

Rational uniform_lagrange_coefficient(const Rational &lambda, std::size_t n, std::size_t k)
{
    if (n < k + 1) {
        throw std::invalid_argument("uniform_lagrange_coefficient needs n >= k + 1");
    }
    const std::size_t order = n;
    const Series t = Series::variable(order + 2);
    // t^2/(e^t - 1 - t) and (e^{lambda t} - 1)/(lambda t)
    const Series tail = (exp(t) - Rational(1) - t).divided_by_t().divided_by_t();
    const Series g1 = Series::constant(order, Rational(1)) / tail;
    std::vector<Rational> coeffs(order + 1);
    for (std::size_t j = 0; j <= order; ++j) {
        coeffs[j] = lambda.pow(static_cast<long>(j)) / factorial(static_cast<long>(j) + 1);
    }
    const Series e_lambda(order, coeffs);
    const Series g2 = g1 * e_lambda;
    const Series lhs_power = pow(g1, Rational(static_cast<long>(n - k)));
    const Series d = pow(g2, Rational(static_cast<long>(k))).derivative();
    const Series prod = lhs_power.truncated(order - 1) * d;
    return prod[n - k - 1] / (Rational(static_cast<long>(n - k)) * factorial(static_cast<long>(k)));
}

} // namespace probstir
