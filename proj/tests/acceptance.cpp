// Acceptance run: one PASS/FAIL line per acceptance criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <probstir/closed_forms.hpp>
#include <probstir/monte_carlo.hpp>
#include <probstir/probabilistic.hpp>
#include <probstir/verify.hpp>

using namespace probstir;

namespace
{

// Pinned parameters.
constexpr std::size_t suite_nmax = 12;
constexpr std::size_t closed_form_nmax = 10;
constexpr std::size_t closed_form_depth = 200;
constexpr std::size_t mc_samples = 1000000;
constexpr double z_band = 5.0;
constexpr double orthogonality_seconds = 60.0;
constexpr double mc_seconds = 120.0;

const std::vector<Rational> grid_lambdas{Rational(0), Rational(1, 2), Rational(-1, 3)};

int failures = 0;

void report(bool ok, const std::string &name, const std::string &detail)
{
    std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string first_problem(const std::vector<const IdentityRecord *> &records, bool allow_inconclusive)
{
    for (const auto *r : records) {
        if (r->status == Status::pass || (allow_inconclusive && r->status == Status::inconclusive))
            continue;
        std::string where;
        if (r->first_failure)
            where = " at (" + std::to_string((*r->first_failure)[0]) + "," + std::to_string((*r->first_failure)[1])
                    + "," + std::to_string((*r->first_failure)[2]) + ")";
        return "; first problem: " + r->identity + " " + r->rv + " lambda=" + r->lambda.str() + " "
               + std::string(status_name(r->status)) + where + " lhs=" + r->lhs.substr(0, 40)
               + " rhs=" + r->rhs.substr(0, 40);
    }
    return "";
}

// Summarizes the suite records whose identity is in `ids`.
void criterion(const std::string &name, const std::vector<IdentityRecord> &records, const std::set<std::string> &ids,
               std::set<std::string> &claimed, const std::set<std::string> &numeric_ids = {})
{
    std::vector<const IdentityRecord *> mine;
    std::size_t checks = 0, inconclusive = 0;
    for (const auto &r : records) {
        if (!ids.count(r.identity))
            continue;
        mine.push_back(&r);
        checks += r.checks;
        if (r.status == Status::inconclusive)
            ++inconclusive;
    }
    claimed.insert(ids.begin(), ids.end());
    bool ok = !mine.empty();
    for (const auto *r : mine) {
        const bool numeric = numeric_ids.count(r->identity) > 0;
        if (r->status == Status::fail || (r->status == Status::inconclusive && !numeric) || r->checks == 0)
            ok = false;
    }
    std::string detail = std::to_string(mine.size()) + " records, " + std::to_string(checks) + " exact/numeric checks";
    if (inconclusive)
        detail += ", " + std::to_string(inconclusive) + " numeric records inconclusive";
    report(ok, name, detail + first_problem(mine, false));
}

} // namespace

int main()
{
    const std::vector<RandomVariable> rvs = builtin_random_variables();

    // Orthogonality over the acceptance grid, timed on its own.
    {
        const auto t0 = std::chrono::steady_clock::now();
        VerificationReport r{"orthogonality", {}};
        for (const auto &rv : rvs)
            for (const auto &lambda : grid_lambdas)
                r.append(probabilistic_orthogonality(rv, lambda, suite_nmax));
        const double dt = seconds_since(t0);
        std::vector<const IdentityRecord *> all;
        std::size_t checks = 0;
        for (const auto &rec : r.records) {
            all.push_back(&rec);
            checks += rec.checks;
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "%zu rvs x %zu lambdas, n<=%zu, %zu checks, %.1f s (limit %.0f s)", rvs.size(),
                      grid_lambdas.size(), suite_nmax, checks, dt, orthogonality_seconds);
        report(r.passed() && dt < orthogonality_seconds, "orthogonality", buf + first_problem(all, false));
    }

    // Full identity suite over the same grid.
    std::vector<IdentityRecord> records;
    for (const auto &rv : rvs)
        for (const auto &lambda : grid_lambdas) {
            SuiteOptions options;
            options.depth = closed_form_depth;
            const VerificationReport r = identity_suite(rv, lambda, suite_nmax, options);
            records.insert(records.end(), r.records.begin(), r.records.end());
        }

    std::set<std::string> claimed;
    criterion("schlomilch", records, {"schlomilch-s1", "schlomilch-g"}, claimed);
    criterion("first-kind/sum three-way", records, {"s1-three-way", "s2-three-way"}, claimed);
    criterion("heterogeneous multi-way", records,
              {"h-four-way", "g-multi-way", "reflected-moment-expansion", "mgf-moment-expansion"}, claimed);
    criterion("bernoulli/log/daehee/cauchy", records,
              {"bell-of-moments", "bernoulli-from-moments", "bernoulli-from-s2", "log-from-s2", "daehee-from-s1",
               "cauchy-from-s1", "daehee-from-bernoulli", "cauchy-from-bernoulli"},
              claimed);

    // Explicit distribution formulas: every finite form must come back exact and equal.
    {
        std::set<std::string> ids{"closed-form-mean",   "closed-form-s2",     "closed-form-s1",
                                  "closed-form-log",    "closed-form-log-series", "uniform-s1-pade",
                                  "uniform-log-pade",   "uniform-lagrange",   "uniform-s1-classical",
                                  "closed-form-s2-series", "closed-form-s1-series"};
        const std::set<std::string> numeric{"closed-form-s2-series", "closed-form-s1-series"};
        std::size_t non_exact = 0;
        for (const auto &rv : rvs) {
            if (!has_closed_form(rv, ClosedFormKind::s2))
                continue;
            for (const auto &lambda : grid_lambdas)
                for (ClosedFormKind kind : {ClosedFormKind::s2, ClosedFormKind::s1, ClosedFormKind::log}) {
                    if (!has_closed_form(rv, kind))
                        continue;
                    for (const auto &row : closed_form_table(rv, lambda, kind, closed_form_nmax, closed_form_depth))
                        for (const auto &v : row)
                            non_exact += v.exact ? 0 : 1;
                }
        }
        std::vector<const IdentityRecord *> mine;
        bool ok = non_exact == 0;
        std::size_t inconclusive = 0, checks = 0;
        for (const auto &r : records) {
            if (!ids.count(r.identity))
                continue;
            mine.push_back(&r);
            checks += r.checks;
            const bool is_numeric = numeric.count(r.identity) > 0;
            if (r.status == Status::inconclusive)
                ++inconclusive;
            if (r.status == Status::fail || (r.status == Status::inconclusive && !is_numeric))
                ok = false;
        }
        claimed.insert(ids.begin(), ids.end());
        report(ok, "explicit distribution forms",
               std::to_string(mine.size()) + " records, " + std::to_string(checks) + " checks, finite forms exact for n<="
                   + std::to_string(closed_form_nmax) + " (" + std::to_string(non_exact)
                   + " non-exact entries), unbounded sums 1e-9 rel at depth " + std::to_string(closed_form_depth) + ", "
                   + std::to_string(inconclusive) + " inconclusive" + first_problem(mine, true));
    }

    criterion("lagrange/order numbers", records,
              {"lagrange-inversion", "deg-s1-from-bernoulli", "connection-from-order-numbers",
               "heterogeneous-connection", "heterogeneous-factorial-expansion"},
              claimed);

    // Limits: suite reductions plus the deterministic limit suite.
    {
        std::vector<IdentityRecord> limit_records = limit_suite(suite_nmax).records;
        std::set<std::string> ids{"classical-limit", "point-mass-reduction"};
        for (const auto &r : limit_records)
            ids.insert(r.identity);
        limit_records.insert(limit_records.end(), records.begin(), records.end());
        std::set<std::string> ignored;
        criterion("limits", limit_records, ids, ignored);
        claimed.insert({"classical-limit", "point-mass-reduction"});
    }

    criterion("binomial sums", records, {"binomial-sums"}, claimed);

    // Monte Carlo.
    {
        const auto t0 = std::chrono::steady_clock::now();
        const RandomVariable configs[] = {Poisson{Rational(2)},       Bernoulli{Rational(1, 2)},
                                          Exponential{Rational(3, 2)}, Gamma{Rational(3, 2), Rational(2)},
                                          Normal{Rational(1), Rational(2)}, Geometric{Rational(1, 3)}};
        double worst = 0;
        std::string worst_target;
        std::size_t count = 0;
        std::uint64_t config_index = 0;
        for (const auto &rv : configs) {
            ++config_index;
            for (std::size_t n = 1; n <= 4; ++n)
                for (std::size_t j = 1; j <= 3; ++j) {
                    const std::uint64_t seed = 1000 * config_index + 10 * n + j;
                    const MCEstimate e = mc_check(rv, Rational(1, 2), n, j, mc_samples, seed);
                    ++count;
                    if (!(std::abs(e.z) <= worst)) {
                        worst = std::abs(e.z);
                        worst_target = e.target;
                    }
                }
        }
        const double dt = seconds_since(t0);
        char buf[256];
        std::snprintf(buf, sizeof buf, "%zu estimates x %zu samples, max |z| = %.3f (%s), band %.0f, %.1f s (limit %.0f s)",
                      count, mc_samples, worst, worst_target.c_str(), z_band, dt, mc_seconds);
        report(worst <= z_band && dt < mc_seconds, "monte carlo", buf);
    }

    // Negative controls.
    {
        std::mt19937_64 rng(2026);
        std::size_t triangle_trials = 0, triangle_caught = 0, moment_trials = 0, moment_caught = 0;
        for (const auto &rv : rvs) {
            const Rational lambda(1, 2);
            const Triangle t2 = prob_triangle(rv, lambda, Family::prob_s2, 8);
            const Triangle t1 = prob_triangle(rv, lambda, Family::prob_s1, 8);
            for (int trial = 0; trial < 5; ++trial) {
                const std::size_t n = rng() % 9, k = rng() % (n + 1);
                Triangle a = t2, b = t1;
                Triangle &target = trial % 2 == 0 ? a : b;
                target.set(n, k, target(n, k) + Rational(1, 1 + static_cast<long>(rng() % 5)));
                ++triangle_trials;
                if (!check_orthogonality(a, b).passed())
                    ++triangle_caught;
            }
            for (std::size_t index = 2; index <= 4; ++index) {
                SuiteOptions options;
                options.perturb_moment = std::pair{index, Rational(1, static_cast<long>(index) + 2)};
                ++moment_trials;
                if (identity_suite(rv, lambda, 6, options).count(Status::fail) > 0)
                    ++moment_caught;
            }
        }
        report(triangle_caught == triangle_trials && moment_caught == moment_trials, "negative controls",
               std::to_string(triangle_caught) + "/" + std::to_string(triangle_trials)
                   + " corrupted triangles rejected, " + std::to_string(moment_caught) + "/"
                   + std::to_string(moment_trials) + " perturbed moments rejected");
    }

    // Every suite record must belong to some criterion above.
    std::set<std::string> unclaimed;
    for (const auto &r : records)
        if (!claimed.count(r.identity))
            unclaimed.insert(r.identity);
    for (const auto &id : unclaimed)
        std::printf("NOTE  suite identity '%s' is not mapped to any criterion\n", id.c_str());

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
