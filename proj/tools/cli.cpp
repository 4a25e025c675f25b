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


#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include <probstir/monte_carlo.hpp>
#include <probstir/probabilistic.hpp>
#include <probstir/verify.hpp>

#include "serialize.hpp"

namespace probstir
{

namespace
{

const Rational &first_lambda(const CliConfig &c)
{
    static const Rational zero(0);
    return c.lambdas.empty() ? zero : c.lambdas.front();
}

std::string render(const Json &json)
{
    return render_json(json);
}

template <class T>
std::string render(const T &value, OutputFormat format)
{
    return format == OutputFormat::json ? render(to_json(value)) : to_csv(value);
}

std::size_t default_order()
{
    const char *env = std::getenv("PROBSTIR_ORDER");
    if (env == nullptr || *env == '\0')
        return 32;
    const std::string text(env);
    if (text.find_first_not_of("0123456789") != std::string::npos || text.size() > 6)
        throw std::invalid_argument("PROBSTIR_ORDER must be a non-negative integer, got '" + text + "'");
    return std::stoul(text);
}

NumberFamily number_family(const std::string &kind)
{
    if (kind == "daehee")
        return NumberFamily::daehee;
    if (kind == "cauchy")
        return NumberFamily::cauchy;
    return NumberFamily::bernoulli;
}

} // namespace

CommandResult run_table(const CliConfig &config)
{
    if (!config.family)
        throw std::invalid_argument("table: --family is required");
    const Family family = *config.family;
    const Rational &lambda = first_lambda(config);
    if (is_probabilistic(family)) {
        if (!config.rv)
            throw std::invalid_argument("table: family " + std::string(family_name(family)) + " needs --rv");
        return {exit_ok, render(prob_triangle(*config.rv, lambda, family, config.nmax), config.format)};
    }
    if (config.rv)
        throw std::invalid_argument("table: --rv only applies to the prob-* families");
    return {exit_ok, render(triangle(family, lambda, config.nmax), config.format)};
}

CommandResult run_series(const CliConfig &config)
{
    const std::string &kind = config.series_kind;
    if (kind != "prob-log" && kind != "daehee" && kind != "cauchy" && kind != "bernoulli")
        throw std::invalid_argument("series: unknown kind '" + kind + "'");
    SeriesOutput out;
    out.kind = kind;
    out.lambda = first_lambda(config);
    out.gamma = config.gamma;
    out.x = config.x;
    if (config.rv) {
        validate(*config.rv);
        out.rv = rv_name(*config.rv);
        out.params = rv_params(*config.rv);
        out.series = kind == "prob-log" ? prob_log(*config.rv, out.lambda, config.order)
                                        : prob_order_numbers(*config.rv, out.lambda, config.gamma, config.x,
                                                             number_family(kind), config.order);
    } else {
        out.series = kind == "prob-log"
                         ? deg_log(out.lambda, config.order)
                         : order_numbers(out.lambda, config.gamma, config.x, number_family(kind), config.order);
    }
    return {exit_ok, render(out, config.format)};
}

CommandResult run_verify(const CliConfig &config)
{
    if (config.all_builtin == config.rv.has_value())
        throw std::invalid_argument("verify: give exactly one of --rv and --all-builtin");
    const std::vector<RandomVariable> rvs = config.all_builtin ? builtin_random_variables()
                                                               : std::vector<RandomVariable>{*config.rv};
    const std::vector<Rational> lambdas = config.lambdas.empty() ? builtin_lambdas() : config.lambdas;
    SuiteOptions options;
    options.gammas = config.gammas;
    options.depth = config.depth;

    // Preconditions are checked up front so that nothing runs on a bad grid.
    for (const RandomVariable &rv : rvs) {
        validate(rv);
        if (raw_moment(rv, 1).is_zero())
            throw std::domain_error("verify: " + describe(rv) + " has E[Y] = 0");
    }

    struct Task {
        const RandomVariable *rv;
        Rational lambda;
    };
    std::vector<Task> tasks;
    for (const RandomVariable &rv : rvs)
        for (const Rational &lambda : lambdas)
            tasks.push_back({&rv, lambda});

    std::vector<VerificationReport> parts(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    auto run = [&](std::size_t i) {
        try {
            parts[i] = identity_suite(*tasks[i].rv, tasks[i].lambda, config.nmax, options);
            parts[i].append(probabilistic_orthogonality(*tasks[i].rv, tasks[i].lambda, config.nmax));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(tasks.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            run(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < tasks.size(); i += workers)
                    run(i);
            });
        for (auto &t : pool)
            t.join();
    }
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);

    VerificationReport report{"verify", {}};
    for (const auto &part : parts)
        report.append(part);
    report.append(limit_suite(config.nmax));
    const int code = report.count(Status::fail) == 0 ? exit_ok : exit_check_failed;
    return {code, render(report, config.format)};
}

CommandResult run_mc(const CliConfig &config)
{
    if (!config.rv)
        throw std::invalid_argument("mc: --rv is required");
    MCOutput out;
    out.rv = rv_name(*config.rv);
    out.params = rv_params(*config.rv);
    out.lambda = first_lambda(config);
    out.n = config.n;
    out.j = config.j;
    out.estimate = mc_check(*config.rv, out.lambda, config.n, config.j, config.samples, config.seed, config.workers);
    return {out.estimate.within_band() ? exit_ok : exit_check_failed, render(out, config.format)};
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact probabilistic degenerate Stirling-type numbers and their identities", "probstir"};
    app.require_subcommand(1);

    std::string family, kind, rv_text, gamma_text = "1", x_text = "0", format = "json", output;
    std::vector<std::string> lambda_texts;
    std::optional<std::size_t> nmax, order;
    CliConfig config;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--lambda", lambda_texts, "Degeneracy parameter(s), rational text");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--output,-o", output, "Write to a file instead of standard output");
    };
    auto add_rv = [&](CLI::App *sub) {
        sub->add_option("--rv", rv_text, "Random variable, e.g. poisson:alpha=2 or custom:moments=1,2,5");
    };

    CLI::App *table = app.add_subcommand("table", "Print a triangle of numbers");
    table->add_option("--family", family, "s1 s2 deg-s1 deg-s2 lah h g prob-s2 prob-s1 prob-h prob-g")->required();
    table->add_option("--nmax", nmax, "Largest n");
    add_rv(table);
    add_common(table);

    CLI::App *series = app.add_subcommand("series", "Print EGF coefficients of a series");
    series->add_option("--kind", kind, "prob-log daehee cauchy bernoulli")
        ->required()
        ->check(CLI::IsMember({"prob-log", "daehee", "cauchy", "bernoulli"}));
    series->add_option("--order", order, "Truncation order");
    series->add_option("--gamma", gamma_text, "Order gamma");
    series->add_option("--x", x_text, "Argument x (bernoulli)");
    add_rv(series);
    add_common(series);

    CLI::App *verify = app.add_subcommand("verify", "Run the identity suites");
    verify->add_option("--nmax", nmax, "Largest n (default 10)");
    verify->add_option("--depth", config.depth, "Truncation depth for unbounded sums")->check(CLI::Range(4, 100000));
    verify->add_option("--gammas", config.gammas, "Orders gamma")->delimiter(',');
    verify->add_flag("--all-builtin", config.all_builtin, "Use the built-in distribution grid");
    verify->add_option("--workers", config.workers, "Worker threads");
    add_rv(verify);
    add_common(verify);

    CLI::App *mc = app.add_subcommand("mc", "Monte Carlo check of E[(S_j)_{n,lambda}]");
    mc->add_option("--n", config.n, "Factorial length n");
    mc->add_option("--j", config.j, "Number of summands j");
    mc->add_option("--samples", config.samples, "Sample count");
    mc->add_option("--seed", config.seed, "Seed");
    mc->add_option("--workers", config.workers, "Worker threads");
    add_rv(mc);
    add_common(mc);

    std::vector<std::string> argv_storage{"probstir"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &s : argv_storage)
        argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return exit_parse_error;
    }

    try {
        if (table->parsed()) {
            config.command = Command::table;
            config.family = parse_family(family);
        } else if (series->parsed()) {
            config.command = Command::series;
            config.series_kind = kind;
            config.gamma = Rational::parse(gamma_text);
            config.x = Rational::parse(x_text);
        } else if (verify->parsed()) {
            config.command = Command::verify;
        } else {
            config.command = Command::mc;
        }
        for (const auto &text : lambda_texts)
            config.lambdas.push_back(Rational::parse(text));
        if (config.command != Command::verify && config.lambdas.size() > 1)
            throw std::invalid_argument("--lambda takes a single value here");
        if (!rv_text.empty())
            config.rv = parse_random_variable(rv_text);
        config.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
        config.output = output;
        if (config.command == Command::verify)
            config.nmax = nmax.value_or(10);
        else
            config.nmax = nmax ? *nmax : default_order();
        config.order = order ? *order : (config.command == Command::series ? default_order() : config.order);
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return exit_domain_error;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return exit_parse_error;
    }

    CommandResult result;
    try {
        switch (config.command) {
        case Command::table:
            result = run_table(config);
            break;
        case Command::series:
            result = run_series(config);
            break;
        case Command::verify:
            result = run_verify(config);
            break;
        case Command::mc:
            result = run_mc(config);
            break;
        }
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return exit_domain_error;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return exit_parse_error;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_domain_error;
    }

    if (config.output.empty()) {
        out << result.text;
    } else {
        std::ofstream file(config.output, std::ios::binary);
        if (!file || !(file << result.text)) {
            err << "error: cannot write " << config.output << "\n";
            return exit_domain_error;
        }
    }
    return result.exit_code;
}

} // namespace probstir
