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


#ifndef PROBSTIR_TOOLS_CLI_HPP
#define PROBSTIR_TOOLS_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <probstir/random_variable.hpp>
#include <probstir/rational.hpp>
#include <probstir/special_numbers.hpp>

namespace probstir
{

enum class Command { table, series, verify, mc };
enum class OutputFormat { json, csv };

// Exit codes.
constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_parse_error = 2;
constexpr int exit_domain_error = 3;

// Fully parsed command line; every rational is already exact.
struct CliConfig {
    Command command = Command::table;
    std::optional<Family> family;
    std::string series_kind;
    std::optional<RandomVariable> rv;
    bool all_builtin = false;
    // table, series and mc use the first entry; verify runs every entry
    // (the default grid when empty).
    std::vector<Rational> lambdas;
    Rational gamma{1};
    Rational x{0};
    std::size_t nmax = 32;
    std::size_t order = 32;
    std::size_t depth = 200;
    std::vector<long> gammas{-3, -2, -1, 0, 1, 2, 3, 4};
    std::size_t n = 1;
    std::size_t j = 1;
    std::size_t samples = 1000000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    OutputFormat format = OutputFormat::json;
    std::string output;
};

struct CommandResult {
    int exit_code = exit_ok;
    std::string text;
};

// Throw std::invalid_argument (bad configuration) or std::domain_error
// (inputs outside a family's domain); run_cli maps them to exit codes.
CommandResult run_table(const CliConfig &config);
CommandResult run_series(const CliConfig &config);
CommandResult run_verify(const CliConfig &config);
CommandResult run_mc(const CliConfig &config);

// args excludes the program name. The default for --nmax / --order is read from
// PROBSTIR_ORDER (32 when unset).
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace probstir

#endif
