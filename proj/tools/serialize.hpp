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


#ifndef PROBSTIR_TOOLS_SERIALIZE_HPP
#define PROBSTIR_TOOLS_SERIALIZE_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include <probstir/monte_carlo.hpp>
#include <probstir/series.hpp>
#include <probstir/special_numbers.hpp>
#include <probstir/verify.hpp>

namespace probstir
{

using Json = nlohmann::ordered_json;

// A coefficient list with the parameters it was computed from.
struct SeriesOutput {
    std::string kind;
    std::string rv = "none";
    std::vector<std::pair<std::string, std::string>> params;
    Rational lambda;
    Rational gamma;
    Rational x;
    Series series{0};
};

struct MCOutput {
    MCEstimate estimate;
    std::string rv;
    std::vector<std::pair<std::string, std::string>> params;
    Rational lambda;
    std::size_t n = 0;
    std::size_t j = 0;
};

// Indented JSON with arrays of scalars kept on one line, newline-terminated.
std::string render_json(const Json &json);

// %.12g, with "inf"/"-inf"/"nan" for non-finite values.
std::string decimal12(double v);
// Quotes a CSV field when it holds a comma, quote or newline.
std::string csv_field(std::string_view s);

Json to_json(const Triangle &t);
std::string to_csv(const Triangle &t);
Json to_json(const SeriesOutput &s);
std::string to_csv(const SeriesOutput &s);
Json to_json(const VerificationReport &r);
std::string to_csv(const VerificationReport &r);
Json to_json(const MCOutput &m);
std::string to_csv(const MCOutput &m);

} // namespace probstir

#endif
