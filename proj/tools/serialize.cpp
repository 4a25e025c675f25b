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


#include "serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace probstir
{

namespace
{

Json params_json(const std::vector<std::pair<std::string, std::string>> &params)
{
    Json out = Json::object();
    for (const auto &[k, v] : params)
        out[k] = v;
    return out;
}

bool is_flat(const Json &j)
{
    return std::ranges::none_of(j, [](const Json &e) { return e.is_structured(); });
}

void render(const Json &j, int indent, std::string &out)
{
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    if (j.is_array() && is_flat(j)) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i)
            out += (i ? ", " : "") + j[i].dump();
        out += "]";
        return;
    }
    if (j.is_array()) {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += pad;
            render(j[i], indent + 2, out);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
        return;
    }
    if (j.is_object() && !j.empty()) {
        out += "{\n";
        std::size_t i = 0;
        for (const auto &[key, value] : j.items()) {
            out += pad + Json(key).dump() + ": ";
            render(value, indent + 2, out);
            out += ++i < j.size() ? ",\n" : "\n";
        }
        out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
        return;
    }
    out += j.dump();
}

} // namespace

std::string render_json(const Json &json)
{
    std::string out;
    render(json, 0, out);
    return out + "\n";
}

std::string decimal12(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\n") == std::string_view::npos)
        return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

Json to_json(const Triangle &t)
{
    Json entries = Json::array();
    for (std::size_t n = 0; n <= t.nmax(); ++n)
        for (std::size_t k = 0; k <= n; ++k)
            entries.push_back(Json::array({n, k, t(n, k).str()}));
    return Json{{"family", family_name(t.family())},
                {"rv", t.rv},
                {"params", params_json(t.params)},
                {"lambda", t.lambda().str()},
                {"nmax", t.nmax()},
                {"entries", std::move(entries)}};
}

std::string to_csv(const Triangle &t)
{
    std::string out = "n,k,value\n";
    for (std::size_t n = 0; n <= t.nmax(); ++n)
        for (std::size_t k = 0; k <= n; ++k)
            out += std::to_string(n) + "," + std::to_string(k) + "," + t(n, k).str() + "\n";
    return out;
}

Json to_json(const SeriesOutput &s)
{
    Json coefficients = Json::array();
    for (std::size_t n = 0; n <= s.series.order(); ++n)
        coefficients.push_back(Json::array({n, s.series.egf(n).str()}));
    Json out{{"kind", s.kind}, {"rv", s.rv}, {"params", params_json(s.params)}, {"lambda", s.lambda.str()}};
    if (s.kind != "prob-log")
        out["gamma"] = s.gamma.str();
    if (s.kind == "bernoulli")
        out["x"] = s.x.str();
    out["order"] = s.series.order();
    out["coefficients"] = std::move(coefficients);
    return out;
}

std::string to_csv(const SeriesOutput &s)
{
    std::string out = "n,value\n";
    for (std::size_t n = 0; n <= s.series.order(); ++n)
        out += std::to_string(n) + "," + s.series.egf(n).str() + "\n";
    return out;
}

Json to_json(const VerificationReport &r)
{
    Json records = Json::array();
    for (const auto &rec : r.records) {
        Json failure = nullptr;
        if (rec.first_failure)
            failure = Json::array({(*rec.first_failure)[0], (*rec.first_failure)[1], (*rec.first_failure)[2]});
        records.push_back(Json{{"identity", rec.identity},
                               {"rv", rec.rv},
                               {"lambda", rec.lambda.str()},
                               {"nmax", rec.nmax},
                               {"status", status_name(rec.status)},
                               {"checks", rec.checks},
                               {"first_failure", std::move(failure)},
                               {"lhs", rec.lhs},
                               {"rhs", rec.rhs}});
    }
    return Json{{"suite", r.suite},
                {"passed", r.passed()},
                {"summary",
                 {{"pass", r.count(Status::pass)},
                  {"fail", r.count(Status::fail)},
                  {"inconclusive", r.count(Status::inconclusive)}}},
                {"records", std::move(records)}};
}

std::string to_csv(const VerificationReport &r)
{
    std::string out = "identity,rv,lambda,nmax,status,checks,n,k,j,lhs,rhs\n";
    for (const auto &rec : r.records) {
        std::string where = ",,";
        if (rec.first_failure)
            where = std::to_string((*rec.first_failure)[0]) + "," + std::to_string((*rec.first_failure)[1]) + ","
                    + std::to_string((*rec.first_failure)[2]);
        out += csv_field(rec.identity) + "," + csv_field(rec.rv) + "," + rec.lambda.str() + ","
               + std::to_string(rec.nmax) + "," + std::string(status_name(rec.status)) + ","
               + std::to_string(rec.checks) + "," + where + "," + csv_field(rec.lhs) + "," + csv_field(rec.rhs)
               + "\n";
    }
    return out;
}

Json to_json(const MCOutput &m)
{
    const MCEstimate &e = m.estimate;
    return Json{{"target", e.target},
                {"rv", m.rv},
                {"params", params_json(m.params)},
                {"lambda", m.lambda.str()},
                {"n", m.n},
                {"j", m.j},
                {"samples", e.samples},
                {"seed", e.seed},
                {"estimate", decimal12(e.estimate)},
                {"standard_error", decimal12(e.standard_error)},
                {"exact", e.exact.str()},
                {"exact_decimal", e.exact.decimal(12)},
                {"z", decimal12(e.z)},
                {"within_band", e.within_band()}};
}

std::string to_csv(const MCOutput &m)
{
    const MCEstimate &e = m.estimate;
    return "target,samples,seed,estimate,standard_error,exact,z\n" + csv_field(e.target) + ","
           + std::to_string(e.samples) + "," + std::to_string(e.seed) + "," + decimal12(e.estimate) + ","
           + decimal12(e.standard_error) + "," + e.exact.str() + "," + decimal12(e.z) + "\n";
}

} // namespace probstir
