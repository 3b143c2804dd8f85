#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "polybern/congruence.hpp"
#include "polybern/poly_bernoulli.hpp"
#include "polybern/series.hpp"

namespace polybern {

// All integers go out as decimal strings: values outgrow 64 bits quickly.
using Json = nlohmann::ordered_json;

inline Json json_of(const Rational& v) {
    return Json{{"num", to_decimal(v.numerator())}, {"den", to_decimal(v.denominator())}};
}

inline Json json_of(const Truncation& t) {
    return Json{{"per_var", t.per_var}, {"total", t.total}};
}

inline Json json_of(const Series& s) {
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms())
        terms.push_back(Json{{"exp", e},
                             {"num", to_decimal(c.numerator())},
                             {"den", to_decimal(c.denominator())}});
    return Json{{"vars", s.nvars()}, {"trunc", json_of(s.truncation())}, {"terms", terms}};
}

inline Json json_of(const GFSpec& spec, bool star) {
    return Json{{"r", spec.r}, {"weights", spec.weights}, {"d", spec.d}, {"star", star}};
}

inline Json json_of(const PBTable& t) {
    Json entries = Json::array();
    for (const auto& v : t.entries)
        entries.push_back(Json{{"m", v.indices},
                               {"num", to_decimal(v.value.numerator())},
                               {"den", to_decimal(v.value.denominator())}});
    return Json{{"spec", json_of(t.spec, t.star)}, {"caps", t.caps}, {"entries", entries}};
}

/// CSV with one row per table entry: m_1,..,m_r,value_num,value_den,
/// rows in lexicographic index order.
inline void write_csv(std::ostream& os, const PBTable& t) {
    for (int j = 1; j <= t.spec.r; ++j) os << "m_" << j << ",";
    os << "value_num,value_den\n";
    for (const auto& v : t.entries) {
        for (int x : v.indices) os << x << ",";
        os << to_decimal(v.value.numerator()) << "," << to_decimal(v.value.denominator())
           << "\n";
    }
}

inline Json json_of(const CongruenceFailure& f) {
    return Json{{"indices", f.indices}, {"lhs", to_decimal(f.lhs)}, {"rhs", to_decimal(f.rhs)}};
}

inline Json json_of(const CongruenceReport& r) {
    Json params = Json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    Json failures = Json::array();
    for (const auto& f : r.failures) failures.push_back(json_of(f));
    return Json{{"statement", r.statement},
                {"params", params},
                {"cells", r.cells},
                {"failures", failures},
                {"elapsed_ms", r.elapsed_ms}};
}

inline Json json_of(const FinerPeriodReport& r) {
    Json cands = Json::array();
    for (const auto& c : r.candidates) cands.push_back(Json{{"q", c.q}, {"holds", c.holds}});
    // no timing field: rerunning the same search must reproduce the file
    return Json{{"statement", "remark2.6-finer-period"},
                {"params",
                 Json{{"p", r.p},
                      {"N", r.N},
                      {"k1", r.k1},
                      {"k2", r.k2},
                      {"range", Json::array({r.lo, r.hi})}}},
                {"proven_period", r.proven_period},
                {"candidates", cands},
                {"minimal_working", r.minimal_working},
                {"conjectural", r.conjectural}};
}

}  // namespace polybern
