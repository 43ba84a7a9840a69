#pragma once

#include <qmock/mockeis.hpp>
#include <qmock/modforms.hpp>
#include <qmock/padic.hpp>
#include <qmock/qseries.hpp>

#include <json.hpp>

#include <string>

// JSON forms of the wire types. Lattice bookkeeping (den, lead, prec,
// windows) travels as exact 64-bit integers; every arithmetic value
// (coefficients, residues, moduli) travels as an exact decimal string.
namespace qmock {

inline nlohmann::json to_json(const FracSeries& f) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (std::int64_t i = f.lead(); i < f.prec(); ++i) coeffs.push_back(f.coeff(i).to_string());
    return {
        {"den", f.den()},
        {"lead", f.lead()},
        {"prec", f.prec()},
        {"coeffs", std::move(coeffs)},
    };
}

inline FracSeries series_from_json(const nlohmann::json& j) {
    FracSeries f(j.at("den").get<std::int64_t>(), j.at("lead").get<std::int64_t>(),
                 j.at("prec").get<std::int64_t>());
    const auto& coeffs = j.at("coeffs");
    std::int64_t i = f.lead();
    for (const auto& c : coeffs) {
        f.set_coeff(i, Scalar::parse(c.get<std::string>()));
        ++i;
    }
    return f;
}

inline nlohmann::json to_json(const IdentityReport& r) {
    nlohmann::json j{
        {"identity", r.identity},
        {"den", r.den},
        {"compared_range", {{"lo", r.lo}, {"hi", r.hi}}},
    };
    if (r.equal) {
        j["verdict"] = "equal";
    } else {
        j["verdict"] = "mismatch";
        j["mismatch"] = {
            {"index", r.mismatch_index},
            {"exponent", Rational(r.mismatch_index, r.den).to_string()},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
        };
    }
    return j;
}

inline nlohmann::json to_json(const CongruenceReport& r) {
    nlohmann::json j{
        {"check", r.check},
        {"p", r.p},
        {"a", r.a},
        {"b", r.b},
        {"modulus", r.modulus.get_str()},
        {"checked_range", {{"lo", r.lo}, {"hi", r.hi}}},
        {"verdict", r.holds ? "holds" : "fails"},
    };
    if (!r.holds) {
        j["failure"] = {
            {"exponent", r.failing_exponent},
            {"residue", r.residue},
        };
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline nlohmann::json to_json(const EtaMatchResult& r) {
    nlohmann::json j{
        {"verdict", r.found ? "match" : "no-match"},
        {"note", r.note},
    };
    if (r.found) {
        j["quotient"] = r.quotient.to_string();
        nlohmann::json terms = nlohmann::json::array();
        for (auto [d, e] : r.quotient.terms) terms.push_back({{"d", d}, {"r", e}});
        j["terms"] = std::move(terms);
        j["weight"] = r.quotient.weight().to_string();
        j["verified_coefficients"] = r.verified_coefficients;
    }
    return j;
}

inline nlohmann::json to_json(const AndrewsReport& r) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : r.progressions) arr.push_back(to_json(p));
    return {
        {"verdict", r.all_hold ? "holds" : "fails"},
        {"progressions", std::move(arr)},
    };
}

}  // namespace qmock
