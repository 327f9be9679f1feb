#pragma once

/**
 * @file serialize.hpp
 * @brief JSON encodings (nlohmann::json) for numbers, polynomials, measures
 * and verification reports.
 */

#include <string>

#include <json.hpp>

#include "error.hpp"
#include "esh.hpp"
#include "euler.hpp"
#include "evaluation.hpp"
#include "iwasawa.hpp"
#include "measure.hpp"
#include "padic.hpp"
#include "polyspace.hpp"

namespace lamsym {

using json = nlohmann::ordered_json;

namespace detail {

inline mpz_class parse_integer(const json& j) {
    try {
        if (j.is_string()) return mpz_class(j.get<std::string>());
        if (j.is_number_integer()) return mpz_class(j.get<long>());
    } catch (const std::invalid_argument&) {
    }
    fail(ErrorCode::Parse, "expected an integer or decimal string, got " + j.dump());
}

/// Small integers as numbers, large ones as decimal strings.
inline json integer_json(const mpz_class& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

inline const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) fail(ErrorCode::Parse, std::string("missing field \"") + name + "\"");
    return j.at(name);
}

inline long long_field(const json& j, const char* name) {
    const json& f = field(j, name);
    if (!f.is_number_integer()) fail(ErrorCode::Parse, std::string("field \"") + name + "\" must be an integer");
    return f.get<long>();
}

} // namespace detail

inline json to_json(const Padic& x) {
    return {{"p", x.prime()}, {"M", x.precision()}, {"v", x.valuation()}, {"u", x.unit().get_str()}};
}

inline Padic padic_from_json(const json& j) {
    const json& u = detail::field(j, "u");
    return Padic::from_parts(detail::long_field(j, "p"), detail::long_field(j, "M"), detail::long_field(j, "v"),
                             detail::parse_integer(u));
}

inline json to_json(const TensorPoly<Padic>& P) {
    json rows = json::array();
    for (int j = 0; j <= P.n1(); ++j) {
        json row = json::array();
        for (int l = 0; l <= P.n2(); ++l) row.push_back(to_json(P.at(j, l)));
        rows.push_back(std::move(row));
    }
    return {{"n1", P.n1()}, {"n2", P.n2()}, {"coeffs", std::move(rows)}};
}

inline TensorPoly<Padic> tensor_from_json(const json& j) {
    long n1 = detail::long_field(j, "n1");
    long n2 = detail::long_field(j, "n2");
    const json& rows = detail::field(j, "coeffs");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n1 + 1))
        fail(ErrorCode::DegreeMismatch, "coeffs must have n1+1 rows");
    std::vector<std::vector<Padic>> data;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n2 + 1))
            fail(ErrorCode::DegreeMismatch, "each row must have n2+1 entries");
        std::vector<Padic> r;
        for (const auto& c : row) r.push_back(padic_from_json(c));
        data.push_back(std::move(r));
    }
    return TensorPoly<Padic>::from_rows(data);
}

inline json to_json(const IwasawaElement& x) {
    json coeffs = json::object();
    for (const auto& [u, c] : x.coeffs()) coeffs[u.get_str()] = to_json(c);
    return {{"p", x.prime()}, {"M", x.precision()}, {"m", x.level()}, {"coeffs", std::move(coeffs)}};
}

inline IwasawaElement iwasawa_from_json(const json& j) {
    IwasawaElement x = IwasawaElement::zero(detail::long_field(j, "p"), detail::long_field(j, "M"), detail::long_field(j, "m"));
    const json& coeffs = detail::field(j, "coeffs");
    if (!coeffs.is_object()) fail(ErrorCode::Parse, "coeffs must be an object keyed by unit residues");
    for (const auto& [key, value] : coeffs.items()) {
        Padic c = padic_from_json(value);
        if (c.prime() != x.prime()) fail(ErrorCode::MixedPrime, "coefficient over a different prime");
        x.add_term(detail::parse_integer(json(key)), c);
    }
    return x;
}

template <class C>
json to_json(const AtomicMeasure<C>& mu) {
    json atoms = json::array();
    for (const auto& at : mu.atoms())
        atoms.push_back({{"coeff", to_json(at.coeff)},
                         {"point", json::array({detail::integer_json(at.point[0]), detail::integer_json(at.point[1])})}});
    constexpr bool lambda = std::is_same_v<C, IwasawaElement>;
    return {{"p", mu.prime()}, {"M", mu.precision()}, {"ring", lambda ? "Lambda" : "O"}, {"atoms", std::move(atoms)}};
}

namespace detail {

inline Point point_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) fail(ErrorCode::Parse, "point must be [a, b]");
    return {parse_integer(j[0]), parse_integer(j[1])};
}

} // namespace detail

inline OMeasure o_measure_from_json(const json& j) {
    if (detail::field(j, "ring") != "O") fail(ErrorCode::Parse, "expected an O-valued measure");
    OMeasure mu(detail::long_field(j, "p"), detail::long_field(j, "M"));
    for (const auto& at : detail::field(j, "atoms")) {
        Padic c = padic_from_json(detail::field(at, "coeff"));
        if (c.prime() != mu.prime()) fail(ErrorCode::MixedPrime, "atom coefficient over a different prime");
        mu.add(c, detail::point_from_json(detail::field(at, "point")));
    }
    return mu;
}

inline LambdaMeasure lambda_measure_from_json(const json& j) {
    if (detail::field(j, "ring") != "Lambda") fail(ErrorCode::Parse, "expected a Lambda-valued measure");
    const long p = detail::long_field(j, "p");
    const long M = detail::long_field(j, "M");
    const json& atoms = detail::field(j, "atoms");
    long level = 0;
    std::vector<std::pair<IwasawaElement, Point>> parsed;
    for (const auto& at : atoms) {
        IwasawaElement c = iwasawa_from_json(detail::field(at, "coeff"));
        if (c.prime() != p) fail(ErrorCode::MixedPrime, "atom coefficient over a different prime");
        if (level != 0 && c.level() != level) fail(ErrorCode::LevelMismatch, "atoms at different truncation levels");
        level = c.level();
        parsed.emplace_back(std::move(c), detail::point_from_json(detail::field(at, "point")));
    }
    LambdaMeasure mu(p, M, level == 0 ? M : level);
    for (auto& [c, s] : parsed) mu.add(c, s);
    return mu;
}

inline std::string modulus_string(long p, long M) { return std::to_string(p) + "^" + std::to_string(M); }

inline json to_json(const IdentityReport& r) {
    return {{"identity", r.identity}, {"p", r.p},     {"k", r.k}, {"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)},
            {"equal_mod", modulus_string(r.p, r.modulus)}, {"holds", r.holds}};
}

inline json suite_report(const std::string& suite, json cases, bool passed) {
    return {{"suite", suite}, {"cases", std::move(cases)}, {"passed", passed}};
}

inline json to_json(const Series& s) {
    json out = json::array();
    for (const auto& c : s.coeffs()) out.push_back(c.get_str());
    return out;
}

inline json to_json(const FactorizationReport& r) {
    json j = {{"identity", "factorization"},
              {"l", r.datum.ell},
              {"split_type", to_string(r.datum.split)},
              {"a", r.datum.a.get_str()},
              {"psi", r.datum.psi.get_str()},
              {"k", r.datum.k},
              {"eta", r.eta.get_str()},
              {"order", r.order},
              {"asai", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"holds", r.holds()}};
    if (r.first_mismatch) j["first_mismatch"] = *r.first_mismatch;
    return j;
}

inline json optional_ratio(const std::optional<mpq_class>& q) { return q ? json(q->get_str()) : json(nullptr); }

inline json to_json(const EshReport& r) {
    return {{"identity", "eichler-shimura"},
            {"n", r.n},
            {"form", r.form.to_string()},
            {"ratio_dy^dx", optional_ratio(r.ratio_dydx)},
            {"ratio_dx^dxbar", optional_ratio(r.ratio_dxdxbar)},
            {"ratio_dy^dxbar", optional_ratio(r.ratio_dydxbar)},
            {"form_matches", r.form_matches()},
            {"restriction_ratio", optional_ratio(r.restriction_ratio)},
            {"restriction_matches", r.restriction_matches()},
            {"projection", r.projection.to_string() + " y^-2 dy^dx"},
            {"stated_projection", r.stated_projection.to_string() + " y^-2 dy^dx"},
            {"projection_ratio", optional_ratio(r.projection_ratio)},
            {"projection_sign", r.projection_sign()},
            {"projection_matches", r.projection_matches()},
            {"holds", r.passed()}};
}

inline json to_json(const LTable& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json j = {{"k", row.k},
                  {"sp_L", to_json(row.sp_L)},
                  {"sp_alpha", to_json(row.sp_alpha)},
                  {"euler_factor", to_json(row.euler)},
                  {"L_alg", to_json(row.l_alg)},
                  {"c_P", to_json(row.c_p)},
                  {"interpolated", to_json(row.interpolated)},
                  {"declared_agrees", row.declared_agrees},
                  {"route_holds", row.route_holds}};
        j["consistency"] = row.consistency ? json(*row.consistency) : json(nullptr);
        if (row.component_holds) j["component_holds"] = *row.component_holds;
        rows.push_back(std::move(j));
    }
    return {{"suite", "assemble-L"},
            {"p", t.p},
            {"M", t.M},
            {"r", t.r},
            {"filter", t.filter},
            {"c_P", "synthetic normalization c_P = 1"},
            {"L", to_json(t.L)},
            {"cases", std::move(rows)},
            {"passed", t.passed()}};
}

} // namespace lamsym
