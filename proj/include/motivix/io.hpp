#pragma once

// JSON encoding of motives, morphisms and reports. Field elements are arrays
// of F_p digits in the basis 1, g, g^2, ... of L; polynomials in t are arrays
// of field elements, constant term first. Reports use sorted keys, rationals
// as [num, den] and polynomials as strings.

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "motivix/invariants.hpp"

namespace motivix {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(Errc::ParseError, what); }

inline std::uint32_t get_uint(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) parse_fail(std::string("missing or non-negative integer field \"") + key + "\"");
    const auto v = j[key].get<std::uint64_t>();
    if (v > 0xffffffffu) parse_fail(std::string("field \"") + key + "\" out of range");
    return static_cast<std::uint32_t>(v);
}

}  // namespace detail

inline json to_json(const Gf& x) {
    json a = json::array();
    auto c = x.coeffs();
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    if (c.empty()) c.push_back(0);
    for (auto v : c) a.push_back(v);
    return a;
}

inline json to_json(const TPoly& f) {
    json a = json::array();
    for (const auto& c : f.coeffs()) a.push_back(to_json(c));
    return a;
}

inline json to_json(const TMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const Rational& r) { return json::array({r.numerator(), r.denominator()}); }

inline Gf gf_from_json(const json& j, const FieldCtx& ctx) {
    if (!j.is_array()) detail::parse_fail("field element must be an array of F_p digits");
    if (j.size() > ctx.degree()) detail::parse_fail("field element has more than [L:F_p] digits");
    std::vector<std::int64_t> c;
    for (const auto& v : j) {
        if (!v.is_number_integer()) detail::parse_fail("field element digit is not an integer");
        const auto x = v.get<std::int64_t>();
        if (x < 0 || x >= static_cast<std::int64_t>(ctx.p())) detail::parse_fail("field element digit out of range 0..p-1");
        c.push_back(x);
    }
    return ctx.from_coeffs(c);
}

inline TPoly tpoly_from_json(const json& j, const FieldCtx& ctx) {
    if (!j.is_array()) detail::parse_fail("polynomial must be an array of field elements");
    std::vector<Gf> c;
    for (const auto& x : j) c.push_back(gf_from_json(x, ctx));
    return TPoly(std::move(c), ctx.zero());
}

inline TMat tmat_from_json(const json& j, const FieldCtx& ctx) {
    if (!j.is_array() || j.empty()) detail::parse_fail("matrix must be a non-empty array of rows");
    std::vector<std::vector<TPoly>> rows;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != j[0].size() || row.empty()) detail::parse_fail("matrix rows must be non-empty arrays of equal length");
        std::vector<TPoly> r;
        for (const auto& x : row) r.push_back(tpoly_from_json(x, ctx));
        rows.push_back(std::move(r));
    }
    return TMat::from_rows(rows, TPoly(ctx.zero()));
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) detail::parse_fail("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        detail::parse_fail(path + ": " + e.what());
    }
}

/// Parses and validates a motive description.
inline Motive motive_from_json(const json& j) {
    if (!j.is_object()) detail::parse_fail("motive must be a JSON object");
    if (j.contains("format") && j["format"] != kFormatVersion) detail::parse_fail("unsupported format version");
    const auto p = detail::get_uint(j, "p"), n = detail::get_uint(j, "n"), e = detail::get_uint(j, "e");
    if (!j.contains("field_modulus") || !j["field_modulus"].is_array()) detail::parse_fail("missing field_modulus");
    std::vector<std::uint32_t> mod;
    for (const auto& v : j["field_modulus"]) {
        if (!v.is_number_unsigned()) detail::parse_fail("field_modulus entries must be non-negative integers");
        mod.push_back(v.get<std::uint32_t>());
    }
    if (!j.contains("theta") || !j.contains("tau")) detail::parse_fail("missing theta or tau");
    const FieldCtx& ctx = FieldCtx::make(p, n, e, std::move(mod));
    return make_motive(ctx, gf_from_json(j["theta"], ctx), tmat_from_json(j["tau"], ctx));
}

inline json motive_to_json(const Motive& M) {
    const auto& ctx = M.ctx();
    return {{"format", kFormatVersion}, {"p", ctx.p()},          {"n", ctx.n()},
            {"e", ctx.e()},             {"field_modulus", ctx.modulus()}, {"theta", to_json(M.theta)},
            {"tau", to_json(M.T)}};
}

inline TMat morphism_matrix_from_json(const json& j, const FieldCtx& ctx) {
    if (!j.is_object() || !j.contains("matrix")) detail::parse_fail("morphism must be an object with a \"matrix\" field");
    if (j.contains("format") && j["format"] != kFormatVersion) detail::parse_fail("unsupported format version");
    return tmat_from_json(j["matrix"], ctx);
}

inline json morphism_to_json(const TMat& F) { return {{"format", kFormatVersion}, {"matrix", to_json(F)}}; }

// ---- reports -------------------------------------------------------------

inline json validate_report(const Motive& M) {
    return {{"r", M.r},
            {"d", M.d},
            {"weight", to_json(M.weight())},
            {"char_place", to_string(M.eps)},
            {"field", M.ctx().describe()},
            {"chi", to_string(M.chi)}};
}

inline json zeta_report(const ZetaFunction& Z) {
    json f = json::array(), a = json::array();
    for (const auto& P : Z.factors) f.push_back(to_string(P, "u"));
    for (const auto& x : Z.a) a.push_back(to_string(x));
    return {{"numerator", to_string(Z.numerator, "u")},
            {"denominator", to_string(Z.denominator, "u")},
            {"factors", f},
            {"a", a}};
}

inline json rh_report(const RhReport& R) {
    json entries = json::array();
    for (const auto& e : R.entries) {
        json s = json::array();
        for (const auto& x : e.slopes) s.push_back(to_json(x));
        entries.push_back({{"i", e.i}, {"slopes", s}, {"expected", to_json(e.expected)}, {"pass", e.pass}});
    }
    return {{"pass", R.pass}, {"powers", entries}};
}

inline json place_report(const LocalPlaceData& d) {
    json j = {{"base", d.base.label()}, {"e", d.e}, {"f", d.f}, {"v_pi", d.v_pi},
              {"slope", to_json(d.slope)}, {"residual_factor", to_string(d.residual_factor, "y")}};
    if (d.root) j["root"] = to_string(*d.root);
    return j;
}

inline json endalg_report(const EndAlgebraReport& R) {
    json hasse = json::array(), basis = json::array();
    for (const auto& h : R.hasse) {
        json p = place_report(h.local);
        p["invariant"] = to_json(h.invariant);
        hasse.push_back(std::move(p));
    }
    for (const auto& B : R.basis) basis.push_back(to_string(B));
    json irr = {{"certificate", R.mu_irreducible.certificate}};
    irr["value"] = R.mu_irreducible.irreducible ? json(*R.mu_irreducible.irreducible) : json("unknown");
    json j = {{"r", R.r},
              {"dim_Q_E", R.dim_E},
              {"dim_Q_F", R.dim_F},
              {"semisimple", R.semisimple},
              {"absolutely_semisimple", R.absolutely_semisimple},
              {"center_is_Q", R.center_is_Q},
              {"mu", to_string(R.mu)},
              {"mu_irreducible", irr},
              {"dimensions_consistent", R.dimensions_consistent},
              {"hasse", hasse},
              {"invariant_sum", to_json(R.invariant_sum)},
              {"basis", basis}};
    j["h"] = R.h ? json(*R.h) : json(nullptr);
    if (R.tate)
        j["tate_check"] = {{"aux_place", R.tate->aux.label()}, {"r_count", R.tate->r}, {"agrees", R.tate->r == R.dim_E}};
    else
        j["tate_check"] = nullptr;
    return j;
}

inline json degree_report(const DegreeIdeal& D) {
    json ex = json::array();
    for (const auto& [v, k] : D.exponents) ex.push_back({{"place", to_string(v)}, {"exponent", k}});
    json j = {{"factors", ex},
              {"monic_generator", to_string(D.monic_generator)},
              {"coker_dim", D.coker_dim},
              {"separable_part", to_string(D.separable_part)},
              {"inseparable_part", to_string(D.inseparable_part)}};
    j["generator"] = D.generator ? json(to_string(*D.generator)) : json(nullptr);
    return j;
}

inline json coker_report(const CokerModule& C) {
    json divs = json::array();
    for (const auto& d : C.divisors)
        if (d.degree() > 0) divs.push_back(to_string(d));
    json tau = json::array();
    for (std::size_t i = 0; i < C.tau.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < C.tau.cols(); ++j) row.push_back(coeff_string(C.tau(i, j)));
        tau.push_back(row);
    }
    return {{"dim", C.dim()},
            {"elementary_divisors", divs},
            {"tau", tau},
            {"separable", C.separable},
            {"purely_inseparable", C.purely_inseparable}};
}

}  // namespace motivix
