// motivix: command-line front end.
//
// Exit codes: 0 ok, 1 invalid input (domain errors), 2 unsupported
// (Ore-irregular place, precision, oversized field), 3 parse or usage error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "motivix/motivix.hpp"

using namespace motivix;

namespace {

int exit_code(Errc c) {
    switch (c) {
        case Errc::ParseError: return 3;
        case Errc::NotOreRegular:
        case Errc::PrecisionExhausted:
        case Errc::NotSquarefreeReduction:
        case Errc::FieldTooLarge: return 2;
        default: return 1;
    }
}

std::uint64_t effective_seed(std::uint64_t flag) {
    if (const char* s = std::getenv("MOTIVIX_SEED")) {
        try {
            return std::stoull(s, nullptr, 0);
        } catch (const std::exception&) {
            throw Error(Errc::ParseError, "MOTIVIX_SEED is not an integer");
        }
    }
    return flag;
}

Motive load_motive(const std::string& path) { return motive_from_json(read_json_file(path)); }

void print(const json& j, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string rational_text(const Rational& r) { return to_string(r); }

int cmd_validate(const std::string& file, bool as_json) {
    const Motive M = load_motive(file);
    std::ostringstream os;
    os << "valid motive over " << M.ctx().describe() << "\n"
       << "  r = " << M.r << ", d = " << M.d << ", weight = " << rational_text(M.weight()) << "\n"
       << "  characteristic place: " << to_string(M.eps) << "\n"
       << "  chi = " << to_string(M.chi) << "\n";
    print(validate_report(M), as_json, os.str());
    return 0;
}

struct InvariantFlags {
    bool zeta = false, endalg = false, semisimple = false, rh = false, json = false;
    std::int64_t precision = -1;
    std::uint64_t seed = kDefaultSeed;
};

int cmd_invariants(const std::string& file, InvariantFlags fl) {
    const Motive M = load_motive(file);
    const bool all = !fl.zeta && !fl.endalg && !fl.semisimple && !fl.rh;
    json out = {{"motive", validate_report(M)}};
    std::ostringstream os;
    os << "motive over " << M.ctx().describe() << ": r = " << M.r << ", d = " << M.d << ", chi = " << to_string(M.chi)
       << "\n";
    const XPoly mu = min_poly(M);
    const bool ss = is_squarefree(mu);
    if (all || fl.semisimple) {
        const bool abs = is_separable(mu);
        const auto ext = semisimplifying_extension_degree(M);
        out["semisimple"] = {{"mu", to_string(mu)},
                             {"semisimple", ss},
                             {"absolutely_semisimple", abs},
                             {"semisimplifying_extension_degree", ext}};
        os << "mu = " << to_string(mu) << "\n"
           << "semisimple: " << (ss ? "true" : "false") << "\n"
           << "absolutely semisimple: " << (abs ? "true" : "false") << "\n"
           << "semisimplifying extension degree: " << ext << "\n";
    }
    if (all || fl.rh) {
        const auto R = rh_check(M);
        out["rh"] = rh_report(R);
        os << "Riemann hypothesis slopes: " << (R.pass ? "pass" : "FAIL") << "\n";
        for (const auto& e : R.entries) {
            os << "  wedge^" << e.i << ":";
            for (const auto& s : e.slopes) os << " " << rational_text(s);
            os << " (expected " << rational_text(e.expected) << ")\n";
        }
    }
    if (all || fl.zeta) {
        const auto Z = zeta(M);
        out["zeta"] = zeta_report(Z);
        os << "Z(u) = " << to_string(Z) << "\n";
        for (std::size_t n = 0; n < Z.a.size(); ++n) os << "  a_" << n + 1 << " = " << to_string(Z.a[n]) << "\n";
    }
    if (all || fl.endalg) {
        if (!ss && !fl.endalg) {
            out["endalg"] = {{"error", "NotSemisimple"}};
            os << "endomorphism algebra: skipped, not semisimple\n";
        } else {
            const auto R = end_algebra_report(M, fl.precision, fl.seed);
            out["endalg"] = endalg_report(R);
            os << "End algebra: dim_Q E = " << R.dim_E << ", dim_Q F = " << R.dim_F
               << ", center is Q: " << (R.center_is_Q ? "true" : "false") << "\n"
               << "  mu irreducible: "
               << (R.mu_irreducible.irreducible ? (*R.mu_irreducible.irreducible ? "true" : "false") : "unknown")
               << " (" << R.mu_irreducible.certificate << ")\n";
            for (const auto& h : R.hasse)
                os << "  place over " << h.local.base.label() << " (e=" << h.local.e << ", f=" << h.local.f
                   << ", v(pi)=" << h.local.v_pi << "): inv = " << rational_text(h.invariant) << "\n";
            os << "  sum of invariants = " << rational_text(R.invariant_sum) << "\n";
            if (R.tate)
                os << "  local r-count at " << R.tate->aux.label() << " = " << R.tate->r << "\n";
        }
    }
    print(out, fl.json, os.str());
    return 0;
}

int cmd_isogenous(const std::string& a, const std::string& b, bool witness, bool as_json, std::uint64_t seed) {
    const Motive M = load_motive(a), Mp = load_motive(b);
    const auto res = isogeny_test(M, Mp);
    json out = {{"chi_equal", res.chi_equal},
                {"zeta_equal", res.zeta_equal},
                {"isogenous", res.isogenous},
                {"semisimple_warning", res.semisimple_warning}};
    std::ostringstream os;
    os << (res.isogenous ? "isogenous" : "not isogenous") << " (chi " << (res.chi_equal ? "equal" : "differ")
       << ", zeta " << (res.zeta_equal ? "equal" : "differ") << ")\n";
    if (res.semisimple_warning) os << "warning: not semisimple, equal chi is only necessary\n";
    if (witness && res.isogenous) {
        try {
            const auto f = find_quasi_isogeny(M, Mp, 200, seed);
            out["witness"] = to_json(f.F);
            os << "witness: " << to_string(f.F) << "\n";
        } catch (const Error& e) {
            if (e.code() != Errc::NotFound) throw;
            out["witness"] = nullptr;
            os << "witness: not found\n";
        } catch (const std::invalid_argument&) {
            out["witness"] = nullptr;
            os << "witness: Hom space is zero\n";
        }
    }
    print(out, as_json, os.str());
    return 0;
}

int cmd_morphism(const std::vector<std::string>& args, bool as_json) {
    if (args.size() < 3 || args.size() > 4) throw Error(Errc::ParseError, "usage: morphism M [M'] PHI <check|degree|dual|coker>");
    const std::string action = args.back();
    if (action != "check" && action != "degree" && action != "dual" && action != "coker")
        throw Error(Errc::ParseError, "unknown morphism action '" + action + "'");
    const Motive src = load_motive(args[0]);
    const Motive tgt = args.size() == 4 ? load_motive(args[1]) : src;
    const TMat F = morphism_matrix_from_json(read_json_file(args[args.size() - 2]), src.ctx());
    const Morphism f = make_morphism(F, src, tgt);
    json out = {{"kind", kind_name(f.kind)}};
    std::ostringstream os;
    os << "morphism: " << kind_name(f.kind) << "\n";
    if (action == "check") {
        // nothing beyond the classification
    } else if (action == "degree") {
        const auto D = isogeny_degree(f);
        out["degree"] = degree_report(D);
        os << "degree ideal:";
        if (D.exponents.empty()) os << " (1)";
        for (const auto& [v, k] : D.exponents) os << " (" << to_string(v) << ")^" << k;
        os << "\n";
        if (D.generator) os << "generator: " << to_string(*D.generator) << "\n";
        os << "dim_L coker = " << D.coker_dim << "\n"
           << "separable part: " << to_string(D.separable_part) << ", inseparable part: " << to_string(D.inseparable_part)
           << "\n";
    } else if (action == "dual") {
        const auto g = dual_isogeny(f);
        out["dual"] = to_json(g.F);
        out["norm"] = to_string(reduced_norm(f));
        os << "dual: " << to_string(g.F) << "\n"
           << "N(f) = " << to_string(reduced_norm(f)) << "\n";
    } else {
        const auto C = coker_structure(f);
        out["coker"] = coker_report(C);
        os << "dim_L coker = " << C.dim() << "\n"
           << "separable: " << (C.separable ? "true" : "false") << "\n"
           << "purely inseparable: " << (C.purely_inseparable ? "true" : "false") << "\n";
    }
    print(out, as_json, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"motivix: invariants of pure Anderson motives over finite fields"};
    app.require_subcommand(1);
    bool as_json = false;
    std::uint64_t seed = kDefaultSeed;

    std::string vfile;
    auto* v = app.add_subcommand("validate", "check the motive axioms");
    v->add_option("file", vfile, "motive JSON")->required();
    v->add_flag("--json", as_json);

    std::string ifile;
    InvariantFlags fl;
    auto* inv = app.add_subcommand("invariants", "semisimplicity, zeta, RH slopes, endomorphism algebra");
    inv->add_option("file", ifile, "motive JSON")->required();
    inv->add_flag("--zeta", fl.zeta);
    inv->add_flag("--endalg", fl.endalg);
    inv->add_flag("--semisimple", fl.semisimple);
    inv->add_flag("--rh", fl.rh);
    inv->add_flag("--json", as_json);
    inv->add_option("--precision", fl.precision, "local precision N (default 4*disc_bound+16)");
    inv->add_option("--seed", seed, "random seed");

    std::string fa, fb;
    bool witness = false;
    auto* iso = app.add_subcommand("isogenous", "compare isogeny classes");
    iso->add_option("a", fa)->required();
    iso->add_option("b", fb)->required();
    iso->add_flag("--witness", witness);
    iso->add_flag("--json", as_json);
    iso->add_option("--seed", seed, "random seed");

    std::vector<std::string> margs;
    auto* mor = app.add_subcommand("morphism", "M [M'] PHI <check|degree|dual|coker>");
    mor->add_option("args", margs)->required()->expected(3, 4);
    mor->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        seed = effective_seed(seed);
        if (*v) return cmd_validate(vfile, as_json);
        if (*inv) {
            fl.json = as_json;
            fl.seed = seed;
            return cmd_invariants(ifile, fl);
        }
        if (*iso) return cmd_isogenous(fa, fb, witness, as_json, seed);
        if (*mor) return cmd_morphism(margs, as_json);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 3;
}
