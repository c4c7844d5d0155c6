// Writes the example motives and morphisms used by the tests and the
// acceptance suite into the directory given as argv[1].

#include <filesystem>
#include <fstream>
#include <iostream>

#include "motivix/motivix.hpp"

using namespace motivix;

namespace {

std::filesystem::path out_dir;

TPoly tp(const FieldCtx& c, std::vector<std::int64_t> v) {
    std::vector<Gf> g;
    for (auto x : v) g.push_back(c.from_int(x));
    return TPoly(std::move(g), c.zero());
}

TPoly t_pow(const FieldCtx& c, int d) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(d) + 1, 0);
    v.back() = 1;
    return tp(c, v);
}

void write(const std::string& name, const json& j) {
    std::ofstream(out_dir / name) << j.dump(1) << "\n";
}

void motive(const std::string& name, const FieldCtx& c, const Gf& theta, const TMat& T) {
    write(name, motive_to_json(make_motive(c, theta, T)));
}

void raw_motive(const std::string& name, const FieldCtx& c, const Gf& theta, const TMat& T) {
    write(name, {{"format", kFormatVersion}, {"p", c.p()}, {"n", c.n()}, {"e", c.e()},
                 {"field_modulus", c.modulus()}, {"theta", to_json(theta)}, {"tau", to_json(T)}});
}

TMat antidiag(const FieldCtx& c, int d) {
    return TMat::from_rows({{tp(c, {0}), tp(c, {1})}, {t_pow(c, d), tp(c, {0})}}, tp(c, {0}));
}

TMat rank_four(const FieldCtx& c, int a, int b) {
    const TPoly z = tp(c, {0}), t = tp(c, {0, 1});
    return TMat::from_rows({{z, z, z, tp(c, {a})}, {z, tp(c, {b}), tp(c, {1}), z}, {t, z, tp(c, {-b}), z}, {z, t, z, z}}, z);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures DIR\n";
        return 3;
    }
    out_dir = argv[1];
    std::filesystem::create_directories(out_dir);

    for (std::uint32_t e : {1u, 2u}) {
        const auto& c = FieldCtx::make_default(3, 1, e);
        const std::string sfx = e == 1 ? "" : "_e2";
        for (int d = 1; d <= 3; ++d) motive("ex92_d" + std::to_string(d) + sfx + ".json", c, c.zero(), antidiag(c, d));
        // The rank-1 blocks (-t^n) and (t^n) for d = 2n = 2.
        motive("ex92_block_minus" + sfx + ".json", c, c.zero(), TMat::from_rows({{tp(c, {0, -1})}}, tp(c, {0})));
        motive("ex92_block_plus" + sfx + ".json", c, c.zero(), TMat::from_rows({{tp(c, {0, 1})}}, tp(c, {0})));
    }
    {
        const auto& c = FieldCtx::make_default(2, 1, 1);
        for (int d = 1; d <= 3; ++d) motive("ex92_q2_d" + std::to_string(d) + ".json", c, c.zero(), antidiag(c, d));
    }
    {
        // q = 4 with theta a generator of F_4.
        const auto& c = FieldCtx::make_default(2, 2, 1);
        const TPoly lin(std::vector<Gf>{-c.generator(), c.one()}, c.zero());
        motive("ex92_q4_theta.json", c, c.generator(),
               TMat::from_rows({{tp(c, {0}), tp(c, {1})}, {lin, tp(c, {0})}}, tp(c, {0})));
    }
    {
        // theta in F_9 outside F_3: characteristic place of degree 2.
        const auto& c = FieldCtx::make_default(3, 1, 2);
        const TPoly lin(std::vector<Gf>{-c.generator(), c.one()}, c.zero());
        motive("theta_orbit.json", c, c.generator(),
               TMat::from_rows({{tp(c, {0}), tp(c, {1})}, {lin, tp(c, {0})}}, tp(c, {0})));
    }
    {
        const auto& c = FieldCtx::make_default(3, 1, 1);
        motive("ex31.json", c, c.one(),
               TMat::from_rows({{tp(c, {1}), tp(c, {0, -1})}, {tp(c, {0, 1}), tp(c, {1, 1})}}, tp(c, {0})));
        motive("ex31_conj.json", c, c.one(),
               TMat::from_rows({{tp(c, {1, -1}), tp(c, {0})}, {tp(c, {0, 1}), tp(c, {1, -1})}}, tp(c, {0})));
        raw_motive("not_pure.json", c, c.zero(), TMat::from_rows({{tp(c, {1}), tp(c, {0})}, {tp(c, {0}), t_pow(c, 2)}}, tp(c, {0})));
        raw_motive("not_char.json", c, c.zero(), TMat::from_rows({{tp(c, {1}), tp(c, {0})}, {tp(c, {0}), tp(c, {-1, 1})}}, tp(c, {0})));
        const TPoly z = tp(c, {0}), one = tp(c, {1});
        write("ex92_d1_pi.json", morphism_to_json(antidiag(c, 1)));
        write("scalar_t_minus_1.json", morphism_to_json(TMat::from_rows({{tp(c, {-1, 1}), z}, {z, tp(c, {-1, 1})}}, z)));
        write("swap.json", morphism_to_json(TMat::from_rows({{z, one}, {one, z}}, z)));
        write("identity2.json", morphism_to_json(TMat::identity(2, z)));
    }
    for (std::uint32_t e : {1u, 2u}) {
        const std::string sfx = e == 1 ? "_e1" : "";
        const auto& c3 = FieldCtx::make_default(3, 1, e);
        motive("ex93_b" + sfx + ".json", c3, c3.zero(), rank_four(c3, 1, 1));
        const auto& c5 = FieldCtx::make_default(5, 1, e);
        motive("ex93_c" + sfx + ".json", c5, c5.zero(), rank_four(c5, 2, 1));
    }
    return 0;
}
