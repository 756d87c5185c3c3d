#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cyclo/errors.hpp"
#include "cyclo/numeric.hpp"
#include "cyclo/unit_symbol.hpp"

using namespace cyclo;

TEST_CASE("canonicalize_atom")
{
    auto f = factorize_conductor(15);
    auto a = canonicalize_atom(*f, 0b10, {3});
    CHECK(a.omega == 0b10);
    CHECK(a.tuple == std::vector<std::int32_t>{1});
    CHECK(canonicalize_atom(*f, a.omega, a.tuple) == a);
    auto b = canonicalize_atom(*f, 0b11, {1, 1});
    auto c = canonicalize_atom(*f, 0b11, flip_tuple(*f, 0b11, std::vector<std::int32_t>{1, 1}));
    CHECK(b == c);
    CHECK_THROWS_AS(canonicalize_atom(*f, 0, {}), InputError);
    CHECK_THROWS_AS(canonicalize_atom(*f, 0b10, {4}), InputError);
    CHECK_THROWS_AS(canonicalize_atom(*f, 0b11, {1}), InputError);
}

TEST_CASE("atom residue is the CRT of the decoded coordinates")
{
    auto f = factorize_conductor(105);
    for (std::int64_t u = 1; u < 105; ++u) {
        if (std::gcd(u, std::int64_t{105}) != 1)
            continue;
        auto g = GaloisElement::from_residue(*f, u);
        Atom a{f->full_level(), g.indices()};
        CHECK(atom_residue(*f, a) == u);
        Atom low{0b110, g.restrict_to(0b110)};
        CHECK(atom_residue(*f, low) == u % 35);
    }
}

TEST_CASE("mul and pow")
{
    auto f = factorize_conductor(15);
    auto x = UnitSymbol::atom(f, 0b11, {1, 1}, 2);
    x.add(0b10, {1}, 1);
    CHECK(mul(x, pow(x, -1)).empty());
    CHECK(pow(x, 0).empty());
    auto y = UnitSymbol::atom(f, 0b01, {0});
    auto z = mul(x, y);
    CHECK(z.terms().size() == 3);
    auto g = UnitSymbol::atom(factorize_conductor(21), 0b11, {1, 1});
    CHECK_THROWS_AS(mul(x, g), SpecMismatchError);
}

TEST_CASE("galois_act")
{
    auto f = factorize_conductor(15);
    auto x = UnitSymbol::atom(f, 0b11, {1, 1});
    x.add(0b10, {1}, 3);
    CHECK(galois_act(GroupRingElement::single(GaloisElement::identity(*f)), x) == x);
    CHECK(galois_act(GroupRingElement::single(conjugation(*f)), x) == x);

    std::vector<GaloisElement> gens{GaloisElement::local(*f, 1, 2)};
    auto h = subgroup_generated(*f, gens);
    auto n = norm_element(*f, h);
    auto y = galois_act(n, UnitSymbol::atom(f, 0b10, {1}));
    CHECK(y == UnitSymbol::atom(f, 0b10, {1}, 2));

    // module action: (u v) x = u (v x) and (u + v) x = u x * v x
    auto u = GroupRingElement::single(GaloisElement::from_residue(*f, 2), 2);
    u.add_term(GaloisElement::from_residue(*f, 7), -1);
    auto v = GroupRingElement::single(GaloisElement::from_residue(*f, 11), 1);
    v.add_term(GaloisElement::from_residue(*f, 13), 3);
    CHECK(galois_act(multiply(*f, u, v), x) == galois_act(u, galois_act(v, x)));
    CHECK(galois_act(u + v, x) == mul(galois_act(u, x), galois_act(v, x)));
}

TEST_CASE("norm_relation_expand")
{
    auto f = factorize_conductor(15);
    auto a = canonicalize_atom(*f, 0b11, {0, 1});
    auto e = norm_relation_expand(f, a, 0);
    // Frob(3) on level 5 is sigma^3, its inverse sigma^1: (1 - sigma^{-3}) atom({5},1)
    UnitSymbol expect(f);
    expect.add(0b10, {1}, 1);
    expect.add(0b10, {2}, -1);
    expect.add(0b11, {1, 1}, -1);
    CHECK(e == expect);
    CHECK_THROWS_AS(norm_relation_expand(f, canonicalize_atom(*f, 0b10, {1}), 1), InputError);

    // numeric agreement, log-absolute values at all embeddings
    for (std::int64_t n : {15, 35, 60, 105, 63}) {
        auto g = factorize_conductor(n);
        std::mt19937_64 rng(static_cast<std::uint64_t>(n));
        for (int t = 0; t < 30; ++t) {
            Level omega = 0;
            while (level_size(omega) < 2)
                omega = static_cast<Level>(rng() % (g->full_level() + 1));
            std::vector<std::int32_t> tup;
            for (int j : level_members(omega))
                tup.push_back(static_cast<std::int32_t>(rng() % g->factor(j).phi));
            auto atom = canonicalize_atom(*g, omega, tup);
            auto members = level_members(omega);
            int j = members[rng() % members.size()];
            auto rhs = norm_relation_expand(g, atom, j);
            UnitSymbol lhs(g);
            lhs.add(atom, 1);
            for (auto k : embedding_residues(*g))
                CHECK(root_of_unity_quotient(evaluate(lhs, k), evaluate(rhs, k), n));
        }
    }
}

TEST_CASE("is_unit")
{
    auto f = factorize_conductor(15);
    CHECK_FALSE(is_unit(UnitSymbol::atom(f, 0b01, {0})));
    auto xi = UnitSymbol::atom(f, 0b10, {1});
    xi.add(0b10, {0}, -1);
    CHECK(is_unit(xi));
    CHECK(is_unit(UnitSymbol::atom(f, 0b11, {0, 1})));
    CHECK(is_unit(galois_act(GroupRingElement::single(GaloisElement::from_residue(*f, 7)), xi)));
}

TEST_CASE("text form round trip")
{
    auto f = factorize_conductor(15);
    auto x = parse_symbol(f, "(1,2;0,1)^1 * (2;1)^-1 * (2;0)");
    CHECK(x.terms().size() == 3);
    CHECK(parse_symbol(f, to_string(x)) == x);
    CHECK(parse_symbol(f, "1").empty());
    CHECK(to_string(UnitSymbol(f)) == "1");
    CHECK_THROWS_AS(parse_symbol(f, "(1,2;0)^1"), InputError);
    CHECK_THROWS_AS(parse_symbol(f, "(3;0)"), InputError);
    CHECK_THROWS_AS(parse_symbol(f, "(2,1;0,0)"), InputError);
    CHECK_THROWS_AS(parse_symbol(f, "(1;0) junk"), InputError);
}
