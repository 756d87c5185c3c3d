#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <set>

#include "cyclo/errors.hpp"
#include "cyclo/galois.hpp"

using namespace cyclo;

namespace {

// Multiplicative order by brute force, independent of the library.
std::int64_t order_mod(std::int64_t g, std::int64_t q)
{
    std::int64_t x = g % q, k = 1;
    while (x != 1) {
        x = x * g % q;
        ++k;
    }
    return k;
}

} // namespace

TEST_CASE("factorize_conductor")
{
    auto f = factorize_conductor(15);
    REQUIRE(f->rank() == 2);
    CHECK(f->factor(0).p == 3);
    CHECK(f->factor(0).q == 3);
    CHECK(f->factor(0).phi == 2);
    CHECK(f->factor(1).p == 5);
    CHECK(f->factor(1).phi == 4);

    auto g = factorize_conductor(12);
    REQUIRE(g->rank() == 2);
    CHECK(g->factor(0).p == 2);
    CHECK(g->factor(0).e == 2);
    CHECK(g->factor(0).q == 4);
    CHECK(g->factor(0).phi == 2);
    CHECK(g->factor(1).q == 3);

    CHECK_THROWS_AS(factorize_conductor(6), ConductorError);
    CHECK_THROWS_AS(factorize_conductor(2), ConductorError);
    CHECK_THROWS_AS(factorize_conductor(1), ConductorError);
    CHECK(factorize_conductor(4)->phi_n() == 2);
}

TEST_CASE("primitive_root is the smallest generator")
{
    CHECK(primitive_root(5) == 2);
    CHECK(primitive_root(3) == 2);
    CHECK(primitive_root(9) == 2);
    CHECK(primitive_root(7) == 3);
    for (std::int64_t q : {3, 5, 7, 9, 11, 13, 25, 27, 49, 121, 125}) {
        const auto g = primitive_root(q);
        const auto phi = euler_phi(q);
        CHECK(order_mod(g, q) == phi);
        for (std::int64_t h = 2; h < g; ++h)
            if (std::gcd(h, q) == 1)
                CHECK(order_mod(h, q) < phi);
    }
    CHECK_THROWS_AS(primitive_root(8), InputError);
    CHECK_THROWS_AS(primitive_root(15), InputError);
}

TEST_CASE("encode/decode is a group isomorphism for n <= 300")
{
    for (std::int64_t n = 3; n <= 300; ++n) {
        if (n % 4 == 2)
            continue;
        auto f = factorize_conductor(n);
        std::set<GaloisElement> seen;
        for (std::int64_t u = 1; u < n; ++u) {
            if (std::gcd(u, n) != 1)
                continue;
            auto g = GaloisElement::from_residue(*f, u);
            REQUIRE(g.residue(*f) == u);
            seen.insert(g);
        }
        REQUIRE(static_cast<std::int64_t>(seen.size()) == f->phi_n());
        // Homomorphism on a sample of pairs.
        for (std::int64_t u = 1; u < n; u += 7) {
            if (std::gcd(u, n) != 1)
                continue;
            for (std::int64_t v = 1; v < n; v += 5) {
                if (std::gcd(v, n) != 1)
                    continue;
                auto gu = GaloisElement::from_residue(*f, u);
                auto gv = GaloisElement::from_residue(*f, v);
                REQUIRE(compose(*f, gu, gv).residue(*f) == u * v % n);
                REQUIRE(compose(*f, gu, invert(*f, gu)).is_identity());
            }
        }
    }
}

TEST_CASE("local generators and the 2-part")
{
    auto f = factorize_conductor(3 * 5 * 7 * 16);
    for (int j = 0; j < f->rank(); ++j) {
        const auto& pf = f->factor(j);
        if (pf.p == 2) {
            CHECK(f->decode_local(j, 1) == 5);
            CHECK(f->decode_local(j, static_cast<std::int32_t>(pf.half())) == pf.q - 1);
            // J commutes with everything and has order 2
            for (std::int32_t a = 0; a < pf.phi; ++a) {
                const auto J = static_cast<std::int32_t>(pf.half());
                CHECK(f->compose_local(j, a, J) == f->compose_local(j, J, a));
                CHECK(f->compose_local(j, a, J) == f->flip_local(j, a));
            }
            CHECK(f->compose_local(j, static_cast<std::int32_t>(pf.half()), static_cast<std::int32_t>(pf.half())) ==
                  0);
        } else {
            CHECK(order_mod(f->decode_local(j, 1), pf.q) == pf.phi);
            CHECK(f->decode_local(j, static_cast<std::int32_t>(pf.half())) == pf.q - 1);
        }
    }
}

TEST_CASE("q = 4 convention")
{
    auto f = factorize_conductor(12);
    CHECK(f->decode_local(0, 0) == 1);
    CHECK(f->decode_local(0, 1) == 3);
    auto J = conjugation(*f);
    CHECK(J[0] == 1);
    for (std::int64_t x : {1, 3})
        CHECK((f->decode_local(0, J[0]) * x + x) % 4 == 0);
}

TEST_CASE("frobenius")
{
    auto f = factorize_conductor(15);
    const Level five = 0b10, three = 0b01;
    CHECK(frobenius(*f, 3, five) == std::vector<std::int32_t>{3});
    CHECK(frobenius(*f, 11, five) == std::vector<std::int32_t>{0});
    CHECK(frobenius(*f, 5, three) == std::vector<std::int32_t>{1});
    CHECK_THROWS_AS(frobenius(*f, 5, five), InputError);
    CHECK_THROWS_AS(frobenius(*f, 4, five), InputError);
    auto g = factorize_conductor(105);
    for (std::int64_t p : {2, 11, 13, 17, 101}) {
        auto t = frobenius(*g, p, g->full_level());
        GaloisElement e(t);
        CHECK(e.residue(*g) == p % 105);
    }
}

TEST_CASE("conjugation")
{
    auto f = factorize_conductor(15);
    auto J = conjugation(*f);
    CHECK(J.residue(*f) == 14);
    CHECK(invert(*f, J) == J);
    auto g = factorize_conductor(40);
    CHECK(conjugation(*g).residue(*g) == 39);
}

TEST_CASE("norm_element")
{
    auto f = factorize_conductor(15);
    auto trivial = std::vector<GaloisElement>{GaloisElement::identity(*f)};
    auto n1 = norm_element(*f, trivial);
    CHECK(n1.size() == 1);

    std::vector<GaloisElement> gens{GaloisElement::local(*f, 1, 2)};
    auto h = subgroup_generated(*f, gens);
    CHECK(h.size() == 2);
    auto n2 = norm_element(*f, h);
    CHECK(n2.size() == 2);
    CHECK(n2.coefficient(GaloisElement::local(*f, 1, 2)) == 1);
    CHECK(multiply(*f, n2, n2) == n2.scaled(2));

    std::vector<GaloisElement> jgen{local_conjugation(*f, 0)};
    auto hj = subgroup_generated(*f, jgen);
    CHECK(hj.size() == 2);

    std::vector<GaloisElement> not_closed{GaloisElement::identity(*f), GaloisElement::local(*f, 1, 1)};
    CHECK_THROWS_AS(norm_element(*f, not_closed), InputError);

    auto g = factorize_conductor(105);
    std::vector<GaloisElement> gg{GaloisElement::local(*g, 2, 2), GaloisElement::local(*g, 1, 2)};
    auto big = subgroup_generated(*g, gg);
    CHECK(big.size() == 6);
    auto nb = norm_element(*g, big);
    CHECK(multiply(*g, nb, nb) == nb.scaled(6));
}

TEST_CASE("mismatched fields")
{
    auto f = factorize_conductor(15);
    auto g = factorize_conductor(105);
    CHECK_THROWS_AS(compose(*f, GaloisElement::identity(*f), GaloisElement::identity(*g)), SpecMismatchError);
}
