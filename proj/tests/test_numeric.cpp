#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cyclo/errors.hpp"
#include "cyclo/goldkim.hpp"
#include "cyclo/numeric.hpp"

using namespace cyclo;

TEST_CASE("embedding residues")
{
    auto f = factorize_conductor(15);
    CHECK(embedding_residues(*f) == std::vector<std::int64_t>{1, 2, 4, 7});
}

TEST_CASE("numeric_embed")
{
    auto f = factorize_conductor(15);
    CHECK(numeric_embed(UnitSymbol(f)).values.size() == 4);
    for (const auto& v : numeric_embed(UnitSymbol(f)).values)
        CHECK(v == 0);

    // xi_{5,1} at the identity embedding: sigma = 2 is the generator mod 5 and
    // the level-5 atom with index 1 is 1 - zeta_5^2.
    auto xi = xi_symbol(f, 1, 1);
    auto e = numeric_embed(xi);
    const double expect = std::log(std::sin(2 * std::numbers::pi / 5) / std::sin(std::numbers::pi / 5));
    CHECK(std::abs(e.values[0].convert_to<double>() - expect) < 1e-12);

    // a unit has zero-sum log vector (norm +-1), counted once per conjugate pair
    auto u = UnitSymbol::atom(f, 0b11, {1, 1}, 3);
    u = mul(u, xi);
    PrecisionScope scope(256);
    Real s = 0;
    for (const auto& v : numeric_embed(u).values)
        s += v;
    CHECK(abs(s) < Real(1e-9));
}

TEST_CASE("numeric_rank")
{
    auto f = factorize_conductor(15);
    std::vector<EmbeddingVector> vs;
    for (const auto& b : enumerate_basis(*f))
        vs.push_back(numeric_embed(basis_symbol(f, b)));
    CHECK(numeric_rank(vs) == 3);
    vs.push_back(vs.front());
    CHECK(numeric_rank(vs) == 3);
    vs.push_back(vs[0] + scaled(vs[1], 2));
    CHECK(numeric_rank(vs) == 3);
}

TEST_CASE("root_of_unity_quotient")
{
    using C = std::complex<double>;
    const C v(0.3, -1.7);
    CHECK(root_of_unity_quotient(v, v, 15));
    CHECK(root_of_unity_quotient(std::polar(1.0, 2 * std::numbers::pi / 30) * v, v, 15));
    CHECK_FALSE(root_of_unity_quotient(std::polar(1.0, 0.1) * v, v, 15));
    CHECK_THROWS_AS(root_of_unity_quotient(2.0 * v, v, 15), InputError);
    // for even n only n-th roots count
    CHECK_FALSE(root_of_unity_quotient(std::polar(1.0, 2 * std::numbers::pi / 24) * v, v, 12));
    CHECK(root_of_unity_quotient(std::polar(1.0, 2 * std::numbers::pi / 12) * v, v, 12));
}

namespace {

// Exact order test: the argument of the pinned representative is
// pi * sum e (r - 1/2) with r rational, so z^m = 1 iff m * sum e (r - 1/2) is even.
int exact_hasse(const UnitSymbol& x)
{
    const auto& f = *x.field();
    const auto m = roots_of_unity_order(f.n());
    // sum e (2 r - 1) / 2 with r = num / den; accumulate over common denominator 2n.
    std::int64_t twice = 0; // 2 * n * sum e (r - 1/2)
    for (const auto& [a, e] : x.terms()) {
        const auto mod = f.level_modulus(a.omega);
        const auto num = atom_residue(f, a) % mod;
        twice += e * (2 * num * (f.n() / mod) - f.n());
    }
    // m * sum = m * twice / (2 n); even iff m * twice divisible by 4 n
    return (static_cast<__int128>(m) * twice) % (4 * f.n()) == 0 ? 1 : 2;
}

} // namespace

TEST_CASE("hasse_order matches the exact argument oracle")
{
    for (std::int64_t n : {9, 12, 15, 20, 21, 35, 45, 60, 16, 27, 40, 105}) {
        auto f = factorize_conductor(n);
        for (const auto& b : enumerate_basis(*f)) {
            auto x = basis_symbol(f, b);
            CHECK(hasse_order(x) == exact_hasse(x));
        }
    }
    auto f15 = factorize_conductor(15);
    CHECK(hasse_order(xi_symbol(f15, 1, 1)) == 1);
    CHECK(hasse_order(UnitSymbol::atom(f15, 0b11, {0, 0})) == 2);
    auto f60 = factorize_conductor(60);
    CHECK(hasse_order(UnitSymbol::atom(f60, 0b110, {0, 0})) == 1);
    CHECK_THROWS_AS(hasse_order(UnitSymbol::atom(f15, 0b01, {0})), NonUnitError);
}

TEST_CASE("order-two products have order one")
{
    for (std::int64_t n : {15, 21, 35, 20}) {
        auto f = factorize_conductor(n);
        std::vector<UnitSymbol> twos;
        for (const auto& b : enumerate_basis(*f)) {
            auto x = basis_symbol(f, b);
            if (hasse_order(x) == 2)
                twos.push_back(x);
        }
        for (std::size_t i = 0; i < twos.size(); ++i)
            for (std::size_t j = 0; j < twos.size(); ++j)
                CHECK(hasse_order(mul(twos[i], twos[j])) == 1);
    }
}
