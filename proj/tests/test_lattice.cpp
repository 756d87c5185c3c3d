#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cyclo/errors.hpp"
#include "cyclo/lattice.hpp"

using namespace cyclo;

namespace {

IntegerMatrix mat(std::vector<std::vector<long>> rows)
{
    IntegerMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m.at(i, j) = rows[i][j];
    return m;
}

} // namespace

TEST_CASE("smith normal form examples")
{
    auto id = smith_normal_form(IntegerMatrix::identity(3));
    CHECK(id.divisors == std::vector<BigInt>{1, 1, 1});
    auto d = smith_normal_form(mat({{2, 0}, {0, 4}}));
    CHECK(d.divisors == std::vector<BigInt>{2, 4});
    auto e = smith_normal_form(mat({{4, 0}, {0, 6}}));
    CHECK(e.divisors == std::vector<BigInt>{2, 12});
    auto z = smith_normal_form(mat({{0, 0}, {0, 0}}));
    CHECK(z.divisors.empty());
}

TEST_CASE("smith normal form certificate on random matrices")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 60; ++t) {
        const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        IntegerMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m.at(i, j) = static_cast<long>(rng() % 21) - 10;
        auto s = smith_normal_form(m);
        CHECK(s.certificate_verified);
        CHECK((s.U * m) * s.V == s.D);
        // the product of divisors equals the gcd of maximal minors for square full-rank input
        if (r == c && s.rank == r) {
            BigInt prod = 1;
            for (const auto& x : s.divisors)
                prod *= x;
            CHECK(prod == abs(determinant(m)));
        }
    }
}

TEST_CASE("hermite normal form identifies lattices")
{
    auto a = mat({{1, 0}, {0, 2}, {0, 0}});
    auto b = mat({{1, 1}, {2, 4}, {0, 0}});
    // columns of a: (1,0,0), (0,2,0); columns of b: (1,2,0), (1,4,0): same lattice
    CHECK(hermite_normal_form(a) == hermite_normal_form(b));
    auto c = mat({{1, 0}, {0, 4}, {0, 0}});
    CHECK_FALSE(hermite_normal_form(a) == hermite_normal_form(c));
}

TEST_CASE("is_direct_factor")
{
    CHECK(is_direct_factor({{1, 0, 0}, {0, 1, 0}}, 3).direct);
    auto r = is_direct_factor({{2, 0}}, 2);
    CHECK_FALSE(r.direct);
    CHECK(r.divisors == std::vector<BigInt>{2});
    CHECK_THROWS_AS(is_direct_factor({}, 2), InputError);
}

TEST_CASE("triangularity report")
{
    std::vector<GKIndex> rows{{0b11, {1, 0}}, {0b11, {1, 1}}, {0b10, {1}}};
    auto ok = mat({{1, 0, 0}, {3, -1, 0}, {2, 5, 1}});
    auto rep = triangularity_report(ok, rows, {0, 1, 2}, {false, false, false});
    CHECK(rep.passed);
    CHECK(abs(rep.pinned_determinant) == 1);

    auto zero_diag = mat({{1, 0, 0}, {3, 0, 0}, {2, 5, 1}});
    auto rz = triangularity_report(zero_diag, rows, {0, 1, 2}, {false, false, false});
    CHECK_FALSE(rz.passed);
    REQUIRE(rz.bad_diagonal.size() == 1);
    CHECK(rz.bad_diagonal[0].column == 1);
    CHECK(rz.bad_diagonal[0].row == 1);

    auto upper = mat({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
    auto ru = triangularity_report(upper, rows, {0, 1, 2}, {false, false, false});
    CHECK_FALSE(ru.passed);
    auto re = triangularity_report(upper, rows, {0, 1, 2}, {false, true, false});
    CHECK(re.passed);
}
