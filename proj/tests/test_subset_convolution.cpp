#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cyclo/errors.hpp"
#include "cyclo/subset_convolution.hpp"

using namespace cyclo;

TEST_CASE("convolution basics")
{
    std::mt19937_64 rng(3);
    SubsetFunction f(4), g(4);
    for (std::uint32_t s = 0; s < 16; ++s) {
        f[s] = Rational(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 4) + 1);
        g[s] = static_cast<long>(rng() % 7) - 3;
    }
    CHECK(convolve(SubsetFunction::unit(4), f) == f);
    CHECK(convolve(f, SubsetFunction::unit(4)) == f);
    CHECK(convolve(SubsetFunction::ones(4), mobius(4)) == SubsetFunction::unit(4));
    CHECK(convolve(f, g) == convolve(g, f));
    auto fg = convolve(f, g);
    CHECK(fg[0b0100] == f[0] * g[0b0100] + f[0b0100] * g[0]);
    CHECK_THROWS_AS(convolve(SubsetFunction(2), SubsetFunction(3)), InputError);
    CHECK_THROWS_AS(SubsetFunction(21), InputError);
}

TEST_CASE("mobius values")
{
    auto mu = mobius(3);
    CHECK(mu[0] == 1);
    CHECK(mu[0b011] == 1);
    CHECK(mu[0b001] == -1);
    CHECK(mu[0b111] == -1);
}

TEST_CASE("mobius inversion round trip")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        const int size = static_cast<int>(rng() % 7);
        SubsetFunction f(size);
        for (std::uint32_t s = 0; s < f.table_size(); ++s)
            f[s] = static_cast<long>(rng() % 201) - 100;
        CHECK(mobius_inverse(subset_sum(f)) == f);
    }
}

TEST_CASE("block counts: examples")
{
    auto r = block_count_check({2, 3});
    CHECK(r.passed());
    CHECK(r.sum_f_real == 5);
    CHECK(r.g_real_full_minus_one == 5);
    auto c = counting_functions({2, 3});
    CHECK(c.f_real[0b01] == 1);
    CHECK(c.f_real[0b10] == 2);
    CHECK(c.f_real[0b11] == 2);

    auto r2 = block_count_check({2, 2});
    CHECK(r2.sum_f_complex == 1);
    auto c2 = counting_functions({2, 2});
    CHECK(c2.f_complex[0b01] == 0);
    CHECK(c2.f_complex[0b11] == 1);

    auto c3 = counting_functions({8});
    CHECK(c3.f_complex[1] == Rational(8, 2) - 1);
    CHECK(block_count_check({8}).passed());
    CHECK_THROWS_AS(block_count_check({}), InputError);
    CHECK_THROWS_AS(block_count_check({1, 3}), InputError);
}

TEST_CASE("block counts: exhaustive, r <= 4, degrees in [2, 6]")
{
    for (int r = 1; r <= 4; ++r) {
        std::vector<std::int64_t> d(r, 2);
        while (true) {
            REQUIRE(block_count_check(d).passed());
            int i = 0;
            for (; i < r; ++i) {
                if (++d[i] <= 6)
                    break;
                d[i] = 2;
            }
            if (i == r)
                break;
        }
    }
}

TEST_CASE("predicted_block_size")
{
    CHECK(predicted_block_size({2, 3}, {true, true}, 0b11) == 2);
    CHECK(predicted_block_size({6}, {false}, 0b1) == 2);
    CHECK(predicted_block_size({2, 6}, {true, false}, 0b11) == 2);
    CHECK_THROWS_AS(predicted_block_size({2}, {true}, 0), InputError);
    // full cyclotomic fields: the blocks add up to phi(n)/2 - 1
    std::int64_t sum = 0;
    for (std::uint32_t s = 1; s < 8; ++s)
        sum += predicted_block_size({2, 4, 6}, {false, false, false}, s);
    CHECK(sum == 2 * 4 * 6 / 2 - 1);
}
