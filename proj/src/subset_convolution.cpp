#include "cyclo/subset_convolution.hpp"

#include "cyclo/errors.hpp"

namespace cyclo {

SubsetFunction::SubsetFunction(int ground_size) : ground_size_(ground_size)
{
    if (ground_size < 0 || ground_size > kMaxGroundSize)
        throw InputError("subset function ground set size must lie in [0, " + std::to_string(kMaxGroundSize) + "]");
    table_.assign(std::size_t{1} << ground_size, Rational(0));
}

SubsetFunction SubsetFunction::unit(int ground_size)
{
    SubsetFunction f(ground_size);
    f[0] = 1;
    return f;
}

SubsetFunction SubsetFunction::ones(int ground_size)
{
    SubsetFunction f(ground_size);
    for (std::uint32_t s = 0; s < f.table_size(); ++s)
        f[s] = 1;
    return f;
}

SubsetFunction convolve(const SubsetFunction& f, const SubsetFunction& g)
{
    if (f.ground_size() != g.ground_size())
        throw InputError("convolve: ground sets differ");
    SubsetFunction out(f.ground_size());
    for (std::uint32_t s = 0; s < out.table_size(); ++s) {
        Rational acc = 0;
        // every X subset of s, including s itself and the empty set
        for (std::uint32_t x = s;; x = (x - 1) & s) {
            acc += f[x] * g[s & ~x];
            if (x == 0)
                break;
        }
        out[s] = acc;
    }
    return out;
}

SubsetFunction mobius(int ground_size)
{
    SubsetFunction mu(ground_size);
    for (std::uint32_t s = 0; s < mu.table_size(); ++s)
        mu[s] = __builtin_popcount(s) % 2 == 0 ? 1 : -1;
    return mu;
}

SubsetFunction subset_sum(const SubsetFunction& f)
{
    return convolve(f, SubsetFunction::ones(f.ground_size()));
}

SubsetFunction mobius_inverse(const SubsetFunction& g)
{
    return convolve(mobius(g.ground_size()), g);
}

CountingFunctions counting_functions(const std::vector<std::int64_t>& degrees)
{
    const int r = static_cast<int>(degrees.size());
    CountingFunctions c{SubsetFunction(r), SubsetFunction(r), SubsetFunction(r), SubsetFunction(r)};
    for (std::uint32_t s = 0; s < c.f_real.table_size(); ++s) {
        if (s == 0) {
            c.f_complex[s] = c.f_real[s] = c.g_complex[s] = c.g_real[s] = 1;
            continue;
        }
        Rational prod_d = 1, prod_dm1 = 1;
        for (int i = 0; i < r; ++i) {
            if ((s >> i) & 1U) {
                prod_d *= degrees[i];
                prod_dm1 *= degrees[i] - 1;
            }
        }
        const Rational sign = __builtin_popcount(s) % 2 == 0 ? 1 : -1;
        c.f_complex[s] = prod_dm1 / 2 + sign / 2;
        c.f_real[s] = prod_dm1;
        c.g_complex[s] = prod_d / 2;
        c.g_real[s] = prod_d;
    }
    return c;
}

BlockCountReport block_count_check(const std::vector<std::int64_t>& degrees)
{
    if (degrees.empty() || degrees.size() > 12)
        throw InputError("block_count_check: need between 1 and 12 degrees");
    for (auto d : degrees)
        if (d < 2)
            throw InputError("block_count_check: degrees must be at least 2");
    const auto c = counting_functions(degrees);
    const int r = static_cast<int>(degrees.size());
    const std::uint32_t full = (std::uint32_t{1} << r) - 1;

    BlockCountReport rep;
    rep.degrees = degrees;
    rep.sum_f_complex = rep.sum_f_real = 0;
    for (std::uint32_t s = 1; s <= full; ++s) {
        rep.sum_f_complex += c.f_complex[s];
        rep.sum_f_real += c.f_real[s];
    }
    rep.g_complex_full_minus_one = c.g_complex[full] - 1;
    rep.g_real_full_minus_one = c.g_real[full] - 1;
    rep.sum_complex_holds = rep.sum_f_complex == rep.g_complex_full_minus_one;
    rep.sum_real_holds = rep.sum_f_real == rep.g_real_full_minus_one;

    const auto mu = mobius(r);
    const auto conv_c = convolve(mu, c.g_complex);
    const auto conv_r = convolve(mu, c.g_real);
    rep.convolution_complex_holds = rep.convolution_real_holds = true;
    for (std::uint32_t s = 1; s <= full; ++s) {
        if (conv_c[s] != c.f_complex[s])
            rep.convolution_complex_holds = false;
        if (conv_r[s] != c.f_real[s])
            rep.convolution_real_holds = false;
    }
    return rep;
}

std::int64_t predicted_block_size(const std::vector<std::int64_t>& degrees, const std::vector<bool>& real,
                                  std::uint32_t subset)
{
    if (subset == 0)
        throw InputError("predicted_block_size: empty level");
    if (degrees.size() != real.size() || subset >> degrees.size() != 0)
        throw InputError("predicted_block_size: level outside the degree list");
    Rational all = 1, real_part = 1;
    int complex_count = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (!((subset >> i) & 1U))
            continue;
        all *= degrees[i] - 1;
        if (real[i])
            real_part *= degrees[i] - 1;
        else
            ++complex_count;
    }
    Rational f = complex_count == 0 ? all : all / 2 + (complex_count % 2 == 0 ? real_part : -real_part) / 2;
    if (denominator(f) != 1 || f < 0)
        throw InternalError("predicted_block_size: not a nonnegative integer");
    return numerator(f).convert_to<std::int64_t>();
}

} // namespace cyclo
