#pragma once

// Functions on the subsets of a finite ground set E = {0, ..., size-1}, with
// the convolution (f * g)(S) = sum_{X subset S} f(X) g(S \ X). Subsets are
// bitmasks. The unit is the indicator of the empty set; the constant function
// 1 is invertible with inverse mu(S) = (-1)^|S|.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace cyclo {

using Rational = boost::multiprecision::mpq_rational;

constexpr int kMaxGroundSize = 20;

class SubsetFunction {
public:
    explicit SubsetFunction(int ground_size);

    static SubsetFunction unit(int ground_size);
    static SubsetFunction ones(int ground_size);

    int ground_size() const { return ground_size_; }
    std::size_t table_size() const { return table_.size(); }
    Rational& operator[](std::uint32_t subset) { return table_.at(subset); }
    const Rational& operator[](std::uint32_t subset) const { return table_.at(subset); }
    bool operator==(const SubsetFunction&) const = default;

private:
    int ground_size_;
    std::vector<Rational> table_;
};

SubsetFunction convolve(const SubsetFunction& f, const SubsetFunction& g);
SubsetFunction mobius(int ground_size);

// g(S) = sum_{X subset S} f(X), and its inverse sum_{X subset S} (-1)^{|S|-|X|} g(X).
SubsetFunction subset_sum(const SubsetFunction& f);
SubsetFunction mobius_inverse(const SubsetFunction& g);

// The four counting functions; all map the empty set to 1.
//   f_C(S) = prod(d-1)/2 + (-1)^|S|/2     f_R(S) = prod(d-1)
//   g_C(S) = prod(d)/2                    g_R(S) = prod(d)
struct CountingFunctions {
    SubsetFunction f_complex, f_real, g_complex, g_real;
};
CountingFunctions counting_functions(const std::vector<std::int64_t>& degrees);

struct BlockCountReport {
    std::vector<std::int64_t> degrees;
    Rational sum_f_complex, g_complex_full_minus_one;
    Rational sum_f_real, g_real_full_minus_one;
    bool sum_complex_holds = false;
    bool sum_real_holds = false;
    // mu * g_C = f_C and mu * g_R = f_R on every subset.
    bool convolution_complex_holds = false;
    bool convolution_real_holds = false;

    bool passed() const
    {
        return sum_complex_holds && sum_real_holds && convolution_complex_holds && convolution_real_holds;
    }
};

// Requires 1 <= |degrees| <= 12 and every degree >= 2.
BlockCountReport block_count_check(const std::vector<std::int64_t>& degrees);

// Number of basis elements a totally deployed field contributes at level S:
//   prod_{S}(d-1)                                          if S has no non-real factor
//   prod_{S}(d-1)/2 + (-1)^{#non-real}/2 * prod_{real}(d-1)  otherwise
std::int64_t predicted_block_size(const std::vector<std::int64_t>& degrees, const std::vector<bool>& real,
                                  std::uint32_t subset);

} // namespace cyclo
