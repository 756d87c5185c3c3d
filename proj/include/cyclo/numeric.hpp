#pragma once

// High-precision evaluation of unit symbols at the complex embeddings of
// Q(zeta_n). Embedding k (k prime to n, 1 <= k < n/2) sends zeta_m to
// exp(2 pi i k / m). Each atom 1 - exp(2 pi i r), r in (0, 1), is evaluated in
// polar form: modulus 2 sin(pi r), argument pi (r - 1/2).

#include <complex>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "cyclo/unit_symbol.hpp"

namespace cyclo {

using Real = boost::multiprecision::mpfr_float;

constexpr int kDefaultBits = 256;
constexpr int kMaxBits = 4096;

// Sets the working precision of newly created Real values for its lifetime.
class PrecisionScope {
public:
    explicit PrecisionScope(int bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

struct Polar {
    Real log_abs;
    Real arg; // not reduced mod 2 pi
};

struct EmbeddingVector {
    std::vector<std::int64_t> embeddings;
    std::vector<Real> values; // log |tau_k(x)|
    int bits = kDefaultBits;
};

std::vector<std::int64_t> embedding_residues(const FieldSpec& f);

Polar evaluate(const UnitSymbol& x, std::int64_t k, int bits = kDefaultBits);
EmbeddingVector numeric_embed(const UnitSymbol& x, int bits = kDefaultBits);

EmbeddingVector operator+(const EmbeddingVector& a, const EmbeddingVector& b);
EmbeddingVector scaled(const EmbeddingVector& a, std::int64_t k);
Real max_abs_difference(const EmbeddingVector& a, const EmbeddingVector& b);

// Rank by modified Gram-Schmidt. The rank must agree at tol / 10 and tol * 10,
// otherwise PrecisionError.
int numeric_rank(const std::vector<EmbeddingVector>& vectors, double tol = 1e-8);

// Order of the root-of-unity group of Q(zeta_n): 2n for odd n, n for even n.
std::int64_t roots_of_unity_order(std::int64_t n);

// True iff u / v is a root of unity of Q(zeta_n). Throws InputError if the
// modulus of u / v is not 1 within 1e-8.
bool root_of_unity_quotient(std::complex<double> u, std::complex<double> v, std::int64_t n);
bool root_of_unity_quotient(const Polar& u, const Polar& v, std::int64_t n);

// 1 if x lies in mu(K) E^+, 2 otherwise. Raises PrecisionError when the test
// stays in the ambiguous band up to kMaxBits.
int hasse_order(const UnitSymbol& x, int bits = kDefaultBits);

} // namespace cyclo
