#include "cyclo/numeric.hpp"

#include <cmath>
#include <numeric>

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

unsigned digits_for_bits(int bits)
{
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

Real pi_value()
{
    return 4 * atan(Real(1));
}

// 1 - exp(2 pi i num/den), 0 < num < den.
Polar atom_polar(std::int64_t num, std::int64_t den, const Real& pi)
{
    Real r = Real(num) / den;
    return {log(2 * sin(pi * r)), pi * (r - Real(1) / 2)};
}

} // namespace

PrecisionScope::PrecisionScope(int bits) : saved_(Real::default_precision())
{
    Real::default_precision(digits_for_bits(bits));
}

PrecisionScope::~PrecisionScope()
{
    Real::default_precision(saved_);
}

std::vector<std::int64_t> embedding_residues(const FieldSpec& f)
{
    std::vector<std::int64_t> out;
    for (std::int64_t k = 1; 2 * k < f.n(); ++k)
        if (std::gcd(k, f.n()) == 1)
            out.push_back(k);
    return out;
}

Polar evaluate(const UnitSymbol& x, std::int64_t k, int bits)
{
    PrecisionScope scope(bits);
    Polar out{Real(0), Real(0)};
    if (x.empty())
        return out;
    const auto& f = *x.field();
    const Real pi = pi_value();
    for (const auto& [a, e] : x.terms()) {
        const auto m = f.level_modulus(a.omega);
        const auto u = atom_residue(f, a);
        const auto num = static_cast<std::int64_t>(static_cast<__int128>(u) * (k % m) % m);
        if (num == 0)
            throw InternalError("embedding sends an atom to zero");
        auto p = atom_polar(num, m, pi);
        out.log_abs += e * p.log_abs;
        out.arg += e * p.arg;
    }
    return out;
}

EmbeddingVector numeric_embed(const UnitSymbol& x, int bits)
{
    EmbeddingVector out;
    out.bits = bits;
    if (!x.field())
        return out;
    PrecisionScope scope(bits);
    out.embeddings = embedding_residues(*x.field());
    for (auto k : out.embeddings)
        out.values.push_back(evaluate(x, k, bits).log_abs);
    return out;
}

EmbeddingVector operator+(const EmbeddingVector& a, const EmbeddingVector& b)
{
    if (a.values.empty())
        return b;
    if (b.values.empty())
        return a;
    if (a.embeddings != b.embeddings)
        throw SpecMismatchError("embedding vectors over different fields");
    PrecisionScope scope(std::max(a.bits, b.bits));
    EmbeddingVector out = a;
    out.bits = std::max(a.bits, b.bits);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = a.values[i] + b.values[i];
    return out;
}

EmbeddingVector scaled(const EmbeddingVector& a, std::int64_t k)
{
    PrecisionScope scope(a.bits);
    EmbeddingVector out = a;
    for (auto& v : out.values)
        v = v * k;
    return out;
}

Real max_abs_difference(const EmbeddingVector& a, const EmbeddingVector& b)
{
    PrecisionScope scope(std::max(a.bits, b.bits));
    const auto size = std::max(a.values.size(), b.values.size());
    Real worst = 0;
    for (std::size_t i = 0; i < size; ++i) {
        Real x = i < a.values.size() ? a.values[i] : Real(0);
        Real y = i < b.values.size() ? b.values[i] : Real(0);
        Real d = abs(x - y);
        if (d > worst)
            worst = d;
    }
    return worst;
}

namespace {

int rank_at(const std::vector<std::vector<Real>>& rows, const Real& tol)
{
    std::vector<std::vector<Real>> ortho;
    for (const auto& row : rows) {
        auto v = row;
        Real scale = 0;
        for (const auto& x : row)
            scale += x * x;
        scale = sqrt(scale);
        if (scale < 1)
            scale = 1;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : ortho) {
                Real dot = 0;
                for (std::size_t i = 0; i < v.size(); ++i)
                    dot += v[i] * q[i];
                for (std::size_t i = 0; i < v.size(); ++i)
                    v[i] -= dot * q[i];
            }
        }
        Real norm = 0;
        for (const auto& x : v)
            norm += x * x;
        norm = sqrt(norm);
        if (norm > tol * scale) {
            for (auto& x : v)
                x /= norm;
            ortho.push_back(std::move(v));
        }
    }
    return static_cast<int>(ortho.size());
}

} // namespace

int numeric_rank(const std::vector<EmbeddingVector>& vectors, double tol)
{
    if (vectors.empty())
        return 0;
    int bits = kDefaultBits;
    for (const auto& v : vectors)
        bits = std::max(bits, v.bits);
    PrecisionScope scope(bits);
    std::vector<std::vector<Real>> rows;
    for (const auto& v : vectors) {
        if (v.values.size() != vectors.front().values.size())
            throw SpecMismatchError("embedding vectors of different dimension");
        rows.push_back(v.values);
    }
    const int r = rank_at(rows, Real(tol));
    if (rank_at(rows, Real(tol) / 10) != r || rank_at(rows, Real(tol) * 10) != r)
        throw PrecisionError("numeric rank unstable across the tolerance band");
    return r;
}

std::int64_t roots_of_unity_order(std::int64_t n)
{
    return n % 2 == 1 ? 2 * n : n;
}

bool root_of_unity_quotient(std::complex<double> u, std::complex<double> v, std::int64_t n)
{
    if (v == std::complex<double>(0, 0))
        throw InputError("root_of_unity_quotient: zero denominator");
    const auto z = u / v;
    if (std::abs(std::abs(z) - 1) > 1e-8)
        throw InputError("root_of_unity_quotient: quotient is not on the unit circle");
    const auto m = roots_of_unity_order(n);
    const double theta = std::arg(z) * static_cast<double>(m);
    return std::abs(std::polar(1.0, theta) - 1.0) < 1e-6;
}

bool root_of_unity_quotient(const Polar& u, const Polar& v, std::int64_t n)
{
    PrecisionScope scope(kDefaultBits);
    if (abs(u.log_abs - v.log_abs) > Real(1e-8))
        throw InputError("root_of_unity_quotient: quotient is not on the unit circle");
    const auto m = roots_of_unity_order(n);
    Real half_angle = (u.arg - v.arg) * m / 2;
    return 2 * abs(sin(half_angle)) < Real(1e-6);
}

int hasse_order(const UnitSymbol& x, int bits)
{
    if (!is_unit(x))
        throw NonUnitError("hasse_order needs a unit: " + to_string(x));
    if (x.empty())
        return 1;
    const auto m = roots_of_unity_order(x.field()->n());
    for (int b = bits; b <= kMaxBits; b *= 2) {
        PrecisionScope scope(b);
        const auto p = evaluate(x, 1, b);
        // |z^m - 1| = 2 |sin(m arg / 2)| for z = u / |u|.
        Real d = 2 * abs(sin(p.arg * m / 2));
        if (d < Real(1e-6))
            return 1;
        if (d > Real(1e-2))
            return 2;
    }
    throw PrecisionError("hasse_order: result stayed in the ambiguous band up to " + std::to_string(kMaxBits) +
                         " bits");
}

} // namespace cyclo
