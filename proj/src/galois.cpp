#include "cyclo/galois.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m)
{
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t m)
{
    std::int64_t result = 1 % m;
    base %= m;
    if (base < 0)
        base += m;
    while (exp > 0) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Returns (p, e) when q = p^e, or (0, 0) otherwise.
std::pair<std::int64_t, int> prime_power_parts(std::int64_t q)
{
    if (q < 2)
        return {0, 0};
    std::int64_t p = 0;
    for (std::int64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0)
        return {q, 1};
    int e = 0;
    while (q % p == 0) {
        q /= p;
        ++e;
    }
    if (q != 1)
        return {0, 0};
    return {p, e};
}

std::int64_t ext_inverse(std::int64_t a, std::int64_t m)
{
    std::int64_t g = m, x = 0, x1 = 1, a1 = a % m;
    if (a1 < 0)
        a1 += m;
    std::int64_t b = a1;
    while (b != 0) {
        std::int64_t t = g / b;
        std::tie(g, b) = std::make_pair(b, g - t * b);
        std::tie(x, x1) = std::make_pair(x1, x - t * x1);
    }
    if (g != 1)
        throw InternalError("inverse of non-unit residue");
    x %= m;
    return x < 0 ? x + m : x;
}

} // namespace

std::vector<int> level_members(Level omega)
{
    std::vector<int> out;
    for (int j = 0; omega != 0; ++j, omega >>= 1)
        if (omega & 1U)
            out.push_back(j);
    return out;
}

Level level_from_members(std::span<const int> members)
{
    Level omega = 0;
    for (int j : members)
        omega |= Level{1} << j;
    return omega;
}

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::int64_t euler_phi(std::int64_t n)
{
    std::int64_t result = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0)
                n /= p;
            result -= result / p;
        }
    }
    if (n > 1)
        result -= result / n;
    return result;
}

std::int64_t primitive_root(std::int64_t q)
{
    auto [p, e] = prime_power_parts(q);
    if (p == 0)
        throw InputError("primitive_root: " + std::to_string(q) + " is not a prime power");
    if (p == 2)
        throw InputError("primitive_root: modulus must be an odd prime power");
    const std::int64_t phi = euler_phi(q);
    std::vector<std::int64_t> prime_divisors;
    {
        std::int64_t m = phi;
        for (std::int64_t d = 2; d * d <= m; ++d) {
            if (m % d == 0) {
                prime_divisors.push_back(d);
                while (m % d == 0)
                    m /= d;
            }
        }
        if (m > 1)
            prime_divisors.push_back(m);
    }
    for (std::int64_t g = 2; g < q; ++g) {
        if (std::gcd(g, q) != 1)
            continue;
        bool ok = std::all_of(prime_divisors.begin(), prime_divisors.end(),
                              [&](std::int64_t r) { return powmod(g, phi / r, q) != 1; });
        if (ok)
            return g;
    }
    throw InternalError("no primitive root found for " + std::to_string(q));
}

FieldSpec::FieldSpec(std::int64_t n, std::vector<PrimeFactor> factors)
    : n_(n), factors_(std::move(factors))
{
    for (const auto& f : factors_) {
        std::vector<std::int64_t> exp(static_cast<std::size_t>(f.phi));
        std::vector<std::int32_t> log(static_cast<std::size_t>(f.q), -1);
        if (f.p == 2) {
            const std::int64_t h = f.phi / 2;
            for (std::int64_t a = 0; a < f.phi; ++a) {
                std::int64_t r = powmod(f.generator, a % h, f.q);
                if (a >= h)
                    r = (f.q - r) % f.q;
                exp[a] = r;
            }
        } else {
            std::int64_t r = 1;
            for (std::int64_t a = 0; a < f.phi; ++a) {
                exp[a] = r;
                r = mulmod(r, f.generator, f.q);
            }
        }
        for (std::int64_t a = 0; a < f.phi; ++a) {
            if (log[exp[a]] != -1)
                throw InternalError("local generator does not generate the group");
            log[exp[a]] = static_cast<std::int32_t>(a);
        }
        exp_tables_.push_back(std::move(exp));
        log_tables_.push_back(std::move(log));
    }
}

std::int64_t FieldSpec::phi_n() const
{
    std::int64_t r = 1;
    for (const auto& f : factors_)
        r *= f.phi;
    return r;
}

bool FieldSpec::is_even() const
{
    return std::any_of(factors_.begin(), factors_.end(), [](const PrimeFactor& f) { return f.p == 2; });
}

std::int64_t FieldSpec::level_modulus(Level omega) const
{
    std::int64_t m = 1;
    for (int j : level_members(omega))
        m *= factors_.at(j).q;
    return m;
}

std::int64_t FieldSpec::decode_local(int j, std::int32_t index) const
{
    return exp_tables_[j].at(static_cast<std::size_t>(index));
}

std::int32_t FieldSpec::encode_local(int j, std::int64_t residue) const
{
    const auto q = factors_[j].q;
    residue %= q;
    if (residue < 0)
        residue += q;
    const auto idx = log_tables_[j][static_cast<std::size_t>(residue)];
    if (idx < 0)
        throw InputError("residue " + std::to_string(residue) + " is not a unit mod " + std::to_string(q));
    return idx;
}

std::int32_t FieldSpec::compose_local(int j, std::int32_t a, std::int32_t b) const
{
    return encode_local(j, mulmod(decode_local(j, a), decode_local(j, b), factors_[j].q));
}

std::int32_t FieldSpec::invert_local(int j, std::int32_t a) const
{
    return encode_local(j, ext_inverse(decode_local(j, a), factors_[j].q));
}

std::int32_t FieldSpec::flip_local(int j, std::int32_t a) const
{
    const auto h = factors_[j].half();
    return static_cast<std::int32_t>(a < h ? a + h : a - h);
}

FieldRef FieldSpec::permuted(std::span<const int> perm) const
{
    if (static_cast<int>(perm.size()) != rank())
        throw InputError("permutation size mismatch");
    std::vector<bool> seen(perm.size(), false);
    std::vector<PrimeFactor> fs;
    for (int old : perm) {
        if (old < 0 || old >= rank() || seen[old])
            throw InputError("invalid factor permutation");
        seen[old] = true;
        fs.push_back(factors_[old]);
    }
    return std::make_shared<const FieldSpec>(n_, std::move(fs));
}

bool FieldSpec::ascending() const
{
    for (int j = 0; j < rank(); ++j)
        if (factors_[j].original_position != j)
            return false;
    return true;
}

bool FieldSpec::operator==(const FieldSpec& other) const
{
    if (n_ != other.n_ || rank() != other.rank())
        return false;
    for (int j = 0; j < rank(); ++j)
        if (factors_[j].p != other.factors_[j].p)
            return false;
    return true;
}

FieldRef factorize_conductor(std::int64_t n)
{
    if (n <= 2)
        throw ConductorError("conductor must be at least 3, got " + std::to_string(n));
    if (n % 4 == 2)
        throw ConductorError("conductor " + std::to_string(n) +
                             " is 2 mod 4; use n/2, which defines the same cyclotomic field");
    std::vector<PrimeFactor> fs;
    std::int64_t m = n;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0)
            continue;
        PrimeFactor f;
        f.p = p;
        f.q = 1;
        while (m % p == 0) {
            m /= p;
            f.q *= p;
            ++f.e;
        }
        fs.push_back(f);
    }
    if (m > 1)
        fs.push_back(PrimeFactor{m, 1, m, 0, 0, 0});
    for (std::size_t j = 0; j < fs.size(); ++j) {
        auto& f = fs[j];
        f.phi = euler_phi(f.q);
        f.generator = f.p == 2 ? 5 : primitive_root(f.q);
        f.original_position = static_cast<int>(j);
    }
    if (fs.size() > 20)
        throw InputError("too many prime factors");
    return std::make_shared<const FieldSpec>(n, std::move(fs));
}

GaloisElement GaloisElement::identity(const FieldSpec& f)
{
    return GaloisElement(std::vector<std::int32_t>(static_cast<std::size_t>(f.rank()), 0));
}

GaloisElement GaloisElement::from_residue(const FieldSpec& f, std::int64_t u)
{
    if (std::gcd(u, f.n()) != 1)
        throw InputError("residue " + std::to_string(u) + " is not prime to " + std::to_string(f.n()));
    std::vector<std::int32_t> idx;
    for (int j = 0; j < f.rank(); ++j)
        idx.push_back(f.encode_local(j, u));
    return GaloisElement(std::move(idx));
}

GaloisElement GaloisElement::local(const FieldSpec& f, int j, std::int32_t a)
{
    auto g = identity(f);
    const auto phi = f.factor(j).phi;
    g.idx_[j] = static_cast<std::int32_t>(((a % phi) + phi) % phi);
    return g;
}

std::int64_t GaloisElement::residue(const FieldSpec& f) const
{
    // CRT over the prime-power factors.
    std::int64_t u = 0;
    for (int j = 0; j < f.rank(); ++j) {
        const auto q = f.factor(j).q;
        const auto m = f.n() / q;
        const auto r = f.decode_local(j, idx_[j]);
        const auto coeff = mulmod(m, ext_inverse(m % q, q), f.n());
        u = (u + mulmod(coeff, r, f.n())) % f.n();
    }
    return u;
}

bool GaloisElement::is_identity() const
{
    return std::all_of(idx_.begin(), idx_.end(), [](std::int32_t a) { return a == 0; });
}

std::vector<std::int32_t> GaloisElement::restrict_to(Level omega) const
{
    std::vector<std::int32_t> out;
    for (int j : level_members(omega))
        out.push_back(idx_.at(j));
    return out;
}

GaloisElement compose(const FieldSpec& f, const GaloisElement& g, const GaloisElement& h)
{
    if (g.size() != f.rank() || h.size() != f.rank())
        throw SpecMismatchError("Galois elements belong to different fields");
    std::vector<std::int32_t> idx(static_cast<std::size_t>(f.rank()));
    for (int j = 0; j < f.rank(); ++j)
        idx[j] = f.compose_local(j, g[j], h[j]);
    return GaloisElement(std::move(idx));
}

GaloisElement invert(const FieldSpec& f, const GaloisElement& g)
{
    if (g.size() != f.rank())
        throw SpecMismatchError("Galois element belongs to a different field");
    std::vector<std::int32_t> idx(static_cast<std::size_t>(f.rank()));
    for (int j = 0; j < f.rank(); ++j)
        idx[j] = f.invert_local(j, g[j]);
    return GaloisElement(std::move(idx));
}

GaloisElement local_conjugation(const FieldSpec& f, int j)
{
    return GaloisElement::local(f, j, static_cast<std::int32_t>(f.factor(j).half()));
}

GaloisElement conjugation(const FieldSpec& f)
{
    std::vector<std::int32_t> idx;
    for (const auto& pf : f.factors())
        idx.push_back(static_cast<std::int32_t>(pf.half()));
    return GaloisElement(std::move(idx));
}

std::vector<std::int32_t> frobenius(const FieldSpec& f, std::int64_t p, Level omega)
{
    if (!is_prime(p))
        throw InputError("frobenius: " + std::to_string(p) + " is not prime");
    std::vector<std::int32_t> out;
    for (int j : level_members(omega)) {
        if (f.factor(j).p == p)
            throw InputError("frobenius: " + std::to_string(p) + " divides the level modulus");
        out.push_back(f.encode_local(j, p));
    }
    return out;
}

std::vector<std::int32_t> compose_on_level(const FieldSpec& f, Level omega,
                                           std::span<const std::int32_t> a,
                                           std::span<const std::int32_t> b)
{
    const auto members = level_members(omega);
    std::vector<std::int32_t> out(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
        out[i] = f.compose_local(members[i], a[i], b[i]);
    return out;
}

std::vector<std::int32_t> invert_on_level(const FieldSpec& f, Level omega, std::span<const std::int32_t> a)
{
    const auto members = level_members(omega);
    std::vector<std::int32_t> out(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
        out[i] = f.invert_local(members[i], a[i]);
    return out;
}

GroupRingElement GroupRingElement::single(GaloisElement g, std::int64_t c)
{
    GroupRingElement u;
    u.add_term(g, c);
    return u;
}

void GroupRingElement::add_term(const GaloisElement& g, std::int64_t c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(g, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

std::int64_t GroupRingElement::coefficient(const GaloisElement& g) const
{
    auto it = terms_.find(g);
    return it == terms_.end() ? 0 : it->second;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& other) const
{
    GroupRingElement out = *this;
    for (const auto& [g, c] : other.terms_)
        out.add_term(g, c);
    return out;
}

GroupRingElement GroupRingElement::scaled(std::int64_t k) const
{
    GroupRingElement out;
    for (const auto& [g, c] : terms_)
        out.add_term(g, c * k);
    return out;
}

GroupRingElement multiply(const FieldSpec& f, const GroupRingElement& u, const GroupRingElement& v)
{
    GroupRingElement out;
    for (const auto& [g, a] : u.terms())
        for (const auto& [h, b] : v.terms())
            out.add_term(compose(f, g, h), a * b);
    return out;
}

std::vector<GaloisElement> subgroup_generated(const FieldSpec& f, std::span<const GaloisElement> gens)
{
    std::set<GaloisElement> seen{GaloisElement::identity(f)};
    std::vector<GaloisElement> frontier{GaloisElement::identity(f)};
    while (!frontier.empty()) {
        std::vector<GaloisElement> next;
        for (const auto& x : frontier) {
            for (const auto& g : gens) {
                auto y = compose(f, x, g);
                if (seen.insert(y).second)
                    next.push_back(std::move(y));
            }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

GroupRingElement norm_element(const FieldSpec& f, std::span<const GaloisElement> subgroup)
{
    std::set<GaloisElement> elems(subgroup.begin(), subgroup.end());
    if (elems.size() != subgroup.size())
        throw InputError("norm_element: repeated elements in subgroup descriptor");
    if (!elems.contains(GaloisElement::identity(f)))
        throw InputError("norm_element: descriptor does not contain the identity");
    for (const auto& g : elems)
        for (const auto& h : elems)
            if (!elems.contains(compose(f, g, h)))
                throw InputError("norm_element: descriptor is not closed under composition");
    GroupRingElement out;
    for (const auto& g : elems)
        out.add_term(g, 1);
    return out;
}

std::string format_tuple(std::span<const std::int32_t> t)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < t.size(); ++i)
        os << (i ? "," : "") << t[i];
    os << ')';
    return os.str();
}

} // namespace cyclo
