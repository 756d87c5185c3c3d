#include "cyclo/unit_symbol.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <sstream>

#include "cyclo/errors.hpp"

namespace cyclo {

std::strong_ordering Atom::operator<=>(const Atom& other) const
{
    if (auto c = level_size(omega) <=> level_size(other.omega); c != 0)
        return c;
    if (auto c = level_members(omega) <=> level_members(other.omega); c != 0)
        return c;
    return tuple <=> other.tuple;
}

std::strong_ordering inverse_lex(std::span<const std::int32_t> a, std::span<const std::int32_t> b)
{
    if (auto c = a.size() <=> b.size(); c != 0)
        return c;
    for (std::size_t i = a.size(); i-- > 0;)
        if (auto c = a[i] <=> b[i]; c != 0)
            return c;
    return std::strong_ordering::equal;
}

std::vector<std::int32_t> flip_tuple(const FieldSpec& f, Level omega, std::span<const std::int32_t> a)
{
    const auto members = level_members(omega);
    std::vector<std::int32_t> out(a.begin(), a.end());
    for (std::size_t i = 0; i < members.size(); ++i)
        out[i] = f.flip_local(members[i], a[i]);
    return out;
}

Atom canonicalize_atom(const FieldSpec& f, Level omega, std::vector<std::int32_t> tuple)
{
    if (omega == 0)
        throw InputError("atom level must be nonempty");
    if (omega > f.full_level())
        throw InputError("atom level outside the field");
    const auto members = level_members(omega);
    if (members.size() != tuple.size())
        throw InputError("atom tuple length " + std::to_string(tuple.size()) + " does not match level size " +
                         std::to_string(members.size()));
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto phi = f.factor(members[i]).phi;
        if (tuple[i] < 0 || tuple[i] >= phi)
            throw InputError("atom coordinate " + std::to_string(tuple[i]) + " out of range [0," +
                             std::to_string(phi) + ")");
    }
    auto flipped = flip_tuple(f, omega, tuple);
    if (inverse_lex(flipped, tuple) < 0)
        tuple = std::move(flipped);
    return Atom{omega, std::move(tuple)};
}

std::int64_t atom_residue(const FieldSpec& f, const Atom& a)
{
    const auto members = level_members(a.omega);
    const auto m = f.level_modulus(a.omega);
    // CRT: u = sum_i r_i * M_i * (M_i^{-1} mod q_i), M_i = m / q_i.
    __int128 u = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto q = f.factor(members[i]).q;
        const auto rest = m / q;
        std::int64_t g = q, x = 0, x1 = 1, b = rest % q;
        while (b != 0) {
            const auto t = g / b;
            std::tie(g, b) = std::make_pair(b, g - t * b);
            std::tie(x, x1) = std::make_pair(x1, x - t * x1);
        }
        const auto inv = ((x % q) + q) % q;
        u += static_cast<__int128>(rest) * (inv * f.decode_local(members[i], a.tuple[i]) % q);
    }
    return static_cast<std::int64_t>(u % m);
}

UnitSymbol UnitSymbol::atom(FieldRef field, Level omega, std::vector<std::int32_t> tuple, std::int64_t e)
{
    UnitSymbol x(std::move(field));
    x.add(omega, std::move(tuple), e);
    return x;
}

std::int64_t UnitSymbol::exponent(const Atom& a) const
{
    auto it = terms_.find(a);
    return it == terms_.end() ? 0 : it->second;
}

void UnitSymbol::add(Level omega, std::vector<std::int32_t> tuple, std::int64_t e)
{
    if (!field_)
        throw InternalError("unit symbol without a field");
    add(canonicalize_atom(*field_, omega, std::move(tuple)), e);
}

void UnitSymbol::add(const Atom& canonical, std::int64_t e)
{
    if (e == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(canonical, e);
    if (!inserted) {
        it->second += e;
        if (it->second == 0)
            terms_.erase(it);
    }
}

bool UnitSymbol::operator==(const UnitSymbol& other) const
{
    if (terms_ != other.terms_)
        return false;
    if (terms_.empty())
        return true;
    return field_ && other.field_ && *field_ == *other.field_;
}

namespace {

void check_same_field(const UnitSymbol& x, const UnitSymbol& y)
{
    if (!x.field() || !y.field())
        return;
    if (!(*x.field() == *y.field()))
        throw SpecMismatchError("unit symbols belong to different fields");
}

} // namespace

UnitSymbol mul(const UnitSymbol& x, const UnitSymbol& y)
{
    check_same_field(x, y);
    UnitSymbol out(x.field() ? x.field() : y.field());
    for (const auto& [a, e] : x.terms())
        out.add(a, e);
    for (const auto& [a, e] : y.terms())
        out.add(a, e);
    return out;
}

UnitSymbol pow(const UnitSymbol& x, std::int64_t k)
{
    UnitSymbol out(x.field());
    for (const auto& [a, e] : x.terms())
        out.add(a, e * k);
    return out;
}

UnitSymbol galois_act(const GroupRingElement& u, const UnitSymbol& x)
{
    UnitSymbol out(x.field());
    if (x.empty())
        return out;
    const auto& f = *x.field();
    for (const auto& [g, c] : u.terms()) {
        if (g.size() != f.rank())
            throw SpecMismatchError("group ring element belongs to a different field");
        for (const auto& [a, e] : x.terms()) {
            auto shifted = compose_on_level(f, a.omega, g.restrict_to(a.omega), a.tuple);
            out.add(a.omega, std::move(shifted), c * e);
        }
    }
    return out;
}

std::pair<UnitSymbol, UnitSymbol> norm_relation_sides(const FieldRef& field, const Atom& a, int j)
{
    const auto& f = *field;
    if (level_size(a.omega) < 2)
        throw InputError("norm relation needs a level with at least two factors");
    if (!level_contains(a.omega, j))
        throw InputError("norm relation factor not in the atom level");
    const auto members = level_members(a.omega);
    const auto pos = static_cast<std::size_t>(std::find(members.begin(), members.end(), j) - members.begin());
    const Level lower = a.omega & ~(Level{1} << j);

    UnitSymbol lhs(field);
    for (std::int64_t c = 0; c < f.factor(j).phi; ++c) {
        auto t = a.tuple;
        t[pos] = static_cast<std::int32_t>(c);
        lhs.add(a.omega, std::move(t), 1);
    }
    auto rest = a.tuple;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
    const auto frob = frobenius(f, f.factor(j).p, lower);
    const auto shifted = compose_on_level(f, lower, invert_on_level(f, lower, frob), rest);
    UnitSymbol rhs(field);
    rhs.add(lower, rest, 1);
    rhs.add(lower, shifted, -1);
    return {lhs, rhs};
}

UnitSymbol norm_relation_expand(const FieldRef& field, const Atom& a, int j)
{
    auto [lhs, rhs] = norm_relation_sides(field, a, j);
    // a = rhs - (lhs - a)
    auto out = mul(rhs, pow(lhs, -1));
    out.add(canonicalize_atom(*field, a.omega, a.tuple), 1);
    return out;
}

bool is_unit(const UnitSymbol& x)
{
    std::map<Level, std::int64_t> singleton_sums;
    for (const auto& [a, e] : x.terms())
        if (level_size(a.omega) == 1)
            singleton_sums[a.omega] += e;
    for (const auto& [lvl, s] : singleton_sums)
        if (s != 0)
            return false;
    return true;
}

UnitSymbol transport(const UnitSymbol& x, const FieldRef& target)
{
    UnitSymbol out(target);
    if (x.empty())
        return out;
    const auto& src = *x.field();
    if (src.n() != target->n() || src.rank() != target->rank())
        throw SpecMismatchError("transport between different conductors");
    std::vector<int> where(static_cast<std::size_t>(src.rank()), -1);
    for (int j = 0; j < src.rank(); ++j)
        for (int i = 0; i < target->rank(); ++i)
            if (target->factor(i).p == src.factor(j).p)
                where[j] = i;
    for (const auto& [a, e] : x.terms()) {
        const auto members = level_members(a.omega);
        std::vector<std::pair<int, std::int32_t>> mapped;
        for (std::size_t i = 0; i < members.size(); ++i)
            mapped.emplace_back(where[members[i]], a.tuple[i]);
        std::sort(mapped.begin(), mapped.end());
        Level omega = 0;
        std::vector<std::int32_t> t;
        for (const auto& [pos, v] : mapped) {
            omega |= Level{1} << pos;
            t.push_back(v);
        }
        out.add(omega, std::move(t), e);
    }
    return out;
}

std::string to_string(const UnitSymbol& x)
{
    if (x.empty())
        return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, e] : x.terms()) {
        if (!first)
            os << " * ";
        first = false;
        os << '(';
        const auto members = level_members(a.omega);
        for (std::size_t i = 0; i < members.size(); ++i)
            os << (i ? "," : "") << members[i] + 1;
        os << ';';
        for (std::size_t i = 0; i < a.tuple.size(); ++i)
            os << (i ? "," : "") << a.tuple[i];
        os << ")^" << e;
    }
    return os.str();
}

namespace {

struct SymbolParser {
    const std::string& s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw InputError("symbol parse error at offset " + std::to_string(pos) + ": " + what);
    }
    void skip_ws()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool accept(char c)
    {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }
    std::int64_t integer()
    {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+'))
            ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos == digits)
            fail("expected integer");
        if (pos - digits > 17)
            fail("integer too large");
        return std::stoll(s.substr(start, pos - start));
    }
    std::vector<std::int64_t> csv()
    {
        std::vector<std::int64_t> out{integer()};
        while (accept(','))
            out.push_back(integer());
        return out;
    }
};

} // namespace

UnitSymbol parse_symbol(const FieldRef& field, const std::string& text)
{
    UnitSymbol out(field);
    SymbolParser p{text};
    p.skip_ws();
    if (p.pos < text.size() && text[p.pos] == '1') {
        ++p.pos;
        p.skip_ws();
        if (p.pos != text.size())
            p.fail("trailing input after empty symbol");
        return out;
    }
    do {
        p.expect('(');
        auto omega_list = p.csv();
        p.expect(';');
        auto tuple_list = p.csv();
        p.expect(')');
        std::int64_t e = 1;
        if (p.accept('^'))
            e = p.integer();
        std::vector<int> members;
        for (auto m : omega_list) {
            if (m < 1 || m > field->rank())
                p.fail("factor position " + std::to_string(m) + " out of range");
            members.push_back(static_cast<int>(m - 1));
        }
        for (std::size_t i = 1; i < members.size(); ++i)
            if (members[i] <= members[i - 1])
                p.fail("level members must be strictly increasing");
        std::vector<std::int32_t> tuple;
        for (auto t : tuple_list)
            tuple.push_back(static_cast<std::int32_t>(t));
        out.add(level_from_members(members), std::move(tuple), e);
    } while (p.accept('*'));
    p.skip_ws();
    if (p.pos != text.size())
        p.fail("trailing input");
    return out;
}

} // namespace cyclo
