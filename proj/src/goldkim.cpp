#include "cyclo/goldkim.hpp"

#include <algorithm>
#include <sstream>

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

constexpr int kMaxDepth = 4096;

int last_nonzero(std::span<const std::int32_t> t)
{
    for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i)
        if (t[i] != 0)
            return i;
    return -1;
}

} // namespace

std::strong_ordering tuple_order(const GKIndex& x, const GKIndex& y)
{
    if (auto c = level_size(y.omega) <=> level_size(x.omega); c != 0)
        return c;
    if (auto c = level_members(x.omega) <=> level_members(y.omega); c != 0)
        return c;
    return inverse_lex(x.tuple, y.tuple);
}

bool is_gk_index(const FieldSpec& f, const GKIndex& g)
{
    if (g.omega == 0 || g.omega > f.full_level())
        return false;
    const auto members = level_members(g.omega);
    if (members.size() != g.tuple.size())
        return false;
    if (members.size() == 1)
        return g.tuple[0] >= 1 && g.tuple[0] < f.factor(members[0]).half();
    const int k = last_nonzero(g.tuple);
    if (k < 0)
        return members.size() % 2 == 0;
    for (int i = 0; i < k; ++i)
        if (g.tuple[i] < 1 || g.tuple[i] >= f.factor(members[i]).phi)
            return false;
    return g.tuple[k] < f.factor(members[k]).half();
}

std::vector<GKIndex> enumerate_basis(const FieldSpec& f)
{
    std::vector<GKIndex> out;
    for (Level omega = 1; omega <= f.full_level(); ++omega) {
        const auto members = level_members(omega);
        const int s = static_cast<int>(members.size());
        if (s == 1) {
            for (std::int32_t a = 1; a < f.factor(members[0]).half(); ++a)
                out.push_back({omega, {a}});
            continue;
        }
        if (s % 2 == 0)
            out.push_back({omega, std::vector<std::int32_t>(s, 0)});
        for (int k = 0; k < s; ++k) {
            // odometer over a_0..a_{k-1} in [1, phi) and a_k in [1, half)
            std::vector<std::int32_t> t(s, 0);
            for (int i = 0; i < k; ++i)
                t[i] = 1;
            t[k] = 1;
            if (f.factor(members[k]).half() <= 1)
                continue;
            bool empty = false;
            for (int i = 0; i < k; ++i)
                if (f.factor(members[i]).phi <= 1)
                    empty = true;
            if (empty)
                continue;
            while (true) {
                out.push_back({omega, t});
                int i = 0;
                for (; i <= k; ++i) {
                    const auto limit = i == k ? f.factor(members[i]).half() : f.factor(members[i]).phi;
                    if (++t[i] < limit)
                        break;
                    t[i] = 1;
                }
                if (i > k)
                    break;
            }
        }
    }
    std::sort(out.begin(), out.end(), tuple_order_less);
    return out;
}

UnitSymbol xi_symbol(const FieldRef& field, int j, std::int32_t a)
{
    if (j < 0 || j >= field->rank())
        throw InputError("xi: factor position out of range");
    if (a < 1 || a >= field->factor(j).half())
        throw InputError("xi: index " + std::to_string(a) + " outside [1, " +
                         std::to_string(field->factor(j).half()) + ")");
    const Level omega = Level{1} << j;
    UnitSymbol x(field);
    x.add(omega, {a}, 1);
    x.add(omega, {0}, -1);
    return x;
}

UnitSymbol basis_symbol(const FieldRef& field, const GKIndex& g)
{
    if (!is_gk_index(*field, g))
        throw InputError("not a Gold-Kim index: " + format_index(g));
    if (g.is_xi())
        return xi_symbol(field, level_members(g.omega)[0], g.tuple[0]);
    return UnitSymbol::atom(field, g.omega, g.tuple);
}

UnitSymbol reconstruct(const FieldRef& field, const ExponentVector& v)
{
    UnitSymbol out(field);
    for (const auto& [g, e] : v)
        out = mul(out, pow(basis_symbol(field, g), e));
    return out;
}

std::string format_index(const GKIndex& g)
{
    std::ostringstream os;
    if (g.is_xi())
        os << "xi";
    os << '(';
    const auto members = level_members(g.omega);
    for (std::size_t i = 0; i < members.size(); ++i)
        os << (i ? "," : "") << members[i] + 1;
    os << ';';
    for (std::size_t i = 0; i < g.tuple.size(); ++i)
        os << (i ? "," : "") << g.tuple[i];
    os << ')';
    return os.str();
}

GoldKim::GoldKim(FieldRef field) : field_(std::move(field)), basis_(enumerate_basis(*field_))
{
    for (std::size_t i = 0; i < basis_.size(); ++i)
        positions_.emplace(basis_[i], i);
}

std::size_t GoldKim::position(const GKIndex& g) const
{
    auto it = positions_.find(g);
    if (it == positions_.end())
        throw InputError("not a Gold-Kim index: " + format_index(g));
    return it->second;
}

const GoldKim::Vec& GoldKim::reduce(const Atom& a) const
{
    if (auto it = memo_.find(a); it != memo_.end())
        return it->second;
    if (in_progress_.contains(a))
        throw InternalError("decomposition revisited an atom under reduction");
    if (++depth_ > kMaxDepth)
        throw InternalError("decomposition exceeded its depth bound");
    in_progress_.emplace(a, depth_);
    Vec v;
    try {
        v = compute(a);
    } catch (...) {
        in_progress_.erase(a);
        --depth_;
        throw;
    }
    in_progress_.erase(a);
    --depth_;
    return memo_.emplace(a, std::move(v)).first->second;
}

void GoldKim::add_atom(Vec& acc, std::int64_t sign, Level omega, std::vector<std::int32_t> t) const
{
    const auto& v = reduce(canonicalize_atom(*field_, omega, std::move(t)));
    for (std::size_t i = 0; i < acc.size(); ++i)
        acc[i] += sign * v[i];
}

void GoldKim::add_lower(Vec& acc, std::int64_t sign, Level omega, int pos, std::span<const std::int32_t> t) const
{
    const auto& f = *field_;
    const int j = level_members(omega)[pos];
    const Level lower = omega & ~(Level{1} << j);
    std::vector<std::int32_t> rest(t.begin(), t.end());
    rest.erase(rest.begin() + pos);
    const auto frob_inv = invert_on_level(f, lower, frobenius(f, f.factor(j).p, lower));
    auto shifted = compose_on_level(f, lower, frob_inv, rest);
    add_atom(acc, sign, lower, std::move(rest));
    add_atom(acc, -sign, lower, std::move(shifted));
}

GoldKim::Vec GoldKim::compute(const Atom& a) const
{
    const auto& f = *field_;
    const std::size_t nb = basis_.size();
    Vec acc(nb + static_cast<std::size_t>(f.rank()), 0);
    const auto members = level_members(a.omega);
    const int s = static_cast<int>(members.size());
    auto half = [&](int i) { return static_cast<std::int32_t>(f.factor(members[i]).half()); };
    auto phi = [&](int i) { return static_cast<std::int32_t>(f.factor(members[i]).phi); };

    if (s == 1) {
        acc[nb + members[0]] += 1;
        if (a.tuple[0] != 0)
            acc[position({a.omega, a.tuple})] += 1;
        return acc;
    }

    // Norm relations along positions k+1..s-1 of a tuple that is zero there,
    // keeping the term with coordinate phi/2 each time. After the last step the
    // kept atom is the J-flip of (J a_{<k}, a_k - h_k, 0, ..., 0).
    struct Chain {
        Vec partial;
        std::int64_t sign;
        Atom tail;
    };
    auto chain = [&](std::vector<std::int32_t> cur, int k) {
        Chain c{Vec(acc.size(), 0), 1, {}};
        for (int m = k + 1; m < s; ++m) {
            add_lower(c.partial, c.sign, a.omega, m, cur);
            for (std::int32_t x = 1; x < phi(m); ++x) {
                if (x == half(m))
                    continue;
                auto t = cur;
                t[m] = x;
                add_atom(c.partial, -c.sign, a.omega, std::move(t));
            }
            cur[m] = half(m);
            c.sign = -c.sign;
        }
        c.tail = canonicalize_atom(f, a.omega, std::move(cur));
        return c;
    };

    const int k = last_nonzero(a.tuple);
    if (k < 0) {
        if (s % 2 == 0) {
            acc[position({a.omega, a.tuple})] += 1;
            return acc;
        }
        // Odd all-zero tuple: the norm relation along the first position meets
        // this same atom again through the phi/2 term, giving 2x = rhs.
        add_lower(acc, 1, a.omega, 0, a.tuple);
        for (std::int32_t x = 1; x < phi(0); ++x) {
            if (x == half(0))
                continue;
            auto t = a.tuple;
            t[0] = x;
            add_atom(acc, -1, a.omega, std::move(t));
        }
        auto start = a.tuple;
        start[0] = half(0);
        auto c = chain(std::move(start), 0);
        if (!(c.tail == a) || c.sign != 1)
            throw InternalError("odd zero tuple did not close on itself");
        for (std::size_t i = 0; i < acc.size(); ++i) {
            acc[i] -= c.partial[i];
            if (acc[i] % 2 != 0)
                throw InternalError("odd zero tuple: right side is not divisible by 2");
            acc[i] /= 2;
        }
        return acc;
    }

    if (a.tuple[k] < half(k)) {
        int zero = -1;
        for (int i = 0; i < k; ++i) {
            if (a.tuple[i] == 0) {
                zero = i;
                break;
            }
        }
        if (zero < 0) {
            acc[position({a.omega, a.tuple})] += 1;
            return acc;
        }
        add_lower(acc, 1, a.omega, zero, a.tuple);
        for (std::int32_t x = 1; x < phi(zero); ++x) {
            auto t = a.tuple;
            t[zero] = x;
            add_atom(acc, -1, a.omega, std::move(t));
        }
        return acc;
    }

    if (k == s - 1)
        throw InternalError("atom is not canonical");
    auto c = chain(a.tuple, k);
    const auto& tail = reduce(c.tail);
    for (std::size_t i = 0; i < acc.size(); ++i)
        acc[i] = c.partial[i] + c.sign * tail[i];
    return acc;
}

GoldKim::Vec GoldKim::dense_with_residues(const UnitSymbol& x) const
{
    if (x.field() && !(*x.field() == *field_))
        throw SpecMismatchError("symbol belongs to a different field");
    if (!is_unit(x))
        throw NonUnitError("symbol is not a unit: " + to_string(x));
    Vec acc(basis_.size() + static_cast<std::size_t>(field_->rank()), 0);
    std::lock_guard lock(mutex_);
    for (const auto& [a, e] : x.terms()) {
        const auto& v = reduce(a);
        for (std::size_t i = 0; i < acc.size(); ++i)
            acc[i] += e * v[i];
    }
    for (std::size_t i = basis_.size(); i < acc.size(); ++i)
        if (acc[i] != 0)
            throw InternalError("unit decomposed with a nonzero singleton residue");
    return acc;
}

std::vector<std::int64_t> GoldKim::dense(const UnitSymbol& x) const
{
    auto v = dense_with_residues(x);
    v.resize(basis_.size());
    return v;
}

ExponentVector GoldKim::decompose(const UnitSymbol& x) const
{
    const auto v = dense(x);
    ExponentVector out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            out.emplace(basis_[i], v[i]);
    return out;
}

ExponentVector decompose(const UnitSymbol& x)
{
    if (!x.field())
        return {};
    return GoldKim(x.field()).decompose(x);
}

} // namespace cyclo
