#include "cyclo/deployed.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "cyclo/errors.hpp"
#include "cyclo/numeric.hpp"
#include "cyclo/subset_convolution.hpp"

namespace cyclo {

namespace {

using Subgroup = std::vector<std::int32_t>;

Subgroup closure(const FieldSpec& f, int j, const std::vector<std::int32_t>& gens)
{
    std::set<std::int32_t> seen{0};
    std::vector<std::int32_t> frontier{0};
    while (!frontier.empty()) {
        std::vector<std::int32_t> next;
        for (auto x : frontier)
            for (auto g : gens) {
                auto y = f.compose_local(j, x, g);
                if (seen.insert(y).second)
                    next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

// K_j has conductor q_j unless H_j contains every element that is 1 mod q_j/p_j.
bool full_conductor(const FieldSpec& f, int j, const Subgroup& h)
{
    const auto& pf = f.factor(j);
    const auto m = pf.q / pf.p;
    for (std::int32_t x = 0; x < pf.phi; ++x)
        if (f.decode_local(j, x) % m == 1 % m && !std::binary_search(h.begin(), h.end(), x))
            return true;
    return false;
}

bool contains_j(const FieldSpec& f, int j, const Subgroup& h)
{
    return std::binary_search(h.begin(), h.end(), static_cast<std::int32_t>(f.factor(j).half()));
}

std::string describe(const FieldSpec& f, int j, const Subgroup& h)
{
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < h.size(); ++i)
        os << (i ? "," : "") << f.decode_local(j, h[i]);
    os << "}";
    return os.str();
}

Subgroup two_part_subgroup(const FieldSpec& f, int j, std::int64_t d, const std::vector<std::int64_t>& selector)
{
    const auto& pf = f.factor(j);
    const auto order = pf.phi / d;
    if (!selector.empty()) {
        std::vector<std::int32_t> gens;
        for (auto r : selector) {
            const auto x = ((r % pf.q) + pf.q) % pf.q;
            if (x % 2 == 0)
                throw InputError("two-subgroup generator " + std::to_string(r) + " is not a unit mod " +
                                 std::to_string(pf.q));
            gens.push_back(f.encode_local(j, x));
        }
        auto h = closure(f, j, gens);
        if (static_cast<std::int64_t>(h.size()) != order)
            throw InputError("two-subgroup " + describe(f, j, h) + " does not have index " + std::to_string(d));
        if (!full_conductor(f, j, h))
            throw ConductorError("the subfield of Q(zeta_" + std::to_string(pf.q) + ") fixed by " +
                                 describe(f, j, h) + " has smaller conductor (prime 2)");
        return h;
    }
    // Every subgroup of (Z/2^e)* is generated by at most two elements.
    std::set<Subgroup> found;
    for (std::int32_t a = 0; a < pf.phi; ++a)
        for (std::int32_t b = a; b < pf.phi; ++b) {
            auto h = closure(f, j, {a, b});
            if (static_cast<std::int64_t>(h.size()) == order && full_conductor(f, j, h))
                found.insert(std::move(h));
        }
    if (found.empty())
        throw ConductorError("no subfield of degree " + std::to_string(d) + " of Q(zeta_" + std::to_string(pf.q) +
                             ") has conductor " + std::to_string(pf.q) + " (prime 2)");
    if (found.size() > 1) {
        std::string list;
        for (const auto& h : found)
            list += " " + describe(f, j, h);
        throw InputError("degree " + std::to_string(d) + " at q = " + std::to_string(pf.q) +
                         " is ambiguous; pass --two-subgroup with generators of one of:" + list);
    }
    return *found.begin();
}

SubfieldSpec assemble(const FieldRef& field, std::vector<Subgroup> subgroups)
{
    SubfieldSpec spec;
    spec.field = field;
    const int r = field->rank();
    std::vector<bool> real(r);
    for (int j = 0; j < r; ++j) {
        real[j] = contains_j(*field, j, subgroups[j]);
        if (field->factor(j).p == 2 && field->factor(j).e > 3)
            spec.experimental = true;
    }
    for (int j = 0; j < r; ++j)
        if (real[j])
            spec.perm.push_back(j);
    for (int j = 0; j < r; ++j)
        if (!real[j])
            spec.perm.push_back(j);
    spec.work = field->permuted(spec.perm);
    for (int i = 0; i < r; ++i) {
        const int j = spec.perm[i];
        spec.degrees.push_back(field->factor(j).phi / static_cast<std::int64_t>(subgroups[j].size()));
        spec.subgroups.push_back(std::move(subgroups[j]));
        spec.real.push_back(real[j]);
    }
    return spec;
}

bool even(std::int64_t x)
{
    return x % 2 == 0;
}

std::int32_t reduce_index(const FieldSpec& f, int j, std::int64_t a)
{
    const auto phi = f.factor(j).phi;
    return static_cast<std::int32_t>(((a % phi) + phi) % phi);
}

struct LevelShape {
    std::vector<int> members;
    int s = 0;
    int reals = 0; // t_Omega - 1
};

LevelShape shape(const SubfieldSpec& spec, Level omega)
{
    if (omega == 0 || omega > spec.work->full_level())
        throw InputError("level outside the field");
    LevelShape out;
    out.members = level_members(omega);
    out.s = static_cast<int>(out.members.size());
    for (int j : out.members)
        if (spec.real[j])
            ++out.reals;
    return out;
}

// Cartesian product of per-coordinate value lists.
std::vector<std::vector<std::int32_t>> product(const std::vector<std::vector<std::int32_t>>& choices)
{
    std::vector<std::vector<std::int32_t>> out{{}};
    for (const auto& c : choices) {
        std::vector<std::vector<std::int32_t>> next;
        for (const auto& prefix : out)
            for (auto v : c) {
                auto t = prefix;
                t.push_back(v);
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    return out;
}

std::vector<std::int32_t> open_range(std::int64_t lo, std::int64_t hi)
{
    std::vector<std::int32_t> out;
    for (auto x = lo + 1; x < hi; ++x)
        out.push_back(static_cast<std::int32_t>(x));
    return out;
}

} // namespace

int SubfieldSpec::real_count() const
{
    return static_cast<int>(std::count(real.begin(), real.end(), true));
}

std::int64_t SubfieldSpec::degree() const
{
    std::int64_t d = 1;
    for (auto x : degrees)
        d *= x;
    return d;
}

bool SubfieldSpec::totally_real() const
{
    return real_count() == rank();
}

std::int64_t SubfieldSpec::unit_rank() const
{
    return (totally_real() ? degree() : degree() / 2) - 1;
}

Level SubfieldSpec::to_input_level(Level omega) const
{
    Level out = 0;
    for (int i : level_members(omega))
        out |= Level{1} << perm[i];
    return out;
}

std::vector<std::int64_t> SubfieldSpec::input_degrees() const
{
    std::vector<std::int64_t> out(degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i)
        out[perm[i]] = degrees[i];
    return out;
}

SubfieldSpec validate_spec(std::int64_t n, const std::vector<std::int64_t>& degrees,
                           const std::vector<std::int64_t>& two_subgroup)
{
    auto field = factorize_conductor(n);
    if (static_cast<int>(degrees.size()) != field->rank())
        throw InputError("expected " + std::to_string(field->rank()) + " degrees for n = " + std::to_string(n) +
                         ", got " + std::to_string(degrees.size()));
    if (!two_subgroup.empty() && !field->is_even())
        throw InputError("--two-subgroup given but n is odd");
    std::vector<Subgroup> subgroups;
    for (int j = 0; j < field->rank(); ++j) {
        const auto& pf = field->factor(j);
        const auto d = degrees[j];
        if (d < 1 || pf.phi % d != 0)
            throw InputError("degree " + std::to_string(d) + " does not divide phi(" + std::to_string(pf.q) +
                             ") = " + std::to_string(pf.phi));
        if (pf.p == 2) {
            subgroups.push_back(two_part_subgroup(*field, j, d, two_subgroup));
            continue;
        }
        Subgroup h;
        for (std::int64_t x = 0; x < pf.phi; x += d)
            h.push_back(static_cast<std::int32_t>(x));
        if (!full_conductor(*field, j, h))
            throw ConductorError("the degree " + std::to_string(d) + " subfield of Q(zeta_" + std::to_string(pf.q) +
                                 ") has smaller conductor (prime " + std::to_string(pf.p) + ")");
        subgroups.push_back(std::move(h));
    }
    return assemble(field, std::move(subgroups));
}

std::string to_string(GeneratorClass c)
{
    switch (c) {
    case GeneratorClass::xi_norm:
        return "xi-norm";
    case GeneratorClass::atom_norm:
        return "atom-norm";
    case GeneratorClass::real_norm:
        return "real-norm";
    }
    return "?";
}

std::vector<int> legal_k(const SubfieldSpec& spec, Level omega)
{
    const auto sh = shape(spec, omega);
    if (sh.s < 2 || sh.reals == sh.s)
        throw InputError("X sets need at least two factors, one of them non-real");
    int lo;
    if (sh.reals == 0)
        lo = even(sh.s) ? 0 : 1;
    else
        lo = even(sh.s - sh.reals) ? sh.reals : sh.reals + 1;
    std::vector<int> out;
    for (int k = lo; k <= sh.s; ++k)
        out.push_back(k);
    return out;
}

std::vector<std::vector<std::int32_t>> enumerate_X(const SubfieldSpec& spec, Level omega, int k)
{
    const auto ks = legal_k(spec, omega);
    if (std::find(ks.begin(), ks.end(), k) == ks.end())
        throw InputError("k = " + std::to_string(k) + " is outside the legal range for this level");
    const auto sh = shape(spec, omega);
    const int s = sh.s;
    auto phi = [&](int pos) { return spec.work->factor(sh.members[pos - 1]).phi; };
    auto d = [&](int pos) { return spec.degrees[sh.members[pos - 1]]; };
    auto fixed = [&](int pos) {
        return std::vector<std::int32_t>{static_cast<std::int32_t>(d(pos) / 2 + (even(s - pos) ? phi(pos) / 2 : 0))};
    };
    const bool shifted = even(s - k);

    std::vector<std::vector<std::int32_t>> choices;
    for (int pos = 1; pos <= s; ++pos) {
        if (k == s) {
            choices.push_back(open_range(0, pos < s ? d(pos) : d(pos) / 2));
        } else if (pos > k) {
            choices.push_back(fixed(pos));
        } else {
            const auto off = shifted ? phi(pos) / 2 : 0;
            // Positions up to t_Omega - 1 are real and take the full range.
            const bool last = pos == k && k > sh.reals;
            choices.push_back(open_range(off, (last ? d(pos) / 2 : d(pos)) + off));
        }
    }
    return product(choices);
}

UnitSymbol atom_norm_symbol(const SubfieldSpec& spec, Level omega, std::span<const std::int32_t> a)
{
    const auto& f = *spec.work;
    const auto members = level_members(omega);
    if (a.size() != members.size())
        throw InputError("shift length does not match the level");
    std::vector<std::vector<std::int32_t>> choices;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const int j = members[i];
        const auto base = reduce_index(f, j, a[i]);
        std::vector<std::int32_t> c;
        for (auto h : spec.subgroups[j])
            c.push_back(f.compose_local(j, base, h));
        choices.push_back(std::move(c));
    }
    UnitSymbol out(spec.work);
    for (const auto& t : product(choices))
        out.add(omega, t, 1);
    return out;
}

UnitSymbol xi_norm_symbol(const SubfieldSpec& spec, int j, std::int32_t a)
{
    const auto& f = *spec.work;
    const auto half = static_cast<std::int32_t>(f.factor(j).half());
    // Representatives of H_j<J_j> / <J_j>: the elements of H_j<J_j> below phi/2.
    std::set<std::int32_t> reps;
    for (auto h : spec.subgroups[j]) {
        const auto x = h < half ? h : f.flip_local(j, h);
        reps.insert(x);
    }
    UnitSymbol out(spec.work);
    const Level omega = Level{1} << j;
    for (auto x : reps) {
        out.add(omega, {f.compose_local(j, x, reduce_index(f, j, a))}, 1);
        out.add(omega, {x}, -1);
    }
    return out;
}

UnitSymbol e_symbol(const SubfieldSpec& spec, Level omega)
{
    const auto sh = shape(spec, omega);
    if (sh.s < 2)
        throw InputError("e_symbol needs at least two factors; singleton levels use the xi norms");
    if (sh.reals != sh.s)
        throw InputError("e_symbol needs every factor of the level to be real");
    const auto& f = *spec.work;
    std::vector<std::vector<std::int32_t>> choices;
    for (int i = 0; i < sh.s; ++i) {
        const int j = sh.members[i];
        const auto half = static_cast<std::int32_t>(f.factor(j).half());
        std::vector<std::int32_t> c;
        for (auto h : spec.subgroups[j]) {
            if (h >= half)
                continue;
            c.push_back(h);
            if (i + 1 < sh.s)
                c.push_back(f.flip_local(j, h));
        }
        choices.push_back(std::move(c));
    }
    UnitSymbol out(spec.work);
    for (const auto& t : product(choices))
        out.add(omega, t, 1);
    return out;
}

GKIndex correspond_tuple(const SubfieldSpec& spec, const DeployedGenerator& g)
{
    const auto& f = *spec.work;
    const auto members = level_members(g.omega);
    GKIndex out{g.omega, {}};
    switch (g.kind) {
    case GeneratorClass::xi_norm:
    case GeneratorClass::real_norm:
        for (std::size_t i = 0; i < members.size(); ++i)
            out.tuple.push_back(reduce_index(f, members[i], g.tuple[i]));
        return out;
    case GeneratorClass::atom_norm:
        break;
    }
    const auto sh = shape(spec, g.omega);
    const int s = sh.s, k = g.k;
    const bool real_prefix = sh.reals > 0 && k == sh.reals;
    for (int pos = 1; pos <= s; ++pos) {
        const int j = members[pos - 1];
        std::int64_t v = 0;
        if (k == s)
            v = g.tuple[pos - 1];
        else if (real_prefix && pos == k + 1)
            v = spec.degrees[j] / 2;
        else if (real_prefix && pos <= k)
            v = g.tuple[pos - 1];
        else if (pos <= k)
            v = g.tuple[pos - 1] - (even(s - k) ? f.factor(j).half() : 0);
        out.tuple.push_back(reduce_index(f, j, v));
    }
    return out;
}

std::vector<DeployedGenerator> basis(const SubfieldSpec& spec)
{
    std::vector<DeployedGenerator> out;
    const auto& f = *spec.work;
    for (Level omega = 1; omega <= f.full_level(); ++omega) {
        const auto sh = shape(spec, omega);
        if (sh.s == 1) {
            const int j = sh.members[0];
            for (std::int32_t a = 1; a < spec.reduced_degree(j); ++a) {
                DeployedGenerator g;
                g.omega = omega;
                g.kind = GeneratorClass::xi_norm;
                g.tuple = {a};
                g.symbol = xi_norm_symbol(spec, j, a);
                out.push_back(std::move(g));
            }
        } else if (sh.reals == sh.s) {
            const auto base = e_symbol(spec, omega);
            std::vector<std::vector<std::int32_t>> choices;
            for (int j : sh.members)
                choices.push_back(open_range(0, spec.degrees[j]));
            for (const auto& a : product(choices)) {
                std::vector<std::int32_t> shift(static_cast<std::size_t>(f.rank()), 0);
                for (int i = 0; i < sh.s; ++i)
                    shift[sh.members[i]] = a[i];
                DeployedGenerator g;
                g.omega = omega;
                g.kind = GeneratorClass::real_norm;
                g.tuple = a;
                g.symbol = galois_act(GroupRingElement::single(GaloisElement(shift)), base);
                out.push_back(std::move(g));
            }
        } else {
            for (int k : legal_k(spec, omega)) {
                for (auto& a : enumerate_X(spec, omega, k)) {
                    DeployedGenerator g;
                    g.omega = omega;
                    g.kind = GeneratorClass::atom_norm;
                    g.k = k;
                    g.symbol = atom_norm_symbol(spec, omega, a);
                    g.tuple = std::move(a);
                    g.least_exempt = sh.reals > 0 && k == sh.reals;
                    out.push_back(std::move(g));
                }
            }
        }
    }
    for (auto& g : out)
        g.corresponding = correspond_tuple(spec, g);
    return out;
}

bool DeployedReport::passed() const
{
    return count_ok() && pins_ok && invalid_pins == 0 && injective && lattice.direct && lattice.independent &&
           triangularity.passed && (!numeric_rank || *numeric_rank == static_cast<int>(generators));
}

DeployedReport verify_basis(const SubfieldSpec& spec, const std::vector<DeployedGenerator>& gens,
                            const GoldKim& gk, bool numeric)
{
    if (!(*gk.field() == *spec.work))
        throw SpecMismatchError("Gold-Kim basis is not over the working field of the spec");
    DeployedReport rep;
    rep.generators = gens.size();
    rep.expected = spec.unit_rank();
    for (Level omega = 1; omega <= spec.work->full_level(); ++omega)
        rep.predicted += predicted_block_size(spec.degrees, spec.real, omega);

    std::vector<std::vector<std::int64_t>> columns;
    std::vector<std::size_t> pinned;
    std::vector<bool> exempt;
    std::set<GKIndex> seen;
    rep.pins_ok = true;
    rep.injective = true;
    std::vector<std::vector<std::int64_t>> pinned_columns;
    for (const auto& g : gens) {
        columns.push_back(gk.dense(g.symbol));
        if (!seen.insert(g.corresponding).second)
            rep.injective = false;
        if (!is_gk_index(*spec.work, g.corresponding)) {
            // The designated tuple can fall outside the Gold-Kim index set.
            rep.pinned.push_back(0);
            rep.pins_ok = false;
            ++rep.invalid_pins;
            continue;
        }
        const auto row = gk.position(g.corresponding);
        const auto c = columns.back()[row];
        rep.pinned.push_back(c);
        if (c != 1 && c != -1)
            rep.pins_ok = false;
        pinned.push_back(row);
        exempt.push_back(g.least_exempt);
        pinned_columns.push_back(columns.back());
    }
    if (gens.empty()) {
        rep.lattice.direct = rep.lattice.independent = true;
        rep.triangularity.passed = rep.triangularity.pinned_rows_distinct = true;
        rep.triangularity.pinned_determinant = 1;
        if (numeric)
            rep.numeric_rank = 0;
        return rep;
    }
    rep.lattice = is_direct_factor(columns, gk.size());
    if (!pinned_columns.empty())
        rep.triangularity =
            triangularity_report(IntegerMatrix::from_columns(pinned_columns, gk.size()), gk.basis(), pinned, exempt);
    rep.triangularity.passed = rep.triangularity.passed && rep.invalid_pins == 0;
    if (numeric) {
        std::vector<EmbeddingVector> vs;
        for (const auto& g : gens)
            vs.push_back(numeric_embed(g.symbol));
        rep.numeric_rank = numeric_rank(vs);
    }
    return rep;
}

std::optional<SubfieldSpec> real_contraction(const SubfieldSpec& spec)
{
    if (spec.real_count() != spec.rank() - 1)
        return std::nullopt;
    const auto& f = *spec.work;
    std::vector<Subgroup> subgroups(static_cast<std::size_t>(spec.rank()));
    for (int i = 0; i < spec.rank(); ++i) {
        Subgroup h = spec.subgroups[i];
        if (!spec.real[i]) {
            std::set<std::int32_t> s(h.begin(), h.end());
            for (auto x : spec.subgroups[i])
                s.insert(f.flip_local(i, x));
            h.assign(s.begin(), s.end());
            if (!full_conductor(f, i, h))
                return std::nullopt;
        }
        subgroups[spec.perm[i]] = std::move(h);
    }
    return assemble(spec.field, std::move(subgroups));
}

std::optional<bool> contraction_matches(const SubfieldSpec& spec)
{
    auto plus = real_contraction(spec);
    if (!plus)
        return std::nullopt;
    GoldKim gk(spec.field);
    auto lattice = [&](const SubfieldSpec& s) {
        std::vector<std::vector<std::int64_t>> cols;
        for (const auto& g : basis(s))
            cols.push_back(gk.dense(transport(g.symbol, spec.field)));
        return hermite_normal_form(IntegerMatrix::from_columns(cols, gk.size()));
    };
    return lattice(spec) == lattice(*plus);
}

} // namespace cyclo
