#pragma once

// Gold-Kim basis of the Washington cyclotomic units of Q(zeta_n) modulo roots
// of unity, and decomposition of unit symbols in it.
//
// For a level omega = {i_1 < ... < i_s} with s >= 2 the basis holds the atoms
// whose tuple has a last nonzero position k with a_j in [1, phi_j) for j < k and
// a_k in [1, phi_k / 2), plus the all-zero tuple when s is even. Singleton
// levels contribute xi_{q,a} = (1 - zeta_q^{sigma^a}) / (1 - zeta_q) for
// 1 <= a < phi(q) / 2.

#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "cyclo/unit_symbol.hpp"

namespace cyclo {

struct GKIndex {
    Level omega = 0;
    std::vector<std::int32_t> tuple;

    bool is_xi() const { return level_size(omega) == 1; }
    auto operator<=>(const GKIndex&) const = default;
};

using ExponentVector = std::map<GKIndex, std::int64_t>;

// Total order extending the within-level relation: larger levels first, then
// levels by member list, then tuples compared from the last coordinate.
std::strong_ordering tuple_order(const GKIndex& x, const GKIndex& y);
inline bool tuple_order_less(const GKIndex& x, const GKIndex& y) { return tuple_order(x, y) < 0; }

bool is_gk_index(const FieldSpec& f, const GKIndex& g);
std::vector<GKIndex> enumerate_basis(const FieldSpec& f);

UnitSymbol xi_symbol(const FieldRef& field, int j, std::int32_t a);
UnitSymbol basis_symbol(const FieldRef& field, const GKIndex& g);
UnitSymbol reconstruct(const FieldRef& field, const ExponentVector& v);

std::string format_index(const GKIndex& g); // "xi(2;1)" or "(1,2;0,1)", 1-based positions

class GoldKim {
public:
    explicit GoldKim(FieldRef field);

    const FieldRef& field() const { return field_; }
    const std::vector<GKIndex>& basis() const { return basis_; }
    std::size_t size() const { return basis_.size(); }
    std::size_t position(const GKIndex& g) const;

    // Throws NonUnitError unless is_unit(x).
    ExponentVector decompose(const UnitSymbol& x) const;
    std::vector<std::int64_t> dense(const UnitSymbol& x) const;

private:
    using Vec = std::vector<std::int64_t>; // basis coordinates, then [j;0] counters

    const Vec& reduce(const Atom& a) const;
    Vec compute(const Atom& a) const;
    void add_lower(Vec& acc, std::int64_t sign, Level omega, int pos, std::span<const std::int32_t> t) const;
    void add_atom(Vec& acc, std::int64_t sign, Level omega, std::vector<std::int32_t> t) const;
    Vec dense_with_residues(const UnitSymbol& x) const;

    FieldRef field_;
    std::vector<GKIndex> basis_;
    std::map<GKIndex, std::size_t> positions_;
    mutable std::mutex mutex_;
    mutable std::map<Atom, Vec> memo_;
    mutable std::map<Atom, int> in_progress_;
    mutable int depth_ = 0;
};

// One-shot helper; builds a fresh decomposer.
ExponentVector decompose(const UnitSymbol& x);

} // namespace cyclo
