#pragma once

// Cyclotomic-unit symbols modulo roots of unity.
//
// An atom (omega, a) stands for 1 - zeta_m^u where m = prod_{j in omega} q_j
// and u is the residue mod m whose local indices are a. Since
// 1 - zeta^u = -zeta^u (1 - zeta^{-u}), the atoms (omega, a) and (omega, Ja)
// agree up to a root of unity; the canonical one has its last coordinate in
// [0, phi/2).

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cyclo/galois.hpp"

namespace cyclo {

struct Atom {
    Level omega = 0;
    std::vector<std::int32_t> tuple;

    // (|omega|, members of omega, tuple), lexicographically.
    std::strong_ordering operator<=>(const Atom& other) const;
    bool operator==(const Atom&) const = default;
};

// Inverse lexicographic comparison: last coordinate first.
std::strong_ordering inverse_lex(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

Atom canonicalize_atom(const FieldSpec& f, Level omega, std::vector<std::int32_t> tuple);

// Tuple of a J-flipped atom (every coordinate moved by phi/2).
std::vector<std::int32_t> flip_tuple(const FieldSpec& f, Level omega, std::span<const std::int32_t> a);

// Residue u mod n_omega represented by the tuple.
std::int64_t atom_residue(const FieldSpec& f, const Atom& a);

class UnitSymbol {
public:
    UnitSymbol() = default;
    explicit UnitSymbol(FieldRef field) : field_(std::move(field)) {}

    static UnitSymbol atom(FieldRef field, Level omega, std::vector<std::int32_t> tuple, std::int64_t e = 1);

    const FieldRef& field() const { return field_; }
    const std::map<Atom, std::int64_t>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::int64_t exponent(const Atom& a) const;

    // Adds e to the exponent of the canonical form of (omega, tuple).
    void add(Level omega, std::vector<std::int32_t> tuple, std::int64_t e);
    void add(const Atom& canonical, std::int64_t e);

    bool operator==(const UnitSymbol& other) const;

private:
    FieldRef field_;
    std::map<Atom, std::int64_t> terms_;
};

UnitSymbol mul(const UnitSymbol& x, const UnitSymbol& y);
UnitSymbol pow(const UnitSymbol& x, std::int64_t k);
UnitSymbol galois_act(const GroupRingElement& u, const UnitSymbol& x);

// Norm relation along factor j, solved for the given atom:
//   (omega, a) = (omega\j, a\j) - (omega\j, F^{-1} a\j) - sum_{c != a_j} (omega, a[j:=c])
// where F is the Frobenius at p_j on the lower level.
UnitSymbol norm_relation_expand(const FieldRef& field, const Atom& a, int j);

// Both sides of the norm relation for (omega, a) along j, for oracle checks.
std::pair<UnitSymbol, UnitSymbol> norm_relation_sides(const FieldRef& field, const Atom& a, int j);

// Every singleton level carries total exponent zero.
bool is_unit(const UnitSymbol& x);

// The same symbol written over another ordering of the same primes.
UnitSymbol transport(const UnitSymbol& x, const FieldRef& target);

// Text form: terms "(1,2;0,1)^e" joined by " * ", factor positions 1-based.
std::string to_string(const UnitSymbol& x);
UnitSymbol parse_symbol(const FieldRef& field, const std::string& text);

} // namespace cyclo
