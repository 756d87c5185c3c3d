#pragma once

// Bases of the real cyclotomic units from the Gold-Kim basis. Every basis
// element x is classified by its order in E / mu E^+: order 1 gives |x| (type 0
// at singleton levels, type 1 otherwise), order 2 gives |m| |x| for a fixed
// order-2 multiplier m (type 2). Modulo roots of unity |x| and x have the same
// image, so each generator is recorded by its parts and their Gold-Kim image.

#include <optional>
#include <string>
#include <vector>

#include "cyclo/goldkim.hpp"
#include "cyclo/numeric.hpp"

namespace cyclo {

enum class RealKind { type0, type1, type2 };

std::string to_string(RealKind k);

struct RealGenerator {
    RealKind kind = RealKind::type0;
    GKIndex source;                // the Gold-Kim element x
    std::vector<UnitSymbol> parts; // {x} or {m, x}
    ExponentVector gk_image;       // sum of decompositions of the parts
};

struct RealBasis {
    FieldRef field;
    std::optional<GKIndex> multiplier;       // absent for prime powers
    bool multiplier_is_literal = false;      // m = 1 - zeta_n^{sigma_1}
    std::vector<RealGenerator> generators;
};

// 1 - zeta_n^{sigma_1}: the full-level atom with tuple (1, 0, ..., 0).
UnitSymbol literal_multiplier(const FieldRef& field);

// Uses the literal multiplier when it is itself a Gold-Kim element (q_1 not in
// {3, 4}); otherwise the first order-2 Gold-Kim element in basis order.
RealBasis real_basis(const GoldKim& gk, int bits = kDefaultBits);

ExponentVector project_to_gk(const GoldKim& gk, const RealGenerator& g);

// log |tau_k| of the generator: the sum of the parts' log-absolute values.
EmbeddingVector real_embedding(const RealGenerator& g, int bits = kDefaultBits);

// Type prescribed by the parity of the level: singleton levels give type 0; for
// odd n every other level gives type 2; for even n, levels without the 2-part
// give type 1 and levels with it give type 2.
RealKind prescribed_kind(const FieldSpec& f, const GKIndex& x);

} // namespace cyclo
