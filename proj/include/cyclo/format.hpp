#pragma once

// Text and JSON forms of Gold-Kim indices, exponent vectors and basis
// listings. Factor positions are 1-based in every external form.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "cyclo/goldkim.hpp"

namespace cyclo {

using Json = nlohmann::ordered_json;

// Inverse of format_index: "xi(2;1)" or "(1,2;0,1)".
GKIndex parse_index(const std::string& text);

// "(1,2;1,1)^-1 * xi(2;1)^1" in tuple order; "0" for the empty vector.
std::string format_exponents(const ExponentVector& v);

Json index_to_json(const GKIndex& g);
GKIndex index_from_json(const Json& j);

Json exponents_to_json(const ExponentVector& v);
ExponentVector exponents_from_json(const Json& j);

struct BasisListing {
    std::int64_t n = 0;
    std::vector<GKIndex> basis;

    bool operator==(const BasisListing&) const = default;
};

Json basis_to_json(const FieldSpec& f, const std::vector<GKIndex>& basis);
BasisListing basis_from_json(const Json& j);

} // namespace cyclo
