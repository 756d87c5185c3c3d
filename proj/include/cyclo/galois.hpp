#pragma once

// Arithmetic of (Z/nZ)* in per-prime generator coordinates.
//
// For an odd prime power q = p^e the local group is cyclic, generated by the
// smallest primitive root g, and index a stands for g^a. For q = 2^e the
// local group is <s> x <J> with s = 5 and J = -1; index a stands for s^a when
// a < 2^(e-2) and for s^a J otherwise. In both cases J sits at index phi(q)/2
// and multiplying by J moves an index by phi(q)/2 (mod phi(q)).

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace cyclo {

using Level = std::uint32_t; // bitmask over factor positions

inline int level_size(Level omega) { return __builtin_popcount(omega); }
inline bool level_contains(Level omega, int j) { return (omega >> j) & 1U; }
std::vector<int> level_members(Level omega);
Level level_from_members(std::span<const int> members);

struct PrimeFactor {
    std::int64_t p = 0;
    int e = 0;
    std::int64_t q = 0;
    std::int64_t phi = 0;
    std::int64_t generator = 0; // primitive root (odd p) or 5 / 1 for q = 2^e
    int original_position = 0;  // position in the ascending factorization

    std::int64_t half() const { return phi / 2; }
};

class FieldSpec {
public:
    FieldSpec(std::int64_t n, std::vector<PrimeFactor> factors);

    std::int64_t n() const { return n_; }
    int rank() const { return static_cast<int>(factors_.size()); }
    const PrimeFactor& factor(int j) const { return factors_[j]; }
    const std::vector<PrimeFactor>& factors() const { return factors_; }
    Level full_level() const { return (Level{1} << rank()) - 1; }
    std::int64_t phi_n() const;
    bool is_prime_power() const { return rank() == 1; }
    bool is_even() const;

    // Product of q_j over the level.
    std::int64_t level_modulus(Level omega) const;

    // Local index <-> residue mod q_j.
    std::int64_t decode_local(int j, std::int32_t index) const;
    std::int32_t encode_local(int j, std::int64_t residue) const;
    std::int32_t compose_local(int j, std::int32_t a, std::int32_t b) const;
    std::int32_t invert_local(int j, std::int32_t a) const;
    std::int32_t flip_local(int j, std::int32_t a) const; // a -> J a

    // Same field with factors listed in a different order (perm[i] = old position).
    std::shared_ptr<const FieldSpec> permuted(std::span<const int> perm) const;
    bool ascending() const;

    bool operator==(const FieldSpec& other) const;

private:
    std::int64_t n_;
    std::vector<PrimeFactor> factors_;
    std::vector<std::vector<std::int32_t>> log_tables_; // residue -> index, -1 if not a unit
    std::vector<std::vector<std::int64_t>> exp_tables_; // index -> residue
};

using FieldRef = std::shared_ptr<const FieldSpec>;

FieldRef factorize_conductor(std::int64_t n);

// Smallest primitive root modulo an odd prime power.
std::int64_t primitive_root(std::int64_t q);

std::int64_t euler_phi(std::int64_t n);
bool is_prime(std::int64_t n);

// Galois element of Q(zeta_n)/Q as per-factor indices.
class GaloisElement {
public:
    GaloisElement() = default;
    explicit GaloisElement(std::vector<std::int32_t> indices) : idx_(std::move(indices)) {}

    static GaloisElement identity(const FieldSpec& f);
    static GaloisElement from_residue(const FieldSpec& f, std::int64_t u);
    // sigma_j^a, trivial on the other factors.
    static GaloisElement local(const FieldSpec& f, int j, std::int32_t a);

    std::int64_t residue(const FieldSpec& f) const;
    std::int32_t operator[](int j) const { return idx_[j]; }
    const std::vector<std::int32_t>& indices() const { return idx_; }
    int size() const { return static_cast<int>(idx_.size()); }
    bool is_identity() const;

    // Coordinates restricted to a level, in factor order.
    std::vector<std::int32_t> restrict_to(Level omega) const;

    auto operator<=>(const GaloisElement&) const = default;

private:
    std::vector<std::int32_t> idx_;
};

GaloisElement compose(const FieldSpec& f, const GaloisElement& g, const GaloisElement& h);
GaloisElement invert(const FieldSpec& f, const GaloisElement& g);
GaloisElement conjugation(const FieldSpec& f);
GaloisElement local_conjugation(const FieldSpec& f, int j); // J_j

// Frobenius at p acting on zeta_{n_Omega}, as a tuple over the factors of omega.
std::vector<std::int32_t> frobenius(const FieldSpec& f, std::int64_t p, Level omega);

// Composition of tuples restricted to the same level.
std::vector<std::int32_t> compose_on_level(const FieldSpec& f, Level omega,
                                           std::span<const std::int32_t> a,
                                           std::span<const std::int32_t> b);
std::vector<std::int32_t> invert_on_level(const FieldSpec& f, Level omega,
                                          std::span<const std::int32_t> a);

// Formal Z-combination of Galois elements.
class GroupRingElement {
public:
    GroupRingElement() = default;
    static GroupRingElement single(GaloisElement g, std::int64_t c = 1);

    void add_term(const GaloisElement& g, std::int64_t c);
    const std::map<GaloisElement, std::int64_t>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    std::int64_t coefficient(const GaloisElement& g) const;

    GroupRingElement operator+(const GroupRingElement& other) const;
    GroupRingElement scaled(std::int64_t k) const;
    bool operator==(const GroupRingElement&) const = default;

private:
    std::map<GaloisElement, std::int64_t> terms_;
};

GroupRingElement multiply(const FieldSpec& f, const GroupRingElement& u, const GroupRingElement& v);

// Closure of the given generators under composition.
std::vector<GaloisElement> subgroup_generated(const FieldSpec& f, std::span<const GaloisElement> gens);

// Sum of the listed elements; the list must be closed under composition.
GroupRingElement norm_element(const FieldSpec& f, std::span<const GaloisElement> subgroup);

std::string format_tuple(std::span<const std::int32_t> t);

} // namespace cyclo
