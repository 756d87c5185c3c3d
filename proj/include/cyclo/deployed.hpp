#pragma once

// Bases of the cyclotomic units of a totally deployed abelian field
// K = K_1 ... K_r, K_j inside Q(zeta_{q_j}) of conductor exactly q_j.
//
// Each K_j is stored by the subgroup H_j = Gal(Q(zeta_{q_j}) / K_j) as a sorted
// list of local indices. Construction happens over a copy of the field whose
// factors are reordered so the real K_j come first; `perm` maps back to the
// input order.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclo/goldkim.hpp"
#include "cyclo/lattice.hpp"

namespace cyclo {

struct SubfieldSpec {
    FieldRef field;                              // ascending factor order
    FieldRef work;                               // real factors first
    std::vector<int> perm;                       // work position i is input position perm[i]
    std::vector<std::int64_t> degrees;           // d_j, work order
    std::vector<std::vector<std::int32_t>> subgroups; // H_j, work order
    std::vector<bool> real;                      // J_j in H_j, work order
    bool experimental = false;                   // 2-part of conductor above 8

    int rank() const { return static_cast<int>(degrees.size()); }
    int real_count() const; // t - 1
    std::int64_t degree() const;
    bool totally_real() const;
    std::int64_t unit_rank() const; // r1 + r2 - 1
    std::int64_t reduced_degree(int j) const { return real[j] ? degrees[j] : degrees[j] / 2; }
    Level to_input_level(Level omega) const;
    std::vector<std::int64_t> input_degrees() const;
};

// degrees in ascending prime order. two_subgroup lists residues mod 2^e that
// generate H at the 2-part; required when several subgroups of the given
// index have full conductor.
SubfieldSpec validate_spec(std::int64_t n, const std::vector<std::int64_t>& degrees,
                           const std::vector<std::int64_t>& two_subgroup = {});

enum class GeneratorClass { xi_norm, atom_norm, real_norm };

std::string to_string(GeneratorClass c);

struct DeployedGenerator {
    Level omega = 0;                 // work order
    GeneratorClass kind = GeneratorClass::xi_norm;
    int k = -1;                      // X^k class for atom_norm, 1-based positions
    std::vector<std::int32_t> tuple; // the shift a_1..a_s (a single a for xi_norm)
    UnitSymbol symbol;               // over spec.work
    GKIndex corresponding;           // over spec.work
    bool least_exempt = false;       // k = t_Omega - 1 class
};

// Legal k for a level with at least one non-real factor, ascending.
std::vector<int> legal_k(const SubfieldSpec& spec, Level omega);

// The set X^k_Omega(K) for |Omega| >= 2 with a non-real factor.
std::vector<std::vector<std::int32_t>> enumerate_X(const SubfieldSpec& spec, Level omega, int k);

// e_{K_Omega} up to roots of unity, for |Omega| >= 2 with every factor real.
UnitSymbol e_symbol(const SubfieldSpec& spec, Level omega);

// (prod sigma_j^{a_j}) N_{Q(zeta_Omega)/K_Omega}(1 - zeta_Omega).
UnitSymbol atom_norm_symbol(const SubfieldSpec& spec, Level omega, std::span<const std::int32_t> a);

// N_{Q(zeta_q)^+/K_j^+}(xi_{q,a}).
UnitSymbol xi_norm_symbol(const SubfieldSpec& spec, int j, std::int32_t a);

GKIndex correspond_tuple(const SubfieldSpec& spec, const DeployedGenerator& g);

std::vector<DeployedGenerator> basis(const SubfieldSpec& spec);

struct DeployedReport {
    std::size_t generators = 0;
    std::int64_t expected = 0;  // r1 + r2 - 1
    std::int64_t predicted = 0; // sum of predicted block sizes
    std::vector<std::int64_t> pinned;
    bool pins_ok = false;
    std::size_t invalid_pins = 0; // designated tuple is not a Gold-Kim index
    bool injective = false;
    DirectFactorReport lattice;
    TriangularityReport triangularity; // over the columns with a valid designated tuple
    std::optional<int> numeric_rank; // unset when not requested

    bool count_ok() const
    {
        return static_cast<std::int64_t>(generators) == expected && predicted == expected;
    }
    bool passed() const;
};

// Decomposes every generator in the Gold-Kim basis of spec.work.
DeployedReport verify_basis(const SubfieldSpec& spec, const std::vector<DeployedGenerator>& gens,
                            const GoldKim& gk, bool numeric = true);

// Exactly one non-real K_j: compare with the field where K_j is replaced by
// its real subfield. Unset when the hypothesis fails or the real subfield has
// a smaller conductor.
std::optional<SubfieldSpec> real_contraction(const SubfieldSpec& spec);
std::optional<bool> contraction_matches(const SubfieldSpec& spec);

} // namespace cyclo
