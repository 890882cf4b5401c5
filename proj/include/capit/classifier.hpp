#pragma once

#include "capit/abelian.hpp"
#include "capit/arith.hpp"
#include "capit/gaussian.hpp"
#include "capit/group.hpp"
#include "capit/rational_symbols.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace capit {

inline constexpr ClassVector H0 = 1;
inline constexpr ClassVector H1 = 2;
inline constexpr ClassVector H2 = 4;

// Subgroup of (Z/2)^3 spanned by the given class vectors, as a membership mask.
ClassSet span(std::initializer_list<ClassVector> gens);
int class_set_size(ClassSet s);
// "<[H1], [H0 H2]>" style rendering, with a canonical choice of generators.
std::string class_set_str(ClassSet s);
std::vector<ClassVector> class_set_members(ClassSet s);
std::string class_vector_str(ClassVector v);

struct InvariantRecord {
    PrimePair pair;
    Int d;
    Sign legendre;
    Sign pi;
    Sign B;
    int m = 0;
    int n = 0;
    int q = 1;
    Sign norm_eps_r;
    Sign norm_eps_d;
    Psi psi = Psi::tau_sigma;
    std::optional<Sign> quartic_product; // (p1/p2)_4 (p2/p1)_4, legendre +1 only
    std::optional<Sign> quartic_triple;  // (p1p2/2)_4 (2p1/p2)_4 (2p2/p1)_4, legendre -1 only
    int q_symbols = 0;                   // q read off the symbols, legendre -1 only
    PrimeSplit s1;
    PrimeSplit s2;

    GPresentation presentation() const { return {m, n, q, psi}; }
};

struct Violation {
    std::string property;
    std::string detail;
};

// All fields computed, no cross-checks applied.
InvariantRecord invariants_unchecked(const PrimePair& pair, const PrimeSplit& s1, const PrimeSplit& s2);
// Disagreements between independently computed fields of the record.
std::vector<Violation> record_violations(const InvariantRecord& r);

// Throws input_error for an invalid pair and consistency_error when independent computations of
// the same quantity disagree.
InvariantRecord invariants(const PrimePair& pair);
// Same with explicit Gaussian splits, e.g. pi3 and pi4 exchanged.
InvariantRecord invariants(const PrimePair& pair, const PrimeSplit& s1, const PrimeSplit& s2);

struct FieldLabel {
    char kind = 'K'; // 'K' quadratic over the base, 'L' biquadratic
    int index = 0;   // 1..7
    std::string radicand;     // K: "pi1*pi3"; L: empty
    std::string alt_radicand; // second generator with the same square class, d / radicand
    std::array<int, 3> factors{}; // L: the three K indices
    bool normal_over_q = true;
    std::string note;

    std::string name() const { return std::string(1, kind) + std::to_string(index); }
};

// Seven K fields followed by seven L fields.
const std::vector<FieldLabel>& field_layout();
// Gaussian-prime subsets of the odd radicand of K_j, as bits pi1 = 1, pi2 = 2, pi3 = 4, pi4 = 8.
unsigned odd_radicand_primes(int j);
Int disc_base_field(const PrimePair& pair);

using ClassSets = std::array<ClassSet, 7>;

ClassSets norm_groups(const InvariantRecord& r);
ClassSets norm_groups_from_symbols(const InvariantRecord& r);
ClassSets predicted_kernels(const InvariantRecord& r);
std::array<AbelianType, 7> predicted_k_types(const InvariantRecord& r);
std::array<AbelianType, 7> predicted_l_types(const InvariantRecord& r);

struct KPrediction {
    ClassSet norm_group = 0;
    ClassSet kernel = 0;
    AbelianType type;
    bool taussky_a = false;
};

struct LPrediction {
    ClassSet norm_group = 0; // intersection of the factors' norm groups
    ClassSet kernel = 0xFF;
    AbelianType type;
};

struct PredictionReport {
    InvariantRecord record;
    GPresentation presentation;
    uint64_t group_order = 0;
    AbelianType derived_type;     // G', also Cl2 of the Hilbert 2-class field
    AbelianType base_class_group; // Cl2 of the base field
    AbelianType cl2_k3;
    AbelianType cl2_genus;
    int coclass = 3;
    int nilpotency_class = 0;
    Int disc;
    std::array<KPrediction, 7> k;
    std::array<LPrediction, 7> l;
};

PredictionReport predict(const InvariantRecord& r);

struct Check {
    std::string name;
    std::string expected;
    std::string actual;
    bool ok = false;
};

struct Validation {
    std::vector<Check> checks;
    int validated_extensions = 0; // fields whose checks all pass, out of 14

    bool ok() const;
    std::vector<Check> failures() const;
};

// Recomputes everything from the group engine and compares with the prediction.
Validation cross_validate(const PredictionReport& report);

// Field permutations (0-based) under pi3 <-> pi4 and under p1 <-> p2. The first fixes H0, H1, H2;
// the second moves H1, H2 to primes above p2, so only types are comparable across it.
inline constexpr std::array<int, 7> conjugate_swap_k = {0, 1, 2, 4, 3, 6, 5};
inline constexpr std::array<int, 7> conjugate_swap_l = {0, 2, 1, 3, 4, 6, 5};
inline constexpr std::array<int, 7> pair_swap_k = {1, 0, 2, 3, 5, 4, 6};
inline constexpr std::array<int, 7> pair_swap_l = {0, 3, 4, 1, 2, 5, 6};

} // namespace capit
