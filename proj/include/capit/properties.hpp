#pragma once

#include "capit/classifier.hpp"
#include "capit/group.hpp"

#include <string>
#include <vector>

namespace capit {

struct PropertyResult {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct PairReport {
    PrimePair pair;
    std::vector<PropertyResult> results;

    bool ok() const;
};

// Pairs p1 < p2 <= max_prime of primes congruent to 5 mod 8.
std::vector<PrimePair> valid_pairs(int64_t max_prime);

// Structure of the 2-class groups of Q(sqrt(-p1 p2)) and Q(sqrt(p1 p2)) including the classes of
// the primes above 2 and p1.
PropertyResult imaginary_subfield_structure(const InvariantRecord& r);
PropertyResult real_subfield_structure(const InvariantRecord& r);
// 2-parts of Cl(Q(sqrt(+-2 p1 p2))) are both (2, 2).
PropertyResult kaplan_two_parts(const PrimePair& pair);
PropertyResult conjugate_swap(const InvariantRecord& r, const PredictionReport& rep);
PropertyResult pair_swap(const InvariantRecord& r, const PredictionReport& rep);
PropertyResult k3_order_law(const InvariantRecord& r, const PredictionReport& rep);

// Every per-pair property, each named; exceptions become failed results.
PairReport check_pair(const PrimePair& pair);

// Runs check_pair over all valid pairs up to max_prime on `jobs` threads; results in pair order.
std::vector<PairReport> scan(int64_t max_prime, unsigned jobs);

// Parameter patterns met by actual pairs, for m <= max_m and n <= max_n.
std::vector<GPresentation> admissible_presentations(int max_m, int max_n);
// Derived subgroup, lower central series, coclass and class of one presentation.
std::vector<PropertyResult> check_presentation(const GPresentation& p);

} // namespace capit
