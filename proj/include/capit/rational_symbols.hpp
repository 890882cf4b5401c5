#pragma once

#include "capit/arith.hpp"

#include <cstdint>

namespace capit {

// Two distinct primes, both congruent to 5 mod 8.
struct PrimePair {
    int64_t p1 = 0;
    int64_t p2 = 0;

    Int d() const { return Int(2) * p1 * p2; }
    Int r() const { return Int(p1) * p2; }
    PrimePair swapped() const { return {p2, p1}; }
};

// Jacobi symbol (a/n) for odd n >= 1.
int jacobi(const Int& a, const Int& n);

// a^((p-1)/4) mod p for p = 1 mod 4 and a a nonzero square mod p.
Sign quartic_symbol(const Int& a, const Int& p);

// (x/2)_4 := (-1)^((x-1)/8) for x = 1 mod 8.
Sign quartic_symbol_mod2(const Int& x);

// Largest value accepted for a prime of a pair.
inline constexpr int64_t max_pair_prime = 2147483647;

PrimePair validate_pair(const Int& p1, const Int& p2);

} // namespace capit
