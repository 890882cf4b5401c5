#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace capit {

// Finite abelian group type as an elementary-divisor chain d1 | d2 | ... (ascending, each > 1).
class AbelianType {
public:
    AbelianType() = default;

    // Accepts any list of cyclic factor orders, e.g. (30, 10, 2), and canonicalizes it.
    static AbelianType from_factors(const std::vector<uint64_t>& factors);
    // From the exponents e_i of the cyclic p-power factors p^{e_i} of a p-group.
    static AbelianType from_p_exponents(uint64_t p, const std::vector<int>& exponents);

    const std::vector<uint64_t>& divisors() const { return divisors_; }
    std::vector<uint64_t> descending() const { return {divisors_.rbegin(), divisors_.rend()}; }
    uint64_t order() const;
    size_t rank() const { return divisors_.size(); }
    bool trivial() const { return divisors_.empty(); }
    AbelianType two_part() const;
    AbelianType combined(const AbelianType& other) const; // direct product

    std::string str() const; // "(2, 4)" ascending
    bool operator==(const AbelianType&) const = default;

private:
    std::vector<uint64_t> divisors_;
};

// Convenience for 2-groups: (2^a, 2^b, ...) from exponents.
AbelianType two_type(std::initializer_list<int> exponents);

// Exponents of the cyclic factors of a finite abelian p-group from log_p |Omega_k|, k = 0, 1, ...
// where Omega_k is the subgroup killed by p^k; the sequence must end once it stabilizes.
std::vector<int> exponents_from_omega(const std::vector<int>& log_omega);

// Exponent e with v = 2^e; throws unless v is a power of two.
int log2_exact_u64(uint64_t v);

} // namespace capit
