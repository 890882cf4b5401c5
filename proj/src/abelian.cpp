#include "capit/abelian.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace capit {

namespace {

std::map<uint64_t, std::vector<int>> primary_exponents(const std::vector<uint64_t>& factors)
{
    std::map<uint64_t, std::vector<int>> out;
    for (uint64_t f : factors) {
        if (f == 0)
            throw std::invalid_argument("abelian type factor must be positive");
        for (uint64_t p = 2; p * p <= f; ++p) {
            int e = 0;
            while (f % p == 0) {
                f /= p;
                ++e;
            }
            if (e > 0)
                out[p].push_back(e);
        }
        if (f > 1)
            out[f].push_back(1);
    }
    return out;
}

uint64_t ipow(uint64_t b, int e)
{
    uint64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

} // namespace

AbelianType AbelianType::from_factors(const std::vector<uint64_t>& factors)
{
    auto prim = primary_exponents(factors);
    size_t rank = 0;
    for (auto& [p, es] : prim) {
        std::sort(es.begin(), es.end(), std::greater<>());
        rank = std::max(rank, es.size());
    }
    // k-th largest invariant factor collects the k-th largest power of every prime.
    std::vector<uint64_t> desc(rank, 1);
    for (auto& [p, es] : prim)
        for (size_t k = 0; k < es.size(); ++k)
            desc[k] *= ipow(p, es[k]);
    AbelianType t;
    t.divisors_.assign(desc.rbegin(), desc.rend());
    return t;
}

AbelianType AbelianType::from_p_exponents(uint64_t p, const std::vector<int>& exponents)
{
    std::vector<uint64_t> f;
    for (int e : exponents)
        if (e > 0)
            f.push_back(ipow(p, e));
    return from_factors(f);
}

uint64_t AbelianType::order() const
{
    uint64_t r = 1;
    for (uint64_t d : divisors_)
        r *= d;
    return r;
}

AbelianType AbelianType::two_part() const
{
    std::vector<uint64_t> f;
    for (uint64_t d : divisors_)
        f.push_back(d & (~d + 1));
    return from_factors(f);
}

AbelianType AbelianType::combined(const AbelianType& other) const
{
    std::vector<uint64_t> f = divisors_;
    f.insert(f.end(), other.divisors_.begin(), other.divisors_.end());
    return from_factors(f);
}

std::string AbelianType::str() const
{
    if (divisors_.empty())
        return "(1)";
    std::string s = "(";
    for (size_t i = 0; i < divisors_.size(); ++i) {
        if (i)
            s += ", ";
        s += std::to_string(divisors_[i]);
    }
    return s + ")";
}

AbelianType two_type(std::initializer_list<int> exponents)
{
    return AbelianType::from_p_exponents(2, std::vector<int>(exponents));
}

std::vector<int> exponents_from_omega(const std::vector<int>& log_omega)
{
    if (log_omega.empty() || log_omega.front() != 0)
        throw std::invalid_argument("omega sequence must start at the trivial subgroup");
    // Number of cyclic factors of order >= p^k is log|Omega_k| - log|Omega_{k-1}|.
    std::vector<int> at_least;
    for (size_t k = 1; k < log_omega.size(); ++k) {
        int c = log_omega[k] - log_omega[k - 1];
        if (c < 0 || (!at_least.empty() && c > at_least.back()))
            throw std::invalid_argument("omega sequence is not that of an abelian p-group");
        at_least.push_back(c);
    }
    std::vector<int> exps;
    for (size_t k = 0; k < at_least.size(); ++k) {
        int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
        for (int j = 0; j < at_least[k] - next; ++j)
            exps.push_back(static_cast<int>(k) + 1);
    }
    std::sort(exps.begin(), exps.end(), std::greater<>());
    return exps;
}

int log2_exact_u64(uint64_t v)
{
    if (v == 0 || (v & (v - 1)) != 0)
        throw std::invalid_argument("log2: " + std::to_string(v) + " is not a power of two");
    int e = 0;
    while (v > 1) {
        v >>= 1;
        ++e;
    }
    return e;
}

} // namespace capit
