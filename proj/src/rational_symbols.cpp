#include "capit/rational_symbols.hpp"

namespace capit {

int jacobi(const Int& a_in, const Int& n_in)
{
    if (n_in < 1 || mpz_even_p(n_in.get_mpz_t()))
        throw input_error("jacobi: modulus must be odd and positive, got " + to_string(n_in));
    Int n = n_in;
    Int a = mod(a_in, n);
    int t = 1;
    while (a != 0) {
        while (mpz_even_p(a.get_mpz_t())) {
            a /= 2;
            unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), 8);
            if (r == 3 || r == 5)
                t = -t;
        }
        std::swap(a, n);
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3)
            t = -t;
        a = mod(a, n);
    }
    return n == 1 ? t : 0;
}

Sign quartic_symbol(const Int& a, const Int& p)
{
    if (p < 5 || mod(p, 4) != 1)
        throw input_error("quartic_symbol: modulus " + to_string(p) + " is not 1 mod 4");
    if (jacobi(a, p) != 1)
        throw input_error("quartic_symbol: " + to_string(a) + " is not a nonzero square mod " +
                          to_string(p));
    Int v = powm(mod(a, p), (p - 1) / 4, p);
    if (v == 1)
        return Sign::plus();
    if (v == p - 1)
        return Sign::minus();
    throw input_error("quartic_symbol: " + to_string(p) + " is not prime");
}

Sign quartic_symbol_mod2(const Int& x)
{
    if (mod(x, 8) != 1)
        throw input_error("quartic_symbol_mod2: " + to_string(x) + " is not 1 mod 8");
    Int e = (x - 1) / 8;
    return mpz_even_p(e.get_mpz_t()) ? Sign::plus() : Sign::minus();
}

namespace {

int64_t check_prime(const Int& p, const char* which)
{
    std::string name = std::string(which) + " = " + to_string(p);
    if (p < 2 || p > max_pair_prime)
        throw input_error(name + " is outside the supported range [2, 2^31)");
    if (!is_prime(p))
        throw input_error(name + " is not prime");
    if (mod(p, 8) != 5)
        throw input_error(name + " is not congruent to 5 mod 8");
    return p.get_si();
}

} // namespace

PrimePair validate_pair(const Int& p1, const Int& p2)
{
    PrimePair pair{check_prime(p1, "p1"), check_prime(p2, "p2")};
    if (pair.p1 == pair.p2)
        throw input_error("p1 and p2 must be different primes");
    return pair;
}

} // namespace capit
