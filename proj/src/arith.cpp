#include "capit/arith.hpp"

#include <array>

namespace capit {

Sign::Sign(int v) : v_(v)
{
    if (v != 1 && v != -1)
        throw std::invalid_argument("sign must be +1 or -1, got " + std::to_string(v));
}

std::string to_string(Sign s) { return s.is_plus() ? "+1" : "-1"; }

Int mod(const Int& a, const Int& m)
{
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int isqrt(const Int& n)
{
    if (n < 0)
        throw std::domain_error("isqrt of negative number");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Int powm(const Int& base, const Int& exp, const Int& m)
{
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int inverse_mod(const Int& a, const Int& m)
{
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw input_error(to_string(a) + " is not invertible modulo " + to_string(m));
    return r;
}

Xgcd xgcd(const Int& a, const Int& b)
{
    Xgcd r;
    mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

namespace {

bool strong_probable_prime(const Int& n, const Int& base)
{
    Int d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++s;
    }
    Int x = powm(base, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n - 1)
            return true;
    }
    return false;
}

} // namespace

bool is_prime(const Int& n)
{
    if (n < 2)
        return false;
    static const std::array<unsigned, 12> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned p : bases) {
        if (n == p)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
    }
    // The first twelve prime bases are a deterministic witness set below 3.1e23.
    for (unsigned p : bases)
        if (!strong_probable_prime(n, Int(p)))
            return false;
    return true;
}

bool is_squarefree(const Int& n)
{
    if (n == 0)
        return false;
    Int m = abs(n);
    for (Int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0)
                return false;
        }
    }
    return true;
}

int64_t to_i64(const Int& v)
{
    if (!mpz_fits_slong_p(v.get_mpz_t()))
        throw std::overflow_error("integer " + to_string(v) + " exceeds 64 bits");
    return v.get_si();
}

std::string to_string(const Int& v) { return v.get_str(); }

} // namespace capit
