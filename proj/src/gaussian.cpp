#include "capit/gaussian.hpp"

namespace capit {

std::string GaussianInt::str() const
{
    std::string s = to_string(re);
    if (im >= 0)
        s += "+";
    return s + to_string(im) + "i";
}

GaussianInt operator+(const GaussianInt& x, const GaussianInt& y) { return {x.re + y.re, x.im + y.im}; }

GaussianInt operator-(const GaussianInt& x, const GaussianInt& y) { return {x.re - y.re, x.im - y.im}; }

GaussianInt operator*(const GaussianInt& x, const GaussianInt& y)
{
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

PrimeSplit split_prime(const Int& p)
{
    if (p < 5 || mod(p, 8) != 5)
        throw input_error("split_prime: " + to_string(p) + " is not congruent to 5 mod 8");
    if (!is_prime(p))
        throw input_error("split_prime: " + to_string(p) + " is not prime");

    // 2 is a non-residue for p = 5 mod 8, so 2^((p-1)/4) squares to -1.
    Int root = powm(Int(2), (p - 1) / 4, p);
    Int a = p, b = root;
    while (b * b > p) {
        Int t = a % b;
        a = b;
        b = t;
    }
    Int rest = p - b * b;
    Int c = isqrt(rest);
    if (c * c != rest)
        throw consistency_error("split_prime: descent failed for " + to_string(p));
    Int odd = mpz_odd_p(b.get_mpz_t()) ? b : c;
    Int even = mpz_odd_p(b.get_mpz_t()) ? c : b;
    GaussianInt pi{abs(odd), abs(even)};
    return {p, pi, pi.conj()};
}

Sign gauss_symbol(const GaussianInt& alpha, const GaussianInt& pi)
{
    Int n = pi.norm();
    if (!is_prime(n) || n == 2)
        throw input_error("gauss_symbol: " + pi.str() + " is not a Gaussian prime of odd prime norm");
    // pi = x + yi vanishes in Z[i]/(pi) = F_n, so i maps to -x/y.
    Int iota = mod(-pi.re * inverse_mod(pi.im, n), n);
    Int v = mod(alpha.re + alpha.im * iota, n);
    if (v == 0)
        throw input_error("gauss_symbol: " + alpha.str() + " is divisible by " + pi.str());
    Int e = powm(v, (n - 1) / 2, n);
    return e == 1 ? Sign::plus() : Sign::minus();
}

Sign symbol_pi(const PrimeSplit& s1, const PrimeSplit& s2)
{
    if (s1.p == s2.p)
        throw input_error("symbol_pi: splits of the same prime");
    return gauss_symbol(s1.pi, s2.pi);
}

Sign symbol_B(const PrimeSplit& s1, const PrimeSplit& s2)
{
    if (s1.p == s2.p)
        throw input_error("symbol_B: splits of the same prime");
    GaussianInt one_plus_i{1, 1};
    return gauss_symbol(one_plus_i, s1.pi) * gauss_symbol(one_plus_i, s2.pi);
}

} // namespace capit
