#include "capit/gaussian.hpp"
#include "capit/rational_symbols.hpp"

#include "doctest.h"

#include <vector>

using namespace capit;

namespace {

std::vector<long> primes_5_mod_8(long bound)
{
    std::vector<long> out;
    for (long p = 5; p < bound; p += 8)
        if (is_prime(p))
            out.push_back(p);
    return out;
}

// Exhaustive search for p = e^2 + 4 f^2 with e, f > 0.
GaussianInt slow_split(long p)
{
    for (long f = 1; 4 * f * f < p; ++f)
        for (long e = 1; e * e + 4 * f * f <= p; e += 2)
            if (e * e + 4 * f * f == p)
                return {e, 2 * f};
    return {0, 0};
}

long residue_of_i(const PrimeSplit& s)
{
    long p = s.p.get_si();
    for (long t = 0; t < p; ++t)
        if ((s.pi.re.get_si() + s.pi.im.get_si() * t) % p == 0)
            return t;
    return -1;
}

// (alpha/pi) by enumerating the squares of Z[i]/(pi) = F_p; 0 when pi divides alpha.
int slow_gauss_symbol(const GaussianInt& alpha, const PrimeSplit& s)
{
    long p = s.p.get_si();
    long v = ((alpha.re.get_si() + alpha.im.get_si() * residue_of_i(s)) % p + p) % p;
    if (v == 0)
        return 0;
    for (long x = 1; x < p; ++x)
        if (x * x % p == v)
            return 1;
    return -1;
}

} // namespace

TEST_CASE("ring operations")
{
    GaussianInt x{3, -2}, y{-1, 5}, z{7, 4};
    CHECK((x * y) == (y * x));
    CHECK(((x * y) * z) == (x * (y * z)));
    CHECK((x * (y + z)) == (x * y + x * z));
    CHECK((x * x.conj()).re == x.norm());
    CHECK((x * x.conj()).im == 0);
    CHECK((x * y).norm() == x.norm() * y.norm());
}

TEST_CASE("prime splitting")
{
    CHECK(split_prime(5).pi == GaussianInt{1, 2});
    CHECK(split_prime(13).pi == GaussianInt{3, 2});
    CHECK(split_prime(29).pi == GaussianInt{5, 2});
    CHECK_THROWS_AS(split_prime(17), input_error);
    CHECK_THROWS_AS(split_prime(21), input_error);
    for (long p : primes_5_mod_8(4000)) {
        PrimeSplit s = split_prime(p);
        REQUIRE(s.pi == slow_split(p));
        REQUIRE(s.pi.norm() == p);
        REQUIRE((s.pi * s.pi_bar).re == p);
        REQUIRE(s.pi.re > 0);
        REQUIRE(s.pi.im > 0);
        REQUIRE(mpz_even_p(s.pi.im.get_mpz_t()));
    }
}

TEST_CASE("gauss symbol values")
{
    CHECK(gauss_symbol({1, 2}, {3, 2}) == Sign::minus());
    CHECK(gauss_symbol({1, 2}, {7, 2}) == Sign::plus());
    CHECK(gauss_symbol({1, 0}, {3, 2}) == Sign::plus());
    CHECK_THROWS_AS(gauss_symbol({3, 2}, {3, 2}), input_error);
    CHECK_THROWS_AS(gauss_symbol({1, 2}, {3, 0}), input_error); // inert prime
    CHECK_THROWS_AS(gauss_symbol({1, 2}, {2, 2}), input_error);
}

TEST_CASE("gauss symbol agrees with square enumeration")
{
    for (long p : primes_5_mod_8(400)) {
        PrimeSplit s = split_prime(p);
        for (long a = -6; a <= 6; ++a)
            for (long b = -6; b <= 6; ++b) {
                GaussianInt al{a, b};
                int expect = slow_gauss_symbol(al, s);
                if (expect == 0)
                    CHECK_THROWS_AS(gauss_symbol(al, s.pi), input_error);
                else
                    REQUIRE(gauss_symbol(al, s.pi).value() == expect);
            }
    }
}

TEST_CASE("classification symbols on known pairs")
{
    CHECK(symbol_pi(split_prime(5), split_prime(13)) == Sign::minus());
    CHECK(symbol_pi(split_prime(5), split_prime(53)) == Sign::plus());
    CHECK(symbol_pi(split_prime(13), split_prime(29)) == Sign::minus());
    CHECK(symbol_B(split_prime(5), split_prime(13)) == Sign::plus());
    CHECK(symbol_B(split_prime(5), split_prime(37)) == Sign::minus());
    Sign b = symbol_B(split_prime(5), split_prime(13));
    CHECK((b * b) == Sign::plus());
    CHECK_THROWS_AS(symbol_pi(split_prime(5), split_prime(5)), input_error);
}

TEST_CASE("pi1 is a non-residue modulo its conjugate")
{
    for (long p : primes_5_mod_8(2000)) {
        PrimeSplit s = split_prime(p);
        REQUIRE(gauss_symbol(s.pi, s.pi_bar) == Sign::minus());
    }
}

TEST_CASE("conjugate choice and symbol identities on pairs up to 500")
{
    GaussianInt one_plus_i{1, 1};
    auto ps = primes_5_mod_8(501);
    for (size_t i = 0; i < ps.size(); ++i)
        for (size_t j = i + 1; j < ps.size(); ++j) {
            PrimeSplit s1 = split_prime(ps[i]), s2 = split_prime(ps[j]);
            const auto &pi1 = s1.pi, &pi2 = s1.pi_bar, &pi3 = s2.pi, &pi4 = s2.pi_bar;
            int leg = jacobi(ps[i], ps[j]);
            CAPTURE(ps[i]);
            CAPTURE(ps[j]);
            // Reciprocity for elements that are 1 mod 2.
            REQUIRE(gauss_symbol(pi1, pi3) == gauss_symbol(pi3, pi1));
            REQUIRE(gauss_symbol(pi2, pi3) == gauss_symbol(pi3, pi2));
            if (leg == 1) {
                Sign v = gauss_symbol(pi1, pi3);
                REQUIRE(gauss_symbol(pi2, pi3) == v);
                REQUIRE(gauss_symbol(pi1, pi4) == v);
                REQUIRE(gauss_symbol(pi2, pi4) == v);
                REQUIRE((quartic_symbol(ps[i], ps[j]) * quartic_symbol(ps[j], ps[i])) == symbol_pi(s1, s2));
            } else {
                REQUIRE(gauss_symbol(pi1, pi3) == gauss_symbol(pi2, pi4));
                REQUIRE(gauss_symbol(pi1, pi3) == -gauss_symbol(pi2, pi3));
                REQUIRE(symbol_pi(s1, s2.conjugated()) == -symbol_pi(s1, s2));
            }
            REQUIRE(symbol_B(s1, s2.conjugated()) == -symbol_B(s1, s2));
            REQUIRE(gauss_symbol(one_plus_i, pi1) * gauss_symbol(one_plus_i, pi3) == symbol_B(s1, s2));
        }
}

TEST_CASE("one plus i flips under conjugation")
{
    GaussianInt one_plus_i{1, 1};
    for (long p : primes_5_mod_8(2001)) {
        PrimeSplit s = split_prime(p);
        REQUIRE(gauss_symbol(one_plus_i, s.pi) == -gauss_symbol(one_plus_i, s.pi_bar));
    }
}
