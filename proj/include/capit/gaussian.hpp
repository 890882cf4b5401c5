#pragma once

#include "capit/arith.hpp"

#include <string>

namespace capit {

struct GaussianInt {
    Int re;
    Int im;

    GaussianInt() = default;
    GaussianInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}

    GaussianInt conj() const { return {re, -im}; }
    Int norm() const { return re * re + im * im; }
    bool operator==(const GaussianInt& o) const { return re == o.re && im == o.im; }
    std::string str() const;
};

GaussianInt operator+(const GaussianInt& x, const GaussianInt& y);
GaussianInt operator-(const GaussianInt& x, const GaussianInt& y);
GaussianInt operator*(const GaussianInt& x, const GaussianInt& y);

// p = pi * pi_bar with pi = e + 2fi, e odd > 0, f > 0.
struct PrimeSplit {
    Int p;
    GaussianInt pi;
    GaussianInt pi_bar;

    // The same split with the roles of pi and pi_bar exchanged (not normalized).
    PrimeSplit conjugated() const { return {p, pi_bar, pi}; }
};

PrimeSplit split_prime(const Int& p);

// Quadratic residue symbol (alpha/pi) for a Gaussian prime pi of odd prime norm.
Sign gauss_symbol(const GaussianInt& alpha, const GaussianInt& pi);

// (pi1/pi3).
Sign symbol_pi(const PrimeSplit& s1, const PrimeSplit& s2);

// (1+i/pi1)(1+i/pi3).
Sign symbol_B(const PrimeSplit& s1, const PrimeSplit& s2);

} // namespace capit
