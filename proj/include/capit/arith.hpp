#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace capit {

using Int = mpz_class;

// Bad user input; the CLI maps it to exit code 2.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A cross-check between independent computations failed; exit code 3.
struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sign in {+1, -1}.
class Sign {
public:
    constexpr Sign() = default;
    explicit Sign(int v);
    static constexpr Sign plus() { return Sign(Raw{1}); }
    static constexpr Sign minus() { return Sign(Raw{-1}); }

    constexpr int value() const { return v_; }
    constexpr Sign operator*(Sign o) const { return Sign(Raw{v_ * o.v_}); }
    constexpr Sign operator-() const { return Sign(Raw{-v_}); }
    constexpr bool operator==(const Sign&) const = default;
    constexpr bool is_plus() const { return v_ == 1; }

private:
    struct Raw { int v; };
    constexpr explicit Sign(Raw r) : v_(r.v) {}
    int v_ = 1;
};

std::string to_string(Sign s);

// Nonnegative residue of a modulo m (m > 0).
Int mod(const Int& a, const Int& m);
Int isqrt(const Int& n);
bool is_square(const Int& n);
Int powm(const Int& base, const Int& exp, const Int& m);
// Inverse of a modulo m; throws input_error if not invertible.
Int inverse_mod(const Int& a, const Int& m);

struct Xgcd {
    Int g, x, y; // g = x*a + y*b, g >= 0
};
Xgcd xgcd(const Int& a, const Int& b);

// Deterministic below 2^64, strong probable prime to a fixed base panel above.
bool is_prime(const Int& n);
bool is_squarefree(const Int& n);

int64_t to_i64(const Int& v);
std::string to_string(const Int& v);

} // namespace capit
