#pragma once

#include "capit/arith.hpp"
#include "capit/quadratic.hpp"
#include "capit/rational_symbols.hpp"

#include <array>
#include <optional>
#include <string>

namespace capit {

// c0 + c1*sqrt(2) + c2*sqrt(r) + c3*sqrt(2r) with exact rational coefficients.
class MultiQuadElt {
public:
    explicit MultiQuadElt(Int r);
    MultiQuadElt(Int r, std::array<mpq_class, 4> c);

    static MultiQuadElt from_unit(const Int& r, const QuadUnit& eps); // eps in Q(sqrt 2), Q(sqrt r) or Q(sqrt 2r)

    const Int& radicand() const { return r_; }
    const mpq_class& operator[](int i) const { return c_[i]; }

    MultiQuadElt operator*(const MultiQuadElt& o) const;
    MultiQuadElt operator+(const MultiQuadElt& o) const;
    bool operator==(const MultiQuadElt& o) const;
    MultiQuadElt conj_sqrt2() const;  // sqrt(2) -> -sqrt(2)
    MultiQuadElt conj_sqrtr() const;  // sqrt(r) -> -sqrt(r)
    std::string str() const;

private:
    Int r_;
    std::array<mpq_class, 4> c_;
};

struct SquareRootSearch {
    std::optional<MultiQuadElt> root;
    unsigned precision_bits = 0; // working precision of the final numeric pass
    bool totally_positive = false;
};

inline constexpr unsigned initial_precision_bits = 128;
inline constexpr unsigned max_precision_bits = 8192;

// Square root in Q(sqrt 2, sqrt r) with coefficients in (1/2)Z, found from numeric candidates and
// accepted only after exact re-expansion.
SquareRootSearch search_square_root(const MultiQuadElt& target);
std::optional<MultiQuadElt> exact_square_root(const MultiQuadElt& target);

struct UnitIndex {
    int q = 1;
    Sign norm_eps_r;
    bool decided_by_norm = false;          // N(eps_r) = +1 forces q = 1
    bool half_integral_eps_r = false;      // eps_r had denominator 2 (never expected for r = 1 mod 8)
    std::optional<MultiQuadElt> root;      // sqrt(eps_2 eps_r eps_2r) when q = 2
    unsigned precision_bits = 0;
};

UnitIndex unit_index(const PrimePair& pair);
inline int unit_index_q(const PrimePair& pair) { return unit_index(pair).q; }

// Triple quartic symbol product criterion; only for (p1/p2) = -1.
Sign quartic_triple_product(const PrimePair& pair);
int q_from_symbols(const PrimePair& pair);

} // namespace capit
