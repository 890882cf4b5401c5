#pragma once

#include "capit/abelian.hpp"
#include "capit/arith.hpp"
#include "capit/rational_symbols.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace capit {

// eps = (u + v*sqrt(m)) / w.
struct QuadUnit {
    Int u;
    Int v;
    int w = 1;
    Int m;
    Sign norm;
    int period = 0; // length of the continued-fraction period that produced it

    std::string str() const;
};

QuadUnit fundamental_unit(const Int& m);
Sign norm_eps(const Int& m);
inline Sign norm_eps(const PrimePair& pair) { return norm_eps(pair.r()); }

// Fundamental discriminant of Q(sqrt(m)) for square-free m != 0, 1.
Int field_discriminant(const Int& m);

struct BQForm {
    Int a, b, c;

    Int disc() const { return b * b - 4 * a * c; }
    bool operator==(const BQForm&) const = default;
    std::string str() const;
};

BQForm principal_form(const Int& D);
// Gauss composition (unreduced).
BQForm compose(const BQForm& f, const BQForm& g);
bool is_reduced(const BQForm& f);
BQForm reduce(const BQForm& f);
// One proper-equivalence step between reduced indefinite forms.
BQForm rho(const BQForm& f);

inline const Int default_discriminant_bound = Int(100000000);

// Form class group of discriminant D. For D > 0 the group is the wide one, obtained from the
// narrow group (cycles of reduced forms) modulo the class of the negative principal form.
class ClassGroup {
public:
    static ClassGroup compute(const Int& D, const Int& bound = default_discriminant_bound);

    const Int& discriminant() const { return D_; }
    uint64_t narrow_order() const { return reps_.size(); }
    uint64_t order() const { return reps_.size() / kernel_.size(); }
    // For D > 0: whether the negative principal form is properly equivalent to the principal one.
    bool negative_principal_trivial() const { return kernel_.size() == 1; }

    AbelianType two_part() const { return p_part(2); }
    AbelianType p_part(uint64_t p) const;
    AbelianType structure() const;

    size_t size_of_reduced_set() const { return index_.size(); }
    size_t class_of(const BQForm& f) const;
    size_t multiply(size_t x, size_t y) const;
    const BQForm& representative(size_t id) const { return reps_[id]; }

private:
    using Key = std::tuple<int64_t, int64_t, int64_t>;
    static Key key(const BQForm& f);

    Int D_;
    std::vector<BQForm> reps_;
    std::map<Key, size_t> index_;
    size_t identity_ = 0;
    std::vector<size_t> kernel_; // narrow classes that become trivial in the wide group
};

inline constexpr uint64_t structure_order_limit = 4096;

// Full structure of the (wide) form class group of discriminant D.
AbelianType class_group(const Int& D);

struct MN {
    int m;
    int n;
};
// 2^{m+1} = h_2(-p1 p2), 2^n = h_2(p1 p2).
MN exponents_mn(const PrimePair& pair);


} // namespace capit
