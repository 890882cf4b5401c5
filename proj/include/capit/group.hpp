#pragma once

#include "capit/abelian.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace capit {

enum class Psi { sigma_only, tau_sigma };
std::string to_string(Psi psi);
Psi parse_psi(const std::string& s);

// <rho, sigma, tau> with abelian normal subgroup <sigma, tau> of index 2 and rho^2 = psi.
struct GPresentation {
    int m = 2;
    int n = 1;
    int q = 1;
    Psi psi = Psi::tau_sigma; // fixed to tau_sigma when q = 2

    uint64_t order() const { return uint64_t(1) << (n + m + (q == 1 ? 2 : 3)); }
    // Parameter patterns that occur for actual prime pairs.
    bool admissible() const;
    int expected_class() const;
    std::string str() const;
};

// rho^eps sigma^a tau^b in normal form.
struct GElement {
    int eps = 0;
    int64_t a = 0;
    int64_t b = 0;
    bool operator==(const GElement&) const = default;
};

inline constexpr uint64_t enumeration_guard = uint64_t(1) << 20;

class Group {
public:
    // Throws consistency_error for an inconsistent presentation unless allow_inconsistent.
    explicit Group(GPresentation p, bool allow_inconsistent = false);

    const GPresentation& presentation() const { return p_; }
    bool consistent() const { return consistent_; }
    uint64_t order() const { return 2 * uint64_t(a_range_) * uint64_t(b_range_); }

    GElement identity() const { return {}; }
    GElement rho() const { return {1, 0, 0}; }
    GElement sigma() const { return normalize(0, 1, 0); }
    GElement tau() const { return normalize(0, 0, 1); }
    GElement psi() const { return psi_; }

    GElement normalize(int eps, int64_t a, int64_t b) const;
    GElement multiply(const GElement& x, const GElement& y) const;
    GElement inverse(const GElement& x) const;
    GElement power(const GElement& x, int64_t k) const;
    GElement commutator(const GElement& x, const GElement& y) const; // x^-1 y^-1 x y
    GElement conjugate(const GElement& x, const GElement& g) const;  // g^-1 x g

    size_t index(const GElement& x) const;
    GElement element(size_t i) const;
    std::vector<GElement> enumerate() const;

private:
    GElement act(const GElement& x) const; // rho^-1 x rho on the normal subgroup

    GPresentation p_;
    int64_t a_range_ = 0;
    int64_t b_range_ = 0;
    int64_t sigma_twist_ = -1; // rho^-1 sigma rho = sigma^twist
    GElement psi_;
    bool consistent_ = true;
};

class Subgroup {
public:
    Subgroup(const Group& g, const std::vector<GElement>& gens);
    static Subgroup from_members(const Group& g, std::vector<uint8_t> members);
    static Subgroup whole(const Group& g);
    static Subgroup trivial(const Group& g) { return Subgroup(g, {}); }

    const Group& group() const { return *g_; }
    bool contains(const GElement& x) const { return members_[g_->index(x)] != 0; }
    uint64_t order() const { return size_; }
    const std::vector<GElement>& generators() const { return gens_; }
    const std::vector<uint8_t>& members() const { return members_; }
    std::vector<GElement> elements() const;
    bool is_subgroup_of(const Subgroup& o) const;
    bool operator==(const Subgroup& o) const { return members_ == o.members_; }

private:
    Subgroup() = default;
    void close();

    const Group* g_ = nullptr;
    std::vector<uint8_t> members_;
    std::vector<GElement> gens_;
    uint64_t size_ = 0;
};

Subgroup intersect(const Subgroup& x, const Subgroup& y);
// Smallest subgroup of h containing s and normalized by h.
Subgroup normal_closure(const Subgroup& h, const std::vector<GElement>& s);
bool is_normal_in(const Subgroup& k, const Subgroup& h);
Subgroup derived_subgroup(const Subgroup& h);
inline Subgroup derived_subgroup(const Group& g) { return derived_subgroup(Subgroup::whole(g)); }
std::vector<Subgroup> lower_central_series(const Group& g);
int nilpotency_class(const Group& g);
int coclass(const Group& g);

AbelianType abelian_invariants(const Subgroup& h, const Subgroup& modulo);
inline AbelianType abelianization(const Subgroup& h) { return abelian_invariants(h, derived_subgroup(h)); }

// One representative per right coset H t.
std::vector<GElement> right_transversal(const Subgroup& h);
std::vector<GElement> random_right_transversal(const Subgroup& h, std::mt19937_64& rng);
// Transfer G -> H/H', returned as an element of H standing for its coset of H'.
GElement transfer(const Subgroup& h, const GElement& g);
GElement transfer(const Subgroup& h, const std::vector<GElement>& transversal, const GElement& g);
// Closed form for index 2: g z^-1 g z when g in H, g^2 otherwise (z outside H).
GElement transfer_index2(const Subgroup& h, const GElement& g);

// Bits (x0, x1, x2) of [H0]^x0 [H1]^x1 [H2]^x2 in the 2-class group of the base field.
using ClassVector = uint8_t;
// Set of class vectors as an 8-bit membership mask.
using ClassSet = uint8_t;

GElement class_to_group(const Group& g, ClassVector v);
ClassSet transfer_kernel(const Subgroup& h);
// Preimage of a set of classes: generated by their images together with G' (passed in).
Subgroup subgroup_of_classes(const Subgroup& derived, ClassSet classes);

} // namespace capit
