#include "capit/classifier.hpp"
#include "capit/quadratic.hpp"
#include "capit/unit_index.hpp"

#include <algorithm>
#include <map>

namespace capit {

ClassSet span(std::initializer_list<ClassVector> gens)
{
    ClassSet s = 1;
    for (ClassVector g : gens) {
        ClassSet t = s;
        for (int v = 0; v < 8; ++v)
            if (s & (1u << v))
                t |= ClassSet(1u << (v ^ g));
        s = t;
    }
    return s;
}

int class_set_size(ClassSet s) { return __builtin_popcount(s); }

std::vector<ClassVector> class_set_members(ClassSet s)
{
    std::vector<ClassVector> out;
    for (int v = 0; v < 8; ++v)
        if (s & (1u << v))
            out.push_back(ClassVector(v));
    return out;
}

std::string class_vector_str(ClassVector v)
{
    if (v == 0)
        return "1";
    std::string s;
    for (int i = 0; i < 3; ++i)
        if (v & (1u << i))
            s += "H" + std::to_string(i);
    return s;
}

std::string class_set_str(ClassSet s)
{
    // greedy basis in increasing vector order
    std::vector<ClassVector> basis;
    ClassSet got = 1;
    for (ClassVector v : class_set_members(s)) {
        if (got & (1u << v))
            continue;
        basis.push_back(v);
        for (ClassVector x : class_set_members(got))
            got = ClassSet(got | (1u << (x ^ v)));
    }
    std::string out = "<";
    for (size_t i = 0; i < basis.size(); ++i)
        out += (i ? ", [" : "[") + class_vector_str(basis[i]) + "]";
    return out + ">";
}

namespace {

std::string pair_str(const PrimePair& p) { return "(" + std::to_string(p.p1) + ", " + std::to_string(p.p2) + ")"; }

} // namespace

InvariantRecord invariants_unchecked(const PrimePair& pair_in, const PrimeSplit& s1, const PrimeSplit& s2)
{
    PrimePair pair = validate_pair(pair_in.p1, pair_in.p2);
    if (s1.p != pair.p1 || s2.p != pair.p2 || !(s1.pi * s1.pi_bar == GaussianInt(s1.p, 0)) ||
        !(s2.pi * s2.pi_bar == GaussianInt(s2.p, 0)))
        throw input_error("invariants: Gaussian splits do not match the pair " + pair_str(pair));
    InvariantRecord r;
    r.pair = pair;
    r.d = pair.d();
    r.s1 = s1;
    r.s2 = s2;
    r.legendre = Sign(jacobi(pair.p1, pair.p2));
    r.pi = symbol_pi(s1, s2);
    r.B = symbol_B(s1, s2);
    MN mn = exponents_mn(pair);
    r.m = mn.m;
    r.n = mn.n;

    UnitIndex ui = unit_index(pair);
    r.q = ui.q;
    r.norm_eps_r = ui.norm_eps_r;
    r.norm_eps_d = norm_eps(r.d);
    r.psi = (r.legendre == Sign::plus() && r.norm_eps_r == Sign::plus()) ? Psi::sigma_only : Psi::tau_sigma;
    if (r.legendre == Sign::plus()) {
        r.quartic_product = quartic_symbol(pair.p1, pair.p2) * quartic_symbol(pair.p2, pair.p1);
    } else {
        r.quartic_triple = quartic_triple_product(pair);
        r.q_symbols = q_from_symbols(pair);
    }
    return r;
}

std::vector<Violation> record_violations(const InvariantRecord& r)
{
    std::vector<Violation> out;
    auto require = [&](bool ok, const char* property, const std::string& what) {
        if (!ok)
            out.push_back({property, what});
    };
    require(r.norm_eps_d == Sign::minus(), "norm_eps_d", "N(eps_d) = +1 for d = 2 p1 p2");
    if (r.legendre == Sign::plus()) {
        require(*r.quartic_product == r.pi, "quartic_identity",
                "quartic product (p1/p2)_4 (p2/p1)_4 differs from (pi1/pi3)");
    } else {
        require(r.norm_eps_r == Sign::minus(), "norm_eps_r", "N(eps_{p1 p2}) = +1 although (p1/p2) = -1");
        require(*r.quartic_triple == r.pi * r.B, "quartic_triple", "quartic triple product differs from (pi1/pi3) B");
        require(r.q_symbols == r.q, "q_agreement",
                "unit index from the square test (" + std::to_string(r.q) + ") differs from the symbol criterion (" +
                    std::to_string(r.q_symbols) + ")");
        require((r.q == 1) == (r.pi == r.B), "q_equivalence", "q = 1 must hold exactly when (pi1/pi3) = B");
    }
    const char* ec = "exponent_constraints";
    if (r.q == 2) {
        require(r.m == 2, ec, "unit index 2 requires m = 2, got m = " + std::to_string(r.m));
        if (r.legendre == Sign::minus())
            require(r.n == 1, ec, "unit index 2 with (p1/p2) = -1 requires n = 1");
        else
            require(r.n >= 2, ec, "unit index 2 with (p1/p2) = 1 requires n >= 2");
    } else if (r.legendre == Sign::minus()) {
        require(r.n == 1 && r.m >= 3, ec, "unit index 1 with (p1/p2) = -1 requires n = 1, m >= 3");
    } else if (*r.quartic_product == Sign::minus()) {
        require(r.n == 1 && r.m >= 3, ec, "unit index 1 with quartic product -1 requires n = 1, m >= 3");
    } else {
        require(r.m == 2 && r.n >= 2, ec, "unit index 1 with quartic product 1 requires m = 2, n >= 2");
    }
    return out;
}

InvariantRecord invariants(const PrimePair& pair) { return invariants(pair, split_prime(pair.p1), split_prime(pair.p2)); }

InvariantRecord invariants(const PrimePair& pair, const PrimeSplit& s1, const PrimeSplit& s2)
{
    InvariantRecord r = invariants_unchecked(pair, s1, s2);
    auto bad = record_violations(r);
    if (!bad.empty())
        throw consistency_error("pair " + pair_str(r.pair) + ": " + bad.front().property + ": " + bad.front().detail);
    return r;
}

const std::vector<FieldLabel>& field_layout()
{
    static const std::vector<FieldLabel> layout = [] {
        std::vector<FieldLabel> v;
        v.push_back({'K', 1, "p1", "2*p2", {}, true, "inside the genus field"});
        v.push_back({'K', 2, "p2", "2*p1", {}, true, "inside the genus field"});
        v.push_back({'K', 3, "2", "p1*p2", {}, true, "inside the genus field"});
        v.push_back({'K', 4, "pi1*pi3", "2*pi2*pi4", {}, false, "conjugate to K7, not normal over Q"});
        v.push_back({'K', 5, "pi1*pi4", "2*pi2*pi3", {}, false, "conjugate to K6, not normal over Q"});
        v.push_back({'K', 6, "pi2*pi3", "2*pi1*pi4", {}, false, "conjugate to K5, not normal over Q"});
        v.push_back({'K', 7, "pi2*pi4", "2*pi1*pi3", {}, false, "conjugate to K4, not normal over Q"});
        v.push_back({'L', 1, "", "", {1, 2, 3}, true, "absolute genus field"});
        v.push_back({'L', 2, "", "", {1, 4, 6}, false, "isomorphic to L3, not normal over Q"});
        v.push_back({'L', 3, "", "", {1, 5, 7}, false, "isomorphic to L2, not normal over Q"});
        v.push_back({'L', 4, "", "", {2, 4, 5}, false, "isomorphic to L5, not normal over Q"});
        v.push_back({'L', 5, "", "", {2, 6, 7}, false, "isomorphic to L4, not normal over Q"});
        v.push_back({'L', 6, "", "", {3, 4, 7}, true, "Galois over Q"});
        v.push_back({'L', 7, "", "", {3, 5, 6}, true, "Galois over Q"});
        return v;
    }();
    return layout;
}

unsigned odd_radicand_primes(int j)
{
    static constexpr std::array<unsigned, 7> bits = {0x3, 0xC, 0xF, 0x5, 0x9, 0x6, 0xA};
    if (j < 1 || j > 7)
        throw std::out_of_range("odd_radicand_primes: field index out of range");
    return bits[j - 1];
}

Int disc_base_field(const PrimePair& pair)
{
    // disc(Q(i)) disc(Q(sqrt d)) disc(Q(sqrt -d))
    return field_discriminant(-1) * field_discriminant(pair.d()) * field_discriminant(-pair.d());
}

namespace {

// Choice index for the symbol-dependent rows: first by B (legendre +1) or q (legendre -1), then pi.
int variant(const InvariantRecord& r, bool by_q)
{
    int outer = by_q ? (r.q == 1 ? 0 : 1) : (r.B == Sign::plus() ? 0 : 1);
    int inner = r.pi == Sign::minus() ? 0 : 1;
    return 2 * outer + inner;
}

using Row = std::array<ClassSet, 4>; // [outer sign/q][pi = -1, pi = 1]

const ClassSet s_0_1 = span({H0, H1});
const ClassSet s_0_2 = span({H0, H2});
const ClassSet s_1_2 = span({H1, H2});
const ClassSet s_1_02 = span({H1, H0 | H2});
const ClassSet s_2_01 = span({H2, H0 | H1});
const ClassSet s_01_02 = span({H0 | H1, H0 | H2});
const ClassSet s_0_12 = span({H0, H1 | H2});

} // namespace

ClassSets norm_groups(const InvariantRecord& r)
{
    ClassSets out{};
    out[2] = s_0_12;
    if (r.legendre == Sign::plus()) {
        out[0] = s_01_02;
        out[1] = s_1_2;
        static const std::array<Row, 4> rows = {{
            {s_0_2, s_0_1, s_2_01, s_1_02},
            {s_2_01, s_1_02, s_0_2, s_0_1},
            {s_1_02, s_2_01, s_0_1, s_0_2},
            {s_0_1, s_0_2, s_1_02, s_2_01},
        }};
        for (int j = 0; j < 4; ++j)
            out[3 + j] = rows[j][variant(r, false)];
    } else {
        out[0] = s_1_2;
        out[1] = s_01_02;
        static const std::array<Row, 4> rows = {{
            {s_1_02, s_0_2, s_0_1, s_2_01},
            {s_0_2, s_1_02, s_2_01, s_0_1},
            {s_0_1, s_2_01, s_1_02, s_0_2},
            {s_2_01, s_0_1, s_0_2, s_1_02},
        }};
        for (int j = 0; j < 4; ++j)
            out[3 + j] = rows[j][variant(r, true)];
    }
    return out;
}

ClassSets norm_groups_from_symbols(const InvariantRecord& r)
{
    const std::array<GaussianInt, 4> primes = {r.s1.pi, r.s1.pi_bar, r.s2.pi, r.s2.pi_bar};
    const GaussianInt one_plus_i{1, 1};
    ClassSets out{};
    for (int j = 1; j <= 7; ++j) {
        unsigned odd = odd_radicand_primes(j);
        GaussianInt odd_rep{1, 0}, even_rep{2, 0};
        Sign at_h0;
        for (int k = 0; k < 4; ++k) {
            if (odd & (1u << k)) {
                odd_rep = odd_rep * primes[k];
                at_h0 = at_h0 * gauss_symbol(one_plus_i, primes[k]);
            } else {
                even_rep = even_rep * primes[k];
            }
        }
        // H1 lies over pi1 and H2 over pi2; use whichever generator is prime to it.
        Sign at_h1 = gauss_symbol(odd & 1u ? even_rep : odd_rep, primes[0]);
        Sign at_h2 = gauss_symbol(odd & 2u ? even_rep : odd_rep, primes[1]);
        ClassSet kernel = 0;
        for (ClassVector v = 0; v < 8; ++v) {
            Sign chi;
            if (v & H0)
                chi = chi * at_h0;
            if (v & H1)
                chi = chi * at_h1;
            if (v & H2)
                chi = chi * at_h2;
            if (chi == Sign::plus())
                kernel |= ClassSet(1u << v);
        }
        out[j - 1] = kernel;
    }
    return out;
}

ClassSets predicted_kernels(const InvariantRecord& r)
{
    ClassSets out{};
    out[0] = s_1_2;
    out[1] = s_01_02;
    out[2] = r.q == 1 ? s_0_12 : span({H0});
    if (r.legendre == Sign::plus()) {
        bool b_plus = r.B == Sign::plus();
        out[3] = b_plus ? s_0_1 : s_1_02;
        out[4] = b_plus ? s_1_02 : s_0_1;
        out[5] = b_plus ? s_2_01 : s_0_2;
        out[6] = b_plus ? s_0_2 : s_2_01;
    } else {
        static const std::array<Row, 4> rows = {{
            {s_1_02, s_0_1, s_0_1, s_1_02},
            {s_0_1, s_1_02, s_1_02, s_0_1},
            {s_0_2, s_2_01, s_2_01, s_0_2},
            {s_2_01, s_0_2, s_0_2, s_2_01},
        }};
        for (int j = 0; j < 4; ++j)
            out[3 + j] = rows[j][variant(r, true)];
    }
    return out;
}

std::array<AbelianType, 7> predicted_k_types(const InvariantRecord& r)
{
    const AbelianType t222 = two_type({1, 1, 1}), t24 = two_type({1, 2});
    std::array<AbelianType, 7> out;
    bool leg_plus = r.legendre == Sign::plus();
    out[0] = out[1] = leg_plus ? t222 : t24;
    if (r.q == 1)
        out[2] = two_type({r.m, r.n + 1});
    else
        out[2] = two_type({std::min(r.m, r.n + 1), std::max(r.m + 1, r.n + 2)});
    if (leg_plus) {
        const AbelianType& t = r.pi == Sign::minus() ? t222 : t24;
        out[3] = out[4] = out[5] = out[6] = t;
    } else {
        bool pi_minus = r.pi == Sign::minus();
        out[3] = out[6] = pi_minus ? t24 : t222;
        out[4] = out[5] = pi_minus ? t222 : t24;
    }
    return out;
}

std::array<AbelianType, 7> predicted_l_types(const InvariantRecord& r)
{
    const AbelianType t222 = two_type({1, 1, 1}), t24 = two_type({1, 2});
    std::array<AbelianType, 7> out;
    const int m = r.m, n = r.n;
    bool leg_plus = r.legendre == Sign::plus();
    if (r.q == 1)
        out[0] = two_type({m, n});
    else
        out[0] = two_type({std::min(m, n), std::max(m + 1, n + 1)});
    const AbelianType& mid = (leg_plus && r.pi == Sign::minus()) ? t222 : t24;
    out[1] = out[2] = out[3] = out[4] = mid;
    if (r.q == 2) {
        if (leg_plus) {
            out[5] = out[6] = two_type({1, n + 2});
        } else {
            bool pi_plus = r.pi == Sign::plus();
            out[5] = pi_plus ? two_type({2, 2}) : two_type({1, 3});
            out[6] = pi_plus ? two_type({1, 3}) : two_type({2, 2});
        }
    } else {
        AbelianType a = two_type({m - 1, n + 1});
        AbelianType b = two_type({std::min(m - 1, n), std::max(m, n + 1)});
        bool b_plus = r.B == Sign::plus();
        out[5] = b_plus ? a : b;
        out[6] = b_plus ? b : a;
    }
    return out;
}

PredictionReport predict(const InvariantRecord& r)
{
    PredictionReport rep;
    rep.record = r;
    rep.presentation = r.presentation();
    rep.group_order = rep.presentation.order();
    rep.derived_type = r.q == 1 ? two_type({r.m - 1, r.n}) : two_type({1, r.n + 1});
    rep.base_class_group = two_type({1, 1, 1});
    rep.nilpotency_class = rep.presentation.expected_class();
    rep.coclass = 3;
    rep.disc = disc_base_field(r.pair);

    ClassSets ng = norm_groups(r), kern = predicted_kernels(r);
    auto kt = predicted_k_types(r);
    auto lt = predicted_l_types(r);
    for (int j = 0; j < 7; ++j) {
        rep.k[j] = {ng[j], kern[j], kt[j], (kern[j] & ng[j] & ~ClassSet(1)) != 0};
    }
    const auto& layout = field_layout();
    for (int j = 0; j < 7; ++j) {
        const auto& f = layout[7 + j].factors;
        rep.l[j].norm_group = ClassSet(ng[f[0] - 1] & ng[f[1] - 1] & ng[f[2] - 1]);
        rep.l[j].kernel = 0xFF;
        rep.l[j].type = lt[j];
    }
    rep.cl2_k3 = kt[2];
    rep.cl2_genus = lt[0];
    return rep;
}

bool Validation::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

std::vector<Check> Validation::failures() const
{
    std::vector<Check> out;
    for (const auto& c : checks)
        if (!c.ok)
            out.push_back(c);
    return out;
}

namespace {

struct Recorder {
    Validation& v;
    bool field_ok = true;

    template <class T>
    void operator()(const std::string& name, const T& expected, const T& actual)
    {
        bool ok = expected == actual;
        field_ok = field_ok && ok;
        v.checks.push_back({name, render(expected), render(actual), ok});
    }

    static std::string render(const AbelianType& t) { return t.str(); }
    static std::string render(uint64_t x) { return std::to_string(x); }
    static std::string render(int x) { return std::to_string(x); }
    static std::string render(bool x) { return x ? "true" : "false"; }
    static std::string render(ClassSet s) { return class_set_str(s); }
};

} // namespace

Validation cross_validate(const PredictionReport& rep)
{
    Validation v;
    Recorder rec{v};
    Group g(rep.presentation);
    Subgroup whole = Subgroup::whole(g);
    Subgroup gd = derived_subgroup(g);

    rec("G.order", rep.group_order, g.order());
    rec("G.derived_type", rep.derived_type, abelian_invariants(gd, Subgroup::trivial(g)));
    rec("G.abelianization", rep.base_class_group, abelian_invariants(whole, gd));
    rec("G.nilpotency_class", rep.nilpotency_class, nilpotency_class(g));
    rec("G.coclass", rep.coclass, coclass(g));
    rec("G.derived_is_sigma2_tau2", true, gd == Subgroup(g, {g.power(g.sigma(), 2), g.power(g.tau(), 2)}));

    ClassSets from_symbols = norm_groups_from_symbols(rep.record);
    std::vector<Subgroup> gk;
    for (int j = 0; j < 7; ++j) {
        const KPrediction& kp = rep.k[j];
        std::string name = "K" + std::to_string(j + 1);
        rec.field_ok = true;
        rec(name + ".norm_group_symbols", kp.norm_group, from_symbols[j]);
        Subgroup h = subgroup_of_classes(gd, kp.norm_group);
        rec(name + ".index", uint64_t(2), g.order() / h.order());
        rec(name + ".type", kp.type, abelianization(h));
        ClassSet ker = transfer_kernel(h);
        rec(name + ".kernel", kp.kernel, ker);
        int expect_size = (j == 2 && rep.record.q == 2) ? 2 : 4;
        rec(name + ".kernel_size", expect_size, class_set_size(ker));
        rec(name + ".taussky_a", true, (ker & kp.norm_group & ~ClassSet(1)) != 0);
        if (rec.field_ok)
            ++v.validated_extensions;
        gk.push_back(std::move(h));
    }
    const auto& layout = field_layout();
    for (int j = 0; j < 7; ++j) {
        const LPrediction& lp = rep.l[j];
        std::string name = "L" + std::to_string(j + 1);
        const auto& f = layout[7 + j].factors;
        rec.field_ok = true;
        Subgroup h = intersect(intersect(gk[f[0] - 1], gk[f[1] - 1]), gk[f[2] - 1]);
        rec(name + ".index", uint64_t(4), g.order() / h.order());
        rec(name + ".norm_group_matches", true, subgroup_of_classes(gd, lp.norm_group) == h);
        rec(name + ".type", lp.type, abelianization(h));
        rec(name + ".kernel", lp.kernel, transfer_kernel(h));
        if (rec.field_ok)
            ++v.validated_extensions;
    }
    return v;
}

} // namespace capit
