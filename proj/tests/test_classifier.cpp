#include "capit/classifier.hpp"
#include "capit/properties.hpp"
#include "capit/quadratic.hpp"

#include "doctest.h"

#include <set>
#include <tuple>

using namespace capit;

namespace {

InvariantRecord rec(int64_t p1, int64_t p2) { return invariants(validate_pair(p1, p2)); }

} // namespace

TEST_CASE("class set helpers")
{
    CHECK(span({}) == 0x01);
    CHECK(span({H0, H1}) == (1u << 0 | 1u << H0 | 1u << H1 | 1u << (H0 | H1)));
    CHECK(class_set_size(span({H0, H1, H2})) == 8);
    CHECK(class_set_str(span({H1, H2})) == "<[H1], [H2]>");
    CHECK(class_set_str(span({H0, H1 | H2})) == "<[H0], [H1H2]>");
    CHECK(class_vector_str(0) == "1");
    CHECK(class_set_members(span({H0})) == std::vector<ClassVector>{0, H0});
}

TEST_CASE("invariant records of tabulated pairs")
{
    auto a = rec(5, 13);
    CHECK(a.legendre == Sign::minus());
    CHECK(a.m == 2);
    CHECK(a.n == 1);
    CHECK(a.q == 2);
    CHECK(a.pi == Sign::minus());

    auto b = rec(5, 37);
    CHECK(b.legendre == Sign::minus());
    CHECK(b.m == 3);
    CHECK(b.n == 1);
    CHECK(b.q == 1);
    CHECK(b.pi == Sign::minus());

    auto c = rec(5, 29);
    CHECK(c.legendre == Sign::plus());
    CHECK(c.m == 2);
    CHECK(c.n == 2);
    CHECK(c.q == 1);
}

TEST_CASE("field layout")
{
    const auto& layout = field_layout();
    REQUIRE(layout.size() == 14);
    CHECK(layout[2].radicand == "2");
    CHECK(layout[12].name() == "L6");
    CHECK(layout[12].factors == std::array<int, 3>{3, 4, 7});
    CHECK(layout[7].factors == std::array<int, 3>{1, 2, 3});
    for (int j = 0; j < 3; ++j)
        CHECK(layout[j].normal_over_q);
    for (int j = 3; j < 7; ++j)
        CHECK_FALSE(layout[j].normal_over_q);
    // each K_j lies in exactly three of the L fields
    for (int j = 1; j <= 7; ++j) {
        int uses = 0;
        for (int l = 7; l < 14; ++l)
            for (int f : layout[l].factors)
                uses += f == j;
        CHECK(uses == 3);
    }
}

TEST_CASE("discriminant of the base field")
{
    CHECK(disc_base_field({5, 13}) == 1081600);
    CHECK(disc_base_field({5, 13}) == Int(256) * 25 * 169);
    for (auto pair : valid_pairs(200)) {
        Int d = pair.d();
        CHECK(disc_base_field(pair) == field_discriminant(-1) * field_discriminant(d) * field_discriminant(-d));
    }
}

TEST_CASE("norm group table entries")
{
    auto plus = rec(5, 29);
    CHECK(norm_groups(plus)[2] == span({H0, H1 | H2}));
    CHECK(norm_groups(plus)[0] == span({H0 | H1, H0 | H2}));
    InvariantRecord r = plus;
    r.pi = Sign::minus();
    r.B = Sign::plus();
    CHECK(norm_groups(r)[3] == span({H0, H2}));
    for (auto pair : valid_pairs(300)) {
        auto x = invariants(pair);
        ClassSets n = norm_groups(x);
        CHECK(n[2] == span({H0, H1 | H2}));
        for (ClassSet s : n)
            CHECK(class_set_size(s) == 4);
        // [H1] lies in N1 exactly when (p1/p2) = -1; [H0] lies in N4 exactly when B = 1
        CHECK(((n[0] >> H1) & 1) == (x.legendre == Sign::minus()));
        CHECK(((n[3] >> H0) & 1) == (x.B == Sign::plus()));
    }
}

TEST_CASE("norm groups agree with the symbol computation")
{
    for (auto pair : valid_pairs(500)) {
        auto r = invariants(pair);
        CHECK_MESSAGE(norm_groups(r) == norm_groups_from_symbols(r), pair.p1, ",", pair.p2);
    }
}

TEST_CASE("predictions for tabulated pairs")
{
    auto a = predict(rec(5, 13));
    CHECK(a.k[3].type == two_type({1, 2}));
    CHECK(a.k[3].kernel == span({H0, H1}));
    CHECK(a.l[5].type == two_type({1, 3}));
    CHECK(a.l[6].type == two_type({2, 2}));
    CHECK(a.group_order == 64);
    CHECK(a.coclass == 3);
    CHECK(a.disc == 1081600);

    auto b = predict(rec(5, 37));
    CHECK(b.cl2_k3 == two_type({2, 3}));

    // quartic product -1 branch with q = 1
    auto c = predict(rec(13, 29));
    CHECK(c.record.legendre == Sign::plus());
    CHECK(c.record.q == 1);
    CHECK(*c.record.quartic_product == Sign::minus());
    for (int j = 3; j < 7; ++j)
        CHECK((c.k[j].type == two_type({1, 1, 1}) || c.k[j].type == two_type({1, 2})));
    CHECK(cross_validate(c).ok());
}

TEST_CASE("cross validation of tabulated pairs")
{
    for (auto [p1, p2] : std::vector<std::pair<int64_t, int64_t>>{{5, 13}, {5, 37}, {5, 29}, {13, 29}}) {
        Validation v = cross_validate(predict(rec(p1, p2)));
        CHECK(v.ok());
        CHECK(v.validated_extensions == 14);
    }
    // the L6 subgroup for (5, 13) is <tau, sigma^2>
    auto rep = predict(rec(5, 13));
    Group g(rep.presentation);
    Subgroup gd = derived_subgroup(g);
    ClassSets n = norm_groups(rep.record);
    Subgroup l6 = intersect(intersect(subgroup_of_classes(gd, n[2]), subgroup_of_classes(gd, n[3])),
                            subgroup_of_classes(gd, n[6]));
    CHECK(l6 == Subgroup(g, {g.tau(), g.power(g.sigma(), 2)}));
}

TEST_CASE("kernel orders and Taussky condition")
{
    for (auto pair : valid_pairs(300)) {
        auto rep = predict(invariants(pair));
        for (int j = 0; j < 7; ++j) {
            int expect = (j == 2 && rep.record.q == 2) ? 2 : 4;
            CHECK(class_set_size(rep.k[j].kernel) == expect);
            CHECK(rep.k[j].taussky_a);
            CHECK((rep.k[j].kernel & rep.k[j].norm_group) != 0x01);
            CHECK(rep.l[j].kernel == 0xFF);
        }
    }
}

TEST_CASE("K3 order law")
{
    for (auto pair : valid_pairs(300)) {
        auto r = invariants(pair);
        auto rep = predict(r);
        CHECK(rep.cl2_k3.order() == uint64_t(1) << (r.n + r.m + (r.q == 1 ? 1 : 2)));
        CHECK(k3_order_law(r, rep).ok);
    }
}

TEST_CASE("symbol swaps")
{
    for (auto pair : valid_pairs(300)) {
        auto r = invariants(pair);
        auto rep = predict(r);
        auto c = conjugate_swap(r, rep);
        CHECK_MESSAGE(c.ok, c.detail);
        auto s = pair_swap(r, rep);
        CHECK_MESSAGE(s.ok, s.detail);
    }
}

TEST_CASE("record violations are detected")
{
    auto r = rec(5, 13);
    CHECK(record_violations(r).empty());
    r.q = 1;
    auto v = record_violations(r);
    std::set<std::string> names;
    for (auto& x : v)
        names.insert(x.property);
    CHECK(names.count("q_agreement"));
    CHECK(names.count("q_equivalence"));

    auto s = rec(5, 29);
    s.pi = -s.pi;
    bool quartic = false;
    for (auto& x : record_violations(s))
        quartic = quartic || x.property == "quartic_identity";
    CHECK(quartic);
}

TEST_CASE("every table branch is reached")
{
    std::set<std::tuple<int, int, int>> plus, minus;
    for (auto pair : valid_pairs(1500)) {
        auto r = invariants(pair);
        if (r.legendre.is_plus())
            plus.insert({r.pi.value(), r.B.value(), r.q});
        else
            minus.insert({r.pi.value(), r.q, 0});
    }
    // (pi, B) for legendre 1; (pi, q) for legendre -1
    std::set<std::pair<int, int>> pb, pq;
    for (auto [pi, b, q] : plus)
        pb.insert({pi, b});
    for (auto [pi, q, unused] : minus)
        pq.insert({pi, q});
    CHECK(pb.size() == 4);
    CHECK(pq.size() == 4);
    std::set<int> q_plus;
    for (auto [pi, b, q] : plus)
        q_plus.insert(q);
    CHECK(q_plus == std::set<int>{1, 2});
}
