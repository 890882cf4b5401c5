#include "capit/properties.hpp"
#include "capit/quadratic.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace capit {

bool PairReport::ok() const
{
    return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.ok; });
}

std::vector<PrimePair> valid_pairs(int64_t max_prime)
{
    std::vector<int64_t> primes;
    for (int64_t p = 5; p <= max_prime; p += 8)
        if (is_prime(p))
            primes.push_back(p);
    std::vector<PrimePair> out;
    for (size_t i = 0; i < primes.size(); ++i)
        for (size_t j = i + 1; j < primes.size(); ++j)
            out.push_back({primes[i], primes[j]});
    return out;
}

namespace {

size_t class_pow(const ClassGroup& cg, size_t x, uint64_t e)
{
    size_t acc = cg.class_of(principal_form(cg.discriminant()));
    while (e) {
        if (e & 1)
            acc = cg.multiply(acc, x);
        x = cg.multiply(x, x);
        e >>= 1;
    }
    return acc;
}

PropertyResult fail(const std::string& name, const std::string& detail) { return {name, false, detail}; }

} // namespace

PropertyResult imaginary_subfield_structure(const InvariantRecord& r)
{
    const std::string name = "imaginary_subfield_structure";
    const Int rr = r.pair.r();
    const Int D = -4 * rr;
    ClassGroup cg = ClassGroup::compute(D);
    AbelianType two = cg.two_part();
    if (two != two_type({1, r.m}))
        return fail(name, "Cl2(Q(sqrt(-p1 p2))) is " + two.str() + ", expected (2, 2^m) with m = " + std::to_string(r.m));
    uint64_t odd = cg.order() / two.order();
    size_t id = cg.class_of(principal_form(D));
    // The 2^(m-1)-th powers of the 2-part form {1, z}.
    std::vector<size_t> tops;
    for (size_t x = 0; x < cg.narrow_order(); ++x) {
        size_t y = class_pow(cg, x, odd << (r.m - 1));
        if (y != id && std::find(tops.begin(), tops.end(), y) == tops.end())
            tops.push_back(y);
    }
    if (tops.size() != 1)
        return fail(name, "expected a unique non-trivial 2^(m-1)-th power");
    size_t z = tops.front();
    size_t two_prime = cg.class_of({2, 2, (1 + rr) / 2});
    if (two_prime == id || cg.multiply(two_prime, two_prime) != id || two_prime == z)
        return fail(name, "the prime above 2 does not split off a factor of order 2");
    size_t p1_prime = cg.class_of({r.pair.p1, 0, r.pair.p2});
    size_t target = r.legendre == Sign::plus() ? p1_prime : cg.multiply(p1_prime, two_prime);
    if (target != z)
        return fail(name, std::string("I^(2^(m-1)) is not the class of ") +
                              (r.legendre == Sign::plus() ? "p1" : "2 p1"));
    return {name, true, "(2, 2^" + std::to_string(r.m) + ")"};
}

PropertyResult real_subfield_structure(const InvariantRecord& r)
{
    const std::string name = "real_subfield_structure";
    const Int D = r.pair.r();
    ClassGroup cg = ClassGroup::compute(D);
    AbelianType two = cg.two_part();
    if (two != two_type({r.n}))
        return fail(name, "Cl2(Q(sqrt(p1 p2))) is " + two.str() + ", expected cyclic of order 2^n, n = " +
                              std::to_string(r.n));
    uint64_t odd = cg.order() / two.order();
    size_t id = cg.class_of(principal_form(D));
    size_t neg = cg.class_of({-1, 1, (D - 1) / 4});
    size_t g = cg.class_of({2, 1, (1 - D) / 8});
    size_t top = class_pow(cg, g, odd << (r.n - 1));
    if (top == id || top == neg)
        return fail(name, "the prime above 2 does not generate the 2-class group");
    return {name, true, "cyclic of order 2^" + std::to_string(r.n)};
}

PropertyResult kaplan_two_parts(const PrimePair& pair)
{
    const std::string name = "kaplan_two_parts";
    const AbelianType t22 = two_type({1, 1});
    for (const Int& m : {pair.d(), Int(-pair.d())}) {
        AbelianType t = ClassGroup::compute(field_discriminant(m)).two_part();
        if (t != t22)
            return fail(name, "Cl2(Q(sqrt(" + to_string(m) + "))) is " + t.str());
    }
    return {name, true, ""};
}

PropertyResult conjugate_swap(const InvariantRecord& r, const PredictionReport& rep)
{
    const std::string name = "conjugate_swap";
    InvariantRecord s = invariants(r.pair, r.s1, r.s2.conjugated());
    bool flip_pi = r.legendre == Sign::minus();
    if (s.pi != (flip_pi ? -r.pi : r.pi) || s.B != -r.B)
        return fail(name, "symbols did not transform as expected");
    PredictionReport sp = predict(s);
    for (int j = 0; j < 7; ++j) {
        const KPrediction& a = rep.k[j];
        const KPrediction& b = sp.k[conjugate_swap_k[j]];
        if (a.norm_group != b.norm_group || a.kernel != b.kernel || a.type != b.type)
            return fail(name, "K" + std::to_string(j + 1) + " does not map to K" +
                                  std::to_string(conjugate_swap_k[j] + 1));
        if (rep.l[j].type != sp.l[conjugate_swap_l[j]].type ||
            rep.l[j].norm_group != sp.l[conjugate_swap_l[j]].norm_group)
            return fail(name, "L" + std::to_string(j + 1) + " does not map to L" +
                                  std::to_string(conjugate_swap_l[j] + 1));
    }
    return {name, true, ""};
}

PropertyResult pair_swap(const InvariantRecord& r, const PredictionReport& rep)
{
    const std::string name = "pair_swap";
    InvariantRecord s = invariants(r.pair.swapped());
    if (s.m != r.m || s.n != r.n || s.q != r.q || s.legendre != r.legendre || s.pi != r.pi || s.B != r.B)
        return fail(name, "invariants changed under p1 <-> p2");
    PredictionReport sp = predict(s);
    for (int j = 0; j < 7; ++j) {
        if (rep.k[j].type != sp.k[pair_swap_k[j]].type ||
            class_set_size(rep.k[j].kernel) != class_set_size(sp.k[pair_swap_k[j]].kernel))
            return fail(name, "K" + std::to_string(j + 1) + " does not map to K" + std::to_string(pair_swap_k[j] + 1));
        if (rep.l[j].type != sp.l[pair_swap_l[j]].type)
            return fail(name, "L" + std::to_string(j + 1) + " does not map to L" + std::to_string(pair_swap_l[j] + 1));
    }
    return {name, true, ""};
}

PropertyResult k3_order_law(const InvariantRecord& r, const PredictionReport& rep)
{
    // h2(K3) = h2(p1 p2) h2(-p1 p2), doubled when q = 2
    uint64_t h_plus = ClassGroup::compute(r.pair.r()).two_part().order();
    uint64_t h_minus = ClassGroup::compute(-4 * r.pair.r()).two_part().order();
    uint64_t expect = h_plus * h_minus * uint64_t(r.q);
    bool ok = rep.cl2_k3.order() == expect;
    return {"k3_order_law", ok,
            ok ? "" : "predicted |Cl2(K3)| = " + std::to_string(rep.cl2_k3.order()) + ", expected " + std::to_string(expect)};
}

PairReport check_pair(const PrimePair& pair)
{
    PairReport out{pair, {}};
    auto guarded = [&](const std::string& name, auto&& f) {
        try {
            out.results.push_back(f());
        } catch (const std::exception& e) {
            out.results.push_back({name, false, e.what()});
        }
    };
    InvariantRecord r;
    try {
        r = invariants_unchecked(pair, split_prime(pair.p1), split_prime(pair.p2));
    } catch (const std::exception& e) {
        out.results.push_back({"invariants", false, e.what()});
        return out;
    }
    auto bad = record_violations(r);
    for (const char* prop : {"norm_eps_d", "quartic_identity", "norm_eps_r", "quartic_triple", "q_agreement",
                             "q_equivalence", "exponent_constraints"}) {
        bool applies = true;
        std::string p = prop;
        if (r.legendre == Sign::plus() && p != "norm_eps_d" && p != "quartic_identity" && p != "exponent_constraints")
            applies = false;
        if (r.legendre == Sign::minus() && p == "quartic_identity")
            applies = false;
        if (!applies)
            continue;
        auto it = std::find_if(bad.begin(), bad.end(), [&](const Violation& v) { return v.property == p; });
        out.results.push_back({p, it == bad.end(), it == bad.end() ? "" : it->detail});
    }
    if (!bad.empty())
        return out;

    guarded("kaplan_two_parts", [&] { return kaplan_two_parts(pair); });
    guarded("imaginary_subfield_structure", [&] { return imaginary_subfield_structure(r); });
    guarded("real_subfield_structure", [&] { return real_subfield_structure(r); });
    PredictionReport rep = predict(r);
    guarded("prediction_vs_engine", [&] {
        Validation v = cross_validate(rep);
        if (v.ok())
            return PropertyResult{"prediction_vs_engine", true, std::to_string(v.validated_extensions) + "/14"};
        const Check& c = v.failures().front();
        return PropertyResult{"prediction_vs_engine", false,
                              c.name + ": expected " + c.expected + ", engine " + c.actual};
    });
    guarded("conjugate_swap", [&] { return conjugate_swap(r, rep); });
    guarded("pair_swap", [&] { return pair_swap(r, rep); });
    guarded("k3_order_law", [&] { return k3_order_law(r, rep); });
    return out;
}

std::vector<PairReport> scan(int64_t max_prime, unsigned jobs)
{
    std::vector<PrimePair> pairs = valid_pairs(max_prime);
    std::vector<PairReport> out(pairs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < pairs.size();)
            out[i] = check_pair(pairs[i]);
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, unsigned(std::max<size_t>(pairs.size(), 1))));
    std::vector<std::thread> threads;
    for (unsigned t = 1; t < jobs; ++t)
        threads.emplace_back(worker);
    worker();
    for (auto& t : threads)
        t.join();
    return out;
}

std::vector<GPresentation> admissible_presentations(int max_m, int max_n)
{
    std::vector<GPresentation> out;
    for (int m = 2; m <= max_m; ++m)
        for (int n = 1; n <= max_n; ++n) {
            for (Psi psi : {Psi::sigma_only, Psi::tau_sigma}) {
                GPresentation p{m, n, 1, psi};
                if (p.admissible())
                    out.push_back(p);
            }
            GPresentation p2{m, n, 2, Psi::tau_sigma};
            if (p2.admissible())
                out.push_back(p2);
        }
    return out;
}

std::vector<PropertyResult> check_presentation(const GPresentation& p)
{
    std::vector<PropertyResult> out;
    Group g(p);
    Subgroup gd = derived_subgroup(g);
    out.push_back({"derived_subgroup", gd == Subgroup(g, {g.power(g.sigma(), 2), g.power(g.tau(), 2)}), ""});
    auto series = lower_central_series(g);
    bool lcs_ok = true;
    for (size_t j = 1; j < series.size(); ++j) {
        int64_t e = int64_t(1) << j;
        lcs_ok = lcs_ok && series[j] == Subgroup(g, {g.power(g.sigma(), e), g.power(g.tau(), e)});
    }
    out.push_back({"lower_central_series", lcs_ok, std::to_string(series.size()) + " terms"});
    int cc = coclass(g);
    out.push_back({"coclass", cc == 3, "coclass " + std::to_string(cc)});
    int cl = nilpotency_class(g);
    out.push_back({"nilpotency_class", cl == p.expected_class(),
                   "class " + std::to_string(cl) + ", formula " + std::to_string(p.expected_class())});
    return out;
}

} // namespace capit
