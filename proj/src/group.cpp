#include "capit/group.hpp"
#include "capit/arith.hpp"

#include <algorithm>
#include <deque>

namespace capit {

std::string to_string(Psi psi) { return psi == Psi::sigma_only ? "sigma" : "tau-sigma"; }

Psi parse_psi(const std::string& s)
{
    if (s == "sigma")
        return Psi::sigma_only;
    if (s == "tau-sigma")
        return Psi::tau_sigma;
    throw input_error("psi must be 'sigma' or 'tau-sigma', got '" + s + "'");
}

bool GPresentation::admissible() const
{
    if (q == 1)
        return (n == 1 && m >= 3) || (m == 2 && n >= 2);
    return q == 2 && m == 2 && n >= 1 && psi == Psi::tau_sigma;
}

int GPresentation::expected_class() const { return q == 1 ? std::max(n, m - 1) + 1 : std::max(n + 1, m) + 1; }

std::string GPresentation::str() const
{
    return "(m=" + std::to_string(m) + ", n=" + std::to_string(n) + ", q=" + std::to_string(q) +
           ", psi=" + to_string(psi) + ")";
}

namespace {

int64_t floor_div(int64_t a, int64_t b)
{
    int64_t d = a / b;
    return (a % b != 0 && (a < 0) != (b < 0)) ? d - 1 : d;
}

int64_t floor_mod(int64_t a, int64_t b) { return a - floor_div(a, b) * b; }

} // namespace

Group::Group(GPresentation p, bool allow_inconsistent) : p_(p)
{
    if (p_.m < 2)
        throw input_error("group: m >= 2 required, got " + std::to_string(p_.m));
    if (p_.n < 1)
        throw input_error("group: n >= 1 required, got " + std::to_string(p_.n));
    if (p_.q != 1 && p_.q != 2)
        throw input_error("group: q must be 1 or 2, got " + std::to_string(p_.q));
    if (p_.m + p_.n > 40)
        throw input_error("group: exponents too large");
    if (p_.q == 2)
        p_.psi = Psi::tau_sigma;
    a_range_ = int64_t(1) << (p_.q == 1 ? p_.m : p_.m + 1);
    b_range_ = int64_t(1) << (p_.n + 1);
    sigma_twist_ = p_.q == 1 ? -1 : 3;
    int64_t half_sigma = int64_t(1) << (p_.m - 1);
    psi_ = p_.psi == Psi::sigma_only ? normalize(0, half_sigma, 0) : normalize(0, half_sigma, int64_t(1) << p_.n);

    // rho^2 = psi lies in the abelian normal subgroup, so conjugating twice by rho must be trivial
    // there and psi must be fixed.
    for (const GElement& g : {sigma(), tau(), psi_})
        if (!(act(act(g)) == g))
            consistent_ = false;
    if (!(act(psi_) == psi_))
        consistent_ = false;
    if (!consistent_ && !allow_inconsistent)
        throw consistency_error("group " + p_.str() + ": relations are inconsistent (rho^-2 sigma rho^2 != sigma)");
}

GElement Group::normalize(int eps, int64_t a, int64_t b) const
{
    if (p_.q == 2) {
        // sigma^(2^m) = tau^(2^(n+1)) moves whole blocks of tau into sigma.
        int64_t t = floor_div(b, b_range_);
        b -= t * b_range_;
        a += t * (a_range_ / 2);
    } else {
        b = floor_mod(b, b_range_);
    }
    return {eps, floor_mod(a, a_range_), b};
}

GElement Group::act(const GElement& x) const { return normalize(0, sigma_twist_ * x.a, -x.b); }

GElement Group::multiply(const GElement& x, const GElement& y) const
{
    GElement n1{0, x.a, x.b};
    if (y.eps)
        n1 = act(n1);
    int eps = x.eps + y.eps;
    int64_t a = n1.a + y.a, b = n1.b + y.b;
    if (eps == 2) {
        eps = 0;
        a += psi_.a;
        b += psi_.b;
    }
    return normalize(eps, a, b);
}

GElement Group::inverse(const GElement& x) const
{
    if (!x.eps)
        return normalize(0, -x.a, -x.b);
    GElement f = act({0, x.a, x.b});
    return normalize(1, -(f.a + psi_.a), -(f.b + psi_.b));
}

GElement Group::power(const GElement& x, int64_t k) const
{
    GElement base = k < 0 ? inverse(x) : x;
    uint64_t e = k < 0 ? uint64_t(-k) : uint64_t(k);
    GElement acc = identity();
    while (e) {
        if (e & 1)
            acc = multiply(acc, base);
        base = multiply(base, base);
        e >>= 1;
    }
    return acc;
}

GElement Group::commutator(const GElement& x, const GElement& y) const
{
    return multiply(multiply(inverse(x), inverse(y)), multiply(x, y));
}

GElement Group::conjugate(const GElement& x, const GElement& g) const { return multiply(multiply(inverse(g), x), g); }

size_t Group::index(const GElement& x) const { return size_t((x.eps * a_range_ + x.a) * b_range_ + x.b); }

GElement Group::element(size_t i) const
{
    int64_t b = int64_t(i) % b_range_;
    int64_t rest = int64_t(i) / b_range_;
    return {int(rest / a_range_), rest % a_range_, b};
}

std::vector<GElement> Group::enumerate() const
{
    if (order() > enumeration_guard)
        throw input_error("group " + p_.str() + ": order exceeds the enumeration guard 2^20");
    std::vector<GElement> out;
    out.reserve(order());
    for (size_t i = 0; i < order(); ++i)
        out.push_back(element(i));
    return out;
}

Subgroup::Subgroup(const Group& g, const std::vector<GElement>& gens) : g_(&g)
{
    if (g.order() > enumeration_guard)
        throw input_error("subgroup: group order exceeds the enumeration guard 2^20");
    for (const auto& x : gens)
        if (!(x == g.identity()))
            gens_.push_back(x);
    close();
}

void Subgroup::close()
{
    members_.assign(g_->order(), 0);
    std::deque<GElement> todo{g_->identity()};
    members_[g_->index(g_->identity())] = 1;
    size_ = 1;
    while (!todo.empty()) {
        GElement x = todo.front();
        todo.pop_front();
        for (const auto& s : gens_) {
            GElement y = g_->multiply(x, s);
            uint8_t& m = members_[g_->index(y)];
            if (!m) {
                m = 1;
                ++size_;
                todo.push_back(y);
            }
        }
    }
}

Subgroup Subgroup::from_members(const Group& g, std::vector<uint8_t> members)
{
    if (members.size() != g.order())
        throw std::invalid_argument("subgroup: membership vector has the wrong size");
    Subgroup h(g, {});
    for (size_t i = 0; i < members.size(); ++i) {
        if (!members[i] || h.members_[i])
            continue;
        h.gens_.push_back(g.element(i));
        h.close();
    }
    if (h.members_ != members)
        throw consistency_error("subgroup: element set is not closed");
    return h;
}

Subgroup Subgroup::whole(const Group& g) { return Subgroup(g, {g.rho(), g.sigma(), g.tau()}); }

std::vector<GElement> Subgroup::elements() const
{
    std::vector<GElement> out;
    for (size_t i = 0; i < members_.size(); ++i)
        if (members_[i])
            out.push_back(g_->element(i));
    return out;
}

bool Subgroup::is_subgroup_of(const Subgroup& o) const
{
    for (size_t i = 0; i < members_.size(); ++i)
        if (members_[i] && !o.members_[i])
            return false;
    return true;
}

Subgroup intersect(const Subgroup& x, const Subgroup& y)
{
    std::vector<uint8_t> m(x.members().size());
    for (size_t i = 0; i < m.size(); ++i)
        m[i] = x.members()[i] & y.members()[i];
    return Subgroup::from_members(x.group(), std::move(m));
}

Subgroup normal_closure(const Subgroup& h, const std::vector<GElement>& s)
{
    const Group& g = h.group();
    Subgroup n(g, s);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& x : n.generators()) {
            for (const auto& y : h.generators()) {
                GElement c = g.conjugate(x, y);
                if (!n.contains(c)) {
                    std::vector<GElement> gens = n.generators();
                    gens.push_back(c);
                    n = Subgroup(g, gens);
                    changed = true;
                    break;
                }
            }
            if (changed)
                break;
        }
    }
    return n;
}

bool is_normal_in(const Subgroup& k, const Subgroup& h)
{
    if (!k.is_subgroup_of(h))
        return false;
    for (const auto& x : k.generators())
        for (const auto& y : h.generators())
            if (!k.contains(h.group().conjugate(x, y)))
                return false;
    return true;
}

Subgroup derived_subgroup(const Subgroup& h)
{
    const Group& g = h.group();
    std::vector<GElement> comms;
    const auto& gens = h.generators();
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
            comms.push_back(g.commutator(gens[i], gens[j]));
    return normal_closure(h, comms);
}

std::vector<Subgroup> lower_central_series(const Group& g)
{
    Subgroup whole = Subgroup::whole(g);
    std::vector<Subgroup> series{whole};
    while (series.back().order() > 1) {
        std::vector<GElement> comms;
        for (const auto& x : series.back().generators())
            for (const auto& y : whole.generators())
                comms.push_back(g.commutator(x, y));
        Subgroup next = normal_closure(whole, comms);
        if (next == series.back())
            throw consistency_error("group " + g.presentation().str() + " is not nilpotent");
        series.push_back(next);
    }
    return series;
}

int nilpotency_class(const Group& g) { return int(lower_central_series(g).size()) - 1; }

int coclass(const Group& g) { return log2_exact_u64(g.order()) - nilpotency_class(g); }

AbelianType abelian_invariants(const Subgroup& h, const Subgroup& k)
{
    const Group& g = h.group();
    if (!is_normal_in(k, h))
        throw input_error("abelian_invariants: modulus is not a normal subgroup");
    for (const auto& x : h.generators())
        for (const auto& y : h.generators())
            if (!k.contains(g.commutator(x, y)))
                throw input_error("abelian_invariants: quotient is not abelian");
    std::vector<GElement> cur = h.elements();
    std::vector<int> log_omega;
    uint64_t prev = 0;
    for (;;) {
        uint64_t cnt = 0;
        for (const auto& x : cur)
            cnt += k.contains(x);
        cnt /= k.order();
        if (cnt == prev)
            break;
        log_omega.push_back(log2_exact_u64(cnt));
        prev = cnt;
        for (auto& x : cur)
            x = g.multiply(x, x);
    }
    return AbelianType::from_p_exponents(2, exponents_from_omega(log_omega));
}

namespace {

struct CosetTable {
    std::vector<int32_t> label; // right coset id of each element
    std::vector<GElement> first;
};

CosetTable right_cosets(const Subgroup& h)
{
    const Group& g = h.group();
    CosetTable t;
    t.label.assign(g.order(), -1);
    std::vector<GElement> hs = h.elements();
    for (size_t i = 0; i < g.order(); ++i) {
        if (t.label[i] >= 0)
            continue;
        GElement rep = g.element(i);
        int32_t id = int32_t(t.first.size());
        t.first.push_back(rep);
        for (const auto& x : hs)
            t.label[g.index(g.multiply(x, rep))] = id;
    }
    return t;
}

GElement transfer_with(const Subgroup& h, const CosetTable& table, const std::vector<GElement>& reps,
                       const GElement& g)
{
    const Group& G = h.group();
    GElement acc = G.identity();
    for (const auto& t : reps) {
        GElement tg = G.multiply(t, g);
        const GElement& back = reps[table.label[G.index(tg)]];
        GElement piece = G.multiply(tg, G.inverse(back));
        if (!h.contains(piece))
            throw consistency_error("transfer: coset representative bookkeeping failed");
        acc = G.multiply(acc, piece);
    }
    return acc;
}

std::vector<GElement> ordered_transversal(const CosetTable& table, const std::vector<GElement>& transversal,
                                          const Group& g)
{
    std::vector<GElement> reps(table.first.size());
    std::vector<uint8_t> seen(table.first.size(), 0);
    if (transversal.size() != reps.size())
        throw input_error("transfer: transversal has the wrong size");
    for (const auto& t : transversal) {
        int32_t id = table.label[g.index(t)];
        if (seen[id])
            throw input_error("transfer: two representatives of the same coset");
        seen[id] = 1;
        reps[id] = t;
    }
    return reps;
}

} // namespace

std::vector<GElement> right_transversal(const Subgroup& h) { return right_cosets(h).first; }

std::vector<GElement> random_right_transversal(const Subgroup& h, std::mt19937_64& rng)
{
    std::vector<GElement> hs = h.elements();
    std::uniform_int_distribution<size_t> pick(0, hs.size() - 1);
    std::vector<GElement> out;
    for (const auto& t : right_transversal(h))
        out.push_back(h.group().multiply(hs[pick(rng)], t));
    return out;
}

GElement transfer(const Subgroup& h, const GElement& g)
{
    CosetTable table = right_cosets(h);
    return transfer_with(h, table, table.first, g);
}

GElement transfer(const Subgroup& h, const std::vector<GElement>& transversal, const GElement& g)
{
    CosetTable table = right_cosets(h);
    return transfer_with(h, table, ordered_transversal(table, transversal, h.group()), g);
}

GElement transfer_index2(const Subgroup& h, const GElement& g)
{
    const Group& G = h.group();
    if (2 * h.order() != G.order())
        throw input_error("transfer_index2: subgroup does not have index 2");
    if (!h.contains(g))
        return G.multiply(g, g);
    GElement z;
    for (const auto& c : {G.rho(), G.sigma(), G.tau(), G.multiply(G.rho(), G.sigma()),
                          G.multiply(G.rho(), G.tau()), G.multiply(G.sigma(), G.tau())})
        if (!h.contains(c)) {
            z = c;
            break;
        }
    return G.multiply(G.multiply(g, G.inverse(z)), G.multiply(g, z));
}

GElement class_to_group(const Group& g, ClassVector v)
{
    GElement x = g.identity();
    if (v & 1)
        x = g.multiply(x, g.tau());
    if (v & 2)
        x = g.multiply(x, g.rho());
    if (v & 4)
        x = g.multiply(x, g.multiply(g.rho(), g.sigma()));
    return x;
}

ClassSet transfer_kernel(const Subgroup& h)
{
    const Group& G = h.group();
    Subgroup hd = derived_subgroup(h);
    CosetTable table = right_cosets(h);
    ClassSet ker = 0;
    for (ClassVector v = 0; v < 8; ++v)
        if (hd.contains(transfer_with(h, table, table.first, class_to_group(G, v))))
            ker |= ClassSet(1u << v);
    return ker;
}

Subgroup subgroup_of_classes(const Subgroup& derived, ClassSet classes)
{
    const Group& g = derived.group();
    std::vector<GElement> gens = derived.generators();
    for (ClassVector v = 0; v < 8; ++v)
        if (classes & (1u << v))
            gens.push_back(class_to_group(g, v));
    return Subgroup(g, gens);
}

} // namespace capit
