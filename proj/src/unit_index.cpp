#include "capit/unit_index.hpp"

#include <mpfr.h>

#include <utility>

namespace capit {

MultiQuadElt::MultiQuadElt(Int r) : r_(std::move(r)) {}

MultiQuadElt::MultiQuadElt(Int r, std::array<mpq_class, 4> c) : r_(std::move(r)), c_(std::move(c))
{
    for (auto& x : c_)
        x.canonicalize();
}

MultiQuadElt MultiQuadElt::from_unit(const Int& r, const QuadUnit& eps)
{
    mpq_class u(eps.u, eps.w), v(eps.v, eps.w);
    u.canonicalize();
    v.canonicalize();
    if (eps.m == 2)
        return MultiQuadElt(r, {u, v, 0, 0});
    if (eps.m == r)
        return MultiQuadElt(r, {u, 0, v, 0});
    if (eps.m == 2 * r)
        return MultiQuadElt(r, {u, 0, 0, v});
    throw input_error("MultiQuadElt: unit of Q(sqrt " + to_string(eps.m) + ") is not in the field");
}

MultiQuadElt MultiQuadElt::operator*(const MultiQuadElt& o) const
{
    if (r_ != o.r_)
        throw input_error("MultiQuadElt: mismatched radicands");
    const auto &c = c_, &d = o.c_;
    mpq_class rq(r_);
    return MultiQuadElt(r_, {c[0] * d[0] + 2 * c[1] * d[1] + rq * c[2] * d[2] + 2 * rq * c[3] * d[3],
                             c[0] * d[1] + c[1] * d[0] + rq * (c[2] * d[3] + c[3] * d[2]),
                             c[0] * d[2] + c[2] * d[0] + 2 * (c[1] * d[3] + c[3] * d[1]),
                             c[0] * d[3] + c[3] * d[0] + c[1] * d[2] + c[2] * d[1]});
}

MultiQuadElt MultiQuadElt::operator+(const MultiQuadElt& o) const
{
    if (r_ != o.r_)
        throw input_error("MultiQuadElt: mismatched radicands");
    return MultiQuadElt(r_, {c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2], c_[3] + o.c_[3]});
}

bool MultiQuadElt::operator==(const MultiQuadElt& o) const { return r_ == o.r_ && c_ == o.c_; }

MultiQuadElt MultiQuadElt::conj_sqrt2() const { return MultiQuadElt(r_, {c_[0], -c_[1], c_[2], -c_[3]}); }

MultiQuadElt MultiQuadElt::conj_sqrtr() const { return MultiQuadElt(r_, {c_[0], c_[1], -c_[2], -c_[3]}); }

std::string MultiQuadElt::str() const
{
    static const char* basis[] = {"", "*sqrt(2)", "*sqrt(r)", "*sqrt(2r)"};
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (i)
            s += " + ";
        s += "(" + c_[i].get_str() + ")" + basis[i];
    }
    return s + " [r = " + to_string(r_) + "]";
}

namespace {

class Real {
public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
    Real(const Real& o)
    {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    Real& operator=(const Real& o)
    {
        mpfr_set_prec(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
        return *this;
    }
    ~Real() { mpfr_clear(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
    int sign() const { return mpfr_sgn(x_); }

private:
    mpfr_t x_;
};

Real from_q(const mpq_class& q, mpfr_prec_t prec)
{
    Real r(prec);
    mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real add(const Real& a, const Real& b)
{
    Real r(a.prec());
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real mul(const Real& a, const Real& b)
{
    Real r(a.prec());
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real div(const Real& a, const Real& b)
{
    Real r(a.prec());
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real neg(const Real& a)
{
    Real r(a.prec());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real sqrt_of(const mpq_class& q, mpfr_prec_t prec)
{
    Real r = from_q(q, prec);
    mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
    return r;
}

// Both embeddings (a + b sqrt t, a - b sqrt t) to full relative precision: the one without
// cancellation is evaluated directly, the other through the exact norm.
std::pair<Real, Real> embed(const mpq_class& a, const mpq_class& b, const mpq_class& t, mpfr_prec_t prec)
{
    Real bt = mul(from_q(b, prec), sqrt_of(t, prec));
    Real fa = from_q(a, prec);
    if (sgn(b) == 0 || sgn(a) == 0)
        return {add(fa, bt), add(fa, neg(bt))};
    Real norm = from_q(a * a - t * b * b, prec);
    if (sgn(a) == sgn(b)) {
        Real plus = add(fa, bt);
        return {plus, div(norm, plus)};
    }
    Real minus = add(fa, neg(bt));
    return {div(norm, minus), minus};
}

// The four real conjugates, indexed by (sign of sqrt 2, sign of sqrt r) as ++, -+, +-, --.
std::array<Real, 4> conjugates(const MultiQuadElt& x, mpfr_prec_t prec)
{
    const mpq_class two(2), rq(x.radicand());
    auto [A_plus, A_minus] = embed(x[0], x[1], two, prec);
    auto [B_plus, B_minus] = embed(x[2], x[3], two, prec);
    // Relative norm to Q(sqrt 2): A^2 - r B^2.
    mpq_class m0 = x[0] * x[0] + 2 * x[1] * x[1] - rq * (x[2] * x[2] + 2 * x[3] * x[3]);
    mpq_class m1 = 2 * x[0] * x[1] - 2 * rq * x[2] * x[3];
    auto [M_plus, M_minus] = embed(m0, m1, two, prec);
    Real sr = sqrt_of(rq, prec);

    auto pair = [&](const Real& A, const Real& B, const Real& M) -> std::pair<Real, Real> {
        Real Bs = mul(B, sr);
        if (A.sign() == 0 || Bs.sign() == 0 || A.sign() == Bs.sign()) {
            Real plus = add(A, Bs);
            if (plus.sign() == 0)
                return {plus, plus};
            return {plus, div(M, plus)};
        }
        Real minus = add(A, neg(Bs));
        return {div(M, minus), minus};
    };
    auto [pp, pm] = pair(A_plus, B_plus, M_plus);
    auto [mp, mm] = pair(A_minus, B_minus, M_minus);
    return {pp, mp, pm, mm};
}

} // namespace

SquareRootSearch search_square_root(const MultiQuadElt& target)
{
    SquareRootSearch out;
    const Int& r = target.radicand();
    const mpq_class two(2), rq(r), tworq(2 * r);
    for (mpfr_prec_t prec = initial_precision_bits;; prec *= 2) {
        out.precision_bits = static_cast<unsigned>(prec);
        std::array<Real, 4> x = conjugates(target, prec);
        long max_exp = 0;
        out.totally_positive = true;
        for (auto& v : x) {
            if (v.sign() <= 0)
                out.totally_positive = false;
            else
                max_exp = std::max<long>(max_exp, mpfr_get_exp(v.get()));
        }
        if (!out.totally_positive)
            return out;
        // Coefficients are bounded by the largest root conjugate, about 2^(max_exp/2).
        const long needed = max_exp / 2 + 64;

        std::array<Real, 4> s = {Real(prec), Real(prec), Real(prec), Real(prec)};
        for (int k = 0; k < 4; ++k)
            mpfr_sqrt(s[k].get(), x[k].get(), MPFR_RNDN);
        const std::array<int, 4> alpha = {1, -1, 1, -1}, beta = {1, 1, -1, -1};
        const std::array<Real, 4> scale = {from_q(mpq_class(2), prec), mul(from_q(two, prec), sqrt_of(two, prec)),
                                           mul(from_q(two, prec), sqrt_of(rq, prec)),
                                           mul(from_q(two, prec), sqrt_of(tworq, prec))};
        for (int pattern = 0; pattern < 8; ++pattern) {
            std::array<Real, 4> sv = s;
            for (int k = 1; k < 4; ++k)
                if (pattern & (1 << (k - 1)))
                    sv[k] = neg(sv[k]);
            std::array<mpq_class, 4> coeff;
            bool rounded = true;
            for (int i = 0; i < 4 && rounded; ++i) {
                Real acc(prec);
                mpfr_set_zero(acc.get(), 1);
                for (int k = 0; k < 4; ++k) {
                    int sg = i == 0 ? 1 : i == 1 ? alpha[k] : i == 2 ? beta[k] : alpha[k] * beta[k];
                    acc = add(acc, sg > 0 ? sv[k] : neg(sv[k]));
                }
                // 2 c_i = (sum of signed conjugates) / (2 sqrt(t_i)).
                Real twice = div(acc, scale[i]);
                Int z;
                mpfr_get_z(z.get_mpz_t(), twice.get(), MPFR_RNDN);
                Real diff(prec);
                mpfr_sub_z(diff.get(), twice.get(), z.get_mpz_t(), MPFR_RNDN);
                if (mpfr_cmp_d(diff.get(), 0.25) > 0 || mpfr_cmp_d(diff.get(), -0.25) < 0)
                    rounded = false;
                coeff[i] = mpq_class(z, 2);
            }
            if (!rounded)
                continue;
            MultiQuadElt cand(r, coeff);
            if (cand * cand == target) {
                out.root = cand;
                return out;
            }
        }
        if (prec >= needed)
            return out;
        if (prec >= static_cast<mpfr_prec_t>(max_precision_bits))
            throw consistency_error("square root search: precision escalation exhausted at " +
                                    std::to_string(max_precision_bits) + " bits (needed " +
                                    std::to_string(needed) + ")");
    }
}

std::optional<MultiQuadElt> exact_square_root(const MultiQuadElt& target) { return search_square_root(target).root; }

UnitIndex unit_index(const PrimePair& pair)
{
    UnitIndex out;
    const Int r = pair.r();
    QuadUnit eps_r = fundamental_unit(r);
    out.norm_eps_r = eps_r.norm;
    out.half_integral_eps_r = eps_r.w == 2;
    if (eps_r.norm == Sign::plus()) {
        out.decided_by_norm = true;
        out.q = 1;
        return out;
    }
    MultiQuadElt target = MultiQuadElt::from_unit(r, fundamental_unit(2)) * MultiQuadElt::from_unit(r, eps_r) *
                          MultiQuadElt::from_unit(r, fundamental_unit(2 * r));
    SquareRootSearch sr = search_square_root(target);
    out.precision_bits = sr.precision_bits;
    out.root = sr.root;
    out.q = sr.root ? 2 : 1;
    return out;
}

Sign quartic_triple_product(const PrimePair& pair)
{
    const Int p1 = pair.p1, p2 = pair.p2;
    if (jacobi(p1, p2) != -1)
        throw input_error("quartic triple product requires (p1/p2) = -1");
    return quartic_symbol_mod2(p1 * p2) * quartic_symbol(mod(2 * p1, p2), p2) * quartic_symbol(mod(2 * p2, p1), p1);
}

int q_from_symbols(const PrimePair& pair) { return quartic_triple_product(pair) == Sign::minus() ? 2 : 1; }

} // namespace capit
