#include "capit/quadratic.hpp"

#include <numeric>

namespace capit {

std::string QuadUnit::str() const
{
    std::string s = "(" + to_string(u) + " + " + to_string(v) + "*sqrt(" + to_string(m) + "))";
    if (w != 1)
        s += "/" + std::to_string(w);
    return s;
}

QuadUnit fundamental_unit(const Int& m)
{
    if (m <= 1 || !is_squarefree(m) || is_square(m))
        throw input_error("fundamental_unit: radicand " + to_string(m) + " is not square-free > 1");
    const bool omega = mod(m, 4) == 1;
    const Int s = isqrt(m);
    const Int quarter = (m - 1) / 4;

    // Expansion of (P + sqrt(m)) / Q with Q | m - P^2, starting at sqrt(m) or (1 + sqrt(m))/2.
    Int P = omega ? 1 : 0;
    Int Q = omega ? 2 : 1;
    Int h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    Int P1, Q1;
    int found = -1, period = -1;
    Int h, k;
    Sign norm;
    for (int j = 0; found < 0 || period < 0; ++j) {
        if (j == 1) {
            P1 = P;
            Q1 = Q;
        } else if (j > 1 && period < 0 && P == P1 && Q == Q1) {
            period = j - 1;
        }
        Int a;
        mpz_fdiv_q(a.get_mpz_t(), Int(P + s).get_mpz_t(), Q.get_mpz_t());
        if (found < 0) {
            Int hj = a * h1 + h2, kj = a * k1 + k2;
            h2 = h1;
            h1 = hj;
            k2 = k1;
            k1 = kj;
            Int nrm = omega ? Int(hj * hj - hj * kj - kj * kj * quarter) : Int(hj * hj - m * kj * kj);
            if (nrm == 1 || nrm == -1) {
                found = j;
                h = hj;
                k = kj;
                norm = Sign(nrm.get_si());
            }
        }
        P = a * Q - P;
        Q = (m - P * P) / Q;
    }
    if (found != period - 1)
        throw consistency_error("fundamental_unit(" + to_string(m) + "): unit at convergent " +
                                std::to_string(found) + " but period " + std::to_string(period));
    if (norm != (period % 2 == 0 ? Sign::plus() : Sign::minus()))
        throw consistency_error("fundamental_unit(" + to_string(m) + "): norm disagrees with period parity");

    QuadUnit eps;
    eps.m = m;
    eps.norm = norm;
    eps.period = period;
    if (omega) {
        // Conjugate of h - k*omega, i.e. (2h - k + k*sqrt(m)) / 2.
        eps.u = 2 * h - k;
        eps.v = k;
        eps.w = 2;
        if (mpz_even_p(eps.u.get_mpz_t()) && mpz_even_p(eps.v.get_mpz_t())) {
            eps.u /= 2;
            eps.v /= 2;
            eps.w = 1;
        }
    } else {
        eps.u = h;
        eps.v = k;
    }
    if ((eps.u * eps.u - m * eps.v * eps.v) != norm.value() * eps.w * eps.w)
        throw consistency_error("fundamental_unit(" + to_string(m) + "): norm identity fails");
    return eps;
}

Sign norm_eps(const Int& m) { return fundamental_unit(m).norm; }

Int field_discriminant(const Int& m)
{
    if (m == 0 || m == 1 || !is_squarefree(m))
        throw input_error("field_discriminant: " + to_string(m) + " is not a square-free radicand");
    return mod(m, 4) == 1 ? m : 4 * m;
}

std::string BQForm::str() const { return "(" + to_string(a) + ", " + to_string(b) + ", " + to_string(c) + ")"; }

BQForm principal_form(const Int& D)
{
    Int b0 = mod(D, 2);
    return {1, b0, (b0 * b0 - D) / 4};
}

BQForm compose(const BQForm& f, const BQForm& g)
{
    const Int D = f.disc();
    if (g.disc() != D)
        throw input_error("compose: discriminants differ");
    // d = gcd(a1, a2, s) = u*a1 + v*a2 + w*s with s = (b1 + b2)/2.
    Int s = (f.b + g.b) / 2;
    Xgcd e1 = xgcd(f.a, g.a);
    Xgcd e2 = xgcd(e1.g, s);
    const Int& d = e2.g;
    Int v = e2.x * e1.y;
    Int w = e2.y;
    BQForm h;
    h.a = f.a * g.a / (d * d);
    h.b = g.b + 2 * (g.a / d) * (v * (s - g.b) - w * g.c);
    h.b = mod(h.b, 2 * abs(h.a));
    h.c = (h.b * h.b - D) / (4 * h.a);
    if (h.disc() != D)
        throw consistency_error("compose: result has wrong discriminant");
    return h;
}

namespace {

bool reduced_indefinite(const BQForm& f, const Int& s)
{
    Int twice_a = 2 * abs(f.a);
    return f.b > 0 && f.b <= s && twice_a + f.b > s && twice_a - f.b <= s;
}

BQForm reduce_definite(BQForm f)
{
    const Int D = f.disc();
    if (f.a <= 0)
        throw input_error("reduce: definite form " + f.str() + " is not positive");
    for (;;) {
        Int r = mod(f.b, 2 * f.a);
        if (r > f.a)
            r -= 2 * f.a;
        f.b = r;
        f.c = (f.b * f.b - D) / (4 * f.a);
        if (f.a <= f.c)
            break;
        std::swap(f.a, f.c);
        f.b = -f.b;
    }
    if (f.b < 0 && (f.a == f.c || -f.b == f.a))
        f.b = -f.b;
    return f;
}

} // namespace

bool is_reduced(const BQForm& f)
{
    const Int D = f.disc();
    if (D < 0)
        return f.a > 0 && -f.a < f.b && f.b <= f.a && f.a <= f.c && !(f.a == f.c && f.b < 0);
    return reduced_indefinite(f, isqrt(D));
}

BQForm rho(const BQForm& f)
{
    const Int D = f.disc();
    const Int s = isqrt(D);
    const Int A = abs(f.c);
    Int r;
    if (A * A > D) {
        r = mod(-f.b, 2 * A);
        if (r > A)
            r -= 2 * A;
    } else {
        r = s - mod(s + f.b, 2 * A);
    }
    return {f.c, r, (r * r - D) / (4 * f.c)};
}

BQForm reduce(const BQForm& f)
{
    const Int D = f.disc();
    if (D < 0)
        return reduce_definite(f);
    if (is_square(D))
        throw input_error("reduce: square discriminant");
    const Int s = isqrt(D);
    BQForm g = f;
    while (!reduced_indefinite(g, s))
        g = rho(g);
    return g;
}

ClassGroup::Key ClassGroup::key(const BQForm& f) { return {to_i64(f.a), to_i64(f.b), to_i64(f.c)}; }

size_t ClassGroup::class_of(const BQForm& f) const
{
    auto it = index_.find(key(reduce(f)));
    if (it == index_.end())
        throw consistency_error("class group " + to_string(D_) + ": form " + f.str() + " reduces outside the table");
    return it->second;
}

size_t ClassGroup::multiply(size_t x, size_t y) const { return class_of(compose(reps_[x], reps_[y])); }

namespace {

bool primitive(int64_t a, int64_t b, int64_t c) { return std::gcd(std::gcd(a, b), c) == 1; }

bool fundamental(const Int& D)
{
    Int r = mod(D, 4);
    if (r == 1)
        return is_squarefree(D);
    if (r != 0)
        return false;
    Int m = D / 4;
    Int m4 = mod(m, 4);
    return (m4 == 2 || m4 == 3) && is_squarefree(m);
}

} // namespace

ClassGroup ClassGroup::compute(const Int& D, const Int& bound)
{
    Int r4 = mod(D, 4);
    if ((r4 != 0 && r4 != 1) || is_square(D) || D == 0)
        throw input_error("class_group: " + to_string(D) + " is not a non-square discriminant");
    if (abs(D) > bound)
        throw input_error("class_group: |" + to_string(D) + "| exceeds the bound " + to_string(bound));

    ClassGroup g;
    g.D_ = D;
    const int64_t Dl = to_i64(D);
    if (D < 0) {
        const int64_t N = -Dl;
        for (int64_t a = 1; 3 * a * a <= N; ++a) {
            for (int64_t b = -a + 1; b <= a; ++b) {
                if (((b - Dl) & 1) != 0)
                    continue;
                int64_t num = b * b - Dl;
                if (num % (4 * a) != 0)
                    continue;
                int64_t c = num / (4 * a);
                if (c < a || (c == a && b < 0) || !primitive(a, b, c))
                    continue;
                g.index_[{a, b, c}] = g.reps_.size();
                g.reps_.push_back({a, b, c});
            }
        }
    } else {
        const int64_t s = to_i64(isqrt(D));
        std::vector<BQForm> reduced;
        for (int64_t b = 1; b <= s; ++b) {
            if (((b - Dl) & 1) != 0)
                continue;
            int64_t N = (Dl - b * b) / 4;
            for (int64_t t = 1; t * t <= N; ++t) {
                if (N % t != 0)
                    continue;
                for (int64_t a : {t, N / t}) {
                    if (2 * a + b <= s || 2 * a - b > s)
                        continue;
                    int64_t c = N / a;
                    if (!primitive(a, b, c))
                        continue;
                    reduced.push_back({a, b, -c});
                    reduced.push_back({-a, b, c});
                    if (a == N / a)
                        break;
                }
            }
        }
        for (const auto& f : reduced)
            g.index_[key(f)] = SIZE_MAX;
        for (const auto& f : reduced) {
            if (g.index_[key(f)] != SIZE_MAX)
                continue;
            size_t id = g.reps_.size();
            g.reps_.push_back(f);
            BQForm h = f;
            do {
                auto it = g.index_.find(key(h));
                if (it == g.index_.end())
                    throw consistency_error("class group " + to_string(D) + ": rho leaves the reduced set at " + h.str());
                it->second = id;
                h = rho(h);
            } while (!(h == f));
        }
    }
    if (g.reps_.empty())
        throw consistency_error("class group " + to_string(D) + ": no reduced forms");
    g.identity_ = g.class_of(principal_form(D));
    g.kernel_ = {g.identity_};
    if (D > 0) {
        Int b0 = mod(D, 2);
        size_t neg = g.class_of(BQForm{-1, b0, (D - b0 * b0) / 4});
        if (neg != g.identity_)
            g.kernel_.push_back(neg);
        if (fundamental(D)) {
            Int m = r4 == 1 ? D : D / 4;
            bool minus = norm_eps(m) == Sign::minus();
            if (minus != (neg == g.identity_))
                throw consistency_error("class group " + to_string(D) +
                                        ": negative principal class disagrees with the unit norm");
        }
    }
    return g;
}

AbelianType ClassGroup::p_part(uint64_t p) const
{
    const size_t h = reps_.size();
    auto in_kernel = [&](size_t x) {
        for (size_t k : kernel_)
            if (k == x)
                return true;
        return false;
    };
    // x -> x^p on narrow classes.
    std::vector<size_t> pw(h);
    for (size_t x = 0; x < h; ++x) {
        size_t acc = identity_, base = x;
        for (uint64_t e = p; e; e >>= 1) {
            if (e & 1)
                acc = multiply(acc, base);
            if (e > 1)
                base = multiply(base, base);
        }
        pw[x] = acc;
    }
    std::vector<size_t> cur(h);
    std::iota(cur.begin(), cur.end(), 0);
    std::vector<int> log_omega;
    uint64_t prev = 0;
    for (;;) {
        uint64_t cnt = 0;
        for (size_t x = 0; x < h; ++x)
            cnt += in_kernel(cur[x]);
        cnt /= kernel_.size();
        if (cnt == prev)
            break;
        int lg = 0;
        for (uint64_t t = cnt; t > 1; t /= p) {
            if (t % p != 0)
                throw consistency_error("class group " + to_string(D_) + ": subgroup order is not a prime power");
            ++lg;
        }
        log_omega.push_back(lg);
        prev = cnt;
        for (size_t x = 0; x < h; ++x)
            cur[x] = pw[cur[x]];
    }
    return AbelianType::from_p_exponents(p, exponents_from_omega(log_omega));
}

AbelianType ClassGroup::structure() const
{
    uint64_t h = order();
    if (h > structure_order_limit)
        throw input_error("class group " + to_string(D_) + ": order " + std::to_string(h) +
                          " exceeds the structure limit");
    AbelianType t;
    uint64_t rest = h;
    for (uint64_t p = 2; p <= rest; ++p) {
        if (rest % p != 0)
            continue;
        while (rest % p == 0)
            rest /= p;
        t = t.combined(p_part(p));
    }
    if (t.order() != h)
        throw consistency_error("class group " + to_string(D_) + ": structure order mismatch");
    return t;
}

AbelianType class_group(const Int& D) { return ClassGroup::compute(D).structure(); }

MN exponents_mn(const PrimePair& pair)
{
    const Int r = pair.r();
    uint64_t h_minus = ClassGroup::compute(field_discriminant(-r)).two_part().order();
    uint64_t h_plus = ClassGroup::compute(field_discriminant(r)).two_part().order();
    MN mn{log2_exact_u64(h_minus) - 1, log2_exact_u64(h_plus)};
    if (mn.m < 2 || mn.n < 1)
        throw consistency_error("exponents_mn(" + std::to_string(pair.p1) + ", " + std::to_string(pair.p2) +
                                "): expected m >= 2 and n >= 1, got m = " + std::to_string(mn.m) +
                                ", n = " + std::to_string(mn.n));
    return mn;
}

} // namespace capit
