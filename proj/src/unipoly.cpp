#include "dplane/unipoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dplane {

UniPoly::UniPoly(Field f, std::vector<Elem> c) : f_(std::move(f)), c_(std::move(c)) { trim(); }

void UniPoly::trim()
{
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

UniPoly UniPoly::constant(const Elem& c) { return UniPoly(c.field(), {c}); }

UniPoly UniPoly::monomial(const Elem& c, unsigned n)
{
    std::vector<Elem> v(n + 1, c.field().zero());
    v[n] = c;
    return UniPoly(c.field(), std::move(v));
}

UniPoly UniPoly::from_ints(const Field& f, std::initializer_list<long> c)
{
    std::vector<Elem> v;
    for (long x : c)
        v.push_back(f.from_int(x));
    return UniPoly(f, std::move(v));
}

UniPoly UniPoly::monic() const
{
    if (is_zero() || lc().is_one())
        return *this;
    return scaled(lc().inv());
}

UniPoly UniPoly::scaled(const Elem& s) const
{
    std::vector<Elem> v;
    v.reserve(c_.size());
    for (const auto& c : c_)
        v.push_back(c * s);
    return UniPoly(f_, std::move(v));
}

UniPoly UniPoly::derivative() const
{
    if (c_.size() <= 1)
        return UniPoly(f_);
    std::vector<Elem> v;
    v.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        v.push_back(c_[i] * f_.from_int(static_cast<long>(i)));
    return UniPoly(f_, std::move(v));
}

UniPoly UniPoly::shifted(unsigned n) const
{
    if (is_zero())
        return *this;
    std::vector<Elem> v(n, f_.zero());
    v.insert(v.end(), c_.begin(), c_.end());
    return UniPoly(f_, std::move(v));
}

Elem UniPoly::eval(const Elem& at) const
{
    Elem r = at.field().zero();
    for (std::size_t i = c_.size(); i-- > 0;)
        r = r * at + c_[i];
    return r;
}

UniPoly UniPoly::map(const Embedding& e) const
{
    std::vector<Elem> v;
    v.reserve(c_.size());
    for (const auto& c : c_)
        v.push_back(e(c));
    return UniPoly(e.to(), std::move(v));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b)
{
    const auto& big = a.c_.size() >= b.c_.size() ? a : b;
    const auto& small = a.c_.size() >= b.c_.size() ? b : a;
    std::vector<Elem> v = big.c_;
    for (std::size_t i = 0; i < small.c_.size(); ++i)
        v[i] += small.c_[i];
    return UniPoly(a.f_, std::move(v));
}

UniPoly UniPoly::operator-() const
{
    std::vector<Elem> v;
    v.reserve(c_.size());
    for (const auto& c : c_)
        v.push_back(-c);
    return UniPoly(f_, std::move(v));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b)
{
    std::vector<Elem> v = a.c_;
    if (v.size() < b.c_.size())
        v.resize(b.c_.size(), a.f_.zero());
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        v[i] -= b.c_[i];
    return UniPoly(a.f_, std::move(v));
}

namespace {

// Kronecker-style product over small characteristic: accumulate in F_p[t] without
// intermediate reductions, then reduce each output coefficient once.
UniPoly mul_lazy(const UniPoly& a, const UniPoly& b)
{
    const Field& f = a.field();
    const unsigned k = f.degree();
    const std::size_t w = 2 * k - 1;
    const std::size_t n = a.coeffs().size() + b.coeffs().size() - 1;
    std::vector<std::uint64_t> acc(n * w, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const auto& ai = a.coeffs()[i].coeffs();
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
            const auto& bj = b.coeffs()[j].coeffs();
            std::uint64_t* slot = &acc[(i + j) * w];
            for (unsigned u = 0; u < k; ++u) {
                const std::uint64_t x = ai[u];
                if (!x)
                    continue;
                for (unsigned v = 0; v < k; ++v)
                    slot[u + v] += x * bj[v];
            }
        }
    }
    std::vector<Elem> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(detail::reduce_wide(f, &acc[i * w]));
    return UniPoly(f, std::move(out));
}

} // namespace

UniPoly operator*(const UniPoly& a, const UniPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return UniPoly(a.f_);
    const std::size_t terms = std::min(a.c_.size(), b.c_.size()) * a.f_.degree();
    if (detail::lazy_ok(a.f_) && terms < (1u << 20) && a.f_.same(b.f_))
        return mul_lazy(a, b);
    std::vector<Elem> v(a.c_.size() + b.c_.size() - 1, a.f_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero())
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            v[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(a.f_, std::move(v));
}

bool UniPoly::operator==(const UniPoly& b) const
{
    if (c_.size() != b.c_.size())
        return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != b.c_[i])
            return false;
    return true;
}

std::strong_ordering UniPoly::compare(const UniPoly& b) const
{
    if (c_.size() != b.c_.size())
        return c_.size() <=> b.c_.size();
    for (std::size_t i = c_.size(); i-- > 0;) {
        auto c = c_[i].compare(b.c_[i]);
        if (c != 0)
            return c;
    }
    return std::strong_ordering::equal;
}

std::string UniPoly::str(char var) const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero())
            continue;
        if (!first)
            os << " + ";
        first = false;
        std::string cs = c_[i].str();
        bool need_paren = cs.find_first_of(" +") != std::string::npos;
        if (i == 0)
            os << (need_paren ? "(" + cs + ")" : cs);
        else {
            if (!c_[i].is_one())
                os << (need_paren ? "(" + cs + ")" : cs) << "*";
            os << var;
            if (i > 1)
                os << "^" << i;
        }
    }
    return os.str();
}

namespace {

// Schoolbook division with each coefficient kept as 2k-1 unreduced F_p[t] slots; a slot is
// reduced only when it becomes the leading term.
DivRem divrem_lazy(const UniPoly& a, const UniPoly& b)
{
    const Field& f = a.field();
    const unsigned k = f.degree();
    const std::size_t w = 2 * k - 1;
    const std::uint64_t p = f.characteristic();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    const std::size_t na = a.coeffs().size();
    std::vector<std::uint64_t> slots(na * w, 0);
    for (std::size_t i = 0; i < na; ++i) {
        const auto& c = a.coeffs()[i].coeffs();
        std::copy(c.begin(), c.end(), slots.begin() + static_cast<long>(i * w));
    }
    const Elem inv = b.lc().inv();
    std::vector<Coeffs> negb;
    for (std::size_t j = 0; j < db; ++j)
        negb.push_back((-(b.coeffs()[j] * inv)).coeffs());
    std::vector<Elem> q(na - db, f.zero());
    for (std::size_t i = na; i-- > db;) {
        Elem c = detail::reduce_wide(f, &slots[i * w]);
        if (c.is_zero())
            continue;
        q[i - db] = c * inv;
        const auto& cc = c.coeffs();
        for (std::size_t j = 0; j < db; ++j) {
            std::uint64_t* slot = &slots[(i - db + j) * w];
            const auto& bj = negb[j];
            for (unsigned u = 0; u < k; ++u) {
                const std::uint64_t x = cc[u];
                if (!x)
                    continue;
                for (unsigned v = 0; v < k; ++v)
                    slot[u + v] += x * bj[v];
            }
            // keep slots far from overflow on long divisions
            if ((i & 63) == 0)
                for (std::size_t t = 0; t < w; ++t)
                    slot[t] %= p;
        }
    }
    std::vector<Elem> r;
    r.reserve(db);
    for (std::size_t j = 0; j < db && j < na; ++j)
        r.push_back(detail::reduce_wide(f, &slots[j * w]));
    return {UniPoly(f, std::move(q)), UniPoly(f, std::move(r))};
}

} // namespace

DivRem divrem(const UniPoly& a, const UniPoly& b)
{
    if (b.is_zero())
        fail(ErrorKind::Internal, "polynomial division by zero");
    const Field& f = a.field();
    if (a.degree() < b.degree())
        return {UniPoly(f), a};
    if (detail::lazy_ok(f) && f.same(b.field()) && static_cast<std::size_t>(b.degree()) * f.degree() < (1u << 16))
        return divrem_lazy(a, b);
    std::vector<Elem> r = a.coeffs();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    std::vector<Elem> q(r.size() - db, f.zero());
    const Elem inv = b.lc().inv();
    const auto& bc = b.coeffs();
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i].is_zero())
            continue;
        Elem c = r[i] * inv;
        q[i - db] = c;
        for (std::size_t j = 0; j < db; ++j)
            r[i - db + j] -= c * bc[j];
        r[i] = f.zero();
    }
    r.resize(db, f.zero());
    return {UniPoly(f, std::move(q)), UniPoly(f, std::move(r))};
}

UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divrem(a, b).rem; }

UniPoly exact_div(const UniPoly& a, const UniPoly& b)
{
    auto [q, r] = divrem(a, b);
    if (!r.is_zero())
        fail(ErrorKind::Internal, "exact_div: nonzero remainder");
    return q;
}

UniPoly gcd(const UniPoly& a0, const UniPoly& b0)
{
    UniPoly a = a0, b = b0;
    while (!b.is_zero()) {
        UniPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

XGcd xgcd(const UniPoly& a, const UniPoly& b)
{
    const Field& f = a.field();
    UniPoly r0 = a, r1 = b;
    UniPoly s0 = UniPoly::constant(f.one()), s1(f);
    UniPoly t0(f), t1 = UniPoly::constant(f.one());
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UniPoly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        UniPoly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    Elem inv = r0.lc().inv();
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& mod) { return (a * b) % mod; }

UniPoly powmod(const UniPoly& base0, const mpz_class& e, const UniPoly& mod)
{
    UniPoly base = base0 % mod;
    UniPoly r = UniPoly::constant(mod.field().one()) % mod;
    if (sgn(e) == 0)
        return r;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, mod);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = mulmod(r, base, mod);
    }
    return r;
}

// ---------------------------------------------------------------- square-free

namespace {

Elem pth_root(const Elem& a)
{
    const Field& f = a.field();
    if (f.kind() == FieldKind::Prime)
        return a;
    // a^(p^(k-1))
    Elem r = a;
    for (unsigned i = 1; i < f.degree(); ++i)
        r = r.frobenius();
    return r;
}

UniPoly pth_root(const UniPoly& f)
{
    const std::uint64_t p = f.field().characteristic();
    std::vector<Elem> v;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p)
        v.push_back(pth_root(f.coeffs()[i]));
    return UniPoly(f.field(), std::move(v));
}

void sff(const UniPoly& f, unsigned scale, std::map<unsigned, UniPoly>& out)
{
    if (f.degree() <= 0)
        return;
    const Field& fld = f.field();
    UniPoly d = f.derivative();
    UniPoly c = d.is_zero() ? f : gcd(f, d);
    UniPoly w = exact_div(f, c);
    unsigned i = 1;
    while (w.degree() > 0) {
        UniPoly y = gcd(w, c);
        UniPoly fac = exact_div(w, y);
        if (fac.degree() > 0) {
            auto [it, fresh] = out.try_emplace(i * scale, fac.monic());
            if (!fresh)
                it->second = (it->second * fac).monic();
        }
        w = y;
        c = exact_div(c, y);
        ++i;
    }
    if (c.degree() > 0) {
        if (!fld.is_finite())
            fail(ErrorKind::Internal, "square-free decomposition left a non-constant cofactor over Q");
        sff(pth_root(c.monic()), scale * static_cast<unsigned>(fld.characteristic()), out);
    }
}

} // namespace

std::vector<FactorEntry> squarefree_decomposition(const UniPoly& f)
{
    if (f.is_zero())
        fail(ErrorKind::ZeroPolynomial, "square-free decomposition of 0");
    std::map<unsigned, UniPoly> out;
    sff(f.monic(), 1, out);
    std::vector<FactorEntry> r;
    for (auto& [e, p] : out)
        r.push_back({p, e});
    return r;
}

// ---------------------------------------------------------------- factorization

namespace {

void require_finite(const UniPoly& f)
{
    if (!f.field().is_finite())
        fail(ErrorKind::FieldNotFinite, "factorization requires a finite field");
}

// Distinct-degree factorization of a monic square-free polynomial.
std::vector<std::pair<UniPoly, unsigned>> ddf(UniPoly f)
{
    const Field& fld = f.field();
    const mpz_class q = fld.order();
    std::vector<std::pair<UniPoly, unsigned>> out;
    UniPoly x = UniPoly::x(fld);
    UniPoly h = x % f;
    unsigned i = 1;
    while (f.degree() >= 2 * static_cast<int>(i)) {
        h = powmod(h, q, f);
        UniPoly g = gcd(f, h - x);
        if (g.degree() > 0) {
            out.emplace_back(g, i);
            f = exact_div(f, g);
            h = h % f;
        }
        ++i;
    }
    if (f.degree() > 0)
        out.emplace_back(f.monic(), static_cast<unsigned>(f.degree()));
    return out;
}

UniPoly random_poly(const Field& fld, int below_degree, std::mt19937_64& rng)
{
    std::vector<Elem> v;
    for (int i = 0; i < below_degree; ++i)
        v.push_back(fld.random(rng));
    return UniPoly(fld, std::move(v));
}

// Equal-degree splitting of a monic square-free product of irreducibles of degree d.
void edf(const UniPoly& g, unsigned d, std::mt19937_64& rng, std::vector<UniPoly>& out)
{
    if (g.degree() == static_cast<int>(d)) {
        out.push_back(g.monic());
        return;
    }
    const Field& fld = g.field();
    const mpz_class q = fld.order();
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), d);
    for (;;) {
        UniPoly a = random_poly(fld, g.degree(), rng);
        if (a.degree() <= 0)
            continue;
        UniPoly b(fld);
        if (fld.characteristic() == 2) {
            // absolute trace map a + a^2 + ... + a^(2^(e*d - 1))
            const unsigned steps = fld.degree() * d;
            UniPoly t = a % g;
            b = t;
            for (unsigned i = 1; i < steps; ++i) {
                t = mulmod(t, t, g);
                b = b + t;
            }
        } else {
            b = powmod(a, mpz_class((qd - 1) / 2), g) - UniPoly::constant(fld.one());
        }
        UniPoly h = gcd(g, b);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            edf(h, d, rng, out);
            edf(exact_div(g, h), d, rng, out);
            return;
        }
    }
}

} // namespace

Factorization uni_factor(const UniPoly& f, std::uint64_t seed)
{
    if (f.is_zero())
        fail(ErrorKind::ZeroPolynomial, "factorization of 0");
    require_finite(f);
    std::mt19937_64 rng(seed);
    Factorization out{f.lc(), {}};
    for (const auto& [sq, e] : squarefree_decomposition(f)) {
        for (const auto& [g, d] : ddf(sq)) {
            std::vector<UniPoly> parts;
            edf(g, d, rng, parts);
            for (auto& p : parts)
                out.factors.push_back({std::move(p), e});
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const FactorEntry& a, const FactorEntry& b) {
        auto c = a.factor.compare(b.factor);
        return c != 0 ? c < 0 : a.mult < b.mult;
    });
    return out;
}

bool is_irreducible(const UniPoly& f)
{
    require_finite(f);
    if (f.degree() <= 0)
        return false;
    if (f.degree() == 1)
        return true;
    const unsigned n = static_cast<unsigned>(f.degree());
    const UniPoly m = f.monic();
    const mpz_class q = f.field().order();
    const UniPoly x = UniPoly::x(f.field());
    std::vector<UniPoly> frob(n + 1);
    frob[0] = x % m;
    for (unsigned i = 1; i <= n; ++i)
        frob[i] = powmod(frob[i - 1], q, m);
    if (!(frob[n] == frob[0]))
        return false;
    unsigned k = n;
    for (unsigned r = 2; r <= k; ++r) {
        if (k % r)
            continue;
        while (k % r == 0)
            k /= r;
        if (gcd(m, frob[n / r] - x).degree() != 0)
            return false;
    }
    return true;
}

std::vector<Elem> roots(const UniPoly& f, std::uint64_t seed)
{
    if (f.is_zero())
        fail(ErrorKind::ZeroPolynomial, "roots of 0");
    require_finite(f);
    std::vector<Elem> out;
    if (f.degree() <= 0)
        return out;
    const Field& fld = f.field();
    UniPoly m = f.monic();
    UniPoly x = UniPoly::x(fld);
    UniPoly g = gcd(m, powmod(x, fld.order(), m) - x);
    if (g.degree() <= 0)
        return out;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<UniPoly> lin;
    edf(g, 1, rng, lin);
    for (const auto& l : lin)
        out.push_back(-l.coeff(0));
    std::sort(out.begin(), out.end(), [](const Elem& a, const Elem& b) { return a.compare(b) < 0; });
    return out;
}

// ---------------------------------------------------------------- rational roots

namespace {

mpz_class mpz_mod(const mpz_class& a, const mpz_class& m)
{
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Integer polynomial evaluation modulo m.
mpz_class eval_mod(const std::vector<mpz_class>& c, const mpz_class& x, const mpz_class& m)
{
    mpz_class r = 0;
    for (std::size_t i = c.size(); i-- > 0;)
        r = mpz_mod(r * x + c[i], m);
    return r;
}

} // namespace

std::vector<Elem> rational_roots(const UniPoly& f)
{
    const Field& Q = f.field();
    if (Q.is_finite())
        fail(ErrorKind::InvalidArgument, "rational_roots expects a polynomial over Q");
    if (f.is_zero())
        fail(ErrorKind::ZeroPolynomial, "roots of 0");
    std::vector<Elem> out;
    // strip factors of y
    std::size_t low = 0;
    while (f.coeffs()[low].is_zero())
        ++low;
    if (low > 0)
        out.push_back(Q.zero());
    std::vector<Elem> shifted(f.coeffs().begin() + static_cast<long>(low), f.coeffs().end());
    UniPoly g(Q, shifted);
    if (g.degree() <= 0)
        return out;
    // square-free part, then primitive integer coefficients
    UniPoly sq = exact_div(g, gcd(g, g.derivative()));
    mpz_class den = 1;
    for (const auto& c : sq.coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
    std::vector<mpz_class> ic;
    for (const auto& c : sq.coeffs())
        ic.push_back(mpz_class(c.rational() * den));
    mpz_class cont = 0;
    for (const auto& c : ic)
        mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), c.get_mpz_t());
    for (auto& c : ic)
        c /= cont;
    const mpz_class lead = abs(ic.back());
    const mpz_class tail = abs(ic.front());
    const mpz_class bound = 2 * lead * tail + 1;

    // a prime where the reduction keeps its degree and stays square-free
    std::uint64_t P = (1ULL << 31) - 1;
    Field FP;
    UniPoly red;
    for (;; P -= 2) {
        if (!is_probable_prime_u64(P) || mpz_divisible_ui_p(lead.get_mpz_t(), P))
            continue;
        FP = Field::prime(P);
        std::vector<Elem> v;
        for (const auto& c : ic)
            v.push_back(FP.from_mpz(c));
        red = UniPoly(FP, v);
        if (gcd(red, red.derivative()).degree() == 0)
            break;
    }
    std::vector<mpz_class> dc;
    for (std::size_t i = 1; i < ic.size(); ++i)
        dc.push_back(ic[i] * static_cast<unsigned long>(i));

    for (const Elem& r0 : roots(red)) {
        mpz_class M = static_cast<unsigned long>(P);
        mpz_class r = static_cast<unsigned long>(r0.prime_value());
        // Newton lifting
        while (M < bound) {
            M = M * M;
            mpz_class fv = eval_mod(ic, r, M);
            mpz_class dv = eval_mod(dc, r, M);
            mpz_class inv;
            if (mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), M.get_mpz_t()) == 0)
                break;
            r = mpz_mod(r - fv * inv, M);
        }
        // rational reconstruction with |num| <= tail, 0 < den <= lead
        mpz_class r_0 = M, r_1 = r, t_0 = 0, t_1 = 1;
        while (r_1 > tail) {
            mpz_class q = r_0 / r_1;
            mpz_class tmp = r_0 - q * r_1;
            r_0 = r_1;
            r_1 = tmp;
            tmp = t_0 - q * t_1;
            t_0 = t_1;
            t_1 = tmp;
        }
        if (t_1 == 0 || abs(t_1) > lead)
            continue;
        mpq_class cand(r_1, t_1);
        cand.canonicalize();
        Elem e = Q.from_rational(cand);
        if (g.eval(e).is_zero())
            out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [](const Elem& a, const Elem& b) { return a.compare(b) < 0; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------- poly_sqrt

std::optional<PolySqrt> poly_sqrt(const UniPoly& f)
{
    if (f.is_zero())
        fail(ErrorKind::ZeroPolynomial, "poly_sqrt of 0");
    const Field& fld = f.field();
    if (fld.characteristic() == 2)
        fail(ErrorKind::BadCharacteristic, "poly_sqrt needs characteristic != 2");
    if (f.degree() % 2 != 0)
        return std::nullopt;
    const Elem c = f.lc();
    const UniPoly g = f.monic();
    const std::size_t n = static_cast<std::size_t>(f.degree()) / 2;
    std::vector<Elem> h(n + 1, fld.zero());
    h[n] = fld.one();
    const Elem half = fld.from_int(2).inv();
    // coefficient of y^(2n-j) in h^2 is 2 h_n h_(n-j) + sum_{0<i<j} h_(n-i) h_(n-j+i)
    for (std::size_t j = 1; j <= n; ++j) {
        Elem acc = fld.zero();
        for (std::size_t i = 1; i < j; ++i)
            acc += h[n - i] * h[n - j + i];
        h[n - j] = (g.coeff(2 * n - j) - acc) * half;
    }
    UniPoly hp(fld, h);
    if (!((hp * hp) == g))
        return std::nullopt;
    return PolySqrt{c, hp};
}

// ---------------------------------------------------------------- extensions

Embedding Embedding::between(const Field& from, const Field& to)
{
    if (from.same(to) || from == to)
        return identity(to);
    if (!from.is_finite() || !to.is_finite())
        fail(ErrorKind::RationalsUnsupported, "embeddings between Q and finite fields");
    if (from.characteristic() != to.characteristic() || to.degree() % from.degree() != 0)
        fail(ErrorKind::FieldMismatch, from.name() + " does not embed in " + to.name());
    if (from.kind() == FieldKind::Prime)
        return Embedding(from, to, to.one());
    std::vector<Elem> m;
    for (auto c : from.modulus())
        m.push_back(to.from_int(static_cast<long>(c)));
    auto rs = roots(UniPoly(to, m));
    if (rs.empty())
        fail(ErrorKind::Internal, "no root of the source modulus in the target field");
    return Embedding(from, to, rs.front());
}

AdjoinedRoot adjoin_root(const Field& field, const UniPoly& m)
{
    if (m.degree() <= 0)
        fail(ErrorKind::InvalidArgument, "adjoin_root needs a non-constant polynomial");
    if (m.degree() == 1)
        return {field, Embedding::identity(field), -m.coeff(0) / m.coeff(1)};
    if (!field.is_finite())
        fail(ErrorKind::RationalsUnsupported, "algebraic extensions of Q are not supported");
    if (!is_irreducible(m))
        fail(ErrorKind::NotIrreducible, m.str() + " is reducible over " + field.name());
    const unsigned n = field.degree() * static_cast<unsigned>(m.degree());
    Field big = Field::canonical_extension(field.characteristic(), n);
    Embedding emb = Embedding::between(field, big);
    auto rs = roots(m.map(emb));
    DPLANE_ASSERT(!rs.empty(), "irreducible polynomial has no root in its splitting field");
    return {big, emb, rs.front()};
}

} // namespace dplane
