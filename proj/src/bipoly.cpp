#include "dplane/bipoly.hpp"

#include <algorithm>

namespace dplane {

BiPoly::BiPoly(Field f, std::vector<UniPoly> c) : f_(std::move(f)), c_(std::move(c)) { trim(); }

void BiPoly::trim()
{
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

int BiPoly::x_degree() const
{
    int d = UniPoly::kZeroDegree;
    for (const auto& c : c_)
        d = std::max(d, c.degree());
    return d;
}

BiPoly BiPoly::scaled(const UniPoly& s) const
{
    std::vector<UniPoly> v;
    v.reserve(c_.size());
    for (const auto& c : c_)
        v.push_back(c * s);
    return BiPoly(f_, std::move(v));
}

BiPoly BiPoly::shifted(unsigned n) const
{
    if (is_zero())
        return *this;
    std::vector<UniPoly> v(n, UniPoly(f_));
    v.insert(v.end(), c_.begin(), c_.end());
    return BiPoly(f_, std::move(v));
}

UniPoly BiPoly::eval_x(const Elem& a) const
{
    std::vector<Elem> v;
    v.reserve(c_.size());
    for (const auto& c : c_)
        v.push_back(c.eval(a));
    return UniPoly(a.field(), std::move(v));
}

BiPoly BiPoly::map(const Embedding& e) const
{
    std::vector<UniPoly> v;
    for (const auto& c : c_)
        v.push_back(c.map(e));
    return BiPoly(e.to(), std::move(v));
}

BiPoly BiPoly::reduced(const UniPoly& h) const
{
    std::vector<UniPoly> v;
    for (const auto& c : c_)
        v.push_back(c % h);
    return BiPoly(f_, std::move(v));
}

BiPoly operator+(const BiPoly& a, const BiPoly& b)
{
    std::vector<UniPoly> v = a.c_;
    if (v.size() < b.c_.size())
        v.resize(b.c_.size(), UniPoly(a.f_));
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        v[i] += b.c_[i];
    return BiPoly(a.f_, std::move(v));
}

BiPoly operator-(const BiPoly& a, const BiPoly& b)
{
    std::vector<UniPoly> v = a.c_;
    if (v.size() < b.c_.size())
        v.resize(b.c_.size(), UniPoly(a.f_));
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        v[i] -= b.c_[i];
    return BiPoly(a.f_, std::move(v));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return BiPoly(a.f_);
    std::vector<UniPoly> v(a.c_.size() + b.c_.size() - 1, UniPoly(a.f_));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            v[i + j] += a.c_[i] * b.c_[j];
    return BiPoly(a.f_, std::move(v));
}

unsigned total_degree(const BiPoly& g)
{
    int best = 0;
    for (std::size_t c = 0; c < g.coeffs().size(); ++c)
        if (!g.coeffs()[c].is_zero())
            best = std::max(best, static_cast<int>(c) + g.coeffs()[c].degree());
    return static_cast<unsigned>(best);
}

BiPoly prem(const BiPoly& a, const BiPoly& b)
{
    DPLANE_ASSERT(!b.is_zero(), "pseudo-division by zero");
    const int db = b.degree();
    if (a.degree() < db)
        return a;
    const UniPoly& lb = b.lc();
    std::vector<UniPoly> r = a.coeffs();
    for (int i = a.degree(); i >= db; --i) {
        const UniPoly c = r[static_cast<std::size_t>(i)];
        for (auto& x : r)
            x = x * lb;
        if (c.is_zero())
            continue;
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
    }
    return BiPoly(a.field(), std::move(r));
}

namespace {

UniPoly upow(const UniPoly& a, int e)
{
    UniPoly r = UniPoly::constant(a.field().one());
    for (int i = 0; i < e; ++i)
        r = r * a;
    return r;
}

BiPoly exact_div(const BiPoly& a, const UniPoly& d)
{
    std::vector<UniPoly> v;
    for (const auto& c : a.coeffs())
        v.push_back(dplane::exact_div(c, d));
    return BiPoly(a.field(), std::move(v));
}

struct Prs {
    BiPoly last;    // last nonzero member
    UniPoly result; // resultant, or zero
};

// Subresultant remainder sequence without content removal.
Prs subresultant_prs(BiPoly a, BiPoly b)
{
    const Field& f = a.field();
    const UniPoly one = UniPoly::constant(f.one());
    bool neg = false;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1)
            neg = true;
    }
    UniPoly g = one, h = one;
    while (b.degree() > 0) {
        const int delta = a.degree() - b.degree();
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1)
            neg = !neg;
        BiPoly r = prem(a, b);
        a = b;
        if (r.is_zero())
            return {a, UniPoly(f)};
        b = exact_div(r, g * upow(h, delta));
        g = a.lc();
        if (delta == 0)
            ; // h unchanged
        else if (delta == 1)
            h = g;
        else
            h = dplane::exact_div(upow(g, delta), upow(h, delta - 1));
    }
    UniPoly res = dplane::exact_div(upow(b.lc(), a.degree()), upow(h, a.degree() - 1));
    return {b, neg ? -res : res};
}

} // namespace

UniPoly resultant(const BiPoly& a, const BiPoly& b)
{
    const Field& f = a.field();
    if (a.degree() <= 0 && b.degree() <= 0) {
        if (a.is_zero() || b.is_zero())
            return UniPoly(f);
        fail(ErrorKind::BothConstantInVariable, "both polynomials are constant in the eliminated variable");
    }
    if (a.is_zero() || b.is_zero())
        return UniPoly(f);
    if (a.degree() == 0)
        return upow(a.lc(), b.degree());
    if (b.degree() == 0)
        return upow(b.lc(), a.degree());
    return subresultant_prs(a, b).result;
}

Elem resultant(const UniPoly& a0, const UniPoly& b0)
{
    const Field& f = a0.field();
    if (a0.is_zero() || b0.is_zero())
        return f.zero();
    UniPoly a = a0, b = b0;
    Elem acc = f.one();
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1)
            acc = -acc;
    }
    while (b.degree() > 0) {
        UniPoly r = a % b;
        if (r.is_zero())
            return f.zero();
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1)
            acc = -acc;
        acc *= b.lc().pow(static_cast<std::uint64_t>(a.degree() - r.degree()));
        a = std::move(b);
        b = std::move(r);
    }
    return acc * b.lc().pow(static_cast<std::uint64_t>(a.degree()));
}

BiPoly gcd_z(const BiPoly& a, const BiPoly& b)
{
    if (a.is_zero() && b.is_zero())
        return a;
    BiPoly g;
    if (a.is_zero())
        g = b;
    else if (b.is_zero())
        g = a;
    else if (a.degree() == 0 || b.degree() == 0)
        g = BiPoly(a.field(), {UniPoly::constant(a.field().one())});
    else {
        Prs p = subresultant_prs(a, b);
        g = p.result.is_zero() ? p.last : BiPoly(a.field(), {UniPoly::constant(a.field().one())});
    }
    UniPoly content(a.field());
    for (const auto& c : g.coeffs())
        content = gcd(content, c);
    g = exact_div(g, content);
    if (g.lc().degree() == 0)
        g = g.scaled(UniPoly::constant(g.lc().lc().inv()));
    return g;
}

namespace {

struct Branch {
    UniPoly m;
    BiPoly p; // zero, or leading coefficient invertible mod m
};

// Make the leading coefficient of p invertible modulo m, splitting m on zero divisors.
void normalise(const BiPoly& p0, const UniPoly& m, std::vector<Branch>& out)
{
    BiPoly p = p0.reduced(m);
    if (p.is_zero()) {
        out.push_back({m, p});
        return;
    }
    XGcd xg = xgcd(p.lc(), m);
    if (xg.g.degree() == 0) {
        // s*lc + t*m = 1 with g monic, so s is the inverse
        out.push_back({m, p.scaled(xg.s).reduced(m)});
        return;
    }
    const UniPoly m1 = xg.g;
    const UniPoly m2 = exact_div(m, m1);
    normalise(p, m1, out);
    normalise(p, m2, out);
}

BiPoly rem_monic(BiPoly a, const BiPoly& b, const UniPoly& m)
{
    const int db = b.degree();
    while (a.degree() >= db) {
        const UniPoly c = a.lc();
        a = (a - b.scaled(c).shifted(static_cast<unsigned>(a.degree() - db))).reduced(m);
    }
    return a;
}

void euclid(const BiPoly& a, const BiPoly& b, const UniPoly& m, std::vector<Branch>& out)
{
    std::vector<Branch> nb;
    normalise(b, m, nb);
    for (auto& br : nb) {
        if (br.p.is_zero()) {
            normalise(a, br.m, out);
            continue;
        }
        BiPoly r = rem_monic(a.reduced(br.m), br.p, br.m);
        euclid(br.p, r, br.m, out);
    }
}

} // namespace

std::vector<SplitGcd> split_gcd(const std::vector<BiPoly>& polys, const UniPoly& h)
{
    DPLANE_ASSERT(h.degree() >= 1, "split_gcd needs a nonconstant modulus");
    std::vector<Branch> cur;
    normalise(polys.empty() ? BiPoly(h.field()) : polys[0], h.monic(), cur);
    for (std::size_t i = 1; i < polys.size(); ++i) {
        std::vector<Branch> next;
        for (const auto& br : cur)
            euclid(br.p, polys[i], br.m, next);
        cur = std::move(next);
    }
    std::vector<SplitGcd> out;
    for (auto& br : cur)
        out.push_back({br.m, br.p});
    return out;
}

} // namespace dplane
