#include "dplane/intersect.hpp"

#include <algorithm>
#include <map>

namespace dplane {

bool bezout_check(const IntersectionSet& s, unsigned d1, unsigned d2) { return s.total == d1 * d2; }

// ---------------------------------------------------------------- local recursion

namespace {

UniPoly taylor_shift(const UniPoly& u, const Elem& a)
{
    // Horner in the shifted variable: u(x + a)
    const Field& f = u.field();
    UniPoly r(f);
    const UniPoly lin(f, {a, f.one()});
    for (std::size_t i = u.coeffs().size(); i-- > 0;)
        r = r * lin + UniPoly::constant(u.coeffs()[i]);
    return r;
}

BiPoly translate(const BiPoly& g, const Elem& a, const Elem& b)
{
    const Field& f = g.field();
    BiPoly r(f);
    const BiPoly lin(f, {UniPoly::constant(b), UniPoly::constant(f.one())});
    for (std::size_t j = g.coeffs().size(); j-- > 0;)
        r = r * lin + BiPoly(f, {taylor_shift(g.coeffs()[j], a)});
    return r;
}

unsigned low_order(const UniPoly& u)
{
    unsigned i = 0;
    while (u.coeffs()[i].is_zero())
        ++i;
    return i;
}

Elem value_at_origin(const BiPoly& g)
{
    return g.is_zero() ? g.field().zero() : g.coeffs()[0].coeff(0);
}

} // namespace

std::optional<unsigned> mult_at_point(const BiPoly& f0, const BiPoly& g0, const Elem& a, const Elem& b)
{
    BiPoly f = translate(f0, a, b), g = translate(g0, a, b);
    const unsigned bound = (total_degree(f0) + 1) * (total_degree(g0) + 1);
    unsigned total = 0;
    for (;;) {
        if (f.is_zero() || g.is_zero())
            return std::nullopt;
        if (!value_at_origin(f).is_zero() || !value_at_origin(g).is_zero())
            return total;
        UniPoly fx = f.coeff(0), gx = g.coeff(0);
        if (fx.is_zero() && gx.is_zero())
            return std::nullopt; // y divides both
        if (fx.is_zero()) {
            std::swap(f, g);
            std::swap(fx, gx);
        }
        if (gx.is_zero()) {
            // g = y * g1 and I(f, y) is the order of f(x, 0) at 0
            total += low_order(fx);
            std::vector<UniPoly> rest(g.coeffs().begin() + 1, g.coeffs().end());
            g = BiPoly(g.field(), std::move(rest));
        } else {
            if (fx.degree() > gx.degree()) {
                std::swap(f, g);
                std::swap(fx, gx);
            }
            const Elem s = gx.lc() / fx.lc();
            const unsigned shift = static_cast<unsigned>(gx.degree() - fx.degree());
            g = g - f.scaled(UniPoly::monomial(s, shift));
        }
        if (total > bound)
            return std::nullopt;
    }
}

std::optional<unsigned> mult_at_point(const TriForm& f, const TriForm& g, const ProjPoint& p)
{
    std::size_t i = 0;
    while (p[i].is_zero())
        ++i;
    const int one = static_cast<int>(i);
    const int j = one == 0 ? 1 : 0;
    const int k = one == 2 ? 1 : 2;
    const Embedding e = embed_into(f.field(), p.field());
    const BiPoly fa = f.map(e).slice(one, k), ga = g.map(e).slice(one, k);
    return mult_at_point(fa, ga, p[static_cast<std::size_t>(j)], p[static_cast<std::size_t>(k)]);
}

// ---------------------------------------------------------------- resultant method

namespace {

struct Attempt {
    bool ok = false;
    std::vector<ClosedPoint> points;
    std::vector<Stratum> strata;
};

[[noreturn]] void common_component(const BiPoly& a, const BiPoly& b, const CoordChange& t)
{
    const BiPoly h = gcd_z(a, b);
    const TriForm hh = TriForm::from_slice(h, total_degree(h)).substitute(t.inverse_matrix());
    fail(ErrorKind::CommonComponent, "the curves share the component " + hh.monic().str());
}

// One coordinate change over a finite field; ok = false when the change is not in good position.
Attempt finite_attempt(const TriForm& f, const TriForm& g, const CoordChange& t, std::uint64_t seed)
{
    Attempt out;
    const Field& k = f.field();
    const unsigned d1 = f.degree(), d2 = g.degree();
    const TriForm fp = f.substitute(t.matrix()), gp = g.substitute(t.matrix());
    if (fp.coeff({0, 0, d1}).is_zero() || gp.coeff({0, 0, d2}).is_zero())
        return out;
    const BiPoly a = fp.slice(1, 2), b = gp.slice(1, 2);
    const UniPoly r = resultant(a, b);
    if (r.is_zero())
        common_component(a, b, t);
    if (r.degree() != static_cast<int>(d1 * d2))
        return out;
    const Factorization fac = uni_factor(r, seed);
    for (const auto& fe : fac.factors) {
        const AdjoinedRoot ar = adjoin_root(k, fe.factor);
        const UniPoly az = a.map(ar.embed).eval_x(ar.root);
        const UniPoly bz = b.map(ar.embed).eval_x(ar.root);
        const auto sq = squarefree_decomposition(gcd(az, bz));
        // good position: the fiber over this root is a single point
        if (sq.size() != 1 || sq[0].factor.degree() != 1)
            return out;
        const Elem beta = -sq[0].factor.coeff(0);
        const ProjPoint p(t.apply({ar.root, ar.field.one(), beta}, ar.embed));
        DPLANE_ASSERT(f.eval(p.coords(), ar.embed).is_zero() && g.eval(p.coords(), ar.embed).is_zero(),
                      "lifted point is off the curves");
        const Orbit orb = orbit_of(p, k);
        DPLANE_ASSERT(orb.size == static_cast<unsigned>(fe.factor.degree()), "orbit size differs from the factor degree");
        ClosedPoint cp;
        cp.residue_degree = orb.size;
        cp.rep = orb.rep;
        cp.embed = ar.embed;
        cp.factor = fe.factor;
        cp.fiber = beta;
        cp.multiplicity = fe.mult;
        const auto check = mult_at_point(f, g, cp.rep);
        if (!check || *check != fe.mult)
            fail(ErrorKind::OracleDisagreement,
                 "resultant multiplicity " + std::to_string(fe.mult) + " but local recursion gives " +
                     (check ? std::to_string(*check) : std::string("infinity")) + " at " + cp.rep.str());
        out.points.push_back(std::move(cp));
        out.strata.push_back({fe.mult, static_cast<unsigned>(fe.factor.degree())});
    }
    out.ok = true;
    return out;
}

// Over Q: square-free strata plus the rational points.
Attempt rational_attempt(const TriForm& f, const TriForm& g, const CoordChange& t)
{
    Attempt out;
    const Field& k = f.field();
    const unsigned d1 = f.degree(), d2 = g.degree();
    const TriForm fp = f.substitute(t.matrix()), gp = g.substitute(t.matrix());
    if (fp.coeff({0, 0, d1}).is_zero() || gp.coeff({0, 0, d2}).is_zero())
        return out;
    const BiPoly a = fp.slice(1, 2), b = gp.slice(1, 2);
    const UniPoly r = resultant(a, b);
    if (r.is_zero())
        common_component(a, b, t);
    if (r.degree() != static_cast<int>(d1 * d2))
        return out;
    for (const auto& fe : squarefree_decomposition(r)) {
        out.strata.push_back({fe.mult, static_cast<unsigned>(fe.factor.degree())});
        for (const Elem& alpha : rational_roots(fe.factor)) {
            const auto sq = squarefree_decomposition(gcd(a.eval_x(alpha), b.eval_x(alpha)));
            if (sq.size() != 1 || sq[0].factor.degree() != 1)
                return out;
            const Elem beta = -sq[0].factor.coeff(0);
            ClosedPoint cp;
            cp.rep = ProjPoint(t.apply({alpha, k.one(), beta}, Embedding::identity(k)));
            cp.embed = Embedding::identity(k);
            cp.factor = UniPoly(k, {-alpha, k.one()});
            cp.fiber = beta;
            cp.multiplicity = fe.mult;
            const auto check = mult_at_point(f, g, cp.rep);
            if (!check || *check != fe.mult)
                fail(ErrorKind::OracleDisagreement, "rational point " + cp.rep.str() + " multiplicity mismatch");
            out.points.push_back(std::move(cp));
        }
    }
    std::sort(out.strata.begin(), out.strata.end());
    out.ok = true;
    return out;
}

void finish(IntersectionSet& s)
{
    std::sort(s.points.begin(), s.points.end(),
              [](const ClosedPoint& x, const ClosedPoint& y) { return x.rep.compare(y.rep) < 0; });
    std::sort(s.strata.begin(), s.strata.end());
}

} // namespace

IntersectionSet intersect(const PlaneCurve& c1, const PlaneCurve& c2, std::uint64_t seed)
{
    if (!(c1.field() == c2.field()))
        fail(ErrorKind::FieldMismatch, "curves over " + c1.field().name() + " and " + c2.field().name());
    const Field& k = c1.field();
    std::mt19937_64 rng(seed);
    IntersectionSet s;
    s.field = k;
    const unsigned d1 = c1.degree(), d2 = c2.degree();

    if (!k.is_finite()) {
        // three good changes must agree on the strata
        std::map<std::vector<Stratum>, std::pair<int, Attempt>> seen;
        std::map<std::vector<Stratum>, std::vector<CoordChange>> used;
        for (int attempt = 0; attempt < 64; ++attempt) {
            CoordChange t = CoordChange::random(k, rng);
            ++s.attempts;
            Attempt a = rational_attempt(c1.form(), c2.form(), t);
            if (!a.ok)
                continue;
            auto& slot = seen[a.strata];
            used[a.strata].push_back(t);
            if (slot.first++ == 0)
                slot.second = a;
            if (slot.first == 3) {
                s.points = std::move(slot.second.points);
                s.strata = a.strata;
                s.changes = used[a.strata];
                s.change = s.changes.front();
                s.parity_only = true;
                for (const auto& st : s.strata)
                    s.total += st.exponent * st.degree;
                finish(s);
                return s;
            }
        }
        fail(ErrorKind::GoodPositionFailed, "no three agreeing coordinate changes over Q");
    }

    TriForm f = c1.form(), g = c2.form();
    Field cur = k;
    for (unsigned level = 1; level <= 3; ++level) {
        if (level > 1) {
            cur = Field::canonical_extension(k.characteristic(), k.degree() * level);
            const Embedding e = embed_into(k, cur);
            f = c1.form().map(e);
            g = c2.form().map(e);
            s.extensions.push_back(cur.name());
        }
        for (int attempt = 0; attempt < 32; ++attempt) {
            CoordChange t = CoordChange::random(cur, rng);
            ++s.attempts;
            Attempt a = finite_attempt(f, g, t, rng());
            if (!a.ok)
                continue;
            s.field = cur;
            s.change = t;
            s.changes = {t};
            s.points = std::move(a.points);
            s.strata = std::move(a.strata);
            for (const auto& cp : s.points)
                s.total += cp.multiplicity * cp.residue_degree;
            finish(s);
            DPLANE_ASSERT(s.total == d1 * d2, "intersection total differs from the product of degrees");
            return s;
        }
    }
    fail(ErrorKind::GoodPositionFailed, "no coordinate change in good position after extending to degree 3");
}

} // namespace dplane
