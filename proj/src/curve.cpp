#include "dplane/curve.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace dplane {

// ---------------------------------------------------------------- points

ProjPoint::ProjPoint(std::array<Elem, 3> c) : c_(std::move(c))
{
    std::size_t i = 0;
    while (i < 3 && c_[i].is_zero())
        ++i;
    if (i == 3)
        fail(ErrorKind::InvalidArgument, "projective point with all coordinates zero");
    if (!c_[i].is_one()) {
        const Elem s = c_[i].inv();
        for (auto& x : c_)
            x *= s;
    }
}

bool ProjPoint::operator==(const ProjPoint& o) const
{
    return c_[0] == o.c_[0] && c_[1] == o.c_[1] && c_[2] == o.c_[2];
}

std::strong_ordering ProjPoint::compare(const ProjPoint& o) const
{
    for (std::size_t i = 0; i < 3; ++i) {
        auto c = c_[i].compare(o.c_[i]);
        if (c != 0)
            return c;
    }
    return std::strong_ordering::equal;
}

ProjPoint ProjPoint::frobenius() const
{
    return ProjPoint({c_[0].frobenius(), c_[1].frobenius(), c_[2].frobenius()});
}

std::string ProjPoint::str() const
{
    auto one = [](const Elem& e) {
        std::string s = e.str();
        return s.find(' ') != std::string::npos ? "(" + s + ")" : s;
    };
    return "(" + one(c_[0]) + ":" + one(c_[1]) + ":" + one(c_[2]) + ")";
}

Orbit orbit_of(const ProjPoint& p, const Field& base)
{
    Orbit o{1, p};
    if (!p.field().is_finite())
        return o;
    const unsigned step = base.degree();
    ProjPoint cur = p;
    for (;;) {
        for (unsigned i = 0; i < step; ++i)
            cur = cur.frobenius();
        if (cur == p)
            return o;
        ++o.size;
        if (cur.compare(o.rep) < 0)
            o.rep = cur;
        DPLANE_ASSERT(o.size <= p.field().degree(), "Frobenius orbit longer than the field degree");
    }
}

bool same_orbit(const ProjPoint& a, const ProjPoint& b, const Field& base)
{
    if (a.field().same(b.field()))
        return orbit_of(a, base).rep == orbit_of(b, base).rep;
    if (!a.field().is_finite() || !b.field().is_finite())
        return false;
    const unsigned da = a.field().degree(), db = b.field().degree();
    const unsigned l = std::lcm(da, db);
    const Field common = l == da ? a.field() : l == db ? b.field() : Field::canonical_extension(base.characteristic(), l);
    auto lift = [&](const ProjPoint& x) {
        const Embedding e = embed_into(x.field(), common);
        return ProjPoint({e(x[0]), e(x[1]), e(x[2])});
    };
    return orbit_of(lift(a), base).rep == orbit_of(lift(b), base).rep;
}

// ---------------------------------------------------------------- coordinate changes

namespace {

Elem det3(const Matrix3& m)
{
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

} // namespace

CoordChange::CoordChange(const Matrix3& m) : m_(m)
{
    const Elem d = det3(m);
    if (d.is_zero())
        fail(ErrorKind::InvalidArgument, "coordinate change matrix is singular");
    const Elem di = d.inv();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            // adjugate: cofactor of (j, i)
            const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            inv_[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) * di;
        }
}

CoordChange CoordChange::identity(const Field& f)
{
    Matrix3 m;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            m[i][j] = i == j ? f.one() : f.zero();
    return CoordChange(m);
}

CoordChange CoordChange::random(const Field& f, std::mt19937_64& rng)
{
    for (;;) {
        Matrix3 m;
        for (auto& row : m)
            for (auto& x : row)
                x = f.random(rng);
        if (!det3(m).is_zero())
            return CoordChange(m);
    }
}

CoordChange CoordChange::inverse() const { return CoordChange(inv_); }

std::array<Elem, 3> CoordChange::apply(const std::array<Elem, 3>& v, const Embedding& e) const
{
    std::array<Elem, 3> r;
    for (std::size_t i = 0; i < 3; ++i)
        r[i] = e(m_[i][0]) * v[0] + e(m_[i][1]) * v[1] + e(m_[i][2]) * v[2];
    return r;
}

std::string CoordChange::str() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < 3; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < 3; ++j)
            os << (j ? ", " : "") << m_[i][j].str();
        os << "]";
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- embeddings

Embedding embed_into(const Field& from, const Field& to)
{
    if (from.same(to))
        return Embedding::identity(to);
    if (from.kind() != FieldKind::Extension)
        return Embedding::between(from, to);
    static std::mutex mu;
    static std::map<std::pair<const void*, const void*>, Embedding> cache;
    const auto key = std::make_pair(static_cast<const void*>(from.data()), static_cast<const void*>(to.data()));
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    Embedding e = Embedding::between(from, to);
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(key, e);
    return e;
}

Elem eval_at(const TriForm& f, const ProjPoint& p)
{
    if (f.field().same(p.field()))
        return f.eval(p.coords());
    return f.eval(p.coords(), embed_into(f.field(), p.field()));
}

// ---------------------------------------------------------------- curves

struct PlaneCurve::Cache {
    std::once_flag once;
    Smoothness value;
};

PlaneCurve::PlaneCurve(TriForm f) : f_(std::move(f)), cache_(std::make_shared<Cache>())
{
    if (f_.is_zero())
        fail(ErrorKind::ZeroPolynomial, "a curve needs a nonzero form");
}

PlaneCurve apply_change(const PlaneCurve& c, const CoordChange& t)
{
    return PlaneCurve(c.form().substitute(t.inverse_matrix()));
}

ProjPoint apply_change(const ProjPoint& p, const CoordChange& t)
{
    return ProjPoint(t.apply(p.coords(), embed_into(t.matrix()[0][0].field(), p.field())));
}

PlaneCurve tangent_line(const PlaneCurve& c, const ProjPoint& p)
{
    if (!eval_at(c.form(), p).is_zero())
        fail(ErrorKind::PointNotOnCurve, p.str() + " is not on " + c.str());
    std::array<Elem, 3> g;
    for (int i = 0; i < 3; ++i)
        g[static_cast<std::size_t>(i)] = eval_at(c.form().partial(i), p);
    if (g[0].is_zero() && g[1].is_zero() && g[2].is_zero())
        fail(ErrorKind::SingularPoint, "the curve is singular at " + p.str());
    return PlaneCurve(TriForm::linear(g[0], g[1], g[2]));
}

namespace {

ClosedPoint closed_from(const ProjPoint& p, const Field& base)
{
    Orbit o = orbit_of(p, base);
    ClosedPoint cp;
    cp.residue_degree = o.size;
    cp.rep = o.rep;
    cp.embed = embed_into(base, p.field());
    return cp;
}

void add_unique(std::vector<ClosedPoint>& out, ClosedPoint cp)
{
    for (const auto& q : out)
        if (q.rep == cp.rep)
            return;
    out.push_back(std::move(cp));
}

Smoothness smooth_conic(const TriForm& f)
{
    const Field& k = f.field();
    auto c = [&](unsigned a, unsigned b, unsigned cz) { return f.coeff({a, b, cz}); };
    // symmetric matrix of the conic, doubled to avoid halves
    Matrix3 m;
    m[0] = {c(2, 0, 0) + c(2, 0, 0), c(1, 1, 0), c(1, 0, 1)};
    m[1] = {c(1, 1, 0), c(0, 2, 0) + c(0, 2, 0), c(0, 1, 1)};
    m[2] = {c(1, 0, 1), c(0, 1, 1), c(0, 0, 2) + c(0, 0, 2)};
    Smoothness s;
    s.rational_only = !k.is_finite();
    if (!det3(m).is_zero()) {
        s.verdict = SmoothVerdict::Smooth;
        return s;
    }
    // rank 2: the kernel is the vertex of a line pair
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            const auto& a = m[i];
            const auto& b = m[j];
            std::array<Elem, 3> v = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
            if (v[0].is_zero() && v[1].is_zero() && v[2].is_zero())
                continue;
            s.verdict = SmoothVerdict::Singular;
            s.singular.push_back(closed_from(ProjPoint(v), k));
            return s;
        }
    fail(ErrorKind::NonReduced, "the conic " + f.str() + " is a double line");
}

UniPoly squarefree_part(const UniPoly& r)
{
    UniPoly h = UniPoly::constant(r.field().one());
    for (const auto& fe : squarefree_decomposition(r))
        h = h * fe.factor;
    return h;
}

// Singular points over one branch (m, g) of the split gcd, in good coordinates.
void singular_points(const UniPoly& m, const BiPoly& g, const CoordChange& t, const Field& base,
                     std::vector<ClosedPoint>& out)
{
    if (!base.is_finite()) {
        for (const Elem& a : rational_roots(m)) {
            UniPoly gz = g.eval_x(a);
            for (const Elem& b : rational_roots(gz)) {
                ProjPoint p(t.apply({a, base.one(), b}, Embedding::identity(base)));
                add_unique(out, closed_from(p, base));
            }
        }
        return;
    }
    for (const auto& fe : uni_factor(m, 0).factors) {
        AdjoinedRoot ar = adjoin_root(base, fe.factor);
        UniPoly gz = g.map(ar.embed).eval_x(ar.root);
        for (const auto& ge : uni_factor(gz, 0).factors) {
            AdjoinedRoot br = adjoin_root(ar.field, ge.factor);
            const Embedding total = ar.embed.then(br.embed);
            ProjPoint p(t.apply({br.embed(ar.root), br.field.one(), br.root}, total));
            add_unique(out, closed_from(p, base));
        }
    }
}

Smoothness smooth_general(const TriForm& f, const Field& base, unsigned depth)
{
    const Field& k = f.field();
    const unsigned d = f.degree();
    std::mt19937_64 rng(0x736d6f6f74680000ULL + d);
    Smoothness s;
    s.rational_only = !k.is_finite();
    for (int attempt = 0; attempt < 32; ++attempt) {
        CoordChange t = CoordChange::random(k, rng);
        const TriForm g = f.substitute(t.matrix());
        const TriForm p0 = g.partial(0), p1 = g.partial(1), p2 = g.partial(2);
        if (p0.coeff({0, 0, d - 1}).is_zero() || p1.coeff({0, 0, d - 1}).is_zero())
            continue;
        const BiPoly a = p0.slice(1, 2), b = p1.slice(1, 2), c = p2.slice(1, 2);
        const UniPoly r = resultant(a, b);
        if (r.is_zero()) {
            BiPoly h = gcd_z(gcd_z(a, b), c);
            if (h.degree() > 0)
                fail(ErrorKind::NonReduced, "the partial derivatives of " + f.str() + " share the factor " +
                                                TriForm::from_slice(h, total_degree(h)).str());
            continue;
        }
        if (r.degree() != static_cast<int>((d - 1) * (d - 1)))
            continue;
        std::vector<SplitGcd> parts = split_gcd({a, b, c}, squarefree_part(r));
        s.verdict = SmoothVerdict::Smooth;
        for (const auto& part : parts) {
            if (part.g.degree() < 1)
                continue;
            s.verdict = SmoothVerdict::Singular;
            singular_points(part.modulus, part.g, t, base, s.singular);
        }
        if (s.verdict == SmoothVerdict::Singular && s.singular.empty() && base.is_finite())
            fail(ErrorKind::Internal, "singular branch without a singular point");
        std::sort(s.singular.begin(), s.singular.end(),
                  [](const ClosedPoint& x, const ClosedPoint& y) { return x.rep.compare(y.rep) < 0; });
        return s;
    }
    // too few good changes over a tiny field: smoothness is geometric, so extend scalars
    if (!k.is_finite() || depth >= 2)
        fail(ErrorKind::GoodPositionFailed, "no usable coordinate change for the smoothness test");
    Field big = Field::canonical_extension(k.characteristic(), k.degree() * 2);
    Smoothness ext = smooth_general(f.map(embed_into(k, big)), base, depth + 1);
    if (ext.verdict == SmoothVerdict::Singular)
        for (auto& cp : ext.singular)
            cp = closed_from(cp.rep, base);
    return ext;
}

} // namespace

const Smoothness& is_smooth(const PlaneCurve& c)
{
    std::call_once(c.cache_->once, [&] {
        const TriForm& f = c.form();
        const std::uint64_t p = f.field().characteristic();
        if (p != 0 && f.degree() % p == 0)
            fail(ErrorKind::CharacteristicDividesDegree,
                 "characteristic " + std::to_string(p) + " divides the degree " + std::to_string(f.degree()));
        Smoothness s;
        if (f.degree() <= 1) {
            s.verdict = SmoothVerdict::Smooth;
            s.rational_only = !f.field().is_finite();
        } else if (f.degree() == 2) {
            s = smooth_conic(f);
        } else {
            s = smooth_general(f, f.field(), 0);
        }
        c.cache_->value = std::move(s);
    });
    return c.cache_->value;
}

// ---------------------------------------------------------------- sampling

SampledPoint sample_point(const PlaneCurve& c, const PlaneCurve* avoid, std::uint64_t seed, unsigned attempts)
{
    const Field& k = c.field();
    if (!k.is_finite())
        fail(ErrorKind::FieldNotFinite, "sample_point needs a finite field");
    std::mt19937_64 rng(seed);
    for (unsigned attempt = 0; attempt < attempts; ++attempt) {
        Elem a = k.random(rng), b = k.random(rng);
        if (a.is_zero() && b.is_zero())
            continue;
        // restriction to the line through (a:b:0) and (0:0:1)
        std::vector<Elem> coef(c.degree() + 1, k.zero());
        for (const auto& [m, v] : c.form().terms())
            coef[m[2]] += v * a.pow(static_cast<std::uint64_t>(m[0])) * b.pow(static_cast<std::uint64_t>(m[1]));
        UniPoly r(k, coef);
        ProjPoint p;
        if (r.is_zero()) {
            p = ProjPoint({a, b, k.random(rng)});
        } else if (r.degree() == 0) {
            // the line meets the curve only at (0:0:1)
            p = ProjPoint({k.zero(), k.zero(), k.one()});
        } else {
            const auto fac = uni_factor(r, rng()).factors;
            const auto& pick = fac[rng() % fac.size()].factor;
            AdjoinedRoot ar = adjoin_root(k, pick);
            p = ProjPoint({ar.embed(a), ar.embed(b), ar.root});
        }
        if (avoid && eval_at(avoid->form(), p).is_zero())
            continue;
        DPLANE_ASSERT(eval_at(c.form(), p).is_zero(), "sampled point is off the curve");
        return {p, orbit_of(p, k).size};
    }
    fail(ErrorKind::ExhaustedAttempts, "no point found in " + std::to_string(attempts) + " tries");
}

} // namespace dplane
