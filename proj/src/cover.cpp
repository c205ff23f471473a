#include "dplane/cover.hpp"

namespace dplane {

std::string to_string(SplitMode m)
{
    switch (m) {
    case SplitMode::ExactParametrized:
        return "ExactParametrized";
    case SplitMode::MonteCarlo:
        return "MonteCarlo";
    case SplitMode::LocalModel:
        return "LocalModel";
    }
    return "?";
}

std::string to_string(SplitOutcome o)
{
    switch (o) {
    case SplitOutcome::RationalSplit:
        return "RationalSplit";
    case SplitOutcome::SplitAfterQuadraticConstantTwist:
        return "SplitAfterQuadraticConstantTwist";
    case SplitOutcome::NonSquareWitness:
        return "NonSquareWitness";
    case SplitOutcome::AllSamplesSquare:
        return "AllSamplesSquare";
    case SplitOutcome::Inconclusive:
        return "Inconclusive";
    }
    return "?";
}

LocalModel local_split_model(unsigned l)
{
    if (l == 0)
        fail(ErrorKind::InvalidArgument, "the local model needs l >= 1");
    const Field q;
    const UniPoly u = UniPoly::x(q);
    const UniPoly one = UniPoly::constant(q.one());
    // polynomials in v with coefficients in Q[u]
    std::vector<UniPoly> c1(l + 1, UniPoly(q)), c2(l + 1, UniPoly(q));
    c1[0] = u;
    c1[l] = -one;
    c2[0] = u;
    c2[l] = one;
    LocalModel m;
    m.factor1 = BiPoly(q, c1);
    m.factor2 = BiPoly(q, c2);
    std::vector<UniPoly> prod(2 * l + 1, UniPoly(q));
    prod[0] = u * u;
    prod[2 * l] = -one;
    m.product_ok = m.factor1 * m.factor2 == BiPoly(q, prod);
    const auto mult = mult_at_point(m.factor1, m.factor2, q.zero(), q.zero());
    DPLANE_ASSERT(mult.has_value(), "local branches share a component");
    m.local_mult = *mult;
    return m;
}

UniPoly pull_back(const TriForm& f, const std::array<UniPoly, 3>& x)
{
    const Field& k = x[0].field();
    const unsigned d = f.degree();
    std::array<std::vector<UniPoly>, 3> pw;
    for (std::size_t i = 0; i < 3; ++i) {
        pw[i].push_back(UniPoly::constant(k.one()));
        for (unsigned e = 1; e <= d; ++e)
            pw[i].push_back(pw[i].back() * x[i]);
    }
    const Embedding emb = embed_into(f.field(), k);
    UniPoly r(k);
    for (const auto& [m, c] : f.terms())
        r += (pw[0][m[0]] * pw[1][m[1]] * pw[2][m[2]]).scaled(emb(c));
    return r;
}

namespace {

struct Param {
    std::array<UniPoly, 3> x; // coordinates as polynomials in s (t = 1)
    unsigned degree = 1;      // as binary forms
    // coordinates at the parameter (1:0)
    std::array<Elem, 3> at_infinity;
};

Param line_param(const TriForm& l)
{
    const Field& k = l.field();
    const Elem a = l.coeff({1, 0, 0}), b = l.coeff({0, 1, 0}), c = l.coeff({0, 0, 1});
    std::array<Elem, 3> p0, p1;
    if (!c.is_zero()) {
        p0 = {k.one(), k.zero(), -a / c};
        p1 = {k.zero(), k.one(), -b / c};
    } else if (!b.is_zero()) {
        p0 = {k.one(), -a / b, k.zero()};
        p1 = {k.zero(), k.zero(), k.one()};
    } else {
        p0 = {k.zero(), k.one(), k.zero()};
        p1 = {k.zero(), k.zero(), k.one()};
    }
    Param p;
    for (std::size_t i = 0; i < 3; ++i)
        p.x[i] = UniPoly(k, {p1[i], p0[i]});
    p.degree = 1;
    p.at_infinity = p0;
    return p;
}

std::optional<ProjPoint> rational_point(const TriForm& q)
{
    const Field& k = q.field();
    if (!k.is_finite()) {
        for (long h = 1; h <= 12; ++h)
            for (long a = -h; a <= h; ++a)
                for (long b = -h; b <= h; ++b)
                    for (long c = -h; c <= h; ++c) {
                        if (std::max({std::labs(a), std::labs(b), std::labs(c)}) != h)
                            continue;
                        std::array<Elem, 3> v = {k.from_int(a), k.from_int(b), k.from_int(c)};
                        if (q.eval(v).is_zero())
                            return ProjPoint(v);
                    }
        return std::nullopt;
    }
    std::optional<ProjPoint> best;
    auto consider = [&](const ProjPoint& p) {
        if (!best || p.compare(*best) < 0)
            best = p;
    };
    if (q.coeff({0, 0, 2}).is_zero())
        consider(ProjPoint({k.zero(), k.zero(), k.one()}));
    // points (0:1:z)
    {
        UniPoly r(k, {q.coeff({0, 2, 0}), q.coeff({0, 1, 1}), q.coeff({0, 0, 2})});
        if (r.degree() >= 1)
            for (const Elem& z : roots(r))
                consider(ProjPoint({k.zero(), k.one(), z}));
    }
    if (best)
        return best;
    const std::uint64_t n = k.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        const Elem y = k.element_at(i);
        // q(1, y, z) as a polynomial in z
        UniPoly r(k, {q.coeff({2, 0, 0}) + q.coeff({1, 1, 0}) * y + q.coeff({0, 2, 0}) * y * y,
                      q.coeff({1, 0, 1}) + q.coeff({0, 1, 1}) * y, q.coeff({0, 0, 2})});
        if (r.is_zero())
            return ProjPoint({k.one(), y, k.zero()});
        if (r.degree() >= 1)
            for (const Elem& z : roots(r))
                consider(ProjPoint({k.one(), y, z}));
        if (best)
            return best;
    }
    return best;
}

Param conic_param(const TriForm& q, const ProjPoint& p0)
{
    const Field& k = q.field();
    std::size_t i0 = 0;
    while (p0[i0].is_zero())
        ++i0;
    const std::size_t j = i0 == 0 ? 1 : 0, l = i0 == 2 ? 1 : 2;
    std::array<Elem, 3> u{k.zero(), k.zero(), k.zero()}, v{k.zero(), k.zero(), k.zero()};
    u[j] = k.one();
    v[l] = k.one();
    std::array<UniPoly, 3> r;
    for (std::size_t i = 0; i < 3; ++i)
        r[i] = UniPoly(k, {v[i], u[i]});
    std::array<Elem, 3> grad;
    for (int i = 0; i < 3; ++i)
        grad[static_cast<std::size_t>(i)] = q.partial(i).eval(p0.coords());
    const UniPoly qr = pull_back(q, r);
    const UniPoly lin = r[0].scaled(grad[0]) + r[1].scaled(grad[1]) + r[2].scaled(grad[2]);
    Param p;
    for (std::size_t i = 0; i < 3; ++i)
        p.x[i] = qr.scaled(p0[i]) - lin * r[i];
    p.degree = 2;
    for (std::size_t i = 0; i < 3; ++i)
        p.at_infinity[i] = p.x[i].coeff(2);
    return p;
}

std::array<Elem, 3> eval_param(const Param& p, const Elem& s, const Embedding& e)
{
    std::array<Elem, 3> out;
    for (std::size_t i = 0; i < 3; ++i)
        out[i] = p.x[i].map(e).eval(s);
    return out;
}

bool nonzero(const std::array<Elem, 3>& v) { return !(v[0].is_zero() && v[1].is_zero() && v[2].is_zero()); }

// Search the parametrized curve for a place with nonsquare branch value.
void find_witness(const TriForm& fb, const Param& par, std::uint64_t seed, SplitReport& rep)
{
    const Field& k = fb.field();
    auto test = [&](const std::array<Elem, 3>& v) {
        if (!nonzero(v))
            return false;
        const ProjPoint p(v);
        const Elem val = eval_at(fb, p);
        if (val.is_zero() || is_square(val))
            return false;
        rep.witness = p;
        rep.witness_value = val;
        rep.witness_degree = orbit_of(p, k).size;
        return true;
    };
    if (!k.is_finite()) {
        if (test(par.at_infinity))
            return;
        for (long n = 0; n <= 200; ++n)
            for (long sg : {1L, -1L})
                if (test(eval_param(par, k.from_int(sg * n), Embedding::identity(k))))
                    return;
        return;
    }
    if (test(par.at_infinity))
        return;
    const Embedding id = Embedding::identity(k);
    const std::uint64_t n = std::min<std::uint64_t>(k.size(), 4096);
    for (std::uint64_t i = 0; i < n; ++i)
        if (test(eval_param(par, k.element_at(i), id)))
            return;
    // odd-degree extension keeps nonsquare constants nonsquare
    const Field big = Field::canonical_extension(k.characteristic(), k.degree() * 3);
    const Embedding e = embed_into(k, big);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 400; ++i)
        if (test(eval_param(par, big.random(rng), e)))
            return;
}

} // namespace

SplitReport split_exact_parametrized(const PlaneCurve& b, const PlaneCurve& c, std::uint64_t seed)
{
    if (b.degree() != 2 * c.degree())
        fail(ErrorKind::DegreeMismatch,
             "deg B = " + std::to_string(b.degree()) + " but deg C = " + std::to_string(c.degree()));
    if (c.degree() > 2)
        fail(ErrorKind::InvalidArgument, "the exact split test needs a line or a conic");
    if (c.field().characteristic() == 2)
        fail(ErrorKind::BadCharacteristic, "double covers need characteristic != 2");
    const Field& k = c.field();
    SplitReport rep;
    rep.mode = SplitMode::ExactParametrized;
    rep.seed = seed;
    rep.field = k;
    Param par;
    if (c.degree() == 1) {
        par = line_param(c.form());
    } else {
        if (is_smooth(c).verdict != SmoothVerdict::Smooth)
            fail(ErrorKind::CNotSmooth, "the conic " + c.str() + " is singular");
        auto p0 = rational_point(c.form());
        if (!p0)
            fail(ErrorKind::NoRationalPoint, "no rational point on " + c.str() + " over " + k.name());
        par = conic_param(c.form(), *p0);
        rep.note = "parametrized from " + p0->str();
    }
    rep.pullback = pull_back(b.form(), par.x);
    rep.pullback_form_degree = b.degree() * par.degree;
    if (rep.pullback.is_zero())
        fail(ErrorKind::CommonComponent, "C is a component of B");
    rep.samples = 1;
    rep.root = poly_sqrt(rep.pullback);
    if (rep.root) {
        rep.outcome = is_square(rep.root->c) ? SplitOutcome::RationalSplit : SplitOutcome::SplitAfterQuadraticConstantTwist;
        return rep;
    }
    for (const auto& fe : squarefree_decomposition(rep.pullback))
        if (fe.mult % 2 == 1)
            rep.odd_strata.push_back({fe.mult, static_cast<unsigned>(fe.factor.degree())});
    const unsigned deficit = rep.pullback_form_degree - static_cast<unsigned>(rep.pullback.degree());
    if (deficit % 2 == 1)
        rep.odd_strata.push_back({deficit, 1});
    std::sort(rep.odd_strata.begin(), rep.odd_strata.end());
    find_witness(b.form(), par, seed, rep);
    rep.outcome = rep.witness ? SplitOutcome::NonSquareWitness : SplitOutcome::Inconclusive;
    if (!rep.witness)
        rep.note = "restricted branch form is not a constant times a square, but no nonsquare value was found";
    return rep;
}

SplitReport split_monte_carlo(const PlaneCurve& b, const PlaneCurve& c, unsigned n_samples, std::uint64_t seed,
                              bool include_even)
{
    const Field& k = c.field();
    if (!k.is_finite())
        fail(ErrorKind::FieldNotFinite, "Monte Carlo split test needs a finite field");
    if (b.degree() != 2 * c.degree())
        fail(ErrorKind::DegreeMismatch,
             "deg B = " + std::to_string(b.degree()) + " but deg C = " + std::to_string(c.degree()));
    SplitReport rep;
    rep.mode = SplitMode::MonteCarlo;
    rep.seed = seed;
    rep.field = k;
    if (n_samples == 0)
        return rep;
    std::mt19937_64 rng(seed);
    const unsigned max_draws = 50 * n_samples + 200;
    for (unsigned draw = 0; draw < max_draws && rep.samples < n_samples; ++draw) {
        SampledPoint sp;
        try {
            sp = sample_point(c, &b, rng(), 16);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ExhaustedAttempts)
                continue;
            throw;
        }
        if (!include_even && sp.residue_degree % 2 == 0) {
            ++rep.discarded_even;
            continue;
        }
        ++rep.samples;
        // the first nonzero coordinate is 1, and B has even degree, so the class is chart-free
        const Elem val = eval_at(b.form(), sp.point);
        if (!is_square(val)) {
            rep.outcome = SplitOutcome::NonSquareWitness;
            rep.witness = sp.point;
            rep.witness_value = val;
            rep.witness_degree = sp.residue_degree;
            return rep;
        }
    }
    if (rep.samples == 0)
        fail(ErrorKind::ZeroSamplesPossible, "no usable place of C off B over " + k.name());
    rep.outcome = SplitOutcome::AllSamplesSquare;
    rep.note = "consistent with a split preimage at heuristic confidence 1 - 2^-" + std::to_string(rep.samples);
    return rep;
}

} // namespace dplane
