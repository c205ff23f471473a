#include "dplane/hunt.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <thread>

namespace dplane {

namespace {

// ---------------------------------------------------------------- enumeration

TriForm conic_at(const Field& k, std::uint64_t index)
{
    // index runs over coefficient vectors whose first nonzero entry is 1
    const std::uint64_t q = k.size();
    const auto mons = monomials(2);
    for (std::size_t lead = 0; lead < 6; ++lead) {
        std::uint64_t block = 1;
        for (std::size_t i = lead + 1; i < 6; ++i)
            block *= q;
        if (index >= block) {
            index -= block;
            continue;
        }
        TriForm f(k, 2);
        f.set(mons[lead], k.one());
        for (std::size_t i = 6; i-- > lead + 1;) {
            f.set(mons[i], k.element_at(index % q));
            index /= q;
        }
        return f;
    }
    fail(ErrorKind::Internal, "conic index out of range");
}

bool form_less(const TriForm& a, const TriForm& b)
{
    for (const auto& m : monomials(a.degree())) {
        auto c = a.coeff(m).compare(b.coeff(m));
        if (c != 0)
            return c < 0;
    }
    return false;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t i)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

bool smooth_conic(const TriForm& f)
{
    // half the determinant of the Hessian matrix
    const Elem a = f.coeff({2, 0, 0}), b = f.coeff({1, 1, 0}), c = f.coeff({1, 0, 1});
    const Elem d = f.coeff({0, 2, 0}), e = f.coeff({0, 1, 1}), g = f.coeff({0, 0, 2});
    const Elem four = f.field().from_int(4);
    return !(four * a * d * g + b * e * c - a * e * e - d * c * c - g * b * b).is_zero();
}

struct Prefilter {
    CoordChange t;
    BiPoly b; // B o t at y = 1
};

Prefilter make_prefilter(const PlaneCurve& b)
{
    std::mt19937_64 rng(0x68756e74ULL);
    for (;;) {
        CoordChange t = CoordChange::random(b.field(), rng);
        TriForm bp = b.form().substitute(t.matrix());
        if (!bp.coeff({0, 0, b.degree()}).is_zero())
            return {t, bp.slice(1, 2)};
    }
}

// False when some resultant root has odd exponent, which rules out all-even tangency.
bool may_be_even(const Prefilter& pf, const TriForm& conic, unsigned total)
{
    const TriForm cp = conic.substitute(pf.t.matrix());
    if (cp.coeff({0, 0, 2}).is_zero())
        return true;
    const UniPoly r = resultant(pf.b, cp.slice(1, 2));
    if (r.is_zero())
        return true;
    if ((total - static_cast<unsigned>(r.degree())) % 2 == 1)
        return false;
    for (const auto& fe : squarefree_decomposition(r))
        if (fe.mult % 2 == 1)
            return false;
    return true;
}

TangentConicRecord make_record(const PlaneCurve& b, const PlaneCurve& conic, TangencyReport report)
{
    TangentConicRecord rec{b, conic, std::move(report), {}};
    for (const auto& r : rec.report.records)
        rec.half_divisor.push_back({r.point, r.order / 2});
    return rec;
}

} // namespace

TangentConicRecord tangent_conic_record(const PlaneCurve& b, const PlaneCurve& conic, std::uint64_t seed)
{
    if (conic.degree() != 2 || b.degree() != 4)
        fail(ErrorKind::DegreeMismatch, "tangent conic records need a quartic and a conic");
    UlrichCertificate cert = ulrich_criterion(b, conic, seed);
    if (cert.verdict != Verdict::Exists)
        fail(ErrorKind::InvalidArgument, conic.str() + " meets B with an odd order");
    return make_record(b, conic, std::move(cert.report));
}

std::vector<TangentConicRecord> enumerate_tangent_conics(const PlaneCurve& b, const HuntOptions& opt, HuntStats* stats)
{
    const Field& k = b.field();
    if (b.degree() != 4)
        fail(ErrorKind::DegreeMismatch, "the hunt needs a quartic, got degree " + std::to_string(b.degree()));
    if (!k.is_finite())
        fail(ErrorKind::FieldNotFinite, "the hunt enumerates conics over a finite field");
    if (k.order() > 31 && !opt.allow_large)
        fail(ErrorKind::FieldTooLarge, k.name() + " has more than 31 elements; pass the override to proceed");
    if (k.characteristic() == 2)
        fail(ErrorKind::BadCharacteristic, "double covers need characteristic != 2");
    if (is_smooth(b).verdict != SmoothVerdict::Smooth)
        fail(ErrorKind::BNotSmooth, "B = " + b.str() + " is singular");

    const std::uint64_t q = k.size();
    std::uint64_t count = 0;
    for (int i = 0; i < 6; ++i)
        count = count * q + 1;
    const Prefilter pf = make_prefilter(b);
    const unsigned shards = std::max(1u, opt.shards);

    struct ShardOut {
        std::vector<std::pair<std::uint64_t, TangentConicRecord>> found;
        HuntStats stats;
        std::exception_ptr err;
    };
    std::vector<ShardOut> outs(shards);
    auto work = [&](unsigned shard) {
        ShardOut& out = outs[shard];
        try {
            for (std::uint64_t idx = shard; idx < count; idx += shards) {
                ++out.stats.candidates;
                const TriForm f = conic_at(k, idx);
                const PlaneCurve conic(f);
                if (!smooth_conic(f))
                    continue;
                ++out.stats.smooth;
                if (!may_be_even(pf, f, 8))
                    continue;
                ++out.stats.prefiltered;
                UlrichCertificate cert = ulrich_criterion(b, conic, mix(opt.seed, idx));
                if (cert.verdict != Verdict::Exists)
                    continue;
                out.found.emplace_back(idx, make_record(b, conic, std::move(cert.report)));
            }
        } catch (...) {
            out.err = std::current_exception();
        }
    };
    if (shards == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned s = 0; s < shards; ++s)
            pool.emplace_back(work, s);
        for (auto& t : pool)
            t.join();
    }
    std::vector<std::pair<std::uint64_t, TangentConicRecord>> all;
    HuntStats total;
    for (auto& o : outs) {
        if (o.err)
            std::rethrow_exception(o.err);
        total.candidates += o.stats.candidates;
        total.smooth += o.stats.smooth;
        total.prefiltered += o.stats.prefiltered;
        for (auto& e : o.found)
            all.push_back(std::move(e));
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (stats)
        *stats = total;
    std::vector<TangentConicRecord> records;
    for (auto& e : all)
        records.push_back(std::move(e.second));
    return records;
}

// ---------------------------------------------------------------- family test

namespace {

UniPoly truncate(const UniPoly& u, unsigned n)
{
    if (u.degree() < static_cast<int>(n))
        return u;
    std::vector<Elem> v(u.coeffs().begin(), u.coeffs().begin() + n);
    return UniPoly(u.field(), std::move(v));
}

UniPoly series_inverse(const UniPoly& a, unsigned n)
{
    const Elem c0 = a.coeff(0).inv();
    // solve a * b = 1 term by term
    std::vector<Elem> b(n, a.field().zero());
    for (unsigned i = 0; i < n; ++i) {
        Elem s = i == 0 ? a.field().one() : a.field().zero();
        for (unsigned j = 1; j <= i; ++j)
            s -= a.coeff(j) * b[i - j];
        b[i] = s * c0;
    }
    return UniPoly(a.field(), std::move(b));
}

// g(u, phi(u)) mod u^n for g a polynomial in the main variable over coefficients in u.
UniPoly eval_series(const BiPoly& g, const UniPoly& phi, unsigned n)
{
    UniPoly acc(g.field());
    for (std::size_t j = g.coeffs().size(); j-- > 0;)
        acc = truncate(acc * phi + g.coeffs()[j], n);
    return acc;
}

BiPoly d_main(const BiPoly& g)
{
    std::vector<UniPoly> v;
    for (std::size_t j = 1; j < g.coeffs().size(); ++j)
        v.push_back(g.coeffs()[j].scaled(g.field().from_int(static_cast<long>(j))));
    return BiPoly(g.field(), std::move(v));
}

BiPoly translate(const BiPoly& g, const Elem& a, const Elem& b)
{
    const Field& f = g.field();
    BiPoly r(f);
    const BiPoly lin(f, {UniPoly::constant(b), UniPoly::constant(f.one())});
    const UniPoly xa(f, {a, f.one()});
    for (std::size_t j = g.coeffs().size(); j-- > 0;) {
        UniPoly s(f);
        const auto& c = g.coeffs()[j].coeffs();
        for (std::size_t i = c.size(); i-- > 0;)
            s = s * xa + UniPoly::constant(c[i]);
        r = r * lin + BiPoly(f, {s});
    }
    return r;
}

// F_p-rows expressing that a conic with coefficients in the base field vanishes to order m
// along B at the point.
std::vector<std::vector<std::uint64_t>> local_rows(const PlaneCurve& b, const ClosedPoint& cp, unsigned m)
{
    const ProjPoint& p = cp.rep;
    const Field& e = p.field();
    const Field& base = b.field();
    const unsigned ebase = base.degree();
    const unsigned kdeg = e.degree();
    const Embedding emb = embed_into(base, e);
    std::size_t i0 = 0;
    while (p[i0].is_zero())
        ++i0;
    const int one = static_cast<int>(i0);
    int cvar = one == 0 ? 1 : 0;
    int mvar = one == 2 ? 1 : 2;
    const TriForm be = b.form().map(emb);
    BiPoly f = translate(be.slice(one, mvar), p[static_cast<std::size_t>(cvar)], p[static_cast<std::size_t>(mvar)]);
    if (f.coeff(1).coeff(0).is_zero()) {
        std::swap(cvar, mvar);
        f = translate(be.slice(one, mvar), p[static_cast<std::size_t>(cvar)], p[static_cast<std::size_t>(mvar)]);
    }
    DPLANE_ASSERT(!f.coeff(1).coeff(0).is_zero(), "B is singular at a tangency point");
    // branch of B through the point: main = phi(u)
    UniPoly phi(e);
    const BiPoly fd = d_main(f);
    for (unsigned it = 0; it < m + 1; ++it) {
        const UniPoly num = eval_series(f, phi, m);
        if (num.is_zero())
            break;
        phi = truncate(phi - truncate(num * series_inverse(eval_series(fd, phi, m), m), m), m);
    }
    const auto mons = monomials(2);
    std::vector<UniPoly> ser;
    for (const auto& mo : mons) {
        const TriForm mu = TriForm::monomial(e.one(), mo);
        const BiPoly g = translate(mu.slice(one, mvar), p[static_cast<std::size_t>(cvar)], p[static_cast<std::size_t>(mvar)]);
        ser.push_back(eval_series(g, phi, m));
    }
    std::vector<Elem> basis;
    for (unsigned t = 0; t < ebase; ++t)
        basis.push_back(emb(base.generator().pow(static_cast<std::uint64_t>(t))));
    std::vector<std::vector<std::uint64_t>> rows;
    for (unsigned o = 0; o < m; ++o) {
        std::vector<std::vector<std::uint64_t>> block(kdeg, std::vector<std::uint64_t>(6 * ebase, 0));
        for (std::size_t i = 0; i < 6; ++i)
            for (unsigned t = 0; t < ebase; ++t) {
                const Elem v = ser[i].coeff(o) * basis[t];
                const auto& c = v.coeffs();
                for (unsigned kk = 0; kk < kdeg; ++kk)
                    block[kk][i * ebase + t] = kk < c.size() ? c[kk] : 0;
            }
        for (auto& r : block)
            rows.push_back(std::move(r));
    }
    return rows;
}

// Kernel basis of a matrix over F_p.
std::vector<std::vector<std::uint64_t>> kernel(std::vector<std::vector<std::uint64_t>> a, std::size_t ncols, std::uint64_t p)
{
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && a[piv][c] == 0)
            ++piv;
        if (piv == a.size())
            continue;
        std::swap(a[r], a[piv]);
        const std::uint64_t inv = fp::invmod(a[r][c], p);
        for (auto& x : a[r])
            x = fp::mulmod(x, inv, p);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            const std::uint64_t f = a[i][c];
            for (std::size_t j = 0; j < ncols; ++j)
                a[i][j] = (a[i][j] + p - fp::mulmod(f, a[r][j], p)) % p;
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivot_col)
        is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<std::uint64_t>> out;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<std::uint64_t> v(ncols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            v[static_cast<std::size_t>(pivot_col[i])] = (p - a[i][free]) % p;
        out.push_back(std::move(v));
    }
    return out;
}

using RowCache = std::map<std::pair<std::string, unsigned>, std::vector<std::vector<std::uint64_t>>>;

bool same_family_impl(const TangentConicRecord& r1, const TangentConicRecord& r2, const PlaneCurve& b, RowCache* cache)
{
    if (!(r1.branch == b) || !(r2.branch == b))
        fail(ErrorKind::DifferentBranchCurves, "records were computed against different branch curves");
    std::vector<HalfPoint> sum = r1.half_divisor;
    for (const auto& hp : r2.half_divisor) {
        auto it = std::find_if(sum.begin(), sum.end(), [&](const HalfPoint& x) { return same_orbit(x.point.rep, hp.point.rep, b.field()); });
        if (it != sum.end())
            it->mult += hp.mult;
        else
            sum.push_back(hp);
    }
    const Field& k = b.field();
    const std::uint64_t p = k.characteristic();
    const std::size_t ncols = 6 * k.degree();
    std::vector<std::vector<std::uint64_t>> rows;
    for (const auto& hp : sum) {
        std::vector<std::vector<std::uint64_t>> block;
        if (cache) {
            const auto key = std::make_pair(hp.point.rep.str(), hp.mult);
            auto it = cache->find(key);
            if (it == cache->end())
                it = cache->emplace(key, local_rows(b, hp.point, hp.mult)).first;
            block = it->second;
        } else {
            block = local_rows(b, hp.point, hp.mult);
        }
        rows.insert(rows.end(), block.begin(), block.end());
    }
    const auto ker = kernel(rows, ncols, p);
    if (ker.empty())
        return false;
    if (ker.size() > 1)
        fail(ErrorKind::Internal, "more than one conic through a degree-8 divisor on B");
    // rebuild the conic and confirm it cuts exactly the summed divisor
    TriForm qf(k, 2);
    const auto mons = monomials(2);
    const Elem gen = k.generator();
    for (std::size_t i = 0; i < 6; ++i) {
        Elem c = k.zero();
        for (unsigned t = 0; t < k.degree(); ++t)
            c += k.from_int(static_cast<long>(ker[0][i * k.degree() + t])) * gen.pow(static_cast<std::uint64_t>(t));
        qf.set(mons[i], c);
    }
    unsigned total = 0;
    for (const auto& hp : sum) {
        const auto mu = mult_at_point(b.form(), qf, hp.point.rep);
        if (!mu || *mu < hp.mult)
            fail(ErrorKind::OracleDisagreement, "interpolating conic misses the divisor at " + hp.point.rep.str());
        total += *mu * hp.point.residue_degree;
    }
    if (total != 2 * b.degree())
        fail(ErrorKind::OracleDisagreement, "interpolating conic meets B outside the divisor");
    return true;
}

} // namespace

bool same_family(const TangentConicRecord& r1, const TangentConicRecord& r2, const PlaneCurve& b)
{
    return same_family_impl(r1, r2, b, nullptr);
}

FamilyPartition classify_families(const std::vector<TangentConicRecord>& records, const PlaneCurve& b,
                                  std::uint64_t seed, std::size_t audit_triples)
{
    FamilyPartition out;
    const std::size_t n = records.size();
    if (n == 0)
        return out;
    // canonical processing order makes the partition independent of the input order
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t c) { return form_less(records[a].conic.form(), records[c].conic.form()); });
    RowCache cache;
    auto same = [&](std::size_t a, std::size_t c) {
        ++out.same_family_calls;
        return same_family_impl(records[a], records[c], b, &cache);
    };
    std::vector<std::size_t> reps;
    std::vector<std::size_t> fam(n);
    for (std::size_t i : order) {
        bool placed = false;
        for (std::size_t f = 0; f < reps.size(); ++f)
            if (same(i, reps[f])) {
                fam[i] = f;
                placed = true;
                break;
            }
        if (!placed) {
            fam[i] = reps.size();
            reps.push_back(i);
        }
    }
    // audit 1: every record matches exactly one representative
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t f = 0; f < reps.size(); ++f) {
            if (f == fam[i] || reps[f] == i)
                continue;
            if (same(i, reps[f]))
                fail(ErrorKind::TransitivityViolation, records[i].conic.str() + " matches two families");
        }
    // audit 2: sampled triples agree with the partition
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < audit_triples && n >= 2; ++t) {
        const std::size_t a = rng() % n, c = rng() % n, d = rng() % n;
        const bool ac = same(a, c), cd = same(c, d), ad = same(a, d);
        if ((ac && cd && !ad) || ac != (fam[a] == fam[c]) || cd != (fam[c] == fam[d]) || ad != (fam[a] == fam[d]))
            fail(ErrorKind::TransitivityViolation, "triple (" + records[a].conic.str() + "; " + records[c].conic.str() +
                                                      "; " + records[d].conic.str() + ") breaks transitivity");
        ++out.audited_triples;
    }
    out.families.resize(reps.size());
    for (std::size_t i : order)
        out.families[fam[i]].push_back(records[i]);
    out.count = out.families.size();
    if (out.count > 63)
        fail(ErrorKind::Internal, "more than 63 families");
    return out;
}

} // namespace dplane
