// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "dplane/hunt.hpp"

using namespace dplane;

namespace {

// golden values from the exhaustive F5 run
constexpr std::size_t kGoldenConics = 52;
constexpr std::size_t kGoldenFamilies = 14;

PlaneCurve fermat(const Field& f, unsigned d)
{
    TriForm t(f, d);
    t.set({d, 0, 0}, f.one());
    t.set({0, d, 0}, -f.one());
    t.set({0, 0, d}, -f.one());
    return PlaneCurve(t);
}

PlaneCurve parse(const char* s, const Field& f) { return PlaneCurve(TriForm::parse(s, f)); }

ProjPoint pt(const Field& f, long a, long b, long c) { return ProjPoint({f.from_int(a), f.from_int(b), f.from_int(c)}); }

bool smooth(const PlaneCurve& c)
{
    try {
        return is_smooth(c).verdict == SmoothVerdict::Smooth;
    } catch (const Error&) {
        return false;
    }
}

PlaneCurve random_smooth(const Field& f, unsigned d, std::mt19937_64& rng)
{
    for (;;) {
        const TriForm t = random_form(f, d, rng);
        if (t.is_zero())
            continue;
        PlaneCurve c(t);
        if (smooth(c))
            return c;
    }
}

struct Outcome {
    bool ok = false;
    std::string detail;
};

int failures = 0;

void run(int id, const char* name, double budget_s, const std::function<Outcome()>& fn)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const Error& e) {
        o = {false, std::string("threw ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) {
        o.ok = false;
        o.detail += " (over the " + std::to_string(static_cast<int>(budget_s)) + " s budget)";
    }
    if (!o.ok)
        ++failures;
    std::printf("%s %d %s [%.3f s] %s\n", o.ok ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
    std::fflush(stdout);
}

Outcome fermat_two()
{
    const Field f = Field::prime(13);
    const PlaneCurve b = fermat(f, 4), c = fermat(f, 2);
    if (!smooth(b) || !smooth(c))
        return {false, "a Fermat curve is singular"};
    const UlrichCertificate cert = ulrich_criterion(b, c, 0);
    const auto& s = cert.report.intersection;
    const std::vector<ProjPoint> want = {pt(f, 1, 0, 1), pt(f, 1, 0, 12), pt(f, 1, 1, 0), pt(f, 1, 12, 0)};
    bool ok = s.points.size() == 4 && s.total == 8;
    for (std::size_t i = 0; ok && i < 4; ++i)
        ok = s.points[i].rep == want[i] && s.points[i].multiplicity == 2 && s.points[i].residue_degree == 1;
    ok = ok && cert.verdict == Verdict::Exists && cert.d_sigma_d == 4u && cert.genus_d == 0u;
    return {ok, "points " + std::to_string(s.points.size()) + ", total " + std::to_string(s.total) +
                    ", d.sigma(d) " + std::to_string(cert.d_sigma_d.value_or(0))};
}

Outcome fermat_four()
{
    const Field f = Field::prime(17);
    const UlrichCertificate cert = ulrich_criterion(fermat(f, 8), fermat(f, 4), 0);
    unsigned geometric = 0;
    bool orders = true;
    for (const auto& p : cert.report.intersection.points) {
        geometric += p.residue_degree;
        orders = orders && p.multiplicity == 4;
    }
    const bool ok = geometric == 8 && orders && cert.report.total == 32 && cert.verdict == Verdict::Exists &&
                    cert.d_sigma_d == 16u && cert.genus_d == 3u;
    return {ok, "geometric points " + std::to_string(geometric) + ", total " + std::to_string(cert.report.total) +
                    ", genus " + std::to_string(cert.genus_d.value_or(0))};
}

Outcome dual_oracle()
{
    const Field f = Field::prime(13);
    std::mt19937_64 rng(2024);
    unsigned pairs = 0, points = 0, mismatches = 0;
    while (pairs < 200) {
        const unsigned d1 = 1 + static_cast<unsigned>(rng() % 4), d2 = 1 + static_cast<unsigned>(rng() % 4);
        const PlaneCurve a = random_smooth(f, d1, rng), b = random_smooth(f, d2, rng);
        IntersectionSet s;
        try {
            s = intersect(a, b, rng());
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::CommonComponent)
                continue;
            throw;
        }
        ++pairs;
        if (!bezout_check(s, d1, d2))
            ++mismatches;
        for (const auto& p : s.points) {
            ++points;
            const Embedding e = embed_into(f, p.rep.field());
            const auto m = mult_at_point(a.form().map(e), b.form().map(e), p.rep);
            if (!m || *m != p.multiplicity)
                ++mismatches;
        }
    }
    return {mismatches == 0,
            std::to_string(pairs) + " pairs, " + std::to_string(points) + " closed points, " +
                std::to_string(mismatches) + " disagreements"};
}

Outcome local_model()
{
    std::string detail;
    bool ok = true;
    for (unsigned l = 1; l <= 6; ++l) {
        const LocalModel m = local_split_model(l);
        ok = ok && m.product_ok && m.local_mult == l;
        detail += std::to_string(m.local_mult) + (l < 6 ? "," : "");
    }
    return {ok, "multiplicities " + detail};
}

Outcome squared()
{
    const Field f = Field::prime(13);
    const char* bases[] = {"x", "x^2 - y^2 - z^2", "x^3 - y^3 - z^3"};
    std::string detail;
    bool ok = true;
    for (unsigned s = 1; s <= 3; ++s) {
        const PlaneCurve c = parse(bases[s - 1], f);
        unsigned good = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            try {
                const InstanceBundle b = squared_construction(c, seed, 50);
                const bool cert = smooth(b.b) && ulrich_criterion(b.b, b.c, seed).verdict == Verdict::Exists;
                const bool split = split_monte_carlo(b.b, b.c, 40, seed).outcome == SplitOutcome::AllSamplesSquare;
                good += cert && split ? 1 : 0;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::ExhaustedTries)
                    throw;
            }
        }
        ok = ok && good >= 9;
        detail += (s > 1 ? ", s=" : "s=") + std::to_string(s) + ": " + std::to_string(good) + "/10";
    }
    return {ok, detail};
}

Outcome tangent_lines()
{
    unsigned instances = 0, bad = 0;
    std::mt19937_64 rng(6);
    for (const Field& f : {Field::prime(13), Field::parse("F13^2")}) {
        const PlaneCurve conic = parse("x*z - y^2", f);
        unsigned got = 0;
        for (unsigned tries = 0; got < 20 && tries < 500; ++tries) {
            const SampledPoint sp = sample_point(conic, nullptr, rng());
            if (sp.residue_degree != 1)
                continue;
            ++got;
            const InstanceBundle b = tangent_line_instance(conic, sp.point, rng());
            const auto& recs = b.certificate.report.records;
            const bool cert =
                b.certificate.verdict == Verdict::Exists && recs.size() == 1 && recs[0].order == 2;
            const SplitOutcome o = split_exact_parametrized(b.b, b.c, rng()).outcome;
            const bool split = o == SplitOutcome::RationalSplit || o == SplitOutcome::SplitAfterQuadraticConstantTwist;
            bad += cert && split ? 0 : 1;
        }
        instances += got;
    }
    return {instances == 40 && bad == 0, std::to_string(instances) + " instances, " + std::to_string(bad) + " failures"};
}

Outcome hunt()
{
    const Field f = Field::prime(5);
    const PlaneCurve b = fermat(f, 4);
    if (!smooth(b))
        return {false, "quartic singular over F5"};
    HuntStats stats;
    const auto records = enumerate_tangent_conics(b, {false, 1, 0}, &stats);
    for (const auto& r : records) {
        const UlrichCertificate c = ulrich_criterion(b, r.conic, 11);
        if (c.verdict != Verdict::Exists || c.d_sigma_d != 4u)
            return {false, r.conic.str() + " does not re-certify"};
    }
    const FamilyPartition p = classify_families(records, b);
    bool stable = true;
    for (auto [seed, shards] : {std::pair<std::uint64_t, unsigned>{7, 3}, {123, 2}}) {
        const auto again = enumerate_tangent_conics(b, {false, shards, seed});
        stable = stable && again.size() == records.size() &&
                 classify_families(again, b, seed).count == p.count;
    }
    const bool ok = stable && p.count <= 63 && records.size() == kGoldenConics && p.count == kGoldenFamilies;
    return {ok, std::to_string(stats.candidates) + " conics, " + std::to_string(records.size()) +
                    " tangent, " + std::to_string(p.count) + " families, " + std::to_string(p.audited_triples) +
                    " audited triples" + (stable ? "" : ", unstable")};
}

Outcome negative_control()
{
    const Field f = Field::prime(13);
    std::mt19937_64 rng(8);
    unsigned exists = 0, unexplained = 0;
    for (int i = 0; i < 100; ++i) {
        const PlaneCurve b = random_smooth(f, 6, rng), c = random_smooth(f, 3, rng);
        const std::uint64_t seed = rng();
        if (ulrich_criterion(b, c, seed).verdict != Verdict::Exists)
            continue;
        ++exists;
        const SplitOutcome o = split_monte_carlo(b, c, 40, seed).outcome;
        if (o != SplitOutcome::AllSamplesSquare)
            ++unexplained;
        std::printf("  review: B = %s, C = %s\n", b.str().c_str(), c.str().c_str());
    }
    return {unexplained == 0, std::to_string(exists) + " Exists verdicts in 100 pairs" +
                                  (exists ? ", flagged for review" : "")};
}

Outcome rational_consistency()
{
    std::string detail;
    bool ok = true;
    for (unsigned s : {2u, 4u}) {
        const UlrichCertificate q = ulrich_criterion(fermat(Field(), 2 * s), fermat(Field(), s), 0);
        ok = ok && q.parity_only;
        detail += (s > 2 ? "; s=" : "s=") + std::to_string(s) + " Q:" + to_string(q.verdict);
        for (std::uint64_t p : {13, 17, 29}) {
            const Field f = Field::prime(p);
            const Verdict v = ulrich_criterion(fermat(f, 2 * s), fermat(f, s), 0).verdict;
            ok = ok && v == q.verdict;
            detail += " F" + std::to_string(p) + ":" + to_string(v);
        }
    }
    return {ok, detail};
}

} // namespace

int main()
{
    run(1, "Fermat s=2 over F13", 1, fermat_two);
    run(2, "Fermat s=4 over F17", 5, fermat_four);
    run(3, "resultant and local recursion agree", 60, dual_oracle);
    run(4, "local split model l=1..6", 1, local_model);
    run(5, "squared construction s=1..3", 120, squared);
    run(6, "tangent lines to a conic", 30, tangent_lines);
    run(7, "tangent conics to the F5 Fermat quartic", 120, hunt);
    run(8, "random sextic and cubic pairs", 120, negative_control);
    run(9, "rational parity against reductions", 10, rational_consistency);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
