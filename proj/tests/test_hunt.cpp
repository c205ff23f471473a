#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"

using namespace dplane;
using namespace testing;

namespace {

const Field& f5()
{
    static const Field f = Field::prime(5);
    return f;
}

const PlaneCurve& quartic()
{
    static const PlaneCurve b = curve("x^4 - y^4 - z^4", f5());
    return b;
}

// the enumeration is the slow part, so every case shares one run
const std::vector<TangentConicRecord>& records()
{
    static const std::vector<TangentConicRecord> r = enumerate_tangent_conics(quartic(), {false, 2, 0});
    return r;
}

const FamilyPartition& partition()
{
    static const FamilyPartition p = classify_families(records(), quartic());
    return p;
}

std::set<std::set<std::string>> as_sets(const FamilyPartition& p)
{
    std::set<std::set<std::string>> out;
    for (const auto& fam : p.families) {
        std::set<std::string> s;
        for (const auto& r : fam)
            s.insert(r.conic.str());
        out.insert(s);
    }
    return out;
}

} // namespace

TEST_CASE("every tangent conic re-certifies")
{
    REQUIRE_FALSE(records().empty());
    for (const auto& r : records()) {
        const UlrichCertificate c = ulrich_criterion(quartic(), r.conic, 3);
        CHECK(c.verdict == Verdict::Exists);
        CHECK(c.d_sigma_d == 4u);
        unsigned half = 0;
        for (const auto& h : r.half_divisor)
            half += h.mult * h.point.residue_degree;
        CHECK(half == 4);
        CHECK(is_smooth(r.conic).verdict == SmoothVerdict::Smooth);
    }
}

TEST_CASE("enumeration is complete against a direct scan")
{
    // scan the conics through (1:0:1) directly, with no prefilter
    std::size_t direct = 0;
    const ProjPoint p = point(f5(), 1, 0, 1);
    std::mt19937_64 rng(81);
    std::vector<TriForm> seen;
    for (int i = 0; i < 3000; ++i) {
        const TriForm t = random_form(f5(), 2, rng);
        if (t.is_zero() || !eval_at(t, p).is_zero())
            continue;
        const PlaneCurve c(t);
        try {
            if (is_smooth(c).verdict != SmoothVerdict::Smooth)
                continue;
        } catch (const Error&) {
            continue;
        }
        if (std::find(seen.begin(), seen.end(), c.form()) != seen.end())
            continue;
        seen.push_back(c.form());
        if (ulrich_criterion(quartic(), c, 0).verdict != Verdict::Exists)
            continue;
        ++direct;
        const bool listed = std::any_of(records().begin(), records().end(),
                                        [&](const TangentConicRecord& r) { return r.conic == c; });
        CHECK(listed);
    }
    CHECK(direct > 0);
}

TEST_CASE("hunt is stable across seeds and shard counts")
{
    for (unsigned shards : {1u, 3u}) {
        HuntStats stats;
        const auto r = enumerate_tangent_conics(quartic(), {false, shards, 7 + shards}, &stats);
        REQUIRE(r.size() == records().size());
        for (std::size_t i = 0; i < r.size(); ++i)
            CHECK(r[i].conic == records()[i].conic);
        CHECK(stats.candidates == 3906);
        CHECK(stats.prefiltered >= r.size());
    }
}

TEST_CASE("family partition of the quartic")
{
    const FamilyPartition& p = partition();
    CHECK(p.count == p.families.size());
    CHECK(p.count <= 63);
    CHECK(p.count > 1);
    std::size_t total = 0;
    for (const auto& fam : p.families)
        total += fam.size();
    CHECK(total == records().size());
    CHECK(p.audited_triples > 0);
}

TEST_CASE("partition does not depend on enumeration order")
{
    std::vector<TangentConicRecord> shuffled = records();
    std::mt19937_64 rng(82);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(as_sets(classify_families(shuffled, quartic(), 5)) == as_sets(partition()));
}

TEST_CASE("same_family is reflexive and symmetric")
{
    const auto& r = records();
    for (std::size_t i = 0; i < r.size(); i += 7) {
        CHECK(same_family(r[i], r[i], quartic()));
        for (std::size_t j = i + 1; j < r.size(); j += 11)
            CHECK(same_family(r[i], r[j], quartic()) == same_family(r[j], r[i], quartic()));
    }
    // representatives of distinct families are never related
    const auto& fams = partition().families;
    for (std::size_t i = 0; i + 1 < fams.size(); ++i)
        CHECK_FALSE(same_family(fams[i].front(), fams[i + 1].front(), quartic()));
}

TEST_CASE("members of one squared family are linearly equivalent")
{
    const Field f13 = Field::prime(13);
    const InstanceBundle bundle = squared_construction(curve("x^2 - y^2 - z^2", f13), 3);
    const TriForm& c1 = bundle.c.form();
    const TriForm& q1 = *bundle.q;
    const TriForm& h1 = *bundle.h;
    const TangentConicRecord r1 = tangent_conic_record(bundle.b, bundle.c);
    unsigned checked = 0;
    for (long t = 1; t < 13 && checked < 4; ++t) {
        // B = (t C1 + Q1)^2 - C1 (t^2 C1 + 2 t Q1 + H1)
        const Elem e = f13.from_int(t);
        const TriForm ct = c1.scaled(e * e) + q1.scaled(e + e) + h1;
        if (ct.is_zero())
            continue;
        const PlaneCurve c(ct);
        try {
            if (is_smooth(c).verdict != SmoothVerdict::Smooth)
                continue;
        } catch (const Error&) {
            continue;
        }
        const TangentConicRecord rt = tangent_conic_record(bundle.b, c, 1);
        CHECK(same_family(r1, rt, bundle.b));
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("partition edge cases")
{
    const FamilyPartition empty = classify_families({}, quartic());
    CHECK(empty.count == 0);
    CHECK(empty.families.empty());
    const FamilyPartition one = classify_families({records().front()}, quartic());
    CHECK(one.count == 1);
}

TEST_CASE("hunt preconditions")
{
    CHECK(error_of([] { enumerate_tangent_conics(curve("x^4 - y^4 - z^4", Field::prime(101))); }) ==
          ErrorKind::FieldTooLarge);
    CHECK(error_of([] { enumerate_tangent_conics(curve("x^2*y^2 + y^2*z^2 + x^2*z^2", Field::prime(5))); }) ==
          ErrorKind::BNotSmooth);
    CHECK(error_of([] { enumerate_tangent_conics(curve("x*z - y^2", Field::prime(5))); }) ==
          ErrorKind::DegreeMismatch);
    CHECK(error_of([] { enumerate_tangent_conics(curve("x^4 - y^4 - z^4", Field())); }) == ErrorKind::FieldNotFinite);
    for (const char* c : {"x*z - y^2", "x*y + z^2", "x^2 + y^2 + 2*z^2", "x*y + y*z + z*x"}) {
        const PlaneCurve conic = curve(c, f5());
        if (ulrich_criterion(quartic(), conic, 0).verdict == Verdict::NotExists)
            CHECK(error_of([&] { tangent_conic_record(quartic(), conic); }) == ErrorKind::InvalidArgument);
        else
            CHECK(tangent_conic_record(quartic(), conic).half_divisor.size() > 0);
    }
    const PlaneCurve other = curve("x^4 + y^4 + z^4 + x*y*z^2", f5());
    CHECK(error_of([&] { same_family(records()[0], records()[1], other); }) == ErrorKind::DifferentBranchCurves);
}
