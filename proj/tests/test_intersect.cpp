#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"

using namespace dplane;
using namespace testing;

namespace {

std::vector<std::pair<unsigned, unsigned>> profile(const IntersectionSet& s)
{
    std::vector<std::pair<unsigned, unsigned>> v;
    for (const auto& p : s.points)
        v.emplace_back(p.residue_degree, p.multiplicity);
    std::sort(v.begin(), v.end());
    return v;
}

BiPoly affine(const Field& f, std::initializer_list<std::initializer_list<long>> rows)
{
    // rows[j] lists the x-coefficients of y^j
    std::vector<UniPoly> c;
    for (auto r : rows)
        c.push_back(UniPoly::from_ints(f, r));
    return BiPoly(f, std::move(c));
}

} // namespace

TEST_CASE("intersection examples")
{
    const Field q;
    const auto a = intersect(curve("x*z - y^2", q), curve("z", q), 0);
    REQUIRE(a.points.size() == 1);
    CHECK(a.points[0].rep == point(q, 1, 0, 0));
    CHECK(a.points[0].multiplicity == 2);
    CHECK(a.total == 2);

    const Field f13 = Field::prime(13);
    const auto b = intersect(curve("x^4 - y^4 - z^4", f13), curve("x^2 - y^2 - z^2", f13), 0);
    REQUIRE(b.points.size() == 4);
    std::vector<ProjPoint> want = {point(f13, 1, 0, 1), point(f13, 1, 0, 12), point(f13, 1, 1, 0), point(f13, 1, 12, 0)};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(b.points[i].rep == want[i]);
        CHECK(b.points[i].multiplicity == 2);
        CHECK(b.points[i].residue_degree == 1);
    }
    CHECK(b.total == 8);

    const auto c = intersect(curve("x", f13), curve("y", f13), 0);
    REQUIRE(c.points.size() == 1);
    CHECK(c.points[0].rep == point(f13, 0, 0, 1));
    CHECK(c.points[0].multiplicity == 1);
}

TEST_CASE("common components are rejected")
{
    const Field f13 = Field::prime(13);
    CHECK(error_of([&] { intersect(curve("x*y", f13), curve("x*z", f13), 0); }) == ErrorKind::CommonComponent);
    CHECK(error_of([&] { intersect(curve("x*y", Field()), curve("x^2 + x*z", Field()), 0); }) ==
          ErrorKind::CommonComponent);
}

TEST_CASE("local multiplicity examples")
{
    const Field q;
    // u - v^3 and u + v^3, with u = x and v = y
    CHECK(mult_at_point(affine(q, {{0, 1}, {}, {}, {-1}}), affine(q, {{0, 1}, {}, {}, {1}}), q.zero(), q.zero()) == 3u);
    // y and y - x^2
    CHECK(mult_at_point(affine(q, {{}, {1}}), affine(q, {{0, 0, -1}, {1}}), q.zero(), q.zero()) == 2u);
    // x and y
    CHECK(mult_at_point(affine(q, {{0, 1}}), affine(q, {{}, {1}}), q.zero(), q.zero()) == 1u);
    // off either curve
    CHECK(mult_at_point(affine(q, {{1, 1}}), affine(q, {{}, {1}}), q.zero(), q.zero()) == 0u);
    // common component through the point
    CHECK_FALSE(mult_at_point(affine(q, {{}, {1}}), affine(q, {{}, {0, 1}}), q.zero(), q.zero()).has_value());
    // the cusp y^2 = x^3 against its tangent y = 0, then both moved to (2, 3)
    const BiPoly cusp = affine(q, {{0, 0, 0, -1}, {}, {1}});
    CHECK(mult_at_point(cusp, affine(q, {{}, {1}}), q.zero(), q.zero()) == 3u);
    // (y - 3)^2 - (x - 2)^3 and y - 3
    const BiPoly moved = affine(q, {{17, -12, 6, -1}, {-6}, {1}});
    CHECK(mult_at_point(moved, affine(q, {{-3}, {1}}), q.from_int(2), q.from_int(3)) == 3u);
}

TEST_CASE("Bezout check")
{
    const Field f13 = Field::prime(13);
    const auto a = intersect(curve("x*z - y^2", f13), curve("z", f13), 0);
    CHECK(bezout_check(a, 2, 1));
    const auto b = intersect(curve("x^4 - y^4 - z^4", f13), curve("x^2 - y^2 - z^2", f13), 0);
    CHECK(bezout_check(b, 4, 2));
    CHECK_FALSE(bezout_check(b, 4, 3));
    CHECK(bezout_check(intersect(curve("x", f13), curve("y", f13), 0), 1, 1));
}

TEST_CASE("random pairs: Bezout and agreement with the local recursion")
{
    std::mt19937_64 rng(41);
    const Field f = Field::prime(13);
    for (int i = 0; i < 40; ++i) {
        const unsigned d1 = 1 + static_cast<unsigned>(rng() % 4), d2 = 1 + static_cast<unsigned>(rng() % 4);
        const PlaneCurve a = random_smooth_curve(f, d1, rng), b = random_smooth_curve(f, d2, rng);
        IntersectionSet s;
        try {
            s = intersect(a, b, rng());
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::CommonComponent);
            continue;
        }
        CHECK(s.total == d1 * d2);
        for (const auto& p : s.points) {
            const Embedding e = embed_into(f, p.rep.field());
            const auto m = mult_at_point(a.form().map(e), b.form().map(e), p.rep);
            REQUIRE(m.has_value());
            CHECK(*m == p.multiplicity);
            CHECK(eval_at(a.form(), p.rep).is_zero());
            CHECK(eval_at(b.form(), p.rep).is_zero());
        }
    }
}

TEST_CASE("intersection is symmetric and coordinate invariant")
{
    std::mt19937_64 rng(42);
    const Field f = Field::prime(13);
    for (int i = 0; i < 15; ++i) {
        const PlaneCurve a = random_smooth_curve(f, 2 + static_cast<unsigned>(i % 3), rng);
        const PlaneCurve b = random_smooth_curve(f, 1 + static_cast<unsigned>(i % 2), rng);
        const auto ab = intersect(a, b, 1), ba = intersect(b, a, 2);
        CHECK(profile(ab) == profile(ba));
        CHECK(ab.total == ba.total);
        const CoordChange t = CoordChange::random(f, rng);
        const auto moved = intersect(apply_change(a, t), apply_change(b, t), 3);
        CHECK(profile(moved) == profile(ab));
    }
}

TEST_CASE("multiplicity one exactly when tangent lines differ")
{
    std::mt19937_64 rng(43);
    const Field f = Field::prime(13);
    unsigned tangent_seen = 0;
    for (int i = 0; i < 30; ++i) {
        const PlaneCurve a = random_smooth_curve(f, 2, rng);
        // half of the partners are tangent lines at a sampled point
        PlaneCurve b = random_smooth_curve(f, 1 + static_cast<unsigned>(i % 3), rng);
        if (i % 2 == 0) {
            const SampledPoint sp = sample_point(a, nullptr, rng());
            if (sp.residue_degree == 1)
                b = tangent_line(a, sp.point);
        }
        const auto s = intersect(a, b, rng());
        for (const auto& p : s.points) {
            const Embedding e = embed_into(f, p.rep.field());
            const PlaneCurve ae(a.form().map(e)), be(b.form().map(e));
            const bool transversal = !(tangent_line(ae, p.rep) == tangent_line(be, p.rep));
            CHECK((p.multiplicity == 1) == transversal);
            tangent_seen += transversal ? 0 : 1;
        }
    }
    CHECK(tangent_seen > 0);
}

TEST_CASE("rational mode keeps parity strata")
{
    const Field q;
    const auto s = intersect(curve("x^4 - y^4 - z^4", q), curve("x^2 - y^2 - z^2", q), 0);
    CHECK(s.parity_only);
    REQUIRE(s.strata.size() == 1);
    CHECK(s.strata[0].exponent == 2);
    CHECK(s.strata[0].degree == 4);
    CHECK(s.points.size() == 4);
    CHECK(s.changes.size() == 3);
    // x^2 + y^2 - 2z^2 against x: two conjugate points with irrational coordinates
    const auto t = intersect(curve("x^2 + y^2 - 3*z^2", q), curve("x", q), 0);
    CHECK(t.points.empty());
    REQUIRE(t.strata.size() == 1);
    CHECK(t.strata[0].exponent == 1);
    CHECK(t.strata[0].degree == 2);
}

TEST_CASE("small fields fall back to extensions")
{
    // over F3 every line through few points may be bad; the result must still be exact
    const Field f3 = Field::prime(3);
    std::mt19937_64 rng(44);
    for (int i = 0; i < 10; ++i) {
        const PlaneCurve a = random_smooth_curve(f3, 2, rng), b = random_smooth_curve(f3, 2, rng);
        try {
            const auto s = intersect(a, b, rng());
            CHECK(s.total == 4);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::CommonComponent);
        }
    }
}
