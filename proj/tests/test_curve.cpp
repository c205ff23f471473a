#include <doctest.h>

#include "helpers.hpp"

using namespace dplane;
using namespace testing;

TEST_CASE("curve construction")
{
    const Field f13 = Field::prime(13);
    CHECK(curve("x^4 - y^4 - z^4", f13).degree() == 4);
    CHECK(curve("x*z - y^2", Field()).degree() == 2);
    CHECK(error_of([&] { PlaneCurve(TriForm(f13, 3)); }) == ErrorKind::ZeroPolynomial);
    CHECK(curve("x*z - y^2", f13) == curve("3*x*z - 3*y^2", f13));
}

TEST_CASE("smoothness examples")
{
    const Field f13 = Field::prime(13);
    CHECK(is_smooth(curve("x^4 - y^4 - z^4", f13)).verdict == SmoothVerdict::Smooth);
    CHECK(is_smooth(curve("x*z - y^2", f13)).verdict == SmoothVerdict::Smooth);
    const auto cusp = is_smooth(curve("y^2*z - x^3", Field()));
    CHECK(cusp.verdict == SmoothVerdict::Singular);
    REQUIRE(cusp.singular.size() == 1);
    CHECK(cusp.singular[0].rep == point(Field(), 0, 0, 1));
}

TEST_CASE("Fermat curves are smooth away from bad characteristic")
{
    for (std::uint64_t p : {5, 13, 17})
        for (unsigned d : {2u, 4u, 6u, 8u}) {
            const Field f = Field::prime(p);
            TriForm t(f, d);
            t.set({d, 0, 0}, f.one());
            t.set({0, d, 0}, -f.one());
            t.set({0, 0, d}, -f.one());
            CHECK(is_smooth(PlaneCurve(t)).verdict == SmoothVerdict::Smooth);
        }
}

TEST_CASE("smoothness preconditions and singular points")
{
    const Field f5 = Field::prime(5), f13 = Field::prime(13);
    CHECK(error_of([&] { is_smooth(curve("x^5 + y^5 + z^5", f5)); }) == ErrorKind::CharacteristicDividesDegree);
    CHECK(error_of([&] { is_smooth(curve("x^2*z - 2*x*y*z + y^2*z", f13)); }) == ErrorKind::NonReduced);
    // nodal cubic: one rational node
    const auto node = is_smooth(curve("y^2*z - x^3 - x^2*z", f13));
    CHECK(node.verdict == SmoothVerdict::Singular);
    REQUIRE(node.singular.size() == 1);
    CHECK(node.singular[0].rep == point(f13, 0, 0, 1));
    // nodes at the three coordinate points
    const auto quartic = is_smooth(curve("x^2*y^2 + y^2*z^2 + x^2*z^2", f13));
    CHECK(quartic.verdict == SmoothVerdict::Singular);
    CHECK(quartic.singular.size() == 3);
}

TEST_CASE("smoothness is invariant under coordinate changes")
{
    std::mt19937_64 rng(31);
    const Field f = Field::prime(13);
    for (int i = 0; i < 20; ++i) {
        const PlaneCurve c = random_curve(f, 3 + static_cast<unsigned>(i % 2), rng);
        const CoordChange t = CoordChange::random(f, rng);
        SmoothVerdict a = SmoothVerdict::Unknown, b = SmoothVerdict::Unknown;
        try {
            a = is_smooth(c).verdict;
            b = is_smooth(apply_change(c, t)).verdict;
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NonReduced);
            continue;
        }
        CHECK(a == b);
    }
    // singular curves stay singular, with moved points
    const PlaneCurve node = curve("y^2*z - x^3 - x^2*z", f);
    const CoordChange t = CoordChange::random(f, rng);
    const auto moved = is_smooth(apply_change(node, t));
    REQUIRE(moved.singular.size() == 1);
    CHECK(moved.singular[0].rep == apply_change(point(f, 0, 0, 1), t));
}

TEST_CASE("tangent line examples")
{
    const Field f13 = Field::prime(13);
    const PlaneCurve conic = curve("x*z - y^2", f13);
    CHECK(tangent_line(conic, point(f13, 1, 0, 0)) == curve("z", f13));
    CHECK(tangent_line(curve("x^4 - y^4 - z^4", f13), point(f13, 1, 1, 0)) == curve("x - y", f13));
    CHECK(error_of([&] { tangent_line(conic, point(f13, 1, 1, 0)); }) == ErrorKind::PointNotOnCurve);
    CHECK(error_of([&] { tangent_line(curve("y^2*z - x^3", f13), point(f13, 0, 0, 1)); }) ==
          ErrorKind::SingularPoint);
}

TEST_CASE("tangent lines meet the curve with multiplicity at least two")
{
    std::mt19937_64 rng(32);
    const Field f = Field::prime(13);
    for (int i = 0; i < 15; ++i) {
        const PlaneCurve c = random_smooth_curve(f, 2 + static_cast<unsigned>(i % 3), rng);
        const SampledPoint sp = sample_point(c, nullptr, rng());
        const PlaneCurve l = tangent_line(c, sp.point);
        CHECK(eval_at(l.form(), sp.point).is_zero());
        const TriForm cf = c.form().map(embed_into(f, sp.point.field()));
        const auto m = mult_at_point(cf, l.form(), sp.point);
        REQUIRE(m.has_value());
        CHECK(*m >= 2);
    }
}

TEST_CASE("coordinate changes")
{
    const Field f = Field::prime(13);
    const PlaneCurve conic = curve("x*z - y^2", f);
    CHECK(apply_change(conic, CoordChange::identity(f)).form() == conic.form());
    const Elem o = f.one(), z = f.zero();
    const CoordChange swap(Matrix3{{{z, z, o}, {z, o, z}, {o, z, z}}});
    CHECK(apply_change(conic, swap) == conic);
    CHECK(error_of([&] { CoordChange(Matrix3{{{o, z, z}, {o, z, z}, {z, z, o}}}); }) == ErrorKind::InvalidArgument);

    std::mt19937_64 rng(33);
    for (int i = 0; i < 10; ++i) {
        const PlaneCurve c = random_curve(f, 4, rng);
        const CoordChange t = CoordChange::random(f, rng);
        CHECK(apply_change(apply_change(c, t), t.inverse()) == c);
        const SampledPoint sp = sample_point(random_smooth_curve(f, 2, rng), nullptr, rng());
        CHECK(apply_change(apply_change(sp.point, t), t.inverse()) == sp.point);
    }
    // incidence is preserved
    const ProjPoint p = point(f, 1, 2, 4);
    const CoordChange t = CoordChange::random(f, rng);
    CHECK(eval_at(apply_change(conic, t).form(), apply_change(p, t)).is_zero());
}

TEST_CASE("sampling points")
{
    const Field f5 = Field::prime(5);
    const PlaneCurve conic = curve("x*z - y^2", f5);
    const SampledPoint a = sample_point(conic, nullptr, 1);
    CHECK(a.residue_degree <= 2);
    CHECK(eval_at(conic.form(), a.point).is_zero());
    CHECK(error_of([&] { sample_point(conic, &conic, 1); }) == ErrorKind::ExhaustedAttempts);
    const SampledPoint b = sample_point(curve("x", f5), nullptr, 3);
    CHECK(b.point[0].is_zero());
    CHECK(error_of([&] { sample_point(curve("x", Field()), nullptr, 3); }) == ErrorKind::FieldNotFinite);

    std::mt19937_64 rng(34);
    const Field f13 = Field::prime(13);
    for (int i = 0; i < 20; ++i) {
        const PlaneCurve c = random_curve(f13, 1 + static_cast<unsigned>(i % 5), rng);
        const PlaneCurve avoid = random_curve(f13, 2, rng);
        const SampledPoint sp = sample_point(c, &avoid, rng());
        CHECK(eval_at(c.form(), sp.point).is_zero());
        CHECK_FALSE(eval_at(avoid.form(), sp.point).is_zero());
        CHECK(sp.residue_degree <= c.degree());
    }
}
