#include <doctest.h>

#include "helpers.hpp"

using namespace dplane;
using namespace testing;

namespace {

// Euler criterion straight from the field order
bool euler_square(const Elem& a)
{
    const mpz_class half = (a.field().order() - 1) / 2;
    return a.is_zero() || a.pow(half).is_one();
}

unsigned valuation(const UniPoly& p)
{
    unsigned v = 0;
    while (p.coeff(v).is_zero())
        ++v;
    return v;
}

} // namespace

TEST_CASE("local model of the split branches")
{
    const Field q;
    for (unsigned l = 1; l <= 6; ++l) {
        const LocalModel m = local_split_model(l);
        CHECK(m.product_ok);
        CHECK(m.local_mult == l);
        // both factors are linear in u, so the resultant in u is their difference 2 v^l
        std::vector<UniPoly> diff;
        for (int j = 0; j <= std::max(m.factor1.degree(), m.factor2.degree()); ++j)
            diff.push_back(m.factor2.coeff(static_cast<std::size_t>(j)) - m.factor1.coeff(static_cast<std::size_t>(j)));
        std::vector<Elem> in_v;
        for (const auto& c : diff) {
            CHECK(c.degree() <= 0);
            in_v.push_back(c.coeff(0));
        }
        CHECK(valuation(UniPoly(q, in_v)) == l);
    }
    CHECK(error_of([] { local_split_model(0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("exact split examples")
{
    const Field f13 = Field::prime(13);
    const PlaneCurve conic = curve("x*z - y^2", f13);

    const SplitReport t = split_exact_parametrized(conic, curve("z", f13));
    CHECK(t.outcome == SplitOutcome::RationalSplit);
    REQUIRE(t.root.has_value());
    CHECK(euler_square(t.root->c));
    CHECK(t.odd_strata.empty());

    const SplitReport s = split_exact_parametrized(conic, curve("y", f13));
    CHECK(s.outcome == SplitOutcome::NonSquareWitness);
    CHECK_FALSE(s.root.has_value());
    CHECK_FALSE(s.odd_strata.empty());
    REQUIRE(s.witness.has_value());
    CHECK_FALSE(euler_square(s.witness_value));

    CHECK(error_of([&] { split_exact_parametrized(conic, curve("x*z - y^2 + z^2", f13)); }) ==
          ErrorKind::DegreeMismatch);
    const PlaneCurve quartic = curve("x^4 - y^4 - z^4", f13);
    CHECK(error_of([&] { split_exact_parametrized(curve("x^6 - y^6 - z^6", f13), curve("x^3 - y^3 - z^3", f13)); }) ==
          ErrorKind::InvalidArgument);
    CHECK(split_exact_parametrized(quartic, curve("x^2 - y^2 - z^2", f13)).outcome != SplitOutcome::NonSquareWitness);
}

TEST_CASE("exact split on squared instances")
{
    const Field f13 = Field::prime(13);
    for (const char* c : {"x", "x^2 - y^2 - z^2", "x*z - y^2 + 3*y*z"}) {
        const InstanceBundle bundle = squared_construction(curve(c, f13), 5);
        const SplitReport r = split_exact_parametrized(bundle.b, bundle.c);
        CHECK(r.outcome == SplitOutcome::RationalSplit);
        REQUIRE(r.root.has_value());
        CHECK(euler_square(r.root->c));
    }
}

TEST_CASE("exact split over a quadratic extension can twist")
{
    const Field q;
    const SplitReport r = split_exact_parametrized(curve("x^4 - y^4 - z^4", q), curve("x^2 - y^2 - z^2", q));
    CHECK(r.outcome == SplitOutcome::SplitAfterQuadraticConstantTwist);
    REQUIRE(r.root.has_value());
    CHECK_FALSE(is_square(r.root->c));
}

TEST_CASE("tangent lines to conics never give a nonsquare witness")
{
    std::mt19937_64 rng(61);
    for (const Field& f : {Field::prime(13), Field::parse("F13^2"), Field::prime(7)}) {
        const PlaneCurve conic = curve("x*z - y^2", f);
        for (int i = 0; i < 10; ++i) {
            const SampledPoint sp = sample_point(conic, nullptr, rng());
            if (sp.residue_degree != 1)
                continue;
            const SplitReport r = split_exact_parametrized(conic, tangent_line(conic, sp.point), rng());
            CHECK((r.outcome == SplitOutcome::RationalSplit ||
                   r.outcome == SplitOutcome::SplitAfterQuadraticConstantTwist));
        }
    }
}

TEST_CASE("odd orders give nonsquare witnesses along lines")
{
    std::mt19937_64 rng(62);
    const Field f13 = Field::prime(13);
    unsigned tested = 0;
    for (int i = 0; i < 30; ++i) {
        const PlaneCurve b = random_smooth_curve(f13, 2, rng), c = random_smooth_curve(f13, 1, rng);
        if (ulrich_criterion(b, c, 0).verdict == Verdict::Exists)
            continue;
        const SplitReport r = split_exact_parametrized(b, c, rng());
        CHECK(r.outcome == SplitOutcome::NonSquareWitness);
        if (r.witness)
            CHECK_FALSE(euler_square(r.witness_value));
        ++tested;
    }
    CHECK(tested > 10);
}

TEST_CASE("Monte Carlo split examples")
{
    const Field f13 = Field::prime(13);
    const InstanceBundle sq = squared_construction(curve("x^3 - y^3 - z^3", f13), 7);
    const SplitReport a = split_monte_carlo(sq.b, sq.c, 40, 7);
    CHECK(a.outcome == SplitOutcome::AllSamplesSquare);
    CHECK(a.samples == 40);

    const PlaneCurve conic = curve("x*z - y^2", f13);
    const SplitReport w = split_monte_carlo(conic, curve("y", f13), 40, 7);
    CHECK(w.outcome == SplitOutcome::NonSquareWitness);
    REQUIRE(w.witness.has_value());
    CHECK_FALSE(is_square(w.witness_value));
    CHECK_FALSE(euler_square(w.witness_value));
    CHECK(w.witness_degree % 2 == 1);

    CHECK(split_monte_carlo(conic, curve("z", f13), 0, 7).outcome == SplitOutcome::Inconclusive);
    CHECK(error_of([] { split_monte_carlo(curve("x*z - y^2", Field()), curve("z", Field()), 5, 1); }) ==
          ErrorKind::FieldNotFinite);
    CHECK(error_of([&] { split_monte_carlo(conic, conic, 5, 1); }) == ErrorKind::DegreeMismatch);
}

TEST_CASE("Monte Carlo agrees with certified squared instances")
{
    const Field f13 = Field::prime(13);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const InstanceBundle sq = squared_construction(curve("x^2 - y^2 - z^2", f13), seed);
        CHECK(split_monte_carlo(sq.b, sq.c, 20, seed).outcome == SplitOutcome::AllSamplesSquare);
        CHECK(split_monte_carlo(sq.b, sq.c, 20, seed, true).outcome == SplitOutcome::AllSamplesSquare);
    }
}

TEST_CASE("pull back along a parametrization")
{
    const Field f13 = Field::prime(13);
    const UniPoly t = UniPoly::x(f13), one = UniPoly::constant(f13.one());
    // (1 : t : t^2) lies on xz - y^2
    const UniPoly p = pull_back(form("x*z - y^2", f13), {one, t, t * t});
    CHECK(p.is_zero());
    // x^2 + y^2 along (t : 1 : 0) is t^2 + 1
    CHECK(pull_back(form("x^2 + y^2", f13), {t, one, UniPoly(f13)}) == t * t + one);
}
