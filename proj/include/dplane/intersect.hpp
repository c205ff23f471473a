#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dplane/curve.hpp"

namespace dplane {

struct Stratum {
    unsigned exponent = 0;
    unsigned degree = 0;
    bool operator==(const Stratum&) const = default;
    auto operator<=>(const Stratum&) const = default;
};

struct IntersectionSet {
    std::vector<ClosedPoint> points; // sorted by representative
    unsigned total = 0;              // sum of multiplicity * residue degree
    Field field;                     // base field of the points (the input field unless extended)
    CoordChange change;              // good-position change M, curves pulled back as F o M
    std::vector<CoordChange> changes; // every change used (three over Q)
    std::vector<Stratum> strata;     // square-free strata of the resultant, sorted
    bool parity_only = false;        // Q: points holds the rational points only
    std::vector<std::string> extensions;
    unsigned attempts = 0;
};

/// Intersection multiset of two curves over the same field. Throws CommonComponent,
/// GoodPositionFailed, FieldMismatch, OracleDisagreement.
IntersectionSet intersect(const PlaneCurve& c1, const PlaneCurve& c2, std::uint64_t seed);

/// Local intersection multiplicity at (a, b) of affine curves f, g given as polynomials in y
/// with coefficients in x; nullopt when infinite.
std::optional<unsigned> mult_at_point(const BiPoly& f, const BiPoly& g, const Elem& a, const Elem& b);

/// Same for projective curves at a point over an extension of their field.
std::optional<unsigned> mult_at_point(const TriForm& f, const TriForm& g, const ProjPoint& p);

bool bezout_check(const IntersectionSet& s, unsigned d1, unsigned d2);

} // namespace dplane
