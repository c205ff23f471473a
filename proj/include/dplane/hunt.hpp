#pragma once

// Tangent conics to a smooth plane quartic and their grouping into linear-equivalence families.

#include "dplane/construct.hpp"

namespace dplane {

struct HalfPoint {
    ClosedPoint point;
    unsigned mult = 0; // order / 2
};

struct TangentConicRecord {
    PlaneCurve branch;
    PlaneCurve conic;
    TangencyReport report;
    std::vector<HalfPoint> half_divisor;
};

/// Record for a conic already known to meet B with even orders only. Throws InvalidArgument otherwise.
TangentConicRecord tangent_conic_record(const PlaneCurve& b, const PlaneCurve& conic, std::uint64_t seed = 0);

struct HuntOptions {
    bool allow_large = false;
    unsigned shards = 1;
    std::uint64_t seed = 0;
};

struct HuntStats {
    std::uint64_t candidates = 0;
    std::uint64_t smooth = 0;
    std::uint64_t prefiltered = 0; // survivors of the odd-exponent filter
};

/// Every smooth conic meeting B with even multiplicities only, in canonical order.
/// Throws FieldTooLarge (q > 31 without allow_large), BNotSmooth, DegreeMismatch.
std::vector<TangentConicRecord> enumerate_tangent_conics(const PlaneCurve& b, const HuntOptions& opt = {},
                                                         HuntStats* stats = nullptr);

/// Whether the half divisors are linearly equivalent on B, tested by finding a conic that cuts
/// their sum. Throws DifferentBranchCurves.
bool same_family(const TangentConicRecord& r1, const TangentConicRecord& r2, const PlaneCurve& b);

struct FamilyPartition {
    std::vector<std::vector<TangentConicRecord>> families;
    std::size_t count = 0;
    std::size_t audited_triples = 0;
    std::size_t same_family_calls = 0;
};

/// Union of records by same_family against one representative per family, followed by an audit.
/// Throws TransitivityViolation.
FamilyPartition classify_families(const std::vector<TangentConicRecord>& records, const PlaneCurve& b,
                                  std::uint64_t seed = 0, std::size_t audit_triples = 200);

} // namespace dplane
