#pragma once

#include "dplane/intersect.hpp"

namespace dplane {

enum class TangencyKind { Transversal, SimpleTangent, HigherTangent };

struct TangencyRecord {
    ClosedPoint point;
    unsigned order = 0; // intersection multiplicity
    bool even = false;
    TangencyKind kind = TangencyKind::Transversal;
};

struct TangencyReport {
    std::vector<TangencyRecord> records;
    unsigned total = 0;
    bool all_even = false;
    IntersectionSet intersection;
};

enum class Verdict { Exists, NotExists };

struct UlrichCertificate {
    unsigned s = 0;
    Verdict verdict = Verdict::NotExists;
    std::optional<unsigned> d_sigma_d; // s^2 when Exists
    std::optional<unsigned> genus_d;   // (s-1)(s-2)/2 when Exists
    bool pair_note = false;            // the bundle comes with its conjugate
    bool divisor_reduced = false;      // every order equals 2
    bool parity_only = false;          // decided over Q from square-free strata
    std::uint64_t seed = 0;
    TangencyReport report;
};

/// Tangency orders of C against B. Throws BNotSmooth, CNotSmooth, CommonComponent.
TangencyReport classify_tangency(const PlaneCurve& b, const PlaneCurve& c, std::uint64_t seed);

/// Even-order tangency criterion for deg B = 2 deg C. Throws DegreeMismatch.
UlrichCertificate ulrich_criterion(const PlaneCurve& b, const PlaneCurve& c, std::uint64_t seed);

/// Whether C lies in the set of curves cutting twice an effective divisor on B.
bool certify_membership_in_T_B(const PlaneCurve& b, const PlaneCurve& c, std::uint64_t seed);

std::string to_string(TangencyKind k);
std::string to_string(Verdict v);

} // namespace dplane
