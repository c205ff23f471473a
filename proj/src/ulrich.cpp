#include "dplane/ulrich.hpp"

namespace dplane {

std::string to_string(TangencyKind k)
{
    switch (k) {
    case TangencyKind::Transversal:
        return "transversal";
    case TangencyKind::SimpleTangent:
        return "simple_tangent";
    case TangencyKind::HigherTangent:
        return "higher_tangent";
    }
    return "?";
}

std::string to_string(Verdict v) { return v == Verdict::Exists ? "Exists" : "NotExists"; }

namespace {

void gate(const PlaneCurve& c, ErrorKind kind, const char* name)
{
    if (c.field().characteristic() == 2)
        fail(ErrorKind::BadCharacteristic, "double covers need characteristic != 2");
    try {
        const Smoothness& s = is_smooth(c);
        if (s.verdict != SmoothVerdict::Smooth) {
            std::string where;
            for (const auto& p : s.singular)
                where += " " + p.rep.str();
            fail(kind, std::string(name) + " = " + c.str() + " is singular" + (where.empty() ? "" : " at" + where));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NonReduced)
            fail(kind, std::string(name) + " is not reduced: " + e.detail());
        throw;
    }
}

} // namespace

TangencyReport classify_tangency(const PlaneCurve& b, const PlaneCurve& c, std::uint64_t seed)
{
    gate(b, ErrorKind::BNotSmooth, "B");
    gate(c, ErrorKind::CNotSmooth, "C");
    TangencyReport rep;
    rep.intersection = intersect(b, c, seed);
    const IntersectionSet& s = rep.intersection;
    for (const auto& cp : s.points) {
        TangencyRecord r;
        r.point = cp;
        r.order = cp.multiplicity;
        r.even = r.order % 2 == 0;
        r.kind = r.order == 1 ? TangencyKind::Transversal
                 : r.order == 2 ? TangencyKind::SimpleTangent
                                : TangencyKind::HigherTangent;
        rep.records.push_back(std::move(r));
    }
    rep.total = s.total;
    rep.all_even = true;
    if (s.parity_only) {
        for (const auto& st : s.strata)
            rep.all_even = rep.all_even && st.exponent % 2 == 0;
    } else {
        for (const auto& r : rep.records)
            rep.all_even = rep.all_even && r.even;
    }
    return rep;
}

UlrichCertificate ulrich_criterion(const PlaneCurve& b, const PlaneCurve& c, std::uint64_t seed)
{
    if (b.degree() != 2 * c.degree())
        fail(ErrorKind::DegreeMismatch,
             "deg B = " + std::to_string(b.degree()) + " but deg C = " + std::to_string(c.degree()));
    UlrichCertificate cert;
    cert.s = c.degree();
    cert.seed = seed;
    cert.report = classify_tangency(b, c, seed);
    cert.parity_only = cert.report.intersection.parity_only;
    if (!cert.report.all_even)
        return cert;
    cert.verdict = Verdict::Exists;
    unsigned half = 0;
    bool reduced = true;
    if (cert.parity_only) {
        for (const auto& st : cert.report.intersection.strata) {
            half += st.exponent / 2 * st.degree;
            reduced = reduced && st.exponent == 2;
        }
    } else {
        for (const auto& r : cert.report.records) {
            half += r.order / 2 * r.point.residue_degree;
            reduced = reduced && r.order == 2;
        }
    }
    const unsigned s = cert.s;
    if (half != s * s)
        fail(ErrorKind::Internal, "half divisor has degree " + std::to_string(half) + ", expected " + std::to_string(s * s));
    if (cert.report.total != 2 * s * s)
        fail(ErrorKind::Internal, "total intersection differs from 2 s^2");
    cert.d_sigma_d = half;
    cert.genus_d = (s - 1) * (s - 2) / 2;
    cert.pair_note = true;
    cert.divisor_reduced = reduced;
    return cert;
}

bool certify_membership_in_T_B(const PlaneCurve& b, const PlaneCurve& c, std::uint64_t seed)
{
    return ulrich_criterion(b, c, seed).verdict == Verdict::Exists;
}

} // namespace dplane
