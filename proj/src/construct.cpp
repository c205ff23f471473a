#include "dplane/construct.hpp"

namespace dplane {

std::string to_string(ConstructionKind k)
{
    switch (k) {
    case ConstructionKind::Fermat:
        return "fermat";
    case ConstructionKind::TangentLine:
        return "tangent-line";
    case ConstructionKind::Squared:
        return "squared";
    }
    return "?";
}

TriForm random_form(const Field& f, unsigned d, std::mt19937_64& rng)
{
    TriForm r(f, d);
    for (const auto& m : monomials(d))
        r.set(m, f.random(rng));
    return r;
}

namespace {

TriForm fermat(const Field& f, unsigned d)
{
    TriForm r(f, d);
    r.set({d, 0, 0}, f.one());
    r.set({0, d, 0}, -f.one());
    r.set({0, 0, d}, -f.one());
    return r;
}

void check_characteristic(const Field& f, unsigned s)
{
    const std::uint64_t p = f.characteristic();
    if (p == 2 || (p != 0 && (2 * s) % p == 0))
        fail(ErrorKind::BadCharacteristic,
             "characteristic " + std::to_string(p) + " is 2 or divides 2s = " + std::to_string(2 * s));
}

} // namespace

InstanceBundle fermat_pair(unsigned s, const Field& field, std::uint64_t seed, bool require_rational)
{
    if (s == 0)
        fail(ErrorKind::InvalidArgument, "s must be positive");
    if (s % 2 == 1)
        fail(ErrorKind::OddS, "s = " + std::to_string(s) + " is odd; order-s tangency would be odd");
    check_characteristic(field, s);
    if (require_rational && field.is_finite() && (field.order() - 1) % s != 0)
        fail(ErrorKind::RootsOfUnityMissing, "q - 1 is not divisible by s = " + std::to_string(s));
    InstanceBundle ib{PlaneCurve(fermat(field, 2 * s)), PlaneCurve(fermat(field, s)), {}, ConstructionKind::Fermat, s};
    ib.seed = seed;
    ib.certificate = ulrich_criterion(ib.b, ib.c, seed);
    if (ib.certificate.verdict != Verdict::Exists)
        fail(ErrorKind::Internal, "Fermat pair failed to certify");
    return ib;
}

InstanceBundle tangent_line_instance(const PlaneCurve& b0, const ProjPoint& p, std::uint64_t seed)
{
    if (b0.degree() != 2)
        fail(ErrorKind::NotAConic, b0.str() + " has degree " + std::to_string(b0.degree()));
    // work over the field of the point
    const PlaneCurve b = b0.field().same(p.field()) ? b0 : PlaneCurve(b0.form().map(embed_into(b0.field(), p.field())));
    if (is_smooth(b).verdict != SmoothVerdict::Smooth)
        fail(ErrorKind::BNotSmooth, "the conic " + b.str() + " is singular");
    InstanceBundle ib{b, tangent_line(b, p), {}, ConstructionKind::TangentLine, 1};
    ib.point = p;
    ib.seed = seed;
    ib.certificate = ulrich_criterion(ib.b, ib.c, seed);
    return ib;
}

InstanceBundle squared_construction(const PlaneCurve& c, const TriForm& q, const TriForm& h, std::uint64_t seed)
{
    const unsigned s = c.degree();
    if (q.degree() != s || h.degree() != s)
        fail(ErrorKind::DegreeMismatch, "Q and H must have the degree of C");
    check_characteristic(c.field(), s);
    if (is_smooth(c).verdict != SmoothVerdict::Smooth)
        fail(ErrorKind::CNotSmooth, "C = " + c.str() + " is singular");
    const TriForm bf = q * q - c.form() * h;
    if (bf.is_zero())
        fail(ErrorKind::ZeroPolynomial, "Q^2 - F_C H vanishes identically");
    InstanceBundle ib{PlaneCurve(bf), c, {}, ConstructionKind::Squared, s};
    ib.q = q;
    ib.h = h;
    ib.tries = 1;
    ib.seed = seed;
    ib.certificate = ulrich_criterion(ib.b, ib.c, seed);
    return ib;
}

InstanceBundle squared_construction(const PlaneCurve& c, std::uint64_t seed, unsigned max_tries)
{
    const Field& k = c.field();
    if (!k.is_finite())
        fail(ErrorKind::FieldNotFinite, "random search needs a finite field; supply Q and H over Q");
    const unsigned s = c.degree();
    const std::uint64_t p = k.characteristic();
    if ((2 * s) % p == 0)
        fail(ErrorKind::CharacteristicDividesDegree,
             "characteristic " + std::to_string(p) + " divides 2s = " + std::to_string(2 * s));
    if (is_smooth(c).verdict != SmoothVerdict::Smooth)
        fail(ErrorKind::CNotSmooth, "C = " + c.str() + " is singular");
    std::mt19937_64 rng(seed);
    for (unsigned t = 1; t <= max_tries; ++t) {
        const TriForm q = random_form(k, s, rng);
        const TriForm h = random_form(k, s, rng);
        const TriForm bf = q * q - c.form() * h;
        if (bf.is_zero())
            continue;
        const PlaneCurve b(bf);
        try {
            if (is_smooth(b).verdict != SmoothVerdict::Smooth)
                continue;
            UlrichCertificate cert = ulrich_criterion(b, c, seed);
            if (cert.verdict != Verdict::Exists)
                continue;
            InstanceBundle ib{b, c, std::move(cert), ConstructionKind::Squared, s};
            ib.q = q;
            ib.h = h;
            ib.tries = t;
            ib.seed = seed;
            return ib;
        } catch (const Error& e) {
            // degenerate members (non-reduced, common component) are simply skipped
            if (e.exit_code() != 3)
                throw;
        }
    }
    fail(ErrorKind::ExhaustedTries, "no smooth certified member in " + std::to_string(max_tries) + " tries");
}

} // namespace dplane
