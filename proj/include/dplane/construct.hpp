#pragma once

#include "dplane/cover.hpp"

namespace dplane {

enum class ConstructionKind { Fermat, TangentLine, Squared };

struct InstanceBundle {
    PlaneCurve b, c;
    UlrichCertificate certificate;
    ConstructionKind kind = ConstructionKind::Fermat;
    unsigned s = 0;
    std::optional<ProjPoint> point; // tangent-line construction
    std::optional<TriForm> q, h;    // squared construction: B = Q^2 - F_C * H
    unsigned tries = 0;
    std::uint64_t seed = 0;
};

std::string to_string(ConstructionKind k);

/// B = x^(2s) - y^(2s) - z^(2s), C = x^s - y^s - z^s. Throws OddS, BadCharacteristic and,
/// when `require_rational` is set, RootsOfUnityMissing.
InstanceBundle fermat_pair(unsigned s, const Field& field, std::uint64_t seed = 0, bool require_rational = false);

/// C = tangent line of the smooth conic B at P. Throws NotAConic, PointNotOnCurve, BNotSmooth.
InstanceBundle tangent_line_instance(const PlaneCurve& b, const ProjPoint& p, std::uint64_t seed = 0);

/// Random Q, H of degree s until B = Q^2 - F_C * H is smooth and certifies.
/// Throws ExhaustedTries, CNotSmooth, CharacteristicDividesDegree, FieldNotFinite.
InstanceBundle squared_construction(const PlaneCurve& c, std::uint64_t seed, unsigned max_tries = 50);

/// Same with caller-supplied Q and H (any field, including Q).
InstanceBundle squared_construction(const PlaneCurve& c, const TriForm& q, const TriForm& h, std::uint64_t seed);

/// Random form of degree d with uniform coefficients.
TriForm random_form(const Field& f, unsigned d, std::mt19937_64& rng);

} // namespace dplane
