#pragma once

// Splitting of the preimage of C in the double plane branched along B, tested through
// squareness of the restricted branch form.

#include "dplane/ulrich.hpp"

namespace dplane {

enum class SplitMode { ExactParametrized, MonteCarlo, LocalModel };
enum class SplitOutcome {
    RationalSplit,
    SplitAfterQuadraticConstantTwist,
    NonSquareWitness,
    AllSamplesSquare,
    Inconclusive,
};

std::string to_string(SplitMode m);
std::string to_string(SplitOutcome o);

struct SplitReport {
    SplitMode mode = SplitMode::MonteCarlo;
    SplitOutcome outcome = SplitOutcome::Inconclusive;
    unsigned samples = 0;
    std::uint64_t seed = 0;
    Field field;
    // exact mode
    UniPoly pullback;                  // branch form along the parametrization, t = 1
    unsigned pullback_form_degree = 0; // degree as a binary form
    std::optional<PolySqrt> root;      // pullback = c * h^2
    std::vector<Stratum> odd_strata;   // odd-exponent square-free strata of the pullback
    // witness
    std::optional<ProjPoint> witness;
    Elem witness_value;
    unsigned witness_degree = 0;
    unsigned discarded_even = 0; // Monte Carlo samples in even-degree residue fields
    std::string note;
};

struct LocalModel {
    BiPoly factor1, factor2; // u - v^l and u + v^l, polynomials in v over Q[u]
    bool product_ok = false;
    unsigned local_mult = 0;
};

/// Branches of w^2 = u^2 - v^(2l) at the origin and their intersection multiplicity.
LocalModel local_split_model(unsigned l);

/// Exact square test along a rational parametrization of a line or a conic with a rational point.
/// Throws DegreeMismatch, NoRationalPoint, InvalidArgument, CommonComponent.
SplitReport split_exact_parametrized(const PlaneCurve& b, const PlaneCurve& c, std::uint64_t seed = 0);

/// Square test of the branch value at sampled places of C. Throws FieldNotFinite,
/// ZeroSamplesPossible.
SplitReport split_monte_carlo(const PlaneCurve& b, const PlaneCurve& c, unsigned n_samples, std::uint64_t seed,
                              bool include_even = false);

/// Branch form composed with a parametrization given by three polynomials in t.
UniPoly pull_back(const TriForm& f, const std::array<UniPoly, 3>& x);

} // namespace dplane
